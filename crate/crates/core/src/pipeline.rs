//! End-to-end verification: run the whole chain on a concrete generating set
//! and produce a `BoundReport` carrying every intermediate certificate, or a
//! structured failure. Also the home of the JSON input/output formats used by
//! the CLI.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arithmetic::{
    adapt_idempotent_basis, choose_prime, integralize, minkowski_check, mod_p,
};
use crate::corpus::{corpus, CorpusEntry};
use crate::exact_linalg::{format_rational, parse_rational, QMatrix, Rational, ZMatrix};
use crate::invariant::{is_irreducible, IrreducibilityVerdict, IrreducibleWitness};
use crate::semigroup::{
    adjoin_zero, closure, green_relations, is_aperiodic, maximal_subgroup_at, SemigroupError,
    DEFAULT_CAP,
};
use crate::structure::{injectivity_criterion, span_contains_identity, verify_ggm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("closure exceeded the element cap {cap}")]
    CapExceeded { cap: usize },
    #[error("input semigroup is reducible; a proper invariant subspace was found")]
    NotIrreducible {
        n: usize,
        size: usize,
        /// Basis of the invariant subspace, as rows of rational literals.
        subspace: Vec<Vec<String>>,
    },
    #[error("irreducibility could not be decided for this input")]
    Inconclusive { n: usize, size: usize },
    #[error("internal contradiction — a stage guaranteed by the theory failed: {0}")]
    InternalContradiction(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl PipelineError {
    /// CLI exit code: 2 reducible, 3 inconclusive, 4 cap exceeded,
    /// 5 internal contradiction, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::NotIrreducible { .. } => 2,
            PipelineError::Inconclusive { .. } => 3,
            PipelineError::CapExceeded { .. } => 4,
            PipelineError::InternalContradiction(_) => 5,
            PipelineError::InvalidInput(_) => 1,
        }
    }

    /// Structured failure object for the CLI boundary.
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        let kind = match self {
            PipelineError::CapExceeded { .. } => "cap_exceeded",
            PipelineError::NotIrreducible { .. } => "reducible",
            PipelineError::Inconclusive { .. } => "inconclusive",
            PipelineError::InternalContradiction(_) => "internal_contradiction",
            PipelineError::InvalidInput(_) => "invalid_input",
        };
        obj.insert("error".into(), kind.into());
        obj.insert("message".into(), self.to_string().into());
        obj.insert("exit_code".into(), self.exit_code().into());
        match self {
            PipelineError::CapExceeded { cap } => {
                obj.insert("cap".into(), (*cap).into());
            }
            PipelineError::NotIrreducible { n, size, subspace } => {
                obj.insert("n".into(), (*n).into());
                obj.insert("size".into(), (*size).into());
                obj.insert(
                    "invariant_subspace".into(),
                    serde_json::to_value(subspace).expect("strings serialize"),
                );
            }
            PipelineError::Inconclusive { n, size } => {
                obj.insert("n".into(), (*n).into());
                obj.insert("size".into(), (*size).into());
            }
            _ => {}
        }
        serde_json::Value::Object(obj)
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub cap: usize,
    pub prime_override: Option<u64>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            cap: DEFAULT_CAP,
            prime_override: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageLogEntry {
    pub stage: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrreducibilityReport {
    pub verdict: &'static str,
    /// "full-span" or "norton" for irreducible verdicts.
    pub certificate_kind: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GgmReportJson {
    pub ideal: Vec<usize>,
    pub left_faithful: bool,
    pub right_faithful: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugationJson {
    /// Columns of this matrix are an integral basis of the invariant lattice.
    pub lattice_basis: Vec<Vec<String>>,
    pub inverse: Vec<Vec<String>>,
    pub conjugated_elements: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdaptedBasisJson {
    pub u: Vec<Vec<String>>,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanCertificateJson {
    pub support: Vec<usize>,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinkowskiJson {
    pub p: u64,
    pub group_indices: Vec<usize>,
    pub block_rank: usize,
    pub violations: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificates {
    pub conjugation: ConjugationJson,
    pub adapted_basis: AdaptedBasisJson,
    pub span: SpanCertificateJson,
    /// Mod-p image of every element, index-for-index with the element list.
    pub mod_p_images: Vec<Vec<Vec<u64>>>,
    pub minkowski: MinkowskiJson,
}

/// The end-to-end verdict with every per-stage certificate retained. Big
/// integers are serialized as decimal strings.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    /// |S| after adjoining zero.
    pub size: usize,
    pub irreducibility: IrreducibilityReport,
    pub ggm: GgmReportJson,
    pub ideal_size: usize,
    pub group_order: usize,
    pub aperiodic: bool,
    /// Prime prescribed by the parity rule (2 for odd |G|, 3 for even).
    pub prescribed_p: u64,
    /// Prime actually used.
    pub p: u64,
    pub prime_overridden: bool,
    /// p^(n²), decimal.
    pub bound: String,
    pub injective_mod_p: bool,
    pub injectivity_criterion: bool,
    /// Re-derived from the raw count of distinct images, not from the flag.
    pub bound_holds: bool,
    pub certificates: Certificates,
    pub stage_log: Vec<StageLogEntry>,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for entry in &self.stage_log {
            out.push_str(&format!("{:<22} {}\n", entry.stage, entry.detail));
        }
        out.push_str(&format!(
            "verdict                |S| = {} <= {}^(n^2) = {}: {}\n",
            self.size,
            self.p,
            self.bound,
            if self.bound_holds { "HOLDS" } else { "FAILS" }
        ));
        out
    }
}

fn internal(msg: impl Into<String>) -> PipelineError {
    PipelineError::InternalContradiction(msg.into())
}

fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    m.rows_as_strings()
}

fn zmatrix_strings(m: &ZMatrix) -> Vec<Vec<String>> {
    m.rows_as_strings()
}

/// Run the complete verification chain on a generating set.
///
/// Stage order: closure, adjoin zero, irreducibility (aborting on Reducible
/// or Inconclusive), integralization, 0-minimal ideal and faithfulness,
/// identity-in-span certificate, maximal subgroup at the lowest nonzero
/// idempotent of the ideal, prime choice, idempotent basis adaptation, mod-p
/// reduction, injectivity criterion cross-checked against raw pairwise
/// distinctness, and the Minkowski torsion check on the e-block group.
pub fn verify_bound(
    generators: &[QMatrix],
    options: &PipelineOptions,
) -> Result<BoundReport, PipelineError> {
    let mut log: Vec<StageLogEntry> = Vec::new();

    let raw = closure(generators, options.cap).map_err(|e| match e {
        SemigroupError::CapExceeded { cap } => PipelineError::CapExceeded { cap },
        other => PipelineError::InvalidInput(other.to_string()),
    })?;
    let table = adjoin_zero(&raw);
    let n = table.n();
    let size = table.size();
    log.push(StageLogEntry {
        stage: "closure",
        detail: format!(
            "closed on {} elements; {} after adjoining zero",
            raw.size(),
            size
        ),
    });

    let verdict = is_irreducible(&table);
    let irreducibility = match &verdict {
        IrreducibilityVerdict::Irreducible(w) => IrreducibilityReport {
            verdict: "irreducible",
            certificate_kind: Some(match w {
                IrreducibleWitness::FullSpan => "full-span",
                IrreducibleWitness::Norton => "norton",
            }),
        },
        IrreducibilityVerdict::Reducible(w) => {
            return Err(PipelineError::NotIrreducible {
                n,
                size,
                subspace: w
                    .iter()
                    .map(|v| v.iter().map(format_rational).collect())
                    .collect(),
            });
        }
        IrreducibilityVerdict::Inconclusive => {
            return Err(PipelineError::Inconclusive { n, size });
        }
    };
    log.push(StageLogEntry {
        stage: "irreducibility",
        detail: format!(
            "irreducible ({})",
            irreducibility.certificate_kind.unwrap_or("-")
        ),
    });

    let conj = integralize(&table).map_err(|e| internal(e.to_string()))?;
    log.push(StageLogEntry {
        stage: "integralize",
        detail: format!(
            "conjugated into integer matrices; lattice basis {:?}",
            conj.basis_matrix.rows_as_strings()
        ),
    });

    let ggm = verify_ggm(&table).map_err(|e| internal(e.to_string()))?;
    if !ggm.is_ggm() {
        return Err(internal(format!(
            "irreducible semigroup failed the faithfulness check: left witness {:?}, right witness {:?}",
            ggm.left_witness, ggm.right_witness
        )));
    }
    let ideal = ggm.ideal.clone();
    log.push(StageLogEntry {
        stage: "ggm",
        detail: format!(
            "0-minimal ideal of {} elements; faithful on both sides",
            ideal.len()
        ),
    });

    let span = span_contains_identity(&table, &ideal)
        .ok_or_else(|| internal("identity matrix is not in the span of the 0-minimal ideal"))?;
    if !span.reconstruct(&table).is_identity() {
        return Err(internal("span certificate does not reconstruct the identity"));
    }
    log.push(StageLogEntry {
        stage: "span",
        detail: format!(
            "identity = combination of {} ideal elements",
            span.support.len()
        ),
    });

    let z = table.zero_index().ok_or_else(|| internal("zero index missing"))?;
    let e = *ideal
        .element_indices
        .iter()
        .find(|&&i| i != z && table.product(i, i) == i)
        .ok_or_else(|| internal("0-minimal ideal has no nonzero idempotent"))?;
    let green = green_relations(&table);
    let group = maximal_subgroup_at(&table, &green, e).map_err(|e| internal(e.to_string()))?;
    let aperiodic = is_aperiodic(&table);
    log.push(StageLogEntry {
        stage: "maximal-subgroup",
        detail: format!(
            "G at idempotent {} has order {}; S {} aperiodic",
            e,
            group.order,
            if aperiodic { "is" } else { "is not" }
        ),
    });

    let prescribed_p = choose_prime(&group);
    let p = options.prime_override.unwrap_or(prescribed_p);
    let prime_overridden = p != prescribed_p;
    log.push(StageLogEntry {
        stage: "prime",
        detail: if prime_overridden {
            format!("overridden to p = {p} (prescription was {prescribed_p}); the theorem's guarantee does not apply")
        } else {
            format!(
                "p = {p} ({} group order)",
                if group.order % 2 == 1 { "odd" } else { "even" }
            )
        },
    });

    let adapted =
        adapt_idempotent_basis(&conj.conjugated[e]).map_err(|e| internal(e.to_string()))?;
    let final_elements: Vec<ZMatrix> = conj
        .conjugated
        .iter()
        .map(|m| adapted.conjugate(m))
        .collect();
    log.push(StageLogEntry {
        stage: "adapt-basis",
        detail: format!(
            "unimodular change of basis puts e in the form diag(1_{}, 0)",
            adapted.r
        ),
    });

    let images = mod_p(&final_elements, &table, p, &ideal).map_err(|e| match e {
        crate::arithmetic::ArithmeticError::NotPrime(q) => {
            PipelineError::InvalidInput(format!("{q} is not prime"))
        }
        other => internal(other.to_string()),
    })?;
    if !images.zero_separated {
        return Err(internal(
            "pi fails to separate 0 from the ideal although pi(e) != 0",
        ));
    }
    log.push(StageLogEntry {
        stage: "mod-p",
        detail: format!(
            "{} distinct images out of {} elements",
            images.distinct_count(),
            size
        ),
    });

    let criterion = injectivity_criterion(&table, &ideal, &group, &images.images)
        .map_err(|e| internal(e.to_string()))?;
    if criterion != images.injective {
        return Err(internal(format!(
            "injectivity criterion ({criterion}) disagrees with exhaustive distinctness ({})",
            images.injective
        )));
    }
    log.push(StageLogEntry {
        stage: "injectivity",
        detail: format!(
            "criterion {} exhaustive check {}",
            criterion,
            if criterion == images.injective {
                "matches"
            } else {
                "CONTRADICTS"
            }
        ),
    });

    // restrict G to the adapted e-block; off-block entries must vanish
    let mut blocks = Vec::with_capacity(group.order);
    for &g in &group.element_indices {
        let m = &final_elements[g];
        for i in 0..n {
            for j in 0..n {
                if (i >= adapted.r || j >= adapted.r) && !m.get(i, j).is_zero() {
                    return Err(internal(
                        "group element is nonzero outside the adapted e-block",
                    ));
                }
            }
        }
        blocks.push(m.principal_block(adapted.r));
    }
    let torsion = minkowski_check(&blocks, p).map_err(|e| internal(e.to_string()))?;
    if !torsion.violations.is_empty() {
        return Err(internal(format!(
            "Minkowski torsion violations at p = {p}: {:?}",
            torsion.violations
        )));
    }
    log.push(StageLogEntry {
        stage: "minkowski",
        detail: format!(
            "kernel of reduction mod {p} restricted to G: no forbidden torsion"
        ),
    });

    let bound = BigUint::from(p).pow((n * n) as u32);
    let distinct = images.distinct_count();
    let bound_holds = distinct == size && BigUint::from(size) <= bound;
    log.push(StageLogEntry {
        stage: "bound",
        detail: format!("|S| = {size}, p^(n^2) = {bound}"),
    });

    Ok(BoundReport {
        n,
        size,
        irreducibility,
        ggm: GgmReportJson {
            ideal: ideal.element_indices.clone(),
            left_faithful: ggm.left_faithful,
            right_faithful: ggm.right_faithful,
        },
        ideal_size: ideal.len(),
        group_order: group.order,
        aperiodic,
        prescribed_p,
        p,
        prime_overridden,
        bound: bound.to_string(),
        injective_mod_p: images.injective,
        injectivity_criterion: criterion,
        bound_holds,
        certificates: Certificates {
            conjugation: ConjugationJson {
                lattice_basis: matrix_strings(&conj.basis_matrix),
                inverse: matrix_strings(&conj.inverse),
                conjugated_elements: final_elements.iter().map(zmatrix_strings).collect(),
            },
            adapted_basis: AdaptedBasisJson {
                u: zmatrix_strings(&adapted.u),
                rank: adapted.r,
            },
            span: SpanCertificateJson {
                support: span.support.clone(),
                coefficients: span.coefficients.iter().map(format_rational).collect(),
            },
            mod_p_images: images
                .images
                .iter()
                .map(|m| {
                    (0..m.n())
                        .map(|i| (0..m.n()).map(|j| m.get(i, j)).collect())
                        .collect()
                })
                .collect(),
            minkowski: MinkowskiJson {
                p,
                group_indices: group.element_indices.clone(),
                block_rank: adapted.r,
                violations: torsion.violations.clone(),
            },
        },
        stage_log: log,
    })
}

/// JSON input format: `{"dimension": n, "generators": [[["a/b", ...], ...], ...]}`
/// with rational entries as strings (bare JSON integers are also accepted).
pub fn parse_input(json: &str) -> Result<(usize, Vec<QMatrix>), PipelineError> {
    let value: serde_json::Value = serde_json::from_str(json)
        .map_err(|e| PipelineError::InvalidInput(format!("malformed JSON: {e}")))?;
    let dim = value
        .get("dimension")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| PipelineError::InvalidInput("missing integer field \"dimension\"".into()))?
        as usize;
    if dim == 0 {
        return Err(PipelineError::InvalidInput("dimension must be positive".into()));
    }
    let gens = value
        .get("generators")
        .and_then(serde_json::Value::as_array)
        .ok_or_else(|| PipelineError::InvalidInput("missing array field \"generators\"".into()))?;
    if gens.is_empty() {
        return Err(PipelineError::InvalidInput("no generators given".into()));
    }
    let mut out = Vec::with_capacity(gens.len());
    for (gi, gen) in gens.iter().enumerate() {
        let rows = gen.as_array().ok_or_else(|| {
            PipelineError::InvalidInput(format!("generator {gi} is not an array of rows"))
        })?;
        if rows.len() != dim {
            return Err(PipelineError::InvalidInput(format!(
                "generator {gi} has {} rows, expected {dim}",
                rows.len()
            )));
        }
        let mut entries: Vec<Rational> = Vec::with_capacity(dim * dim);
        for (ri, row) in rows.iter().enumerate() {
            let cells = row.as_array().ok_or_else(|| {
                PipelineError::InvalidInput(format!("generator {gi} row {ri} is not an array"))
            })?;
            if cells.len() != dim {
                return Err(PipelineError::InvalidInput(format!(
                    "generator {gi} row {ri} has {} entries, expected {dim}",
                    cells.len()
                )));
            }
            for cell in cells {
                let lit = match cell {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(v) if v.is_i64() || v.is_u64() => v.to_string(),
                    other => {
                        return Err(PipelineError::InvalidInput(format!(
                            "entry {other} is neither a rational string nor an integer"
                        )))
                    }
                };
                entries.push(parse_rational(&lit).map_err(|e| {
                    PipelineError::InvalidInput(e.to_string())
                })?);
            }
        }
        out.push(QMatrix::new(dim, entries));
    }
    Ok((dim, out))
}

/// Render a generating set back into the JSON input format.
pub fn input_json(dimension: usize, generators: &[QMatrix]) -> serde_json::Value {
    serde_json::json!({
        "dimension": dimension,
        "generators": generators.iter().map(|g| g.rows_as_strings()).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusOutcome {
    pub name: &'static str,
    pub expected_irreducible: bool,
    pub expected_size: Option<usize>,
    pub outcome: String,
    pub as_expected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusRunReport {
    pub entries: Vec<CorpusOutcome>,
    pub all_as_expected: bool,
}

fn expected_outcome(entry: &CorpusEntry, result: &Result<BoundReport, PipelineError>) -> bool {
    match result {
        Ok(report) => {
            entry.expected_irreducible
                && entry.expected_size == Some(report.size)
                && report.bound_holds
                && report.injective_mod_p
        }
        Err(PipelineError::NotIrreducible { .. }) => !entry.expected_irreducible,
        Err(PipelineError::CapExceeded { .. }) => entry.expected_size.is_none(),
        Err(_) => false,
    }
}

/// Run `verify_bound` over every corpus entry with its own cap.
pub fn run_corpus() -> CorpusRunReport {
    let mut entries = Vec::new();
    for entry in corpus() {
        let options = PipelineOptions {
            cap: entry.cap,
            prime_override: None,
        };
        let result = verify_bound(&entry.generators, &options);
        let as_expected = expected_outcome(&entry, &result);
        let (outcome, report, failure) = match result {
            Ok(r) => ("report".to_string(), Some(r), None),
            Err(e) => (
                match &e {
                    PipelineError::NotIrreducible { .. } => "reducible".to_string(),
                    PipelineError::Inconclusive { .. } => "inconclusive".to_string(),
                    PipelineError::CapExceeded { .. } => "cap_exceeded".to_string(),
                    other => format!("error: {other}"),
                },
                None,
                Some(e.to_json()),
            ),
        };
        entries.push(CorpusOutcome {
            name: entry.name,
            expected_irreducible: entry.expected_irreducible,
            expected_size: entry.expected_size,
            outcome,
            as_expected,
            report,
            failure,
        });
    }
    CorpusRunReport {
        all_as_expected: entries.iter().all(|e| e.as_expected),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&str]) -> QMatrix {
        QMatrix::parse_rows(rows).unwrap()
    }

    #[test]
    fn sign_semigroup_is_tight_at_n_equals_one() {
        // full hand computation: S = {-1, 1, 0}, G = {1, -1}, |G| even so
        // p = 3, bound 3^1 = 3 = |S|
        let report = verify_bound(&[qm(&["-1"])], &PipelineOptions::default()).unwrap();
        assert_eq!(report.n, 1);
        assert_eq!(report.size, 3);
        assert_eq!(report.group_order, 2);
        assert_eq!(report.p, 3);
        assert_eq!(report.bound, "3");
        assert!(report.injective_mod_p);
        assert!(report.injectivity_criterion);
        assert!(report.bound_holds);
        assert!(!report.aperiodic);
        assert!(!report.prime_overridden);
    }

    #[test]
    fn brandt_b2_takes_the_aperiodic_branch() {
        let report = verify_bound(
            &[qm(&["0 1", "0 0"]), qm(&["0 0", "1 0"])],
            &PipelineOptions::default(),
        )
        .unwrap();
        assert_eq!(report.size, 5);
        assert!(report.aperiodic);
        assert_eq!(report.p, 2);
        assert_eq!(report.bound, "16");
        assert!(report.injective_mod_p);
        assert!(report.bound_holds);
    }

    #[test]
    fn sym3_takes_the_even_order_branch() {
        // closure enumeration oracle: 6 group elements + adjoined zero
        let report = verify_bound(
            &[qm(&["0 -1", "1 -1"]), qm(&["0 -1", "-1 0"])],
            &PipelineOptions::default(),
        )
        .unwrap();
        assert_eq!(report.size, 7);
        assert_eq!(report.group_order, 6);
        assert_eq!(report.p, 3);
        assert_eq!(report.bound, "81");
        assert!(report.injective_mod_p);
        assert!(report.bound_holds);
    }

    #[test]
    fn prime_override_produces_consistent_failure() {
        let report = verify_bound(
            &[qm(&["-1"])],
            &PipelineOptions {
                cap: DEFAULT_CAP,
                prime_override: Some(2),
            },
        )
        .unwrap();
        assert!(report.prime_overridden);
        assert_eq!(report.prescribed_p, 3);
        assert_eq!(report.p, 2);
        assert!(!report.injective_mod_p);
        assert!(!report.injectivity_criterion);
        assert!(!report.bound_holds);
    }

    #[test]
    fn reducible_input_aborts_with_certificate() {
        let err = verify_bound(
            &[QMatrix::identity(2), qm(&["1 0", "0 0"])],
            &PipelineOptions::default(),
        )
        .unwrap_err();
        match &err {
            PipelineError::NotIrreducible { n, size, subspace } => {
                assert_eq!(*n, 2);
                assert_eq!(*size, 3);
                assert_eq!(subspace, &vec![vec!["1".to_string(), "0".to_string()]]);
            }
            other => panic!("expected NotIrreducible, got {other:?}"),
        }
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn cap_exceeded_surfaces() {
        let err = verify_bound(
            &[qm(&["2"])],
            &PipelineOptions {
                cap: 32,
                prime_override: None,
            },
        )
        .unwrap_err();
        assert_eq!(err, PipelineError::CapExceeded { cap: 32 });
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn inconclusive_input_reports_exit_code_three() {
        // C4: irreducible over Q but outside what the certificates can decide
        let err = verify_bound(&[qm(&["0 -1", "1 0"])], &PipelineOptions::default()).unwrap_err();
        assert!(matches!(err, PipelineError::Inconclusive { .. }));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn input_roundtrip() {
        let json = r#"{"dimension": 2, "generators": [[["0", "-1"], ["1", "-1"]], [["1/2", 0], [2, "0"]]]}"#;
        let (dim, gens) = parse_input(json).unwrap();
        assert_eq!(dim, 2);
        assert_eq!(gens[0], qm(&["0 -1", "1 -1"]));
        assert_eq!(gens[1], qm(&["1/2 0", "2 0"]));
        let back = input_json(dim, &gens);
        let (dim2, gens2) = parse_input(&back.to_string()).unwrap();
        assert_eq!(dim, dim2);
        assert_eq!(gens, gens2);
    }

    #[test]
    fn input_validation_errors() {
        assert!(parse_input("{").is_err());
        assert!(parse_input(r#"{"generators": []}"#).is_err());
        assert!(parse_input(r#"{"dimension": 2, "generators": []}"#).is_err());
        assert!(parse_input(r#"{"dimension": 2, "generators": [[["1"]]]}"#).is_err());
        assert!(parse_input(r#"{"dimension": 1, "generators": [[["1/0"]]]}"#).is_err());
        assert!(parse_input(r#"{"dimension": 1, "generators": [[[1.5]]]}"#).is_err());
    }

    #[test]
    fn corpus_run_meets_expectations() {
        let run = run_corpus();
        assert!(
            run.all_as_expected,
            "unexpected outcomes: {:?}",
            run.entries
                .iter()
                .filter(|e| !e.as_expected)
                .map(|e| (e.name, e.outcome.clone()))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn corpus_run_is_deterministic() {
        let a = serde_json::to_string(&run_corpus()).unwrap();
        let b = serde_json::to_string(&run_corpus()).unwrap();
        assert_eq!(a, b);
    }
}
