//! Ideal structure of a finite semigroup with zero, and the two structural
//! facts the size bound rests on, each checked exhaustively per instance:
//! faithfulness of the action on a 0-minimal ideal, and the two-part
//! injectivity criterion for homomorphisms out of such semigroups.

use num_traits::Zero;
use thiserror::Error;

use crate::exact_linalg::{solve_linear, FpMatrix, QMatrix, Rational};
use crate::semigroup::{green_relations, principal_ideal, MaximalSubgroup, SemigroupTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("semigroup has no zero element")]
    NoZero,
    #[error("semigroup has no nonzero element")]
    ZeroOnly,
    #[error("image table is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("semigroup is not generalized group mapping over the given data: {0}")]
    NotGGM(String),
    #[error("source H-class and target subgroup lie in different J-classes")]
    NotSameJClass,
    #[error("source is not an H-class")]
    NotHClass,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Two-sided ideal of S, as a sorted set of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub element_indices: Vec<usize>,
}

impl Ideal {
    pub fn len(&self) -> usize {
        self.element_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.element_indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.element_indices.binary_search(&i).is_ok()
    }

    /// Exhaustive closure check: s*i and i*s stay in the ideal for every
    /// s in S and i in the ideal.
    pub fn verify(&self, table: &SemigroupTable) -> bool {
        self.element_indices.iter().all(|&i| {
            (0..table.size()).all(|s| {
                self.contains(table.product(s, i)) && self.contains(table.product(i, s))
            })
        })
    }
}

/// A 0-minimal ideal: J ∪ {0} for a J-class J minimal among the nonzero
/// classes, verified to contain no proper nonzero ideal. When several
/// 0-minimal ideals exist the one whose J-class holds the lowest element
/// index is returned, for determinism.
pub fn zero_minimal_ideal(table: &SemigroupTable) -> Result<Ideal, StructureError> {
    let z = table.zero_index().ok_or(StructureError::NoZero)?;
    if table.size() == 1 {
        return Err(StructureError::ZeroOnly);
    }
    for s in 0..table.size() {
        if s == z {
            continue;
        }
        let pi = principal_ideal(table, s);
        if !pi.contains(&z) {
            continue;
        }
        // 0-minimal iff the principal ideal of s is exactly J(s) ∪ {0},
        // i.e. every nonzero member generates the same ideal
        let minimal = pi
            .iter()
            .all(|&t| t == z || principal_ideal(table, t) == pi);
        if minimal {
            let ideal = Ideal {
                element_indices: pi,
            };
            if !ideal.verify(table) {
                return Err(StructureError::Internal(
                    "principal ideal failed the ideal closure check".into(),
                ));
            }
            return Ok(ideal);
        }
    }
    Err(StructureError::Internal(
        "no 0-minimal ideal found in a finite semigroup with zero".into(),
    ))
}

/// Every distinct 0-minimal ideal, by exhaustive scan over principal ideals.
/// Generalized group mapping semigroups have exactly one; the uniqueness is
/// checked per instance rather than assumed.
pub fn all_zero_minimal_ideals(table: &SemigroupTable) -> Result<Vec<Ideal>, StructureError> {
    let z = table.zero_index().ok_or(StructureError::NoZero)?;
    let mut found: Vec<Ideal> = Vec::new();
    for s in 0..table.size() {
        if s == z {
            continue;
        }
        let pi = principal_ideal(table, s);
        if !pi.contains(&z) {
            continue;
        }
        let minimal = pi
            .iter()
            .all(|&t| t == z || principal_ideal(table, t) == pi);
        if minimal && !found.iter().any(|i| i.element_indices == pi) {
            found.push(Ideal {
                element_indices: pi,
            });
        }
    }
    Ok(found)
}

/// 0-simplicity of an ideal viewed as a semigroup on its own: I² ≠ 0 and no
/// proper nonzero ideal of I, both checked exhaustively.
pub fn is_zero_simple(table: &SemigroupTable, ideal: &Ideal) -> Result<bool, StructureError> {
    let z = table.zero_index().ok_or(StructureError::NoZero)?;
    if !ideal.contains(z) {
        return Err(StructureError::Internal(
            "ideal does not contain the zero element".into(),
        ));
    }
    let members = &ideal.element_indices;
    let square_nonzero = members
        .iter()
        .any(|&a| members.iter().any(|&b| table.product(a, b) != z));
    if !square_nonzero {
        return Ok(false);
    }
    // principal ideals within I: {s} ∪ sI ∪ Is ∪ IsI must exhaust I for
    // every nonzero s
    for &s in members {
        if s == z {
            continue;
        }
        let mut reach: Vec<usize> = vec![s];
        for &x in members {
            reach.push(table.product(s, x));
            reach.push(table.product(x, s));
            let xs = table.product(x, s);
            for &y in members {
                reach.push(table.product(xs, y));
            }
        }
        reach.sort_unstable();
        reach.dedup();
        if reach.len() != members.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of the generalized-group-mapping check: does S act faithfully on
/// both the left and the right of a 0-minimal ideal?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GGMReport {
    pub ideal: Ideal,
    pub left_faithful: bool,
    pub right_faithful: bool,
    /// First pair (s, t), s < t, acting identically on the left of the ideal.
    pub left_witness: Option<(usize, usize)>,
    pub right_witness: Option<(usize, usize)>,
}

impl GGMReport {
    pub fn is_ggm(&self) -> bool {
        self.left_faithful && self.right_faithful
    }
}

/// Compute a 0-minimal ideal and test faithfulness of both actions on it,
/// exhaustively over all pairs of elements.
pub fn verify_ggm(table: &SemigroupTable) -> Result<GGMReport, StructureError> {
    let ideal = zero_minimal_ideal(table)?;
    let m = table.size();
    let mut left_witness = None;
    let mut right_witness = None;
    'left: for s in 0..m {
        for t in s + 1..m {
            if ideal
                .element_indices
                .iter()
                .all(|&x| table.product(s, x) == table.product(t, x))
            {
                left_witness = Some((s, t));
                break 'left;
            }
        }
    }
    'right: for s in 0..m {
        for t in s + 1..m {
            if ideal
                .element_indices
                .iter()
                .all(|&x| table.product(x, s) == table.product(x, t))
            {
                right_witness = Some((s, t));
                break 'right;
            }
        }
    }
    Ok(GGMReport {
        ideal,
        left_faithful: left_witness.is_none(),
        right_faithful: right_witness.is_none(),
        left_witness,
        right_witness,
    })
}

/// Witness that the identity matrix lies in the rational span of an ideal's
/// elements: support indices and coefficients with Σ cᵢ·sᵢ = 1 exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanCertificate {
    pub support: Vec<usize>,
    pub coefficients: Vec<Rational>,
}

impl SpanCertificate {
    /// Re-evaluate the combination; the result must be the identity.
    pub fn reconstruct(&self, table: &SemigroupTable) -> QMatrix {
        let n = table.n();
        let mut acc = QMatrix::zeros(n);
        for (&i, c) in self.support.iter().zip(&self.coefficients) {
            let mut term = table.element(i).clone();
            for r in 0..n {
                for s in 0..n {
                    term.set(r, s, term.get(r, s) * c);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// Solve Σ cᵢ·sᵢ = 1 over the ideal's elements (viewed as n²-vectors).
/// Returns `None` when the identity is outside the span.
pub fn span_contains_identity(table: &SemigroupTable, ideal: &Ideal) -> Option<SpanCertificate> {
    let n = table.n();
    let columns: Vec<Vec<Rational>> = ideal
        .element_indices
        .iter()
        .map(|&i| table.element(i).vectorize())
        .collect();
    let target = QMatrix::identity(n).vectorize();
    let coeffs = solve_linear(&columns, &target)?;
    let mut support = Vec::new();
    let mut coefficients = Vec::new();
    for (&idx, c) in ideal.element_indices.iter().zip(coeffs) {
        if !c.is_zero() {
            support.push(idx);
            coefficients.push(c);
        }
    }
    Some(SpanCertificate {
        support,
        coefficients,
    })
}

/// Pairwise distinctness of a full image table — the ground truth that the
/// injectivity criterion is checked against.
pub fn images_pairwise_distinct(images: &[FpMatrix]) -> bool {
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] == images[j] {
                return false;
            }
        }
    }
    true
}

/// The two-part injectivity criterion for a homomorphic image of a
/// generalized group mapping semigroup: no nonzero ideal element may share
/// the image of 0, and the restriction to the maximal subgroup must be
/// injective. The preconditions (image is a homomorphism; S is GGM with this
/// ideal; G is a maximal subgroup of the ideal) are all verified, since the
/// image is a materialized table rather than trusted code.
pub fn injectivity_criterion(
    table: &SemigroupTable,
    ideal: &Ideal,
    group: &MaximalSubgroup,
    images: &[FpMatrix],
) -> Result<bool, StructureError> {
    let m = table.size();
    if images.len() != m {
        return Err(StructureError::NotHomomorphism(format!(
            "image table has {} entries for {} elements",
            images.len(),
            m
        )));
    }
    for i in 0..m {
        for j in 0..m {
            if images[table.product(i, j)] != images[i].mul(&images[j]) {
                return Err(StructureError::NotHomomorphism(format!(
                    "image({i}*{j}) differs from image({i})*image({j})"
                )));
            }
        }
    }
    let report = verify_ggm(table)?;
    if !report.is_ggm() {
        return Err(StructureError::NotGGM(format!(
            "action not faithful: left witness {:?}, right witness {:?}",
            report.left_witness, report.right_witness
        )));
    }
    if report.ideal != *ideal {
        return Err(StructureError::NotGGM(
            "given ideal is not the 0-minimal ideal of S".into(),
        ));
    }
    let z = table.zero_index().ok_or(StructureError::NoZero)?;
    let e = group.identity_index;
    if e == z || !ideal.contains(e) || table.product(e, e) != e {
        return Err(StructureError::NotGGM(
            "subgroup identity is not a nonzero idempotent of the ideal".into(),
        ));
    }
    let green = green_relations(table);
    let h: Vec<usize> = green.h_class_members(green.h_class_of(e)).to_vec();
    if h != group.element_indices {
        return Err(StructureError::NotGGM(
            "given subgroup is not the maximal subgroup at its identity".into(),
        ));
    }

    let zero_separated = ideal
        .element_indices
        .iter()
        .all(|&i| i == z || images[i] != images[z]);
    let group_injective = {
        let g = &group.element_indices;
        (0..g.len()).all(|a| (a + 1..g.len()).all(|b| images[g[a]] != images[g[b]]))
    };
    Ok(zero_separated && group_injective)
}

/// Find (a, b) in S × S such that r ↦ a·r·b maps `h_source` bijectively onto
/// the maximal subgroup G; candidates are scanned in index order and the
/// first verified bijection wins. When the source already is G, (e, e) is
/// returned directly.
pub fn green_translation(
    table: &SemigroupTable,
    h_source: &[usize],
    group: &MaximalSubgroup,
) -> Result<(usize, usize), StructureError> {
    if h_source.is_empty() {
        return Err(StructureError::NotHClass);
    }
    let green = green_relations(table);
    let mut sorted_source = h_source.to_vec();
    sorted_source.sort_unstable();
    if green.h_class_members(green.h_class_of(sorted_source[0])) != sorted_source {
        return Err(StructureError::NotHClass);
    }
    if green.j_class_of(sorted_source[0]) != green.j_class_of(group.identity_index) {
        return Err(StructureError::NotSameJClass);
    }
    if sorted_source == group.element_indices {
        let e = group.identity_index;
        return Ok((e, e));
    }
    let m = table.size();
    let target = &group.element_indices;
    for a in 0..m {
        'next_b: for b in 0..m {
            let mut seen: Vec<usize> = Vec::with_capacity(sorted_source.len());
            for &r in &sorted_source {
                let image = table.product(table.product(a, r), b);
                if !target.contains(&image) || seen.contains(&image) {
                    continue 'next_b;
                }
                seen.push(image);
            }
            if seen.len() == target.len() {
                return Ok((a, b));
            }
        }
    }
    Err(StructureError::Internal(
        "no translation pair found; Green's lemma guarantees one exists".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{mod_p_reduce, QMatrix};
    use crate::semigroup::{adjoin_zero, closure, maximal_subgroup_at};

    fn qm(rows: &[&str]) -> QMatrix {
        QMatrix::parse_rows(rows).unwrap()
    }

    fn brandt_b2() -> SemigroupTable {
        closure(&[qm(&["0 1", "0 0"]), qm(&["0 0", "1 0"])], 100).unwrap()
    }

    fn sign_semigroup() -> SemigroupTable {
        adjoin_zero(&closure(&[qm(&["-1"])], 100).unwrap())
    }

    fn b2_with_identity() -> SemigroupTable {
        closure(
            &[qm(&["0 1", "0 0"]), qm(&["0 0", "1 0"]), QMatrix::identity(2)],
            100,
        )
        .unwrap()
    }

    fn images_mod(table: &SemigroupTable, p: u64) -> Vec<FpMatrix> {
        table
            .elements()
            .iter()
            .map(|m| mod_p_reduce(&m.to_integer().unwrap(), p).unwrap())
            .collect()
    }

    #[test]
    fn zero_minimal_of_b2_with_identity() {
        let s = b2_with_identity();
        assert_eq!(s.size(), 6);
        let ideal = zero_minimal_ideal(&s).unwrap();
        assert_eq!(ideal.len(), 5);
        // the ideal is B2: everything except the adjoined identity
        let id_idx = s.index_of(&QMatrix::identity(2)).unwrap();
        assert!(!ideal.contains(id_idx));
        assert!(ideal.verify(&s));
    }

    #[test]
    fn zero_minimal_whole_semigroup_cases() {
        let signs = sign_semigroup();
        let ideal = zero_minimal_ideal(&signs).unwrap();
        assert_eq!(ideal.len(), 3);

        let b2 = brandt_b2();
        let ideal = zero_minimal_ideal(&b2).unwrap();
        assert_eq!(ideal.len(), 5);

        assert_eq!(
            zero_minimal_ideal(&closure(&[qm(&["1"])], 10).unwrap()),
            Err(StructureError::NoZero)
        );
    }

    #[test]
    fn zero_simplicity() {
        let b2 = brandt_b2();
        let all = Ideal {
            element_indices: (0..b2.size()).collect(),
        };
        assert_eq!(is_zero_simple(&b2, &all), Ok(true));

        // {1, 0}: 1*1 != 0
        let unit = adjoin_zero(&closure(&[qm(&["1"])], 10).unwrap());
        let all = Ideal {
            element_indices: (0..unit.size()).collect(),
        };
        assert_eq!(is_zero_simple(&unit, &all), Ok(true));

        // {E12, 0}: the square is zero
        let nil = closure(&[qm(&["0 1", "0 0"])], 10).unwrap();
        assert_eq!(nil.size(), 2);
        let all = Ideal {
            element_indices: (0..nil.size()).collect(),
        };
        assert_eq!(is_zero_simple(&nil, &all), Ok(false));
    }

    #[test]
    fn ggm_faithful_cases() {
        for s in [b2_with_identity(), sign_semigroup()] {
            let report = verify_ggm(&s).unwrap();
            assert!(report.left_faithful && report.right_faithful);
            assert_eq!(report.left_witness, None);
            assert_eq!(report.right_witness, None);
        }
        // for a non-irreducible semigroup the report is descriptive:
        // in {I2, e=diag(1,0), 0} the 0-minimal ideal is {e, 0}, and I2 and e
        // act identically on it from both sides
        let s = adjoin_zero(&closure(&[QMatrix::identity(2), qm(&["1 0", "0 0"])], 10).unwrap());
        assert_eq!(s.size(), 3);
        let report = verify_ggm(&s).unwrap();
        assert_eq!(report.ideal.element_indices, vec![1, 2]);
        assert!(!report.left_faithful && !report.right_faithful);
        assert_eq!(report.left_witness, Some((0, 1)));
        assert_eq!(report.right_witness, Some((0, 1)));
    }

    #[test]
    fn ggm_witness_on_unfaithful_semigroup() {
        // left-zero-ish example: rank-one idempotents e=diag(1,0) and
        // f=[[1,1],[0,0]] satisfy ef=f, fe=e; closure is {e, f, 0} after
        // adjoining zero, and both act identically on the left of the ideal
        let e = qm(&["1 0", "0 0"]);
        let f = qm(&["1 1", "0 0"]);
        let s = adjoin_zero(&closure(&[e, f], 10).unwrap());
        assert_eq!(s.size(), 3);
        let report = verify_ggm(&s).unwrap();
        assert!(!report.left_faithful || !report.right_faithful);
        let (a, b) = report.left_witness.or(report.right_witness).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn ggm_semigroups_have_unique_zero_minimal_ideal() {
        for s in [b2_with_identity(), sign_semigroup(), brandt_b2()] {
            assert!(verify_ggm(&s).unwrap().is_ggm());
            let all = all_zero_minimal_ideals(&s).unwrap();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0], zero_minimal_ideal(&s).unwrap());
        }
        // a semigroup with two 0-minimal ideals, neither faithful: the
        // deterministic pick is the one holding the lowest element index
        let e11 = qm(&["1 0", "0 0"]);
        let e22 = qm(&["0 0", "0 1"]);
        let s = adjoin_zero(&closure(&[e11, e22], 10).unwrap());
        let all = all_zero_minimal_ideals(&s).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(zero_minimal_ideal(&s).unwrap(), all[0]);
        assert!(zero_minimal_ideal(&s).unwrap().contains(0));
    }

    #[test]
    fn span_certificates() {
        // B2: 1*E11 + 1*E22 = I2
        let b2 = brandt_b2();
        let ideal = zero_minimal_ideal(&b2).unwrap();
        let cert = span_contains_identity(&b2, &ideal).unwrap();
        assert!(cert.reconstruct(&b2).is_identity());

        // sign semigroup: 1*(1) = 1
        let signs = sign_semigroup();
        let ideal = zero_minimal_ideal(&signs).unwrap();
        let cert = span_contains_identity(&signs, &ideal).unwrap();
        assert!(cert.reconstruct(&signs).is_identity());

        // {E12, 0}: identity not in the span
        let nil = closure(&[qm(&["0 1", "0 0"])], 10).unwrap();
        let all = Ideal {
            element_indices: (0..nil.size()).collect(),
        };
        assert_eq!(span_contains_identity(&nil, &all), None);
    }

    #[test]
    fn injectivity_criterion_sign_semigroup() {
        let signs = sign_semigroup();
        let green = green_relations(&signs);
        let ideal = zero_minimal_ideal(&signs).unwrap();
        let one = signs.index_of(&qm(&["1"])).unwrap();
        let group = maximal_subgroup_at(&signs, &green, one).unwrap();

        // mod 3: images {1, 2, 0} distinct
        let im3 = images_mod(&signs, 3);
        assert_eq!(
            injectivity_criterion(&signs, &ideal, &group, &im3),
            Ok(true)
        );
        assert!(images_pairwise_distinct(&im3));

        // mod 2: 1 and -1 collide inside G
        let im2 = images_mod(&signs, 2);
        assert_eq!(
            injectivity_criterion(&signs, &ideal, &group, &im2),
            Ok(false)
        );
        assert!(!images_pairwise_distinct(&im2));
    }

    #[test]
    fn injectivity_criterion_validates_preconditions() {
        let signs = sign_semigroup();
        let green = green_relations(&signs);
        let ideal = zero_minimal_ideal(&signs).unwrap();
        let one = signs.index_of(&qm(&["1"])).unwrap();
        let group = maximal_subgroup_at(&signs, &green, one).unwrap();

        // corrupt the image table: not a homomorphism
        let mut bad = images_mod(&signs, 3);
        bad.swap(0, 1);
        assert!(matches!(
            injectivity_criterion(&signs, &ideal, &group, &bad),
            Err(StructureError::NotHomomorphism(_))
        ));

        // wrong ideal
        let fake = Ideal {
            element_indices: vec![signs.zero_index().unwrap()],
        };
        assert!(matches!(
            injectivity_criterion(&signs, &fake, &group, &images_mod(&signs, 3)),
            Err(StructureError::NotGGM(_))
        ));
    }

    #[test]
    fn criterion_equals_ground_truth_on_identity_image() {
        // the identity map on a GGM semigroup: criterion true, injective
        let b2 = brandt_b2();
        let ideal = zero_minimal_ideal(&b2).unwrap();
        let green = green_relations(&b2);
        let e11 = b2.index_of(&qm(&["1 0", "0 0"])).unwrap();
        let group = maximal_subgroup_at(&b2, &green, e11).unwrap();
        let im = images_mod(&b2, 2); // B2 is 0/1; mod 2 is faithful
        assert_eq!(injectivity_criterion(&b2, &ideal, &group, &im), Ok(true));
        assert!(images_pairwise_distinct(&im));
    }

    #[test]
    fn green_translation_examples() {
        let b2 = brandt_b2();
        let green = green_relations(&b2);
        let e11 = b2.index_of(&qm(&["1 0", "0 0"])).unwrap();
        let e22 = b2.index_of(&qm(&["0 0", "0 1"])).unwrap();
        let e12 = b2.index_of(&qm(&["0 1", "0 0"])).unwrap();
        let e21 = b2.index_of(&qm(&["0 0", "1 0"])).unwrap();

        // h_source = G: identity pair
        let g_at_e11 = maximal_subgroup_at(&b2, &green, e11).unwrap();
        assert_eq!(green_translation(&b2, &[e11], &g_at_e11), Ok((e11, e11)));

        // {E12} -> {E11} via (E11, E21): E11*E12*E21 = E11
        let (a, b) = green_translation(&b2, &[e12], &g_at_e11).unwrap();
        assert_eq!((a, b), (e11, e21));

        // {E21} -> {E22} via (E22, E12)
        let g_at_e22 = maximal_subgroup_at(&b2, &green, e22).unwrap();
        let (a, b) = green_translation(&b2, &[e21], &g_at_e22).unwrap();
        assert_eq!((a, b), (e22, e12));

        // different J-classes: 0 vs units
        let z = b2.zero_index().unwrap();
        assert_eq!(
            green_translation(&b2, &[z], &g_at_e11),
            Err(StructureError::NotSameJClass)
        );
    }

    #[test]
    fn separation_lemma_instances() {
        // for GGM S: s = t iff x*s*y = x*t*y for all x, y in the ideal
        for s in [b2_with_identity(), sign_semigroup(), brandt_b2()] {
            let report = verify_ggm(&s).unwrap();
            assert!(report.is_ggm());
            let ideal = &report.ideal;
            for a in 0..s.size() {
                for b in 0..s.size() {
                    let all_equal = ideal.element_indices.iter().all(|&x| {
                        ideal.element_indices.iter().all(|&y| {
                            s.product(s.product(x, a), y) == s.product(s.product(x, b), y)
                        })
                    });
                    assert_eq!(all_equal, a == b, "separation failed for {a}, {b}");
                }
            }
        }
    }
}
