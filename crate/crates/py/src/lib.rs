//! Python bindings: construct finite matrix semigroups from generators and
//! run the verification pipeline from Python. Matrices cross the boundary as
//! nested lists of rational literals ("a/b" strings or plain integers);
//! reports come back as JSON strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use semibound::exact_linalg::{parse_rational, QMatrix, Rational};
use semibound::invariant::{is_irreducible, IrreducibilityVerdict, IrreducibleWitness};
use semibound::pipeline::{run_corpus, verify_bound, PipelineOptions};
use semibound::semigroup::{
    adjoin_zero, check_stability, closure, green_relations, is_aperiodic, DEFAULT_CAP,
};
use semibound::SemigroupTable;

fn parse_entry(cell: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let literal = if let Ok(s) = cell.extract::<String>() {
        s
    } else if let Ok(v) = cell.extract::<i64>() {
        v.to_string()
    } else {
        return Err(PyValueError::new_err(
            "matrix entries must be rational strings like \"1/2\" or integers",
        ));
    };
    parse_rational(&literal).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn parse_generators(generators: &Bound<'_, PyAny>) -> PyResult<Vec<QMatrix>> {
    let outer: &Bound<'_, PyList> = generators
        .cast()
        .map_err(|_| PyValueError::new_err("generators must be a list of matrices"))?;
    let mut out = Vec::with_capacity(outer.len());
    for matrix in outer.iter() {
        let rows: &Bound<'_, PyList> = matrix
            .cast()
            .map_err(|_| PyValueError::new_err("each generator must be a list of rows"))?;
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows.iter() {
            let cells: &Bound<'_, PyList> = row
                .cast()
                .map_err(|_| PyValueError::new_err("each row must be a list of entries"))?;
            if cells.len() != n {
                return Err(PyValueError::new_err(format!(
                    "row of length {} in a matrix with {} rows",
                    cells.len(),
                    n
                )));
            }
            for cell in cells.iter() {
                entries.push(parse_entry(&cell)?);
            }
        }
        out.push(QMatrix::new(n, entries));
    }
    if out.is_empty() {
        return Err(PyValueError::new_err("at least one generator is required"));
    }
    Ok(out)
}

/// A closed finite matrix semigroup with its product table.
#[pyclass]
struct MatrixSemigroup {
    table: SemigroupTable,
}

#[pymethods]
impl MatrixSemigroup {
    /// MatrixSemigroup(generators, cap=100000, with_zero=False)
    #[new]
    #[pyo3(signature = (generators, cap = DEFAULT_CAP, with_zero = false))]
    fn new(generators: &Bound<'_, PyAny>, cap: usize, with_zero: bool) -> PyResult<Self> {
        let gens = parse_generators(generators)?;
        let table = closure(&gens, cap).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let table = if with_zero { adjoin_zero(&table) } else { table };
        Ok(MatrixSemigroup { table })
    }

    fn size(&self) -> usize {
        self.table.size()
    }

    fn dimension(&self) -> usize {
        self.table.n()
    }

    fn zero_index(&self) -> Option<usize> {
        self.table.zero_index()
    }

    fn elements(&self) -> Vec<Vec<Vec<String>>> {
        self.table
            .elements()
            .iter()
            .map(|m| m.rows_as_strings())
            .collect()
    }

    /// Index of elements[i] * elements[j].
    fn product(&self, i: usize, j: usize) -> PyResult<usize> {
        let m = self.table.size();
        if i >= m || j >= m {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.table.product(i, j))
    }

    fn idempotents(&self) -> Vec<usize> {
        self.table.idempotents()
    }

    fn is_aperiodic(&self) -> bool {
        is_aperiodic(&self.table)
    }

    fn is_stable(&self) -> bool {
        check_stability(&self.table).stable
    }

    fn adjoin_zero(&self) -> MatrixSemigroup {
        MatrixSemigroup {
            table: adjoin_zero(&self.table),
        }
    }

    /// Green class counts as {"r": ..., "l": ..., "j": ..., "h": ...}.
    fn green_class_counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let green = green_relations(&self.table);
        let dict = PyDict::new(py);
        dict.set_item("r", green.r_classes().len())?;
        dict.set_item("l", green.l_classes().len())?;
        dict.set_item("j", green.j_classes().len())?;
        dict.set_item("h", green.h_classes().len())?;
        Ok(dict)
    }

    /// Irreducibility verdict: {"verdict": ..., "certificate_kind": ...,
    /// "invariant_subspace": ...}.
    fn irreducibility<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let dict = PyDict::new(py);
        match is_irreducible(&self.table) {
            IrreducibilityVerdict::Irreducible(w) => {
                dict.set_item("verdict", "irreducible")?;
                dict.set_item(
                    "certificate_kind",
                    match w {
                        IrreducibleWitness::FullSpan => "full-span",
                        IrreducibleWitness::Norton => "norton",
                    },
                )?;
            }
            IrreducibilityVerdict::Reducible(subspace) => {
                dict.set_item("verdict", "reducible")?;
                let basis: Vec<Vec<String>> = subspace
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(semibound::exact_linalg::format_rational)
                            .collect()
                    })
                    .collect();
                dict.set_item("invariant_subspace", basis)?;
            }
            IrreducibilityVerdict::Inconclusive => {
                dict.set_item("verdict", "inconclusive")?;
            }
        }
        Ok(dict)
    }

    /// Run the whole verification chain on this semigroup's elements and
    /// return the report (or structured failure) as a JSON string.
    #[pyo3(signature = (prime = None, cap = DEFAULT_CAP))]
    fn verify_bound(&self, prime: Option<u64>, cap: usize) -> PyResult<String> {
        let options = PipelineOptions {
            cap,
            prime_override: prime,
        };
        match verify_bound(self.table.elements(), &options) {
            Ok(report) => Ok(report.to_json()),
            Err(e) => serde_json::to_string_pretty(&e.to_json())
                .map_err(|e| PyRuntimeError::new_err(e.to_string())),
        }
    }

    fn __len__(&self) -> usize {
        self.table.size()
    }

    fn __repr__(&self) -> String {
        format!(
            "MatrixSemigroup(size={}, dimension={})",
            self.table.size(),
            self.table.n()
        )
    }
}

/// Verify the size bound for a generating set; returns the report or the
/// structured failure as a JSON string.
#[pyfunction]
#[pyo3(signature = (generators, cap = DEFAULT_CAP, prime = None))]
fn verify_bound_json(
    generators: &Bound<'_, PyAny>,
    cap: usize,
    prime: Option<u64>,
) -> PyResult<String> {
    let gens = parse_generators(generators)?;
    let options = PipelineOptions {
        cap,
        prime_override: prime,
    };
    match verify_bound(&gens, &options) {
        Ok(report) => Ok(report.to_json()),
        Err(e) => serde_json::to_string_pretty(&e.to_json())
            .map_err(|e| PyRuntimeError::new_err(e.to_string())),
    }
}

/// Names of the built-in example semigroups.
#[pyfunction]
fn corpus_names() -> Vec<&'static str> {
    semibound::corpus::corpus()
        .into_iter()
        .map(|e| e.name)
        .collect()
}

/// Run the verification over the whole corpus; returns the aggregate report
/// as a JSON string.
#[pyfunction]
fn corpus_run_json() -> PyResult<String> {
    serde_json::to_string_pretty(&run_corpus()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn semibound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<MatrixSemigroup>()?;
    m.add_function(wrap_pyfunction!(verify_bound_json, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_run_json, m)?)?;
    Ok(())
}
