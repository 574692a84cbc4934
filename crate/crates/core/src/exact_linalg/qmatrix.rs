use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use super::rational::{format_rational, is_integer, parse_rational, Rational};
use super::zmatrix::ZMatrix;
use super::LinalgError;

/// Square matrix over the rationals, stored row-major. Entries are always in
/// lowest terms, so structural equality is value equality and the manual
/// `Hash` below is consistent with `Eq`. That makes hash-set dedup in the
/// closure loop sound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl Hash for QMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        for e in &self.entries {
            e.numer().hash(state);
            e.denom().hash(state);
        }
    }
}

impl QMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        QMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        QMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Parse from whitespace-separated rational literals, one string per row:
    /// `QMatrix::parse_rows(&["0 -1", "1 -1"])`.
    pub fn parse_rows(rows: &[&str]) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let items: Vec<&str> = row.split_whitespace().collect();
            if items.len() != n {
                return Err(LinalgError::DimensionMismatch {
                    expected: n,
                    found: items.len(),
                });
            }
            for item in items {
                entries.push(parse_rational(item)?);
            }
        }
        Ok(QMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        QMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        QMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        QMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn transpose(&self) -> QMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.n {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Flatten to an n^2 coordinate vector (row-major), for span computations.
    pub fn vectorize(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    /// Lossless conversion to an integer matrix, if every entry is integral.
    pub fn to_integer(&self) -> Option<ZMatrix> {
        if self.entries.iter().all(is_integer) {
            Some(ZMatrix::new(
                self.n,
                self.entries.iter().map(|e| e.numer().clone()).collect(),
            ))
        } else {
            None
        }
    }

    pub fn rows_as_strings(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::rational::rat;

    #[test]
    fn product_is_exact() {
        let g = QMatrix::parse_rows(&["0 1/2", "2 0"]).unwrap();
        let gg = g.mul(&g);
        assert!(gg.is_identity());
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        assert!(QMatrix::parse_rows(&["1 2", "3"]).is_err());
    }

    #[test]
    fn to_integer_roundtrip() {
        let m = QMatrix::parse_rows(&["1 -2", "0 3"]).unwrap();
        let z = m.to_integer().unwrap();
        assert_eq!(z.to_q(), m);
        let half = QMatrix::parse_rows(&["1/2 0", "0 1"]).unwrap();
        assert!(half.to_integer().is_none());
    }

    #[test]
    fn hash_agrees_with_eq() {
        use std::collections::HashSet;
        let a = QMatrix::parse_rows(&["2/4 0", "0 1"]).unwrap();
        let b = QMatrix::parse_rows(&["1/2 0", "0 1"]).unwrap();
        assert_eq!(a, b);
        let mut set = HashSet::new();
        set.insert(a);
        assert!(set.contains(&b));
    }

    #[test]
    fn apply_column_vector() {
        let m = QMatrix::parse_rows(&["0 -1", "1 -1"]).unwrap();
        let v = m.apply(&[rat(1, 1), rat(0, 1)]);
        assert_eq!(v, vec![rat(0, 1), rat(1, 1)]);
    }
}
