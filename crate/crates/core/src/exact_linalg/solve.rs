use num_traits::{One, Zero};

use super::qmatrix::QMatrix;
use super::rational::Rational;

/// Incremental exact row-echelon accumulator for rational vectors. Supports
/// rank tracking and span-membership tests; the workhorse behind spinning,
/// span extraction, and subspace verification.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    // rows kept fully reduced: leading entry 1, pivot columns strictly
    // increasing, zeros above and below every pivot
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current rows; returns the remainder.
    fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = w[p].clone();
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi -= &c * ri;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        self.residual(v).iter().all(Zero::is_zero)
    }

    /// Insert `v` if it enlarges the span. Returns true when the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut w = self.residual(v);
        let Some(p) = w.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let lead = w[p].clone();
        for e in w.iter_mut() {
            if !e.is_zero() {
                *e /= &lead;
            } else {
                *e = Rational::zero();
            }
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (ri, wi) in row.iter_mut().zip(&w) {
                    *ri -= &c * wi;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }
}

/// Rank of a family of rational vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut ech = Echelon::new(vectors[0].len());
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Solve `sum_j c_j * columns[j] = b` exactly over the rationals. Returns one
/// particular solution (free coefficients set to 0) or `None` when the system
/// is inconsistent.
pub fn solve_linear(columns: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let k = columns.len();
    let m = b.len();
    assert!(
        columns.iter().all(|c| c.len() == m),
        "column/target dimension mismatch"
    );

    // Gaussian elimination on the augmented m x (k+1) system.
    let mut aug: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_cols: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..k {
        let Some(pr) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, pr);
        let inv = aug[r][c].clone();
        for e in aug[r].iter_mut() {
            *e /= &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=k {
                    let t = &aug[i][j] - &f * &aug[r][j];
                    aug[i][j] = t;
                }
            }
        }
        pivot_cols.push((r, c));
        r += 1;
        if r == m {
            break;
        }
    }

    // inconsistent iff some zero row has nonzero target
    for row in aug.iter().skip(r) {
        if !row[k].is_zero() {
            return None;
        }
    }

    let mut sol = vec![Rational::zero(); k];
    for &(pr, pc) in &pivot_cols {
        sol[pc] = aug[pr][k].clone();
    }
    Some(sol)
}

/// Basis of the right kernel {v : M v = 0}, via full reduction; deterministic
/// (one vector per free column, in column order).
pub fn nullspace(m: &QMatrix) -> Vec<Vec<Rational>> {
    let n = m.n();
    let mut ech = Echelon::new(n);
    for i in 0..n {
        ech.insert(m.row(i));
    }
    let pivots: Vec<usize> = ech.pivots.clone();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &p) in ech.rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Exact inverse by Gauss-Jordan; `None` when singular.
pub fn invert(m: &QMatrix) -> Option<QMatrix> {
    let n = m.n();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, pr);
        inv.swap(c, pr);
        let d = a[c][c].clone();
        for j in 0..n {
            a[c][j] /= &d;
            inv[c][j] /= &d;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let t1 = &a[i][j] - &f * &a[c][j];
                    a[i][j] = t1;
                    let t2 = &inv[i][j] - &f * &inv[c][j];
                    inv[i][j] = t2;
                }
            }
        }
    }
    Some(QMatrix::from_rows(inv))
}
