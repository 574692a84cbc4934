use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::zmatrix::ZMatrix;

/// Integer lattice in Z^n, held as a canonical column Hermite basis.
///
/// Convention: the pivot of a basis vector is its last (bottom-most) nonzero
/// coordinate; pivots are positive and sit in strictly increasing rows from
/// the first basis vector to the last; at each pivot row, the entries of the
/// later basis vectors are reduced into [0, pivot). This form is unique per
/// lattice, so equal spans produce identical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Row index of each basis vector's pivot (strictly increasing).
    pub fn pivot_rows(&self) -> Vec<usize> {
        self.basis.iter().map(|v| pivot_row(v).unwrap()).collect()
    }

    /// Express `w` as an integer combination of the basis, if possible.
    /// Back-substitution from the bottom pivot upward; every division must be
    /// exact and the remainder must vanish.
    pub fn coordinates(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(w.len(), self.n, "dimension mismatch");
        let mut rem = w.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.basis.len()];
        for j in (0..self.basis.len()).rev() {
            let p = pivot_row(&self.basis[j]).unwrap();
            if !rem[p].is_zero() {
                let (q, r) = rem[p].div_rem(&self.basis[j][p]);
                if !r.is_zero() {
                    return None;
                }
                for (ri, bi) in rem.iter_mut().zip(&self.basis[j]) {
                    *ri -= &q * bi;
                }
                coeffs[j] = q;
            }
        }
        if rem.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, w: &[BigInt]) -> bool {
        self.coordinates(w).is_some()
    }

    /// Index [Z^n : L] for a full-rank lattice: |det| of the basis matrix.
    pub fn index_in_zn(&self) -> Option<BigInt> {
        if self.rank() != self.n {
            return None;
        }
        Some(self.basis_matrix().det().abs())
    }

    /// The n x rank matrix with the basis vectors as columns (square when
    /// full rank).
    pub fn basis_matrix(&self) -> ZMatrix {
        assert_eq!(self.rank(), self.n, "basis matrix requires full rank");
        let n = self.n;
        let mut m = ZMatrix::zeros(n);
        for (j, v) in self.basis.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, v[i].clone());
            }
        }
        m
    }
}

fn pivot_row(v: &[BigInt]) -> Option<usize> {
    v.iter().rposition(|e| !e.is_zero())
}

/// Canonical column Hermite basis of the integer span of `vectors`.
///
/// Zero vectors are absorbed; an all-zero input yields rank 0. The output is
/// canonical: any generating set with the same integer span produces the
/// identical basis.
///
/// Panics if `vectors` is empty or the dimensions disagree.
pub fn hnf_column(vectors: &[Vec<BigInt>]) -> Lattice {
    assert!(!vectors.is_empty(), "hnf_column needs at least one vector");
    let n = vectors[0].len();
    assert!(
        vectors.iter().all(|v| v.len() == n),
        "all vectors must have dimension {n}"
    );

    let mut cols: Vec<Vec<BigInt>> = vectors
        .iter()
        .filter(|v| v.iter().any(|e| !e.is_zero()))
        .cloned()
        .collect();

    // Sweep rows bottom-up. At row r all remaining columns are zero below r;
    // Euclidean column reductions leave at most one column nonzero at r,
    // which becomes the pivot column for this row.
    let mut pivots_desc: Vec<Vec<BigInt>> = Vec::new();
    for r in (0..n).rev() {
        loop {
            let active: Vec<usize> = (0..cols.len())
                .filter(|&c| !cols[c][r].is_zero())
                .collect();
            match active.len() {
                0 => break,
                1 => {
                    let mut piv = cols.remove(active[0]);
                    if piv[r].is_negative() {
                        for e in piv.iter_mut() {
                            *e = -std::mem::take(e);
                        }
                    }
                    pivots_desc.push(piv);
                    break;
                }
                _ => {
                    let &best = active
                        .iter()
                        .min_by_key(|&&c| cols[c][r].abs())
                        .unwrap();
                    for &c in &active {
                        if c == best {
                            continue;
                        }
                        let q = cols[c][r].div_floor(&cols[best][r]);
                        if !q.is_zero() {
                            for i in 0..n {
                                let t = &cols[c][i] - &q * &cols[best][i];
                                cols[c][i] = t;
                            }
                        }
                    }
                }
            }
        }
    }

    let mut basis: Vec<Vec<BigInt>> = pivots_desc.into_iter().rev().collect();

    // Off-pivot reduction: entries of later vectors at earlier pivot rows go
    // into [0, pivot). Working i downward keeps already-reduced rows intact.
    let pivot_rows: Vec<usize> = basis.iter().map(|v| pivot_row(v).unwrap()).collect();
    for j in 1..basis.len() {
        for i in (0..j).rev() {
            let p = pivot_rows[i];
            let q = basis[j][p].div_floor(&basis[i][p]);
            if !q.is_zero() {
                for k in 0..n {
                    let t = &basis[j][k] - &q * &basis[i][k];
                    basis[j][k] = t;
                }
            }
        }
    }

    Lattice { n, basis }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(vs: &[&[i64]]) -> Vec<Vec<BigInt>> {
        vs.iter()
            .map(|v| v.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    // Brute-force membership oracle: search small integer coefficients.
    fn member_brute(target: &[i64], gens: &[&[i64]], range: i64) -> bool {
        fn rec(gens: &[&[i64]], acc: &mut Vec<i64>, k: usize, range: i64, target: &[i64]) -> bool {
            if k == gens.len() {
                let n = target.len();
                return (0..n).all(|i| {
                    let s: i64 = acc.iter().zip(gens).map(|(c, g)| c * g[i]).sum();
                    s == target[i]
                });
            }
            for c in -range..=range {
                acc.push(c);
                if rec(gens, acc, k + 1, range, target) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        rec(gens, &mut Vec::new(), 0, range, target)
    }

    // Test-only Smith normal form: returns the invariant factors of a square
    // integer matrix. Independent route for cross-checking lattice indices.
    fn smith_invariants(m: &ZMatrix) -> Vec<BigInt> {
        let n = m.n();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
            .collect();
        let mut t = 0;
        while t < n {
            // find a nonzero entry in the remaining block
            let mut found = None;
            'scan: for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero() {
                        found = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((pi, pj)) = found else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let mut clean = true;
                for i in t + 1..n {
                    if !a[i][t].is_zero() {
                        let q = a[i][t].div_floor(&a[t][t]);
                        for j in t..n {
                            let v = &a[i][j] - &q * &a[t][j];
                            a[i][j] = v;
                        }
                        if !a[i][t].is_zero() {
                            a.swap(t, i);
                        }
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() {
                        let q = a[t][j].div_floor(&a[t][t]);
                        for row in a.iter_mut().take(n).skip(t) {
                            let v = &row[j] - &q * &row[t];
                            row[j] = v;
                        }
                        if !a[t][j].is_zero() {
                            for row in a.iter_mut() {
                                row.swap(t, j);
                            }
                        }
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            t += 1;
        }
        (0..n).map(|i| a[i][i].abs()).collect()
    }

    #[test]
    fn identity_columns() {
        let l = hnf_column(&vecs(&[&[1, 0], &[0, 1]]));
        assert_eq!(l.rank(), 2);
        assert_eq!(l.basis(), &vecs(&[&[1, 0], &[0, 1]])[..]);
    }

    #[test]
    fn mixed_generators_span_z2() {
        // oracle first: both unit vectors are small integer combinations
        let gens: Vec<&[i64]> = vec![&[2, 0], &[0, 3], &[1, 1]];
        assert!(member_brute(&[1, 0], &gens, 4));
        assert!(member_brute(&[0, 1], &gens, 4));
        let l = hnf_column(&vecs(&[&[2, 0], &[0, 3], &[1, 1]]));
        assert_eq!(l.rank(), 2);
        assert_eq!(l.basis(), &vecs(&[&[1, 0], &[0, 1]])[..]);
    }

    #[test]
    fn even_sublattice_index_four() {
        let l = hnf_column(&vecs(&[&[2, 0], &[0, 2]]));
        assert_eq!(l.basis(), &vecs(&[&[2, 0], &[0, 2]])[..]);
        // cross-check the index against the Smith normal form of the
        // generator matrix: product of invariant factors = 4
        let gen_matrix = ZMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        let invs = smith_invariants(&gen_matrix);
        let snf_index: BigInt = invs.iter().product();
        assert_eq!(l.index_in_zn().unwrap(), snf_index);
        assert_eq!(snf_index, BigInt::from(4));
    }

    #[test]
    fn zero_vectors_absorbed() {
        let l = hnf_column(&vecs(&[&[0, 0], &[3, 0], &[0, 0]]));
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis(), &vecs(&[&[3, 0]])[..]);
        let z = hnf_column(&vecs(&[&[0, 0, 0]]));
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn canonical_under_shuffle_and_combination() {
        let a = hnf_column(&vecs(&[&[4, 2, 0], &[1, 1, 1], &[0, 6, 2]]));
        let b = hnf_column(&vecs(&[&[0, 6, 2], &[4, 2, 0], &[1, 1, 1]]));
        // add integer combinations of the generators
        let c = hnf_column(&vecs(&[
            &[4, 2, 0],
            &[1, 1, 1],
            &[0, 6, 2],
            &[5, 3, 1],  // g0 + g1
            &[-4, 4, 2], // g2 - g0
        ]));
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn coordinates_roundtrip() {
        let l = hnf_column(&vecs(&[&[2, 0], &[1, 3]]));
        let w: Vec<BigInt> = vecs(&[&[3, 3]]).pop().unwrap();
        let c = l.coordinates(&w).unwrap();
        let mut back = vec![BigInt::zero(), BigInt::zero()];
        for (cj, bj) in c.iter().zip(l.basis()) {
            for i in 0..2 {
                back[i] += cj * &bj[i];
            }
        }
        assert_eq!(back, w);
        assert!(!l.contains(&vecs(&[&[1, 0]]).pop().unwrap()));
    }

    #[test]
    fn negative_pivot_normalized() {
        // single generator (-1, 1): bottom pivot is already positive, so the
        // vector is kept as-is; (1, -1) flips to (-1, 1)
        let l1 = hnf_column(&vecs(&[&[-1, 1]]));
        assert_eq!(l1.basis(), &vecs(&[&[-1, 1]])[..]);
        let l2 = hnf_column(&vecs(&[&[1, -1]]));
        assert_eq!(l2, l1);
    }
}
