//! The number-theoretic half of the verification: conjugate the semigroup
//! into integer matrices via an invariant lattice, normalize an idempotent to
//! diag(1_r, 0) by a unimodular change of basis, reduce everything mod p, and
//! check the Minkowski torsion conditions on the resulting group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::{
    hnf_column, invert, is_unimodular, mod_p_reduce, FpMatrix, QMatrix, ZMatrix,
};
use crate::semigroup::{MaximalSubgroup, SemigroupTable};
use crate::structure::Ideal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("matrix is not a nonzero idempotent")]
    NotIdempotent,
    #[error("group element {0} is not invertible over the integers")]
    NotInvertible(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Change of basis conjugating S into integer matrices. The columns of
/// `basis_matrix` form an integral basis of the S-invariant lattice generated
/// by the standard basis together with all columns of all elements.
#[derive(Debug, Clone)]
pub struct ConjugationCertificate {
    pub basis_matrix: QMatrix,
    pub inverse: QMatrix,
    /// conjugated[i] = B⁻¹ · element[i] · B, index-for-index with the table.
    pub conjugated: Vec<ZMatrix>,
}

/// Conjugate a finite semigroup of rational matrices into integer matrices.
///
/// The invariant lattice L is generated by the standard basis vectors plus
/// every column of every element; closure of S makes L invariant, and it has
/// full rank because it contains the standard basis. The product table is
/// preserved index-for-index since conjugation is a ring isomorphism.
pub fn integralize(table: &SemigroupTable) -> Result<ConjugationCertificate, ArithmeticError> {
    let n = table.n();
    // scale all generating columns by a common denominator, take the Hermite
    // basis over the integers, then scale back
    let mut columns: Vec<Vec<crate::exact_linalg::Rational>> = Vec::new();
    for j in 0..n {
        let mut e = vec![crate::exact_linalg::Rational::zero(); n];
        e[j] = crate::exact_linalg::Rational::one();
        columns.push(e);
    }
    for m in table.elements() {
        for j in 0..n {
            columns.push(m.column(j));
        }
    }
    let mut denom = BigInt::one();
    for col in &columns {
        for e in col {
            denom = denom.lcm(e.denom());
        }
    }
    let scaled: Vec<Vec<BigInt>> = columns
        .iter()
        .map(|col| col.iter().map(|e| e.numer() * (&denom / e.denom())).collect())
        .collect();
    let lattice = hnf_column(&scaled);
    if lattice.rank() != n {
        return Err(ArithmeticError::Internal(
            "invariant lattice is not full rank despite containing the standard basis".into(),
        ));
    }
    let scaled_basis = lattice.basis_matrix().to_q();
    let scale_inv = crate::exact_linalg::Rational::new(BigInt::one(), denom);
    let mut basis_matrix = QMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            basis_matrix.set(i, j, scaled_basis.get(i, j) * &scale_inv);
        }
    }
    let inverse = invert(&basis_matrix)
        .ok_or_else(|| ArithmeticError::Internal("lattice basis not invertible".into()))?;

    let mut conjugated = Vec::with_capacity(table.size());
    for m in table.elements() {
        let c = inverse.mul(m).mul(&basis_matrix);
        let z = c.to_integer().ok_or_else(|| {
            ArithmeticError::Internal("conjugated element has a non-integer entry".into())
        })?;
        conjugated.push(z);
    }
    Ok(ConjugationCertificate {
        basis_matrix,
        inverse,
        conjugated,
    })
}

/// Unimodular change of basis aligning Z^n with eZ^n ⊕ (1-e)Z^n, so that the
/// idempotent becomes diag(1_r, 0) exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub u: ZMatrix,
    pub u_inv: ZMatrix,
    /// Rank of the idempotent.
    pub r: usize,
    pub conjugated_idempotent: ZMatrix,
}

impl AdaptedBasis {
    /// U⁻¹ · m · U.
    pub fn conjugate(&self, m: &ZMatrix) -> ZMatrix {
        self.u_inv.mul(m).mul(&self.u)
    }
}

/// Build the adapted basis for a nonzero integral idempotent: U's columns are
/// the Hermite bases of the column lattices of e and of I - e, concatenated.
pub fn adapt_idempotent_basis(e: &ZMatrix) -> Result<AdaptedBasis, ArithmeticError> {
    let n = e.n();
    if e.is_zero() || e.mul(e) != *e {
        return Err(ArithmeticError::NotIdempotent);
    }
    let e_cols: Vec<Vec<BigInt>> = (0..n).map(|j| e.column(j)).collect();
    let complement = ZMatrix::identity(n).sub(e);
    let c_cols: Vec<Vec<BigInt>> = (0..n).map(|j| complement.column(j)).collect();

    let image = hnf_column(&e_cols);
    let coimage = hnf_column(&c_cols);
    let r = image.rank();
    if r + coimage.rank() != n {
        return Err(ArithmeticError::Internal(
            "column lattices of e and 1-e do not sum to full rank".into(),
        ));
    }
    let mut u = ZMatrix::zeros(n);
    for (j, col) in image.basis().iter().chain(coimage.basis()).enumerate() {
        for i in 0..n {
            u.set(i, j, col[i].clone());
        }
    }
    if !is_unimodular(&u) {
        return Err(ArithmeticError::Internal(
            "adapted basis is not unimodular".into(),
        ));
    }
    let u_inv_q = invert(&u.to_q())
        .ok_or_else(|| ArithmeticError::Internal("unimodular matrix not invertible".into()))?;
    let u_inv = u_inv_q
        .to_integer()
        .ok_or_else(|| ArithmeticError::Internal("inverse of unimodular matrix not integral".into()))?;

    let conjugated_idempotent = u_inv.mul(e).mul(&u);
    // must be exactly diag(1_r, 0)
    let mut expected = ZMatrix::zeros(n);
    for i in 0..r {
        expected.set(i, i, BigInt::one());
    }
    if conjugated_idempotent != expected {
        return Err(ArithmeticError::Internal(
            "adapted idempotent is not diag(1_r, 0)".into(),
        ));
    }
    Ok(AdaptedBasis {
        u,
        u_inv,
        r,
        conjugated_idempotent,
    })
}

/// p = 2 when |G| is odd, p = 3 when |G| is even.
pub fn choose_prime(group: &MaximalSubgroup) -> u64 {
    if group.order % 2 == 1 {
        2
    } else {
        3
    }
}

/// The full mod-p image of an integral semigroup: one FpMatrix per element,
/// plus the two flags the injectivity criterion needs.
#[derive(Debug, Clone)]
pub struct ModpImage {
    pub p: u64,
    pub images: Vec<FpMatrix>,
    /// All images pairwise distinct.
    pub injective: bool,
    /// No nonzero ideal element maps to the image of 0 (the zero matrix).
    pub zero_separated: bool,
}

impl ModpImage {
    /// Number of distinct images — the raw |π(S)| count.
    pub fn distinct_count(&self) -> usize {
        let mut keys: Vec<&[u64]> = self.images.iter().map(FpMatrix::entries).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.len()
    }
}

/// Reduce every element of an integral semigroup mod p and evaluate
/// injectivity and zero separation against the given ideal.
pub fn mod_p(
    elements: &[ZMatrix],
    table: &SemigroupTable,
    p: u64,
    ideal: &Ideal,
) -> Result<ModpImage, ArithmeticError> {
    assert_eq!(elements.len(), table.size(), "element list/table mismatch");
    let images: Vec<FpMatrix> = elements
        .iter()
        .map(|m| mod_p_reduce(m, p))
        .collect::<Result<_, _>>()
        .map_err(|_| ArithmeticError::NotPrime(p))?;
    let injective = crate::structure::images_pairwise_distinct(&images);
    let zero_separated = ideal.element_indices.iter().all(|&i| {
        Some(i) == table.zero_index() || !images[i].is_zero()
    });
    Ok(ModpImage {
        p,
        images,
        injective,
        zero_separated,
    })
}

/// Instance-level check of Minkowski's theorem on a concrete group of
/// integer matrices: for odd p, no element other than the identity reduces to
/// the identity mod p; for p = 2, anything reducing to the identity must be
/// an involution. A nonempty violation list would contradict the theorem and
/// therefore signals an implementation bug upstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub p: u64,
    /// Indices into the supplied group element list.
    pub violations: Vec<usize>,
}

pub fn minkowski_check(group: &[ZMatrix], p: u64) -> Result<TorsionReport, ArithmeticError> {
    if !crate::exact_linalg::is_prime(p) {
        return Err(ArithmeticError::NotPrime(p));
    }
    for (i, g) in group.iter().enumerate() {
        if !g.det().abs().is_one() {
            return Err(ArithmeticError::NotInvertible(i));
        }
    }
    let n = group.first().map(ZMatrix::n).unwrap_or(0);
    let identity = ZMatrix::identity(n);
    let id_mod = mod_p_reduce(&identity, p).map_err(|_| ArithmeticError::NotPrime(p))?;
    let mut violations = Vec::new();
    for (i, g) in group.iter().enumerate() {
        let congruent = mod_p_reduce(g, p).map_err(|_| ArithmeticError::NotPrime(p))? == id_mod;
        if !congruent {
            continue;
        }
        let ok = if p == 2 {
            g.mul(g) == identity
        } else {
            *g == identity
        };
        if !ok {
            violations.push(i);
        }
    }
    Ok(TorsionReport { p, violations })
}
