//! Irreducibility of a matrix semigroup, decided with exact certificates: an
//! explicit invariant subspace when reducible, a full-span dimension count or
//! a Norton-style spinning certificate when irreducible, and an honest
//! `Inconclusive` when neither test fires.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::{nullspace, Echelon, QMatrix, Rational};
use crate::semigroup::SemigroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("cannot spin the zero vector")]
    ZeroVector,
    #[error("subspace basis vectors are linearly dependent")]
    DependentBasis,
}

/// Maximal linearly independent subset of S's elements, viewed as
/// n²-vectors: a basis of the rational span of S.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    pub n: usize,
    pub basis: Vec<QMatrix>,
    pub dim: usize,
}

pub fn algebra_span(table: &SemigroupTable) -> AlgebraBasis {
    let n = table.n();
    let mut ech = Echelon::new(n * n);
    let mut basis = Vec::new();
    for m in table.elements() {
        if ech.insert(&m.vectorize()) {
            basis.push(m.clone());
        }
    }
    AlgebraBasis {
        n,
        dim: basis.len(),
        basis,
    }
}

/// Scale to a primitive integer vector (clear denominators, divide by the
/// content, make the first nonzero entry positive). Keeps certificate output
/// canonical and readable.
fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for e in v {
        lcm = lcm.lcm(e.denom());
    }
    let scaled: Vec<BigInt> = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    let mut gcd = BigInt::zero();
    for e in &scaled {
        gcd = gcd.gcd(e);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let flip = scaled
        .iter()
        .find(|e| !e.is_zero())
        .map(|e| e.is_negative())
        .unwrap_or(false);
    scaled
        .into_iter()
        .map(|e| {
            let mut q = e / &gcd;
            if flip {
                q = -q;
            }
            Rational::from_integer(q)
        })
        .collect()
}

fn spin_matrices(
    v: &[Rational],
    matrices: &[QMatrix],
    n: usize,
) -> Result<Vec<Vec<Rational>>, InvariantError> {
    if v.iter().all(Zero::is_zero) {
        return Err(InvariantError::ZeroVector);
    }
    let mut ech = Echelon::new(n);
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut queue: Vec<Vec<Rational>> = Vec::new();
    let start = primitive_integer_vector(v);
    ech.insert(&start);
    basis.push(start.clone());
    queue.push(start);
    let mut head = 0;
    while head < queue.len() && basis.len() < n {
        let w = queue[head].clone();
        head += 1;
        for m in matrices {
            let u = m.apply(&w);
            if u.iter().all(Zero::is_zero) {
                continue;
            }
            if ech.insert(&u) {
                let u = primitive_integer_vector(&u);
                basis.push(u.clone());
                queue.push(u);
                if basis.len() == n {
                    break;
                }
            }
        }
    }
    Ok(basis)
}

/// Smallest S-invariant subspace containing `v`: close span{v} under the
/// action of every element, iterated to a fixed point. Basis vectors come out
/// in discovery order, scaled to primitive integer form.
pub fn spin(v: &[Rational], table: &SemigroupTable) -> Result<Vec<Vec<Rational>>, InvariantError> {
    assert_eq!(v.len(), table.n(), "dimension mismatch");
    spin_matrices(v, table.elements(), table.n())
}

/// Why an `Irreducible` verdict holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleWitness {
    /// The span of S is all of M_n, which has no nontrivial invariant
    /// subspace.
    FullSpan,
    /// Norton-style certificate: for a singular nonzero element a of the
    /// span, every kernel vector of a spins to the full space under S and
    /// every kernel vector of aᵀ spins to the full space under Sᵀ.
    Norton,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    Irreducible(IrreducibleWitness),
    /// Basis of a proper nonzero invariant subspace.
    Reducible(Vec<Vec<Rational>>),
    Inconclusive,
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible(_))
    }
}

/// Complete checker behind every `Reducible` certificate: true iff s·w stays
/// in span(W) for every element s and basis vector w.
pub fn verify_invariant_subspace(
    table: &SemigroupTable,
    subspace: &[Vec<Rational>],
) -> Result<bool, InvariantError> {
    let n = table.n();
    let mut ech = Echelon::new(n);
    for w in subspace {
        if !ech.insert(w) {
            return Err(InvariantError::DependentBasis);
        }
    }
    for s in table.elements() {
        for w in subspace {
            if !ech.contains(&s.apply(w)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Three-stage irreducibility decision:
/// 1. full-span shortcut: span dimension n² is conclusive;
/// 2. reducibility search: spin the standard basis vectors and the kernel
///    vectors of every singular nonzero element; a proper result is a
///    certificate of reducibility;
/// 3. Norton-style certificate on the first singular nonzero element of S
///    (falling back to differences of distinct elements, which lie in the
///    span); if it fails to certify, the verdict is an honest Inconclusive.
pub fn is_irreducible(table: &SemigroupTable) -> IrreducibilityVerdict {
    let n = table.n();
    let span = algebra_span(table);
    if span.dim == n * n {
        return IrreducibilityVerdict::Irreducible(IrreducibleWitness::FullSpan);
    }

    // candidate vector pool: standard basis, then kernels of singular
    // nonzero elements, in index order
    let mut pool: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        })
        .collect();
    for m in table.elements() {
        if m.is_zero() {
            continue;
        }
        pool.extend(nullspace(m));
    }
    for v in &pool {
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let w = spin(v, table).expect("pool vectors are nonzero");
        if w.len() < n {
            return IrreducibilityVerdict::Reducible(w);
        }
    }

    let Some(candidate) = singular_span_element(table) else {
        return IrreducibilityVerdict::Inconclusive;
    };
    let transposed: Vec<QMatrix> = table.elements().iter().map(QMatrix::transpose).collect();
    let primal_full = nullspace(&candidate).iter().all(|k| {
        spin_matrices(k, table.elements(), n)
            .map(|b| b.len() == n)
            .unwrap_or(false)
    });
    let dual_full = nullspace(&candidate.transpose()).iter().all(|k| {
        spin_matrices(k, &transposed, n)
            .map(|b| b.len() == n)
            .unwrap_or(false)
    });
    if primal_full && dual_full {
        IrreducibilityVerdict::Irreducible(IrreducibleWitness::Norton)
    } else {
        IrreducibilityVerdict::Inconclusive
    }
}

/// First singular nonzero element of S in index order; if all elements are
/// invertible or zero, the first singular difference of two distinct
/// elements (differences lie in the span of S).
fn singular_span_element(table: &SemigroupTable) -> Option<QMatrix> {
    let singular = |m: &QMatrix| !nullspace(m).is_empty();
    for m in table.elements() {
        if !m.is_zero() && singular(m) {
            return Some(m.clone());
        }
    }
    for i in 0..table.size() {
        for j in i + 1..table.size() {
            let d = table.element(i).sub(table.element(j));
            if !d.is_zero() && singular(&d) {
                return Some(d);
            }
        }
    }
    None
}
