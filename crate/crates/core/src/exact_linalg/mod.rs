//! Exact arithmetic over the rationals, the integers, and Z/pZ.
//!
//! Everything downstream (closure enumeration, invariant subspaces, lattice
//! conjugation, mod-p reduction) is built on the matrix types defined here.
//! All operations are closed over exact types; there is no floating point.

mod fpmatrix;
mod lattice;
mod qmatrix;
mod rational;
mod solve;
mod zmatrix;

pub use fpmatrix::{is_prime, mod_p_reduce, FpMatrix};
pub use lattice::{hnf_column, Lattice};
pub use qmatrix::QMatrix;
pub use rational::{format_rational, parse_rational, rat, rat_int, Rational};
pub use solve::{invert, nullspace, rank, solve_linear, Echelon};
pub use zmatrix::{is_unimodular, ZMatrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("cannot parse rational literal {0:?}")]
    InvalidRational(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero vector not allowed here")]
    ZeroVector,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
}
