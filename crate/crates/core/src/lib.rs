//! Exact-arithmetic toolkit for finite semigroups of rational matrices.
//!
//! The crate builds a finite matrix semigroup from generators by closure
//! enumeration, computes its Green's relations and ideal structure, decides
//! irreducibility with verifiable certificates, conjugates the semigroup into
//! integer matrices, and reduces mod a small prime to certify the size bound
//! `|S| <= p^(n^2)` (p = 2 or 3 depending on the parity of the maximal
//! subgroup of the minimal ideal). Every step produces a certificate that can
//! be re-checked independently; no floating point is used anywhere.

pub mod arithmetic;
pub mod corpus;
pub mod exact_linalg;
pub mod invariant;
pub mod pipeline;
pub mod semigroup;
pub mod structure;

pub use exact_linalg::{FpMatrix, Lattice, QMatrix, Rational, ZMatrix};
pub use semigroup::{GreenStructure, MaximalSubgroup, SemigroupTable};
