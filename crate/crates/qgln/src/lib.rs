//! Representations of the quantum group Uq(gl(n)) in the Gelfand-Tsetlin
//! basis, with exact arithmetic in the rational function field Q(q^{1/2}).
//!
//! The crate builds generator matrices from closed-form matrix elements,
//! assembles the characteristic matrices and their projectors, evaluates the
//! closed-form invariants and reduced Wigner coefficients, and ships a named
//! suite battery that verifies the identities tying all of these together.

pub mod characteristic;
pub mod cli;
pub mod invariants;
pub mod matrix;
pub mod patterns;
pub mod representations;
pub mod scalars;
pub mod verification;

pub use matrix::Matrix;
pub use patterns::{GTPattern, HighestWeight};
pub use representations::{build_irrep, Irrep, Operators};
pub use scalars::{qnumber, qpow, HalfInt, QContext, QRat};
