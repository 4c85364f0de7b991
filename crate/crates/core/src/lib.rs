//! Exact computations around graph polynomials and generalized Jacobians.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense matrices over the rationals (rank, kernels, determinants).
//! - [`polynomial`]: sparse multivariate polynomials with rational coefficients,
//!   polynomial matrices, fraction-free determinants and characteristic polynomials.
//! - [`graph`]: multigraphs, spanning tree and rooted forest enumeration, cycle bases.
//! - [`motive`]: Kirchhoff polynomials by three routes, vertex-weighted Laplacians,
//!   the rooted-tree cofactor identity, the forest expansion of the characteristic
//!   polynomial and point counts of graph hypersurfaces over prime fields.
//! - [`curve`]: invariants of singular curves obtained from a modulus.
//! - [`hodge`]: spectral sequences of double complexes and exactness checks.
//! - [`formats`]: the JSON file formats read by the command-line tool.
//!
//! Everything is exact. There is no floating point anywhere in the crate.

pub mod curve;
pub mod error;
pub mod formats;
pub mod graph;
pub mod hodge;
pub mod linalg;
pub mod motive;
pub mod polynomial;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Shorthand for a rational with the given integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integral rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}
