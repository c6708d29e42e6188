//! Exact and capped-precision arithmetic in ℚ_p and ℚ_p(√p).

mod capped;
mod exact_int;
mod halfint;
mod literal;
pub mod modp;
mod quadratic;
mod scalar;
mod series;
mod sqrt;

use num_bigint::BigInt;

pub use capped::{CappedElement, DEFAULT_PRECISION};
pub use exact_int::{int_valuation, rat_valuation, ExactInt};
pub use halfint::{HalfInt, ParseHalfIntError};
pub use literal::parse_element;
pub use quadratic::QuadraticElement;
pub use scalar::PadicScalar;
pub use series::{binomial, binomial_int, harmonic, log_one_plus_p};
pub use sqrt::{sqrt, sqrt_exact, SqrtBranch};

/// Exact element with arbitrary-precision coordinates.
pub type ExactElement = QuadraticElement<BigInt>;

/// Residue field element; the residue field of ℚ_p(√p) is F_p.
pub type ResidueElement = u64;
