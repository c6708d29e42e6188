//! Exact p-adic engine and reduction classifiers for the zig-zag table.

pub mod error;
pub mod padic;
pub mod repclasses;
pub mod verdict;
pub mod crystalline;
pub mod semistable;
pub mod family;

pub use error::{Error, Result};
pub use padic::{CappedElement, ExactElement, HalfInt, QuadraticElement};

/// Exact element backed by `i128` coordinates; fast, panics on overflow.
pub type SmallExactElement = QuadraticElement<i128>;
