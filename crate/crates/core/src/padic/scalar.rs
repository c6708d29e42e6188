use num_bigint::BigInt;

use super::exact_int::ExactInt;
use super::{CappedElement, ExactElement, HalfInt, QuadraticElement};
use crate::error::{Error, Result};

/// Arithmetic the classifiers need, shared by exact and capped elements.
///
/// Exact elements always certify their valuation; capped ones may report
/// [`Error::InsufficientPrecision`] after cancellation.
pub trait PadicScalar: Clone + std::fmt::Debug + std::fmt::Display + Send + Sync {
    fn prime(&self) -> u64;
    /// Embeds an exact constant in the same representation as `self`.
    fn lift(&self, value: &ExactElement) -> Result<Self>;
    fn add(&self, other: &Self) -> Result<Self>;
    fn sub(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn div(&self, other: &Self) -> Result<Self>;
    fn valuation(&self) -> Result<HalfInt>;
    /// A certified lower bound on the valuation (the valuation itself when known).
    fn valuation_lower_bound(&self) -> HalfInt;
    fn residue(&self) -> Result<u64>;
    fn to_exact_lossy(&self) -> ExactElement;
}

impl<I: ExactInt> PadicScalar for QuadraticElement<I> {
    fn prime(&self) -> u64 {
        QuadraticElement::prime(self)
    }
    fn lift(&self, value: &ExactElement) -> Result<Self> {
        if value.prime() != self.prime() {
            return Err(Error::PrimeMismatch(self.prime(), value.prime()));
        }
        QuadraticElement::from_big(value).ok_or_else(|| Error::Parse("constant overflows the integer type".into()))
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)
    }
    fn div(&self, other: &Self) -> Result<Self> {
        self.checked_div(other)
    }
    fn valuation(&self) -> Result<HalfInt> {
        Ok(QuadraticElement::valuation(self))
    }
    fn valuation_lower_bound(&self) -> HalfInt {
        QuadraticElement::valuation(self)
    }
    fn residue(&self) -> Result<u64> {
        QuadraticElement::residue(self)
    }
    fn to_exact_lossy(&self) -> QuadraticElement<BigInt> {
        self.to_big()
    }
}

impl PadicScalar for CappedElement {
    fn prime(&self) -> u64 {
        CappedElement::prime(self)
    }
    fn lift(&self, value: &ExactElement) -> Result<Self> {
        if value.prime() != self.prime() {
            return Err(Error::PrimeMismatch(self.prime(), value.prime()));
        }
        Ok(CappedElement::exact(value.clone()))
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)
    }
    fn div(&self, other: &Self) -> Result<Self> {
        self.checked_div(other)
    }
    fn valuation(&self) -> Result<HalfInt> {
        self.certify_valuation()
    }
    fn valuation_lower_bound(&self) -> HalfInt {
        CappedElement::valuation_lower_bound(self)
    }
    fn residue(&self) -> Result<u64> {
        CappedElement::residue(self)
    }
    fn to_exact_lossy(&self) -> ExactElement {
        self.approximant().clone()
    }
}
