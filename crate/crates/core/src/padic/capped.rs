use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use super::exact_int::{int_valuation, rat_valuation};
use super::{ExactElement, HalfInt};
use crate::error::{Error, Result};

/// Absolute precision used when none is given, in units of `v_p` (so `v_p(p) = 1`).
pub const DEFAULT_PRECISION: i64 = 40;

/// An element of ℚ_p(√p) known only modulo `π^(2·abs_prec)`.
///
/// The approximant is kept reduced: its `x` coordinate modulo `p^⌈A⌉` and its
/// `y` coordinate modulo `p^⌈A−1/2⌉`, where `A` is the absolute precision.
/// When the approximant reduces to zero the leading valuation is unknown and
/// only `valuation ≥ A` is certified. `A = ∞` marks an exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CappedElement {
    approx: ExactElement,
    abs_prec: HalfInt,
}

/// Reduces a rational modulo `p^n` to a representative `p^v·u` with
/// `0 ≤ u < p^(n−v)`.
pub(crate) fn truncate_rational(r: &Ratio<BigInt>, p: u64, n: i64) -> Ratio<BigInt> {
    let Some(v) = rat_valuation(r, p) else {
        return Ratio::zero();
    };
    if v >= n {
        return Ratio::zero();
    }
    let pb = BigInt::from(p);
    let num = r.numer() / num_traits::pow(pb.clone(), int_valuation(r.numer(), p) as usize);
    let den = r.denom() / num_traits::pow(pb.clone(), int_valuation(r.denom(), p) as usize);
    let modulus = num_traits::pow(pb.clone(), (n - v) as usize);
    let inv = den.mod_floor(&modulus).modinv(&modulus).expect("unit denominator");
    let unit = (num * inv).mod_floor(&modulus);
    let scale = if v >= 0 {
        Ratio::from_integer(num_traits::pow(pb, v as usize))
    } else {
        Ratio::new(BigInt::one(), num_traits::pow(pb, (-v) as usize))
    };
    scale * Ratio::from_integer(unit)
}

fn truncate(e: &ExactElement, abs_prec: HalfInt) -> ExactElement {
    match abs_prec {
        HalfInt::Infinity => e.clone(),
        HalfInt::Finite(_) => {
            let p = e.prime();
            let x_cap = abs_prec.ceil().unwrap();
            let y_cap = (abs_prec - HalfInt::Finite(1)).ceil().unwrap();
            ExactElement::new(p, truncate_rational(e.x(), p, x_cap), truncate_rational(e.y(), p, y_cap))
        }
    }
}

impl CappedElement {
    /// Reduces `value` to absolute precision `abs_prec`.
    pub fn from_exact(value: &ExactElement, abs_prec: HalfInt) -> Self {
        CappedElement { approx: truncate(value, abs_prec), abs_prec }
    }

    /// An exact value carried without truncation.
    pub fn exact(value: ExactElement) -> Self {
        CappedElement { approx: value, abs_prec: HalfInt::Infinity }
    }

    pub fn with_precision(value: &ExactElement, n: i64) -> Self {
        Self::from_exact(value, HalfInt::from_int(n))
    }

    pub fn from_integer(p: u64, n: i64) -> Self {
        Self::exact(ExactElement::from_integer(p, n))
    }

    /// `(1+p)^e` for `e ≥ 0`, reduced modulo `p^n` without forming the full power.
    pub fn one_plus_p_pow(p: u64, e: u64, n: i64) -> Self {
        assert!(n >= 0);
        let modulus = num_traits::pow(BigInt::from(p), n as usize);
        let v = BigInt::from(p + 1).modpow(&BigInt::from(e), &modulus);
        Self::with_precision(&ExactElement::from_rational(p, Ratio::from_integer(v)), n)
    }

    /// `p^e` with absolute precision `n`; collapses to an uncertified zero when `e ≥ n`.
    pub fn p_pow(p: u64, e: i64, n: i64) -> Self {
        if e >= n {
            CappedElement { approx: ExactElement::zero(p), abs_prec: HalfInt::from_int(n) }
        } else {
            Self::with_precision(&ExactElement::pi_pow(p, 2 * e), n)
        }
    }

    pub fn prime(&self) -> u64 {
        self.approx.prime()
    }

    pub fn approximant(&self) -> &ExactElement {
        &self.approx
    }

    pub fn abs_precision(&self) -> HalfInt {
        self.abs_prec
    }

    pub fn is_exact(&self) -> bool {
        self.abs_prec == HalfInt::Infinity
    }

    /// Leading valuation when known; `None` after total cancellation.
    pub fn lead_valuation(&self) -> Option<HalfInt> {
        if self.approx.is_zero() && !self.is_exact() {
            None
        } else {
            Some(self.approx.valuation())
        }
    }

    /// The valuation if certified, else a lower bound.
    pub fn valuation_lower_bound(&self) -> HalfInt {
        self.lead_valuation().unwrap_or(self.abs_prec)
    }

    pub fn certify_valuation(&self) -> Result<HalfInt> {
        self.lead_valuation().ok_or(Error::InsufficientPrecision { bound: self.abs_prec })
    }

    /// Relative precision in π-digits, when the leading term is known.
    pub fn rel_precision(&self) -> Option<HalfInt> {
        let v = self.lead_valuation()?;
        self.abs_prec.checked_sub(v)
    }

    pub fn residue(&self) -> Result<u64> {
        match self.lead_valuation() {
            Some(v) if v < HalfInt::ZERO => Err(Error::NegativeValuation(v)),
            Some(_) => self.approx.residue(),
            None if self.abs_prec > HalfInt::ZERO => Ok(0),
            None => Err(Error::InsufficientPrecision { bound: self.abs_prec }),
        }
    }

    /// Whether `exact` reduces to this element at this element's precision.
    pub fn agrees_with(&self, exact: &ExactElement) -> bool {
        truncate(exact, self.abs_prec) == self.approx
    }

    /// π-adic digits `d_j` of the approximant for `lead ≤ j < 2·abs_prec`,
    /// returned with the starting exponent `j`. Exact values must be p-adic
    /// integers times a power of π for this to terminate; they are cut at `limit` digits.
    pub fn digits(&self, limit: usize) -> (i64, Vec<u64>) {
        let p = self.prime();
        let start = match self.lead_valuation() {
            Some(HalfInt::Finite(t)) => t,
            _ => return (self.abs_prec.twice().unwrap_or(0), Vec::new()),
        };
        let end = match self.abs_prec {
            HalfInt::Finite(t) => t,
            HalfInt::Infinity => start + limit as i64,
        };
        // reduced coordinates are nonnegative with p-power denominators
        let reduced = truncate(&self.approx, HalfInt::Finite(end));
        let mut out = Vec::new();
        let mut j = start;
        while j < end && out.len() < limit {
            // coefficient of π^j: x-digit at p^(j/2) for even j, y-digit at p^((j−1)/2) for odd j.
            let (coord, e) = if j % 2 == 0 { (reduced.x(), j / 2) } else { (reduced.y(), (j - 1) / 2) };
            out.push(rational_digit(coord, p, e));
            j += 1;
        }
        (start, out)
    }

    fn combine_prec(&self, other: &Self) -> Result<HalfInt> {
        if self.prime() != other.prime() {
            return Err(Error::PrimeMismatch(self.prime(), other.prime()));
        }
        Ok(self.abs_prec.min(other.abs_prec))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let a = self.combine_prec(other)?;
        Ok(Self::from_exact(&self.approx.checked_add(&other.approx)?, a))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let a = self.combine_prec(other)?;
        Ok(Self::from_exact(&self.approx.checked_sub(&other.approx)?, a))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.combine_prec(other)?;
        let a = (self.abs_prec + other.valuation_lower_bound()).min(other.abs_prec + self.valuation_lower_bound());
        Ok(Self::from_exact(&self.approx.checked_mul(&other.approx)?, a))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.combine_prec(other)?;
        if other.is_exact() && other.approx.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let vb = other.certify_valuation()?;
        let va = self.valuation_lower_bound();
        let a = match (self.abs_prec.checked_sub(vb), other.abs_prec.checked_sub(vb)) {
            (Some(x), Some(y)) => x.min(va.checked_sub(vb).map(|d| d + y).unwrap_or(HalfInt::Infinity)),
            (Some(x), None) => x,
            (None, Some(y)) => va.checked_sub(vb).map(|d| d + y).unwrap_or(HalfInt::Infinity),
            (None, None) => HalfInt::Infinity,
        };
        Ok(Self::from_exact(&self.approx.checked_div(&other.approx)?, a))
    }

    pub fn neg(&self) -> Self {
        CappedElement { approx: -&self.approx, abs_prec: self.abs_prec }
    }

    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { Self::from_integer(self.prime(), 1).checked_div(self)? } else { self.clone() };
        let mut acc = Self::from_integer(self.prime(), 1);
        for _ in 0..e.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }
}

/// Digit of `p^e` in a nonnegative rational whose denominator is a power of `p`.
fn rational_digit(r: &Ratio<BigInt>, p: u64, e: i64) -> u64 {
    let pb = BigInt::from(p);
    let shifted = if e >= 0 {
        r / Ratio::from_integer(num_traits::pow(pb.clone(), e as usize))
    } else {
        r * Ratio::from_integer(num_traits::pow(pb.clone(), (-e) as usize))
    };
    shifted.floor().to_integer().mod_floor(&pb).to_u64().unwrap()
}

impl fmt::Display for CappedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.abs_prec {
            HalfInt::Infinity => write!(f, "{}", self.approx),
            a => write!(f, "{} + O(p^{})", self.approx, a),
        }
    }
}
