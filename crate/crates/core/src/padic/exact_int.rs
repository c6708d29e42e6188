use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Integer types usable as the coordinate ring of exact elements.
///
/// Implemented for `BigInt` (the default, never overflows) and for the
/// machine types `i64`/`i128`, which are faster but panic on overflow.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Hash + fmt::Display + fmt::Debug + Send + Sync + 'static
{
    fn from_bigint(n: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl ExactInt for BigInt {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        Some(n.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl ExactInt for i64 {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        n.to_i64()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for i128 {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        n.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

pub(crate) fn prime_as<I: ExactInt>(p: u64) -> I {
    I::from_u64(p).expect("prime fits the integer type")
}

/// `v_p(n)` of a nonzero integer.
pub fn int_valuation<I: ExactInt>(n: &I, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = prime_as::<I>(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p` of a rational, `None` for zero.
pub fn rat_valuation<I: ExactInt>(r: &Ratio<I>, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(int_valuation(r.numer(), p) - int_valuation(r.denom(), p))
}

/// Residue of a p-integral rational in `[0, p)`.
pub(crate) fn rat_residue<I: ExactInt>(r: &Ratio<I>, p: u64) -> u64 {
    let pi = prime_as::<I>(p);
    let n = r.numer().mod_floor(&pi).to_u64().unwrap();
    let d = r.denom().mod_floor(&pi).to_u64().unwrap();
    debug_assert!(d != 0, "residue of a non-integral rational");
    super::modp::mul_mod(n, super::modp::inv_mod(d, p), p)
}

pub(crate) fn ratio_to_big<I: ExactInt>(r: &Ratio<I>) -> Ratio<BigInt> {
    Ratio::new_raw(r.numer().to_bigint(), r.denom().to_bigint())
}

pub(crate) fn ratio_from_big<I: ExactInt>(r: &Ratio<BigInt>) -> Option<Ratio<I>> {
    Some(Ratio::new_raw(I::from_bigint(r.numer())?, I::from_bigint(r.denom())?))
}
