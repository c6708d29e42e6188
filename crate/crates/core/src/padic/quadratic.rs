use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::exact_int::{prime_as, rat_residue, rat_valuation, ExactInt};
use super::HalfInt;
use crate::error::{Error, Result};

/// An element `x + y·√p` of ℚ(√p) ⊂ ℚ_p(√p) with exact rational coordinates.
///
/// No rounding ever happens. The std operator impls panic on a prime
/// mismatch or division by zero; the `checked_*` methods report them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticElement<I: ExactInt = BigInt> {
    p: u64,
    x: Ratio<I>,
    y: Ratio<I>,
}

impl<I: ExactInt> QuadraticElement<I> {
    pub fn new(p: u64, x: Ratio<I>, y: Ratio<I>) -> Self {
        QuadraticElement { p, x, y }
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, Ratio::zero(), Ratio::zero())
    }

    pub fn one(p: u64) -> Self {
        Self::from_integer(p, 1)
    }

    pub fn from_integer(p: u64, n: i64) -> Self {
        Self::from_rational(p, Ratio::from_integer(I::from_i64(n).expect("integer fits")))
    }

    pub fn from_ratio(p: u64, num: i64, den: i64) -> Self {
        Self::from_rational(
            p,
            Ratio::new(I::from_i64(num).expect("integer fits"), I::from_i64(den).expect("integer fits")),
        )
    }

    pub fn from_rational(p: u64, x: Ratio<I>) -> Self {
        Self::new(p, x, Ratio::zero())
    }

    /// The uniformizer `π = √p`.
    pub fn uniformizer(p: u64) -> Self {
        Self::new(p, Ratio::zero(), Ratio::one())
    }

    /// `π^n = p^(n/2)` for any signed `n`.
    pub fn pi_pow(p: u64, n: i64) -> Self {
        let pp = Ratio::from_integer(prime_as::<I>(p));
        let half = n.div_euclid(2);
        let scale = pow_ratio(&pp, half);
        if n.rem_euclid(2) == 0 {
            Self::from_rational(p, scale)
        } else {
            Self::new(p, Ratio::zero(), scale)
        }
    }

    /// `p^e` for a half-integral exponent `e`.
    pub fn p_pow(p: u64, e: HalfInt) -> Self {
        Self::pi_pow(p, e.twice().expect("finite exponent"))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn x(&self) -> &Ratio<I> {
        &self.x
    }

    pub fn y(&self) -> &Ratio<I> {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.p, self.x.clone(), -self.y.clone())
    }

    /// `x² − p·y²`, the norm down to ℚ.
    pub fn norm(&self) -> Ratio<I> {
        let pp = Ratio::from_integer(prime_as::<I>(self.p));
        self.x.clone() * self.x.clone() - pp * self.y.clone() * self.y.clone()
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        Ok(Self::new(self.p, self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        Ok(Self::new(self.p, self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let pp = Ratio::from_integer(prime_as::<I>(self.p));
        let x = self.x.clone() * other.x.clone() + pp * self.y.clone() * other.y.clone();
        let y = self.x.clone() * other.y.clone() + other.x.clone() * self.y.clone();
        Ok(Self::new(self.p, x, y))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(self.p, self.x.clone() / n.clone(), -self.y.clone() / n))
    }

    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.p);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Ratio<I>) -> Self {
        Self::new(self.p, self.x.clone() * r.clone(), self.y.clone() * r.clone())
    }

    /// `min(v_p(x), v_p(y) + 1/2)`, infinite for zero.
    pub fn valuation(&self) -> HalfInt {
        let vx = rat_valuation(&self.x, self.p).map(HalfInt::from_int).unwrap_or(HalfInt::Infinity);
        let vy = rat_valuation(&self.y, self.p)
            .map(|v| HalfInt::from_twice(2 * v + 1))
            .unwrap_or(HalfInt::Infinity);
        vx.min(vy)
    }

    /// Image in the residue field F_p.
    pub fn residue(&self) -> Result<u64> {
        let v = self.valuation();
        if v < HalfInt::ZERO {
            return Err(Error::NegativeValuation(v));
        }
        if v > HalfInt::ZERO {
            return Ok(0);
        }
        // v(y) >= 0 here, so y·√p lies in the maximal ideal.
        Ok(rat_residue(&self.x, self.p))
    }

    pub fn to_big(&self) -> QuadraticElement<BigInt> {
        use super::exact_int::ratio_to_big;
        QuadraticElement::new(self.p, ratio_to_big(&self.x), ratio_to_big(&self.y))
    }

    /// Converts from the arbitrary-precision representation; `None` on overflow.
    pub fn from_big(e: &QuadraticElement<BigInt>) -> Option<Self> {
        use super::exact_int::ratio_from_big;
        Some(Self::new(e.p, ratio_from_big(&e.x)?, ratio_from_big(&e.y)?))
    }
}

fn pow_ratio<I: ExactInt>(base: &Ratio<I>, e: i64) -> Ratio<I> {
    let b = if e < 0 { base.recip() } else { base.clone() };
    num_traits::pow(b, e.unsigned_abs() as usize)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, I: ExactInt> $tr<&'a QuadraticElement<I>> for &'a QuadraticElement<I> {
            type Output = QuadraticElement<I>;
            fn $method(self, rhs: &'a QuadraticElement<I>) -> QuadraticElement<I> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl<I: ExactInt> $tr for QuadraticElement<I> {
            type Output = QuadraticElement<I>;
            fn $method(self, rhs: QuadraticElement<I>) -> QuadraticElement<I> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl<I: ExactInt> Neg for QuadraticElement<I> {
    type Output = QuadraticElement<I>;
    fn neg(self) -> Self {
        QuadraticElement::new(self.p, -self.x, -self.y)
    }
}

impl<I: ExactInt> Neg for &QuadraticElement<I> {
    type Output = QuadraticElement<I>;
    fn neg(self) -> QuadraticElement<I> {
        -self.clone()
    }
}
