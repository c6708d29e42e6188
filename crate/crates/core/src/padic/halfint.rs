use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// A value in ½ℤ ∪ {+∞}, stored as twice its value.
///
/// Valuations, slopes and the parameters τ, t, ν all live here. The derived
/// ordering puts every finite value below [`HalfInt::Infinity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfInt {
    Finite(i64),
    Infinity,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt::Finite(0);

    pub fn from_int(n: i64) -> Self {
        HalfInt::Finite(2 * n)
    }

    pub fn from_twice(twice: i64) -> Self {
        HalfInt::Finite(twice)
    }

    pub fn twice(self) -> Option<i64> {
        match self {
            HalfInt::Finite(t) => Some(t),
            HalfInt::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, HalfInt::Finite(_))
    }

    pub fn is_integer(self) -> bool {
        matches!(self, HalfInt::Finite(t) if t % 2 == 0)
    }

    /// Integer value, if this is a finite integer.
    pub fn as_integer(self) -> Option<i64> {
        match self {
            HalfInt::Finite(t) if t % 2 == 0 => Some(t / 2),
            _ => None,
        }
    }

    pub fn floor(self) -> Option<i64> {
        self.twice().map(|t| t.div_euclid(2))
    }

    pub fn ceil(self) -> Option<i64> {
        self.twice().map(|t| -((-t).div_euclid(2)))
    }

    /// `self - rhs`, undefined when `rhs` is infinite.
    pub fn checked_sub(self, rhs: HalfInt) -> Option<HalfInt> {
        match (self, rhs) {
            (_, HalfInt::Infinity) => None,
            (HalfInt::Infinity, _) => Some(HalfInt::Infinity),
            (HalfInt::Finite(a), HalfInt::Finite(b)) => Some(HalfInt::Finite(a - b)),
        }
    }

    /// Compares `self` against `n / 2`.
    pub fn cmp_twice(self, twice: i64) -> Ordering {
        self.cmp(&HalfInt::Finite(twice))
    }
}

impl Default for HalfInt {
    fn default() -> Self {
        HalfInt::ZERO
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        match (self, rhs) {
            (HalfInt::Finite(a), HalfInt::Finite(b)) => HalfInt::Finite(a + b),
            _ => HalfInt::Infinity,
        }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        self + HalfInt::from_int(rhs)
    }
}

/// Panics when subtracting infinity; use [`HalfInt::checked_sub`] if that can happen.
impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        self.checked_sub(rhs).expect("subtracting an infinite half-integer")
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        self - HalfInt::from_int(rhs)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        match self {
            HalfInt::Finite(t) => HalfInt::Finite(-t),
            HalfInt::Infinity => panic!("negating an infinite half-integer"),
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HalfInt::Infinity => f.write_str("inf"),
            HalfInt::Finite(t) if t % 2 == 0 => write!(f, "{}", t / 2),
            HalfInt::Finite(t) => write!(f, "{}/2", t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseHalfIntError(pub String);

impl fmt::Display for ParseHalfIntError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid half-integer literal `{}`", self.0)
    }
}

impl std::error::Error for ParseHalfIntError {}

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ParseHalfIntError(s.to_string());
        if s == "inf" {
            return Ok(HalfInt::Infinity);
        }
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::from_int).map_err(|_| err()),
            Some((num, "2")) => {
                let n = num.trim().parse::<i64>().map_err(|_| err())?;
                Ok(HalfInt::Finite(n))
            }
            Some(_) => Err(err()),
        }
    }
}
