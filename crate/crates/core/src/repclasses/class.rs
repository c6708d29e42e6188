use std::fmt;

use super::Fp2Element;
use crate::error::{Error, Result};

/// Comparison level for representation classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Restriction to inertia: unramified twists are invisible.
    Inertia,
    /// The full local Galois group.
    Full,
}

/// A semisimplified two-dimensional mod-p representation class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RepClass {
    /// `ind(ω₂^c)` with `c` reduced mod `p²−1` and minimal in its Frobenius orbit `{c, pc}`.
    Irreducible {
        p: u64,
        c: u64,
        /// `(p+1) | c`: the induced class is actually reducible.
        reducible_as_rep: bool,
    },
    /// `μ_λ ω^a ⊕ μ_{λ⁻¹} ω^b`, exponents mod `p−1`, with `(a, λ) ≤ (b, λ⁻¹)`.
    /// `lambda = None` records inertia-only data.
    Reducible { p: u64, a: u64, b: u64, lambda: Option<Fp2Element> },
}

impl RepClass {
    pub fn irreducible(p: u64, c: i64) -> RepClass {
        let m = (p * p - 1) as i64;
        let c1 = c.rem_euclid(m) as u64;
        let c2 = ((p as u128 * c1 as u128) % m as u128) as u64;
        let c = c1.min(c2);
        RepClass::Irreducible { p, c, reducible_as_rep: c.is_multiple_of(p + 1) }
    }

    pub fn reducible(p: u64, a: i64, b: i64, lambda: Option<Fp2Element>) -> Result<RepClass> {
        let m = (p - 1) as i64;
        let (mut a, mut b) = (a.rem_euclid(m) as u64, b.rem_euclid(m) as u64);
        let mut lambda = lambda;
        if let Some(l) = lambda {
            if l.is_zero() {
                return Err(Error::ZeroLambda);
            }
            let inv = l.inv()?;
            if (b, inv) < (a, l) {
                std::mem::swap(&mut a, &mut b);
                lambda = Some(inv);
            }
        } else if b < a {
            std::mem::swap(&mut a, &mut b);
        }
        Ok(RepClass::Reducible { p, a, b, lambda })
    }

    pub fn prime(&self) -> u64 {
        match *self {
            RepClass::Irreducible { p, .. } | RepClass::Reducible { p, .. } => p,
        }
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self, RepClass::Irreducible { .. })
    }

    pub fn inertia_only(&self) -> bool {
        matches!(self, RepClass::Reducible { lambda: None, .. })
    }

    pub fn lambda(&self) -> Option<Fp2Element> {
        match *self {
            RepClass::Reducible { lambda, .. } => lambda,
            RepClass::Irreducible { .. } => None,
        }
    }

    /// Exponent `e` with `det = ω^e`, in `[0, p−1)`.
    pub fn det_exponent(&self) -> u64 {
        match *self {
            RepClass::Irreducible { p, c, .. } => c % (p - 1),
            RepClass::Reducible { p, a, b, .. } => (a + b) % (p - 1),
        }
    }

    /// Drops the unramified data.
    pub fn restrict_to_inertia(&self) -> RepClass {
        match *self {
            RepClass::Reducible { p, a, b, .. } => RepClass::Reducible { p, a, b, lambda: None },
            ref irr => irr.clone(),
        }
    }

    pub fn equals(&self, other: &RepClass, level: Level) -> Result<bool> {
        if self.prime() != other.prime() {
            return Err(Error::PrimeMismatch(self.prime(), other.prime()));
        }
        match level {
            Level::Inertia => Ok(self.restrict_to_inertia() == other.restrict_to_inertia()),
            Level::Full => {
                if self.inertia_only() || other.inertia_only() {
                    return Err(Error::LevelUnavailable);
                }
                Ok(self == other)
            }
        }
    }

    /// Summands `(exponent, λ)` in rendering order: larger exponent first.
    fn summands(&self) -> Option<[(u64, Option<Fp2Element>); 2]> {
        match *self {
            RepClass::Reducible { a, b, lambda, .. } => {
                let inv = lambda.map(|l| l.inv().expect("nonzero lambda"));
                let first = (a, lambda);
                let second = (b, inv);
                Some(if b > a { [second, first] } else { [first, second] })
            }
            RepClass::Irreducible { .. } => None,
        }
    }

    /// Parses the canonical text rendering.
    pub fn parse(p: u64, s: &str) -> Result<RepClass> {
        let err = || Error::Parse(format!("invalid representation class `{s}`"));
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("ind(w2^").and_then(|r| r.strip_suffix(')')) {
            let c: i64 = inner.parse().map_err(|_| err())?;
            return Ok(RepClass::irreducible(p, c));
        }
        let (left, right) = s.split_once(" + ").ok_or_else(err)?;
        let summand = |t: &str| -> Result<(i64, Option<Fp2Element>)> {
            let (lam, exp) = match t.strip_prefix("mu(") {
                Some(rest) => {
                    let (l, e) = rest.split_once(")*w^").ok_or_else(err)?;
                    (Some(Fp2Element::parse(p, l)?), e)
                }
                None => (None, t.strip_prefix("w^").ok_or_else(err)?),
            };
            Ok((exp.parse().map_err(|_| err())?, lam))
        };
        let (a, la) = summand(left)?;
        let (b, lb) = summand(right)?;
        match (la, lb) {
            (Some(l), Some(m)) if l.mul(&m) == Fp2Element::from_base(p, 1) => RepClass::reducible(p, a, b, Some(l)),
            (None, None) => RepClass::reducible(p, a, b, None),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let RepClass::Irreducible { c, .. } = self {
            return write!(f, "ind(w2^{c})");
        }
        let [s1, s2] = self.summands().unwrap();
        let term = |f: &mut fmt::Formatter<'_>, (e, l): (u64, Option<Fp2Element>)| match l {
            Some(l) => write!(f, "mu({l})*w^{e}"),
            None => write!(f, "w^{e}"),
        };
        term(f, s1)?;
        f.write_str(" + ")?;
        term(f, s2)
    }
}
