use std::fmt;

use crate::error::{Error, Result};
use crate::padic::modp::{inv_mod, is_square, mul_mod, smallest_nonresidue, sqrt_mod};

/// An element `a + b·θ` of F_{p²} = F_p[θ]/(θ² − n), with `n` the smallest
/// positive quadratic non-residue mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp2Element {
    p: u64,
    a: u64,
    b: u64,
}

impl Fp2Element {
    pub fn new(p: u64, a: u64, b: u64) -> Self {
        Fp2Element { p, a: a % p, b: b % p }
    }

    pub fn from_base(p: u64, a: u64) -> Self {
        Self::new(p, a, 0)
    }

    pub fn from_i64(p: u64, a: i64) -> Self {
        Self::from_base(p, a.rem_euclid(p as i64) as u64)
    }

    pub fn theta(p: u64) -> Self {
        Self::new(p, 0, 1)
    }

    pub fn nonresidue(&self) -> u64 {
        smallest_nonresidue(self.p)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coords(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn in_base_field(&self) -> bool {
        self.b == 0
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.p, self.a + o.a, self.b + o.b)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.p - self.a, self.p - self.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.nonresidue();
        let a = mul_mod(self.a, o.a, p) + mul_mod(n, mul_mod(self.b, o.b, p), p);
        let b = mul_mod(self.a, o.b, p) + mul_mod(self.b, o.a, p);
        Self::new(p, a, b)
    }

    /// `a − bθ`, the p-th power map.
    pub fn frobenius(&self) -> Self {
        Self::new(self.p, self.a, self.p - self.b)
    }

    pub fn norm(&self) -> u64 {
        let p = self.p;
        let n = self.nonresidue();
        (mul_mod(self.a, self.a, p) + p - mul_mod(n, mul_mod(self.b, self.b, p), p)) % p
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let ni = inv_mod(self.norm(), self.p);
        let c = self.frobenius();
        Ok(Self::new(self.p, mul_mod(c.a, ni, self.p), mul_mod(c.b, ni, self.p)))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::from_base(self.p, 1);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn parse(p: u64, s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("invalid F_p^2 literal `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let num = |x: &str| x.parse::<u64>().map_err(|_| err());
        match t.strip_suffix("*th") {
            Some(rest) => {
                let (a, b) = rest.split_once('+').ok_or_else(err)?;
                Ok(Self::new(p, num(a)?, num(b)?))
            }
            None => Ok(Self::from_base(p, num(&t)?)),
        }
    }
}

impl fmt::Display for Fp2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}*th", self.a, self.b)
        }
    }
}

/// The two roots `{λ, λ⁻¹}` of `λ² − sλ + 1`, sorted. `s` must lie in F_p.
pub fn solve_selfdual(s: &Fp2Element) -> (Fp2Element, Fp2Element) {
    assert!(s.in_base_field(), "trace must lie in F_p");
    let p = s.p;
    let sv = s.a;
    let disc = (mul_mod(sv, sv, p) + p - 4 % p) % p;
    let root_disc = if is_square(disc, p) {
        Fp2Element::from_base(p, sqrt_mod(disc, p).unwrap())
    } else {
        let n = smallest_nonresidue(p);
        let w = sqrt_mod(mul_mod(disc, inv_mod(n, p), p), p).expect("disc/n is a square");
        Fp2Element::new(p, 0, w)
    };
    let half = Fp2Element::from_base(p, inv_mod(2, p));
    let r1 = s.add(&root_disc).mul(&half);
    let r2 = s.sub(&root_disc).mul(&half);
    if r1 <= r2 {
        (r1, r2)
    } else {
        (r2, r1)
    }
}
