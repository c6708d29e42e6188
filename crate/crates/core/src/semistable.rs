//! Reduction table for semi-stable representations `V_{k0,𝔏}`, read off
//! `ν = v_p(𝔏 − H₋ − H₊)`.

use num_bigint::BigInt;

use crate::crystalline::{ExceptionalData, Rational};
use crate::error::{Error, Result};
use crate::padic::{binomial_int, ExactElement, HalfInt, PadicScalar};
use crate::repclasses::{solve_selfdual, Fp2Element, RepClass};
use crate::verdict::{check_prime, inertia_class, last_index, locate, locate_at_least, Case, ClassifyOptions, Regime, ZigZagVerdict};

#[derive(Clone, Debug)]
pub struct SemistableInput<S: PadicScalar> {
    pub data: ExceptionalData,
    pub l_invariant: S,
}

impl<S: PadicScalar> SemistableInput<S> {
    pub fn new(k0: i64, l_invariant: S, opts: &ClassifyOptions) -> Result<Self> {
        let p = l_invariant.prime();
        check_prime(p, opts)?;
        let data = ExceptionalData::from_base_weight(p, k0)?;
        Ok(SemistableInput { data, l_invariant })
    }

    pub fn p(&self) -> u64 {
        self.data.p
    }

    pub fn r0(&self) -> i64 {
        self.data.r0
    }

    /// `𝔏 − H₋ − H₊`.
    pub fn shifted(&self) -> Result<S> {
        let h = ExactElement::from_rational(self.p(), self.data.h_sum());
        self.l_invariant.sub(&self.l_invariant.lift(&h)?)
    }
}

pub fn compute_nu<S: PadicScalar>(inp: &SemistableInput<S>) -> Result<HalfInt> {
    inp.shifted()?.valuation()
}

/// Residue of `(−1)^(i+1) (i+1) C(r0−i, i+1) (𝔏 − H₋ − H₊) / p^(i+1−r0/2)`.
///
/// This is `λ_i` below the self-dual index and `λ_i + λ_i⁻¹` at it.
pub fn lambda_st<S: PadicScalar>(i: i64, inp: &SemistableInput<S>) -> Result<u64> {
    let r0 = inp.r0();
    if i < 0 || i > last_index(r0) as i64 {
        return Err(Error::IndexOutOfRange { i, r0 });
    }
    let p = inp.p();
    let sign = if i % 2 == 0 { -1 } else { 1 };
    let coeff = binomial_int(r0 - i, (i + 1) as u32) * Rational::from_integer(BigInt::from(sign * (i + 1)));
    // p^(i+1−r0/2) = π^(2i+2−r0)
    let divisor = ExactElement::pi_pow(p, 2 * i + 2 - r0);
    let factor = ExactElement::from_rational(p, coeff).checked_div(&divisor)?;
    let shifted = inp.shifted()?;
    let arg = shifted.mul(&shifted.lift(&factor)?)?;
    match arg.valuation() {
        Ok(v) if v < HalfInt::ZERO => Err(Error::NegativeValuation(v)),
        _ => arg.residue(),
    }
}

pub fn classify_semistable<S: PadicScalar>(inp: &SemistableInput<S>, opts: &ClassifyOptions) -> Result<ZigZagVerdict> {
    let p = inp.p();
    check_prime(p, opts)?;
    let r0 = inp.r0();
    let shift = HalfInt::Finite(r0 - 2);
    let mut notes = Vec::new();
    let (nu, case) = match compute_nu(inp) {
        Ok(nu) => (Some(nu), locate(nu + shift, r0)),
        Err(Error::InsufficientPrecision { bound }) => {
            let case = locate_at_least(bound + shift, r0).ok_or(Error::InsufficientPrecision { bound })?;
            notes.push(format!("nu only certified >= {bound}"));
            (None, case)
        }
        Err(e) => return Err(e),
    };
    if nu == Some(HalfInt::Infinity) {
        notes.push("nu = inf routes to the terminal case".to_string());
    }

    let mut trace = None;
    let rep = match case {
        Case::Interval(_) => inertia_class(p, r0, case),
        Case::Point(i) => {
            let i = i as i64;
            let residue = lambda_st(i, inp)?;
            let lambda = if r0 % 2 == 1 && i == last_index(r0) as i64 {
                trace = Some(residue);
                solve_selfdual(&Fp2Element::from_base(p, residue)).0
            } else {
                if residue == 0 {
                    return Err(Error::ZeroLambda);
                }
                Fp2Element::from_base(p, residue)
            };
            RepClass::reducible(p, r0 - i, 1 + i, Some(lambda))?
        }
    };
    let regime = if p >= 5 { Regime::Theorem } else { Regime::Unsupported };
    Ok(ZigZagVerdict { p, r0, tau: None, t: None, nu, case, rep, trace, regime, notes })
}
