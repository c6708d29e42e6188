use super::modp::{inv_mod, mul_mod, sqrt_mod};
use super::{CappedElement, ExactElement, HalfInt};
use crate::error::{Error, Result};

/// Which square root to return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SqrtBranch {
    /// Unit part has residue in `{1, …, (p−1)/2}`.
    Canonical,
    /// The root `s` with `residue(s / target) = 1`.
    MatchTarget(ExactElement),
}

/// Square root by Hensel (Newton) lifting to absolute precision `n`.
///
/// The input must have integral `v_p` (even π-valuation) and a unit part
/// whose residue is a nonzero square in F_p.
pub fn sqrt(a: &CappedElement, n: i64, branch: &SqrtBranch) -> Result<CappedElement> {
    let p = a.prime();
    let v = a.certify_valuation()?;
    let Some(v_int) = v.as_integer() else {
        return Err(Error::OddValuation(v));
    };
    let shift = CappedElement::exact(ExactElement::pi_pow(p, -2 * v_int));
    let unit = a.checked_mul(&shift)?;
    let r = unit.residue()?;
    let s0 = sqrt_mod(r, p).ok_or(Error::NonSquareResidue)?;
    // π^v_int is the valuation-v/2 factor of the root
    let scale = ExactElement::pi_pow(p, v_int);
    let s0 = match branch {
        SqrtBranch::Canonical => s0,
        SqrtBranch::MatchTarget(target) => {
            let rho = scale.checked_div(target)?.residue()?;
            if rho == 0 {
                return Err(Error::NonSquareResidue);
            }
            let want = inv_mod(rho, p);
            if mul_mod(want, want, p) != r {
                return Err(Error::NonSquareResidue);
            }
            want
        }
    };

    let target_prec = (HalfInt::from_int(n) - HalfInt::Finite(v_int)).min(unit.abs_precision());
    let u = unit.approximant();
    let half = ExactElement::from_ratio(p, 1, 2);
    let mut s = ExactElement::from_integer(p, s0 as i64);
    let mut correct = HalfInt::Finite(1);
    // Newton doubles the number of correct π-digits per step.
    while correct < target_prec {
        let next = (&s + &(u / &s)) * half.clone();
        s = CappedElement::from_exact(&next, target_prec).approximant().clone();
        correct = match correct {
            HalfInt::Finite(t) => HalfInt::Finite(2 * t),
            inf => inf,
        };
        if target_prec == HalfInt::Infinity && correct > HalfInt::Finite(1 << 20) {
            break;
        }
    }
    let root = CappedElement::from_exact(&s, target_prec);
    root.checked_mul(&CappedElement::exact(scale))
}

pub fn sqrt_exact(a: &ExactElement, n: i64, branch: &SqrtBranch) -> Result<CappedElement> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    sqrt(&CappedElement::exact(a.clone()), n, branch)
}
