//! Reduction table for crystalline representations `V_{k,a_p}` at exceptional weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::padic::{binomial_int, harmonic, ExactElement, HalfInt, PadicScalar};
use crate::repclasses::{solve_selfdual, Fp2Element, RepClass};
use crate::verdict::{check_prime, inertia_class, last_index, locate, locate_at_least, Case, ClassifyOptions, Regime, ZigZagVerdict};

pub type Rational = Ratio<BigInt>;

/// Data fixed by the slope `v_p(a_p)` of an exceptional `a_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalData {
    pub p: u64,
    pub slope: HalfInt,
    pub k0: i64,
    pub r0: i64,
    /// Largest integer strictly below the slope.
    pub v_minus: i64,
    /// Smallest integer strictly above the slope.
    pub v_plus: i64,
    pub h_minus: Rational,
    pub h_plus: Rational,
}

impl ExceptionalData {
    pub fn from_slope(p: u64, slope: HalfInt) -> Result<Self> {
        let Some(tw) = slope.twice() else {
            return Err(Error::SlopeOutOfRange(slope));
        };
        if tw < 1 || tw > p as i64 - 1 {
            return Err(Error::SlopeOutOfRange(slope));
        }
        let r0 = tw;
        // v₋ + v₊ = r0 in both the integral and the half-integral case
        let (v_minus, v_plus) = if tw % 2 == 0 { (tw / 2 - 1, tw / 2 + 1) } else { (tw / 2, tw / 2 + 1) };
        Ok(ExceptionalData {
            p,
            slope,
            k0: r0 + 2,
            r0,
            v_minus,
            v_plus,
            h_minus: harmonic(v_minus as u32),
            h_plus: harmonic(v_plus as u32),
        })
    }

    /// Data for base weight `k0 ∈ [3, p+1]`.
    pub fn from_base_weight(p: u64, k0: i64) -> Result<Self> {
        if k0 < 3 || k0 > p as i64 + 1 {
            return Err(Error::BaseWeightOutOfRange { k0, p });
        }
        Self::from_slope(p, HalfInt::Finite(k0 - 2))
    }

    pub fn h_sum(&self) -> Rational {
        &self.h_minus + &self.h_plus
    }

    /// Checks `k ≡ k0 mod (p−1)` and `k ≥ k0`.
    pub fn check_weight(&self, k: i64) -> Result<()> {
        let m = self.p as i64 - 1;
        if (k - self.k0).mod_floor(&m) != 0 {
            return Err(Error::WeightCongruenceViolation { k, k0: self.k0, modulus: m });
        }
        if k < self.k0 {
            return Err(Error::WeightBelowBase { k, k0: self.k0 });
        }
        Ok(())
    }

    /// `C(r−v₋, v₊)·C(r−v₊, v₋)` with `r = k − 2`.
    pub fn binomial_product(&self, k: i64) -> Rational {
        let r = k - 2;
        binomial_int(r - self.v_minus, self.v_plus as u32) * binomial_int(r - self.v_plus, self.v_minus as u32)
    }
}

pub fn exceptional_data<S: PadicScalar>(a_p: &S) -> Result<ExceptionalData> {
    ExceptionalData::from_slope(a_p.prime(), a_p.valuation()?)
}

/// `t = v_p(k − k0)`, infinite at `k = k0`.
pub fn weight_distance(p: u64, k: i64, k0: i64) -> HalfInt {
    if k == k0 {
        HalfInt::Infinity
    } else {
        HalfInt::from_int(crate::padic::int_valuation(&(k - k0), p))
    }
}

fn lift_rational<S: PadicScalar>(like: &S, r: &Rational) -> Result<S> {
    like.lift(&ExactElement::from_rational(like.prime(), r.clone()))
}

/// `c = (a_p² − C(r−v₋,v₊)·C(r−v₊,v₋)·p^{r0}) / (p·a_p)`.
pub fn compute_c<S: PadicScalar>(k: i64, a_p: &S) -> Result<S> {
    let data = exceptional_data(a_p)?;
    compute_c_with(&data, k, a_p)
}

fn compute_c_with<S: PadicScalar>(data: &ExceptionalData, k: i64, a_p: &S) -> Result<S> {
    data.check_weight(k)?;
    let p = data.p;
    let pb = BigInt::from(p);
    let subtrahend = data.binomial_product(k) * Rational::from_integer(num_traits::pow(pb.clone(), data.r0 as usize));
    let num = a_p.mul(a_p)?.sub(&lift_rational(a_p, &subtrahend)?)?;
    let den = a_p.mul(&lift_rational(a_p, &Rational::from_integer(pb))?)?;
    num.div(&den)
}

/// `(τ, t) = (v_p(c), v_p(k − k0))`.
pub fn compute_tau_t<S: PadicScalar>(k: i64, a_p: &S) -> Result<(HalfInt, HalfInt)> {
    let data = exceptional_data(a_p)?;
    let c = compute_c_with(&data, k, a_p)?;
    Ok((c.valuation()?, weight_distance(data.p, k, data.k0)))
}

/// `*_i' = (−1)^i (i+1) C(r0−i, i+1) / (r0 − r)`.
pub fn star_prime(i: i64, r0: i64, r: i64) -> Result<Rational> {
    if i < 0 || 2 * i > r0 {
        return Err(Error::IndexOutOfRange { i, r0 });
    }
    if r == r0 {
        return Err(Error::DegenerateWeight);
    }
    let sign = if i % 2 == 0 { 1 } else { -1 };
    let top = binomial_int(r0 - i, (i + 1) as u32) * Rational::from_integer(BigInt::from(sign * (i + 1)));
    Ok(top / Rational::from_integer(BigInt::from(r0 - r)))
}

/// The historical factors `*_0 = r0/(r0−r)` for `r0 ≤ 3` and
/// `*_1 = (r0−1)/((r0−r−1)(r0−r))` for `r0 = 3`.
pub fn legacy_star(i: i64, r0: i64, r: i64) -> Result<Rational> {
    let int = |n: i64| Rational::from_integer(BigInt::from(n));
    match (i, r0) {
        (0, 1..=3) => {
            if r == r0 {
                return Err(Error::DegenerateWeight);
            }
            Ok(int(r0) / int(r0 - r))
        }
        (1, 3) => {
            if r == r0 || r == r0 - 1 {
                return Err(Error::DegenerateWeight);
            }
            Ok(int(r0 - 1) / (int(r0 - r - 1) * int(r0 - r)))
        }
        _ => Err(Error::UnknownFactor { i, r0 }),
    }
}

/// Predicted reduction of `V_{k,a_p}` from the zig-zag table.
pub fn classify_crystalline<S: PadicScalar>(k: i64, a_p: &S, opts: &ClassifyOptions) -> Result<ZigZagVerdict> {
    let p = a_p.prime();
    check_prime(p, opts)?;
    let data = exceptional_data(a_p)?;
    data.check_weight(k)?;
    let r0 = data.r0;
    let t = weight_distance(p, k, data.k0);
    let mut notes = Vec::new();
    if p == 3 {
        notes.push("p = 3 is outside the proved range".to_string());
    }

    if t == HalfInt::Infinity {
        notes.push("k = k0: the first interval is (-inf, inf]".to_string());
        let tau = compute_c_with(&data, k, a_p).and_then(|c| c.valuation()).ok();
        let regime = if p >= 5 { Regime::Theorem } else { Regime::Conjectural };
        return Ok(ZigZagVerdict {
            p,
            r0,
            tau,
            t: Some(t),
            nu: None,
            case: Case::Interval(0),
            rep: inertia_class(p, r0, Case::Interval(0)),
            trace: None,
            regime,
            notes,
        });
    }

    let c = compute_c_with(&data, k, a_p)?;
    let (tau, case) = match c.valuation() {
        Ok(tau) => (Some(tau), locate(tau - t, r0)),
        Err(Error::InsufficientPrecision { bound }) => {
            let case = locate_at_least(bound - t, r0).ok_or(Error::InsufficientPrecision { bound })?;
            notes.push(format!("tau only certified >= {bound}"));
            (None, case)
        }
        Err(e) => return Err(e),
    };

    let mut trace = None;
    let rep = match case {
        Case::Interval(_) => inertia_class(p, r0, case),
        Case::Point(i) => {
            let i = i as i64;
            let star = star_prime(i, r0, k - 2)?;
            let scale = star / Rational::from_integer(num_traits::pow(BigInt::from(p), i as usize));
            let arg = c.mul(&lift_rational(&c, &scale)?)?;
            let residue = arg.residue()?;
            let lambda = if r0 % 2 == 1 && i == last_index(r0) as i64 {
                trace = Some(residue);
                if residue == 0 {
                    notes.push("self-dual trace 0, so lambda^2 = -1 (closed-ray extrapolation)".to_string());
                }
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

    let t_min = opts.t_min.unwrap_or(r0);
    let regime = if p >= 5 && t >= HalfInt::from_int(t_min) { Regime::Theorem } else { Regime::Conjectural };
    if regime == Regime::Conjectural && p >= 5 {
        notes.push(format!("t = {t} below t_min = {t_min}"));
    }
    Ok(ZigZagVerdict { p, r0, tau, t: Some(t), nu: None, case, rep, trace, regime, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{CappedElement, ExactElement};
    use crate::repclasses::Level;

    fn int(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn opts() -> ClassifyOptions {
        ClassifyOptions::default()
    }

    #[test]
    fn exceptional_data_examples() {
        let d = ExceptionalData::from_slope(5, HalfInt::Finite(1)).unwrap();
        assert_eq!((d.k0, d.r0, d.v_minus, d.v_plus), (3, 1, 0, 1));
        assert_eq!((d.h_minus.clone(), d.h_plus.clone()), (int(0), int(1)));
        let d = ExceptionalData::from_slope(7, HalfInt::Finite(3)).unwrap();
        assert_eq!((d.k0, d.r0, d.v_minus, d.v_plus), (5, 3, 1, 2));
        assert_eq!(d.h_plus, Rational::new(3.into(), 2.into()));
        let d = ExceptionalData::from_slope(5, HalfInt::from_int(2)).unwrap();
        assert_eq!((d.k0, d.v_minus, d.v_plus), (6, 1, 3));
        assert!(ExceptionalData::from_slope(5, HalfInt::Finite(5)).is_err());
        assert!(ExceptionalData::from_slope(5, HalfInt::ZERO).is_err());
        assert!(exceptional_data(&ExactElement::zero(5)).is_err());
    }

    #[test]
    fn c_examples() {
        let c = compute_c(104, &ExactElement::from_integer(5, 505)).unwrap();
        assert_eq!(c, ExactElement::from_integer(5, 50));
        assert!(compute_c(4, &ExactElement::from_integer(5, 5)).unwrap().is_zero());
        let seven_root7 = ExactElement::pi_pow(7, 3);
        assert!(compute_c(5, &seven_root7).unwrap().is_zero());
        assert_eq!(
            compute_c(105, &ExactElement::from_integer(5, 505)),
            Err(Error::WeightCongruenceViolation { k: 105, k0: 4, modulus: 4 })
        );
        assert_eq!(compute_c(0, &ExactElement::from_integer(5, 5)), Err(Error::WeightBelowBase { k: 0, k0: 4 }));
    }

    #[test]
    fn tau_t_examples() {
        let ap = |k: i64| ExactElement::from_integer(5, 5 + 5 * (k - 4));
        assert_eq!(compute_tau_t(104, &ap(104)).unwrap(), (HalfInt::from_int(2), HalfInt::from_int(2)));
        assert_eq!(compute_tau_t(504, &ap(504)).unwrap(), (HalfInt::from_int(3), HalfInt::from_int(3)));
        assert_eq!(compute_tau_t(4, &ap(4)).unwrap().1, HalfInt::Infinity);
    }

    #[test]
    fn star_prime_examples() {
        for r in [5i64, 9, 102, -7] {
            assert_eq!(star_prime(0, 1, r).unwrap(), legacy_star(0, 1, r).unwrap());
        }
        assert_eq!(star_prime(0, 2, 102).unwrap(), Rational::new((-1).into(), 50.into()));
        let r = 7;
        assert_eq!(star_prime(1, 3, r).unwrap(), int(-2) / int(3 - r));
        assert_eq!(legacy_star(1, 3, r).unwrap() / star_prime(1, 3, r).unwrap(), int(1) / int(r - 2));
        assert_eq!(star_prime(0, 2, 2), Err(Error::DegenerateWeight));
        assert_eq!(legacy_star(1, 2, 5), Err(Error::UnknownFactor { i: 1, r0: 2 }));
        assert_eq!(legacy_star(0, 2, 8).unwrap(), int(2) / int(2 - 8));
    }

    #[test]
    fn worked_example_point_zero() {
        let v = classify_crystalline(104, &ExactElement::from_integer(5, 505), &opts()).unwrap();
        assert_eq!(v.case, Case::Point(0));
        assert_eq!(v.rep.to_string(), "mu(4)*w^2 + mu(4)*w^1");
        assert_eq!((v.tau, v.t), (Some(HalfInt::from_int(2)), Some(HalfInt::from_int(2))));
        assert_eq!(v.regime, Regime::Theorem);
    }

    #[test]
    fn edixhoven_case() {
        let v = classify_crystalline(5, &ExactElement::pi_pow(7, 3), &opts()).unwrap();
        assert_eq!(v.case, Case::Interval(0));
        assert_eq!(v.rep, RepClass::irreducible(7, 4));
        assert_eq!(v.t, Some(HalfInt::Infinity));
    }

    #[test]
    fn nu_infinite_family_hits_terminal_interval() {
        let k = 4 + 4 * 125;
        let ap = ExactElement::from_integer(5, 5) + ExactElement::from_ratio(5, 15, 4).scale(&int(k - 4));
        let v = classify_crystalline(k, &ap, &opts()).unwrap();
        assert_eq!(v.case, Case::Interval(1));
        assert_eq!(v.rep, RepClass::irreducible(5, 7));
    }

    #[test]
    fn capped_agrees_with_exact() {
        let ap = ExactElement::from_integer(5, 505);
        let exact = classify_crystalline(104, &ap, &opts()).unwrap();
        let capped = classify_crystalline(104, &CappedElement::with_precision(&ap, 40), &opts()).unwrap();
        assert_eq!(exact.rep.equals(&capped.rep, Level::Full), Ok(true));
        assert_eq!(exact.tau, capped.tau);
        // too little precision to see v(numerator) = 4
        let starved = classify_crystalline(104, &CappedElement::with_precision(&ap, 3), &opts());
        assert!(matches!(starved, Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn p3_needs_override() {
        let ap = ExactElement::uniformizer(3);
        assert_eq!(classify_crystalline(3, &ap, &opts()), Err(Error::PrimeNeedsOverride));
        let v = classify_crystalline(3, &ap, &ClassifyOptions { allow_p3: true, ..opts() }).unwrap();
        assert_eq!(v.regime, Regime::Conjectural);
        assert_eq!(classify_crystalline(3, &ExactElement::uniformizer(9), &opts()), Err(Error::InvalidPrime(9)));
    }
}
