use crate::crystalline::{classify_crystalline, compute_tau_t};
use crate::error::{Error, Result};
use crate::padic::{binomial_int, harmonic, CappedElement, ExactElement, HalfInt, PadicScalar};
use crate::repclasses::Level;
use crate::semistable::{classify_semistable, compute_nu, SemistableInput};
use crate::verdict::{ClassifyOptions, ZigZagVerdict};

use super::ApFamily;

/// Arithmetic used by the family checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    Exact,
    /// Capped arithmetic with the given absolute precision.
    Capped(i64),
}

type Poly = Vec<ExactElement>;

fn poly_mul(a: &[ExactElement], b: &[ExactElement], p: u64) -> Poly {
    let mut out = vec![ExactElement::zero(p); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `C(h + v, v) = Π_{j=1..v} (h + j)/j` as a polynomial in `h`.
fn shifted_binomial(v: i64, p: u64) -> Poly {
    let mut poly = vec![ExactElement::one(p)];
    for j in 1..=v {
        poly = poly_mul(&poly, &[ExactElement::one(p), ExactElement::from_ratio(p, 1, j)], p);
    }
    poly
}

/// Coefficients `e_j` with `a_p(k)² − C(r−v₋,v₊)C(r−v₊,v₋)p^{r0} = p^{r0}·Σ e_j h^j`, `h = k − k0`.
///
/// `e_0 = 0` and `e_1 = 𝔏 − H₋ − H₊`.
pub fn numerator_coefficients(f: &ApFamily) -> Vec<ExactElement> {
    let p = f.p();
    let data = f.data();
    let scale = ExactElement::pi_pow(p, -2 * data.r0);
    let square = poly_mul(f.coeffs(), f.coeffs(), p);
    let binom = poly_mul(&shifted_binomial(data.v_plus, p), &shifted_binomial(data.v_minus, p), p);
    let len = square.len().max(binom.len());
    (0..len)
        .map(|j| {
            let a = square.get(j).map(|c| c * &scale).unwrap_or_else(|| ExactElement::zero(p));
            let b = binom.get(j).cloned().unwrap_or_else(|| ExactElement::zero(p));
            a - b
        })
        .collect()
}

/// Smallest `t ≥ 1` from which the first-order term provably dominates both
/// `a_p(k)` and the numerator of `c`, so that `τ = r0/2 − 1 + ν + t` holds
/// for every `k` with `v_p(k − k0) ≥` it. `None` when `ν = ∞`.
pub fn identity_threshold(f: &ApFamily) -> Option<i64> {
    let e = numerator_coefficients(f);
    let v1 = e.get(1)?.valuation().twice()?;
    let r0 = f.r0();
    // smallest integer t with 2·j·t > x
    let above = |x: i64, j: i64| x.div_euclid(2 * j) + 1;
    let mut t = 1;
    for (j, c) in f.coeffs().iter().enumerate().skip(1) {
        if let Some(vc) = c.valuation().twice() {
            t = t.max(above(r0 - vc, j as i64));
        }
    }
    for (j, ej) in e.iter().enumerate().skip(2) {
        if let Some(vj) = ej.valuation().twice() {
            t = t.max(above(v1 - vj, j as i64 - 1));
        }
    }
    Some(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauReport {
    pub k: i64,
    pub t: HalfInt,
    pub tau: HalfInt,
    pub nu: HalfInt,
    /// `τ − (r0/2 − 1 + ν + t)`; absent when `ν = ∞`.
    pub residual: Option<HalfInt>,
    pub tau_minus_t: HalfInt,
    /// `ν = ∞`: `τ − t` grows without bound as `t` does.
    pub unbounded: bool,
    /// Both binomials agree with `1 + (k−k0)H_±` modulo `p^{2t}`.
    pub binomial_check: bool,
    /// `t` is at least [`identity_threshold`], so the residual must vanish.
    pub guaranteed: bool,
}

fn checked_point(f: &ApFamily, k: i64) -> Result<ExactElement> {
    if k == f.k0() {
        return Err(Error::DegenerateWeight);
    }
    let a = f.eval(k)?;
    let slope = a.valuation();
    if slope != HalfInt::Finite(f.r0()) {
        return Err(Error::InvalidFamily(format!("a_p({k}) has slope {slope}, not r0/2 = {}", HalfInt::Finite(f.r0()))));
    }
    Ok(a)
}

pub fn verify_tau_identity(f: &ApFamily, k: i64, mode: EvalMode) -> Result<TauReport> {
    let a = checked_point(f, k)?;
    let l = f.l_invariant();
    let opts = ClassifyOptions { allow_p3: true, ..Default::default() };
    let (tau, t, nu) = match mode {
        EvalMode::Exact => {
            let (tau, t) = compute_tau_t(k, &a)?;
            (tau, t, compute_nu(&SemistableInput::new(f.k0(), l, &opts)?)?)
        }
        EvalMode::Capped(n) => {
            let (tau, t) = compute_tau_t(k, &CappedElement::with_precision(&a, n))?;
            let inp = SemistableInput::new(f.k0(), CappedElement::with_precision(&l, n), &opts)?;
            (tau, t, compute_nu(&inp)?)
        }
    };
    let r0 = f.r0();
    let predicted = nu + HalfInt::Finite(r0 - 2) + t;
    let residual = nu.is_finite().then(|| tau - predicted);
    let data = f.data();
    let h = k - f.k0();
    let tw = t.twice().unwrap();
    let binomial_check = [(data.v_plus, data.v_minus), (data.v_minus, data.v_plus)].iter().all(|&(top, bottom)| {
        // C(r − bottom, top) with r − bottom = h + top
        let r = k - 2;
        let exact = binomial_int(r - bottom, top as u32);
        let linear = num_rational::Ratio::from_integer(h.into()) * harmonic::<num_bigint::BigInt>(top as u32);
        let diff = ExactElement::from_rational(f.p(), exact - linear - num_rational::Ratio::from_integer(1.into()));
        diff.valuation() >= HalfInt::Finite(2 * tw)
    });
    let guaranteed = identity_threshold(f).is_some_and(|th| t >= HalfInt::from_int(th));
    Ok(TauReport {
        k,
        t,
        tau,
        nu,
        residual,
        tau_minus_t: tau - t,
        unbounded: !nu.is_finite(),
        binomial_check,
        guaranteed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub k: i64,
    pub crys: ZigZagVerdict,
    pub st: ZigZagVerdict,
    pub inertia_match: bool,
    pub full_match: bool,
}

fn classify_pair<S: PadicScalar>(f: &ApFamily, k: i64, a: S, l: S, opts: &ClassifyOptions) -> Result<ConsistencyReport> {
    let crys = classify_crystalline(k, &a, opts)?;
    let st = classify_semistable(&SemistableInput::new(f.k0(), l, opts)?, opts)?;
    let inertia_match = crys.rep.equals(&st.rep, Level::Inertia)?;
    let full_match = crys.rep.equals(&st.rep, Level::Full)?;
    Ok(ConsistencyReport { k, crys, st, inertia_match, full_match })
}

/// Classifies `V_{k, a_p(k)}` and `V_{k0, 𝔏}` and compares the two classes.
pub fn consistency_check(f: &ApFamily, k: i64, mode: EvalMode, opts: &ClassifyOptions) -> Result<ConsistencyReport> {
    let a = checked_point(f, k)?;
    let l = f.l_invariant();
    match mode {
        EvalMode::Exact => classify_pair(f, k, a, l, opts),
        EvalMode::Capped(n) => classify_pair(
            f,
            k,
            CappedElement::with_precision(&a, n),
            CappedElement::with_precision(&l, n),
            opts,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::parse_element;
    use crate::verdict::Case;

    fn fam(s: &str) -> ApFamily {
        ApFamily::parse(s).unwrap()
    }

    #[test]
    fn numerator_leading_coefficient_is_shifted_l_invariant() {
        for text in ["5;4;[5,5]", "5;4;[5,15/4,2]", "7;5;[7*s,7*s,1]", "11;8;[1331,3/2,5]"] {
            let f = fam(text);
            let e = numerator_coefficients(&f);
            assert!(e[0].is_zero());
            let h = ExactElement::from_rational(f.p(), f.data().h_sum());
            assert_eq!(e[1], &f.l_invariant() - &h, "{text}");
        }
    }

    #[test]
    fn numerator_matches_direct_evaluation() {
        let f = fam("7;5;[7*s,7*s + 2,1/3,5*s]");
        let e = numerator_coefficients(&f);
        for m in 1..4 {
            let k = f.weight_at(m);
            let a = f.eval(k).unwrap();
            let direct = &(&a * &a)
                - &ExactElement::from_rational(7, f.data().binomial_product(k)).scale(&num_rational::Ratio::from_integer(343.into()));
            let h = ExactElement::from_integer(7, k - 5);
            let via = e.iter().rev().fold(ExactElement::zero(7), |acc, c| &(&acc * &h) + c) * ExactElement::pi_pow(7, 6);
            assert_eq!(direct, via);
        }
    }

    #[test]
    fn worked_family_reports() {
        let f = fam("5;4;[5,5]");
        let r = verify_tau_identity(&f, 104, EvalMode::Exact).unwrap();
        assert_eq!((r.tau, r.t, r.nu), (HalfInt::from_int(2), HalfInt::from_int(2), HalfInt::ZERO));
        assert_eq!(r.residual, Some(HalfInt::ZERO));
        assert!(r.binomial_check && r.guaranteed);
        let r = verify_tau_identity(&f, 504, EvalMode::Exact).unwrap();
        assert_eq!((r.tau, r.t, r.residual), (HalfInt::from_int(3), HalfInt::from_int(3), Some(HalfInt::ZERO)));
        let capped = verify_tau_identity(&f, 504, EvalMode::Capped(40)).unwrap();
        assert_eq!(capped, r);
    }

    #[test]
    fn unbounded_family() {
        let f = fam("5;4;[5,15/4]");
        assert_eq!(identity_threshold(&f), None);
        for m in 1..=5 {
            let r = verify_tau_identity(&f, f.weight_at(m), EvalMode::Exact).unwrap();
            assert!(r.unbounded);
            assert_eq!(r.residual, None);
            // c = 5h²/(16 a_p): τ = 2t, so τ − t = t
            assert_eq!(r.tau_minus_t, HalfInt::from_int(m as i64));
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(identity_threshold(&fam("5;4;[5,5]")), Some(1));
        // 𝔏 = 2/5: ν = −1, so t must exceed 1 for the slope and the numerator
        assert_eq!(identity_threshold(&fam("5;4;[5,1]")), Some(2));
        assert_eq!(identity_threshold(&fam("5;4;[5,1/25]")), Some(4));
    }

    #[test]
    fn consistency_examples() {
        let opts = ClassifyOptions::default();
        let r = consistency_check(&fam("5;4;[5,5]"), 104, EvalMode::Exact, &opts).unwrap();
        assert_eq!(r.crys.case, Case::Point(0));
        assert_eq!(r.st.case, Case::Point(0));
        assert!(r.inertia_match && r.full_match);
        assert_eq!(r.crys.rep.to_string(), "mu(4)*w^2 + mu(4)*w^1");

        let g = fam("5;4;[5,15/4]");
        let r = consistency_check(&g, g.weight_at(3), EvalMode::Exact, &opts).unwrap();
        assert_eq!((r.crys.case, r.st.case), (Case::Interval(1), Case::Interval(1)));
        assert!(r.inertia_match);
        assert_eq!(r.crys.rep.to_string(), "ind(w2^7)");

        let l = parse_element(7, "5/2 + 1/7").unwrap();
        let h = ApFamily::linear(7, 5, &l).unwrap();
        assert_eq!(h.coeffs()[1], parse_element(7, "35/4*s + 1/2*s").unwrap());
        let r = consistency_check(&h, h.weight_at(3), EvalMode::Exact, &opts).unwrap();
        assert_eq!((r.crys.case, r.st.case), (Case::Interval(0), Case::Interval(0)));
        assert_eq!(r.st.rep.to_string(), "ind(w2^4)");
        assert!(r.full_match);

        assert_eq!(consistency_check(&h, 5, EvalMode::Exact, &opts).unwrap_err(), Error::DegenerateWeight);
    }
}
