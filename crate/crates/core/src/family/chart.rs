use crate::error::{Error, Result};
use crate::padic::{log_one_plus_p, sqrt, CappedElement, ExactElement, HalfInt, SqrtBranch};

use super::ApFamily;

/// Coordinates of the crystalline point at weight `k` in the blow-up chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoint {
    pub k: i64,
    /// The unit-root-side Frobenius eigenvalue `y(k)`, close to `p^(r0/2)`.
    pub y_k: CappedElement,
    /// `y(k)²`.
    pub x: CappedElement,
    /// `(1+p)^(k−1) − 1`.
    pub y: CappedElement,
    /// `y(k)² − p^(r0)`.
    pub a: CappedElement,
    /// `(1+p)^(k−1) − (1+p)^(k0−1)`.
    pub b: CappedElement,
}

impl ChartPoint {
    /// Checks `(x − p^(r0))·b = (y − ((1+p)^(k0−1) − 1))·a` at the working precision.
    pub fn relation_holds(&self, r0: i64, k0: i64) -> Result<bool> {
        let p = self.x.prime();
        let n = self.y.abs_precision().as_integer().unwrap_or(i64::MAX);
        let p_r0 = CappedElement::exact(ExactElement::pi_pow(p, 2 * r0));
        let base = CappedElement::one_plus_p_pow(p, (k0 - 1) as u64, n).checked_sub(&CappedElement::from_integer(p, 1))?;
        let lhs = self.x.checked_sub(&p_r0)?.checked_mul(&self.b)?;
        let rhs = self.y.checked_sub(&base)?.checked_mul(&self.a)?;
        let diff = lhs.checked_sub(&rhs)?;
        Ok(diff.lead_valuation().is_none() || diff.approximant().is_zero())
    }
}

/// The limit point `(p^(r0), (1+p)^(k0−1) − 1, 2c0c1 : (1+p)^(k0−1)·log(1+p))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartLimit {
    pub x: CappedElement,
    pub y: CappedElement,
    pub a: CappedElement,
    pub b: CappedElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub k: i64,
    pub t: HalfInt,
    /// `v_p` of the difference between the slopes `b/a` at `k` and at the limit.
    pub gap: Result<HalfInt>,
}

fn check_chart_weight(f: &ApFamily, k: i64) -> Result<()> {
    if k == f.k0() {
        return Err(Error::DegenerateWeight);
    }
    f.data().check_weight(k)
}

pub fn chart_point(f: &ApFamily, k: i64, n: i64) -> Result<ChartPoint> {
    check_chart_weight(f, k)?;
    let p = f.p();
    let ap_exact = f.eval(k)?;
    if ap_exact.valuation() != HalfInt::Finite(f.r0()) {
        return Err(Error::InvalidFamily(format!("a_p({k}) does not have slope r0/2")));
    }
    let ap = CappedElement::with_precision(&ap_exact, n);
    // y = a_p(1 + √w)/2 with w = 1 − 4p^(k−1)/a_p², a 1-unit since k − 1 > r0
    let q = CappedElement::p_pow(p, k - 1, n);
    let four_q = q.checked_mul(&CappedElement::from_integer(p, 4))?;
    let w = CappedElement::from_integer(p, 1).checked_sub(&four_q.checked_div(&ap.checked_mul(&ap)?)?)?;
    let root = sqrt(&w, n, &SqrtBranch::Canonical)?;
    let half = CappedElement::exact(ExactElement::from_ratio(p, 1, 2));
    let y_k = ap.checked_mul(&CappedElement::from_integer(p, 1).checked_add(&root)?)?.checked_mul(&half)?;
    let x = y_k.checked_mul(&y_k)?;
    let one = CappedElement::from_integer(p, 1);
    let at_k = CappedElement::one_plus_p_pow(p, (k - 1) as u64, n);
    let at_k0 = CappedElement::one_plus_p_pow(p, (f.k0() - 1) as u64, n);
    let y = at_k.checked_sub(&one)?;
    let a = x.checked_sub(&CappedElement::exact(ExactElement::pi_pow(p, 2 * f.r0())))?;
    let b = at_k.checked_sub(&at_k0)?;
    Ok(ChartPoint { k, y_k, x, y, a, b })
}

pub fn chart_limit(f: &ApFamily, n: i64) -> ChartLimit {
    let p = f.p();
    let base = CappedElement::one_plus_p_pow(p, (f.k0() - 1) as u64, n);
    let two = ExactElement::from_integer(p, 2);
    let a = &(&two * &f.coeff(0)) * &f.coeff(1);
    let b = base.checked_mul(&log_one_plus_p(p, n)).expect("same prime");
    ChartLimit {
        x: CappedElement::exact(ExactElement::pi_pow(p, 2 * f.r0())),
        y: base.checked_sub(&CappedElement::from_integer(p, 1)).expect("same prime"),
        a: CappedElement::exact(a),
        b,
    }
}

/// `v_p(b/a − b_L/a_L)`, or `v_p(a/b − a_L/b_L)` when the limit slope is infinite.
fn slope_gap(point: &ChartPoint, limit: &ChartLimit) -> Result<HalfInt> {
    let diff = if limit.a.approximant().is_zero() {
        point.a.checked_div(&point.b)?.checked_sub(&limit.a.checked_div(&limit.b)?)?
    } else {
        point.b.checked_div(&point.a)?.checked_sub(&limit.b.checked_div(&limit.a)?)?
    };
    diff.certify_valuation()
}

pub fn chart_convergence(f: &ApFamily, ks: &[i64], n: i64) -> Result<Vec<ConvergenceRow>> {
    for &k in ks {
        check_chart_weight(f, k)?;
    }
    let limit = chart_limit(f, n);
    Ok(ks
        .iter()
        .map(|&k| ConvergenceRow {
            k,
            t: crate::crystalline::weight_distance(f.p(), k, f.k0()),
            gap: chart_point(f, k, n).and_then(|pt| slope_gap(&pt, &limit)),
        })
        .collect())
}
