//! Per-weight verification rows over families.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use zigzag_core::family::{chart_convergence, consistency_check, verify_tau_identity, ApFamily, EvalMode};
use zigzag_core::verdict::ClassifyOptions;
use zigzag_core::HalfInt;

use crate::output::Tabular;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub k: i64,
    pub t: Option<String>,
    pub tau: Option<String>,
    pub nu: Option<String>,
    pub residual: Option<String>,
    pub certified: Option<bool>,
    pub inertia_match: Option<bool>,
    pub full_match: Option<bool>,
    pub gap: Option<String>,
    pub error: Option<String>,
}

impl SweepRow {
    /// A certified row whose residual or class comparison failed.
    pub fn is_failure(&self) -> bool {
        self.certified == Some(true)
            && (self.residual.as_deref().is_some_and(|r| r != "0")
                || self.inertia_match == Some(false)
                || self.full_match == Some(false))
    }
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl Tabular for SweepRow {
    const HEADER: &'static [&'static str] =
        &["family", "k", "t", "tau", "nu", "residual", "certified", "inertia_match", "full_match", "gap", "error"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.k.to_string(),
            cell(&self.t),
            cell(&self.tau),
            cell(&self.nu),
            cell(&self.residual),
            cell(&self.certified),
            cell(&self.inertia_match),
            cell(&self.full_match),
            cell(&self.gap),
            cell(&self.error),
        ]
    }
}

/// One row: the τ identity, the two classifiers and the chart gap at weight `k`.
pub fn compute_row(f: &ApFamily, k: i64, mode: EvalMode, precision: i64, opts: &ClassifyOptions) -> SweepRow {
    let mut row = SweepRow {
        family: f.to_string(),
        k,
        t: None,
        tau: None,
        nu: None,
        residual: None,
        certified: None,
        inertia_match: None,
        full_match: None,
        gap: None,
        error: None,
    };
    let mut errors = Vec::new();
    match verify_tau_identity(f, k, mode) {
        Ok(r) => {
            row.t = Some(r.t.to_string());
            row.tau = Some(r.tau.to_string());
            row.nu = Some(r.nu.to_string());
            row.residual = r.residual.map(|h| h.to_string());
            // with ν = ∞ the row is past the ladder's end once τ − t > r0/2
            let certified = if r.unbounded { r.tau_minus_t > HalfInt::Finite(f.r0()) } else { r.guaranteed };
            row.certified = Some(certified && r.binomial_check);
        }
        Err(e) => errors.push(e.to_string()),
    }
    match consistency_check(f, k, mode, opts) {
        Ok(c) => {
            row.inertia_match = Some(c.inertia_match);
            row.full_match = Some(c.full_match);
        }
        Err(e) => errors.push(e.to_string()),
    }
    match chart_convergence(f, &[k], precision).map(|mut rows| rows.remove(0).gap) {
        Ok(Ok(gap)) => row.gap = Some(gap.to_string()),
        Ok(Err(e)) | Err(e) => errors.push(format!("gap: {e}")),
    }
    if !errors.is_empty() {
        errors.dedup();
        row.error = Some(errors.join("; "));
    }
    row
}

/// Rows for every family at every weight, in input order.
pub fn compute_rows(
    families: &[ApFamily],
    weights: impl Fn(&ApFamily) -> Vec<i64>,
    mode: EvalMode,
    precision: i64,
    opts: &ClassifyOptions,
) -> Vec<SweepRow> {
    let jobs: Vec<(&ApFamily, i64)> = families.iter().flat_map(|f| weights(f).into_iter().map(move |k| (f, k))).collect();
    jobs.par_iter().map(|&(f, k)| compute_row(f, k, mode, precision, opts)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub certified: usize,
    pub pass: usize,
    pub fail: usize,
    pub uncertified: usize,
    pub errors: usize,
}

impl Summary {
    pub fn of(rows: &[SweepRow]) -> Self {
        let mut s = Summary { rows: rows.len(), ..Default::default() };
        for row in rows {
            if row.error.is_some() {
                s.errors += 1;
            }
            match row.certified {
                Some(true) => {
                    s.certified += 1;
                    if row.is_failure() {
                        s.fail += 1;
                    } else {
                        s.pass += 1;
                    }
                }
                Some(false) => s.uncertified += 1,
                None => {}
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "summary: rows={} certified={} pass={} fail={} uncertified={} errors={}",
            self.rows, self.certified, self.pass, self.fail, self.uncertified, self.errors
        )
    }
}
