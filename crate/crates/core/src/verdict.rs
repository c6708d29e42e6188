//! Verdicts shared by the crystalline and semi-stable classifiers, and the
//! ladder that both case tables are read from.

use std::fmt;

use crate::error::{Error, Result};
use crate::padic::modp::is_prime;
use crate::padic::HalfInt;
use crate::repclasses::RepClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// An open interval of the ladder; carries an irreducible class.
    Interval(u32),
    /// A ladder point; carries a reducible class.
    Point(u32),
}

impl Case {
    pub fn index(self) -> u32 {
        match self {
            Case::Interval(i) | Case::Point(i) => i,
        }
    }

    pub fn kind(self) -> &'static str {
        match self {
            Case::Interval(_) => "interval",
            Case::Point(_) => "point",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.kind(), self.index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Covered by a proved result (large t, p ≥ 5, or k = k0).
    Theorem,
    Conjectural,
    Unsupported,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Theorem => "theorem",
            Regime::Conjectural => "conjectural",
            Regime::Unsupported => "unsupported",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZagVerdict {
    pub p: u64,
    pub r0: i64,
    /// `v_p(c)`; absent for semi-stable verdicts and when not certifiable at `k = k0`.
    pub tau: Option<HalfInt>,
    /// `v_p(k − k0)`; absent for semi-stable verdicts.
    pub t: Option<HalfInt>,
    /// `v_p(𝔏 − H₋ − H₊)`; semi-stable verdicts only.
    pub nu: Option<HalfInt>,
    pub case: Case,
    pub rep: RepClass,
    /// `λ + λ⁻¹` in the self-dual case.
    pub trace: Option<u64>,
    pub regime: Regime,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct ClassifyOptions {
    /// Smallest `t` reported as the proved regime; `None` means `r0`.
    pub t_min: Option<i64>,
    /// Accept `p = 3`, outside the proved range.
    pub allow_p3: bool,
}


pub(crate) fn check_prime(p: u64, opts: &ClassifyOptions) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if p == 3 && !opts.allow_p3 {
        return Err(Error::PrimeNeedsOverride);
    }
    Ok(())
}

/// Largest index on the ladder: `(r0−1)/2` for odd `r0`, `r0/2` for even.
pub fn last_index(r0: i64) -> u32 {
    (r0 / 2) as u32
}

/// Locates an offset `d` on the ladder whose points sit at `d = 0, 1, …`.
///
/// `d = τ − t` for crystalline inputs and `d = ν + r0/2 − 1` for semi-stable
/// ones. The first interval extends to −∞. For odd `r0` the last point is the
/// closed ray `[(r0−1)/2, ∞]`; for even `r0` the last interval is
/// `(r0/2 − 1, ∞]` and the point `r0/2` is dropped.
pub fn locate(d: HalfInt, r0: i64) -> Case {
    let last = last_index(r0);
    let HalfInt::Finite(tw) = d else {
        return terminal(r0);
    };
    if r0 % 2 == 1 {
        if tw >= 2 * last as i64 {
            return Case::Point(last);
        }
    } else if tw > 2 * (last as i64 - 1) {
        return Case::Interval(last);
    }
    if tw < 0 {
        return Case::Interval(0);
    }
    if tw % 2 == 0 {
        Case::Point((tw / 2) as u32)
    } else {
        Case::Interval((tw.div_euclid(2) + 1) as u32)
    }
}

/// The case containing every `d ≥ bound`, if there is a single one.
pub fn locate_at_least(bound: HalfInt, r0: i64) -> Option<Case> {
    let HalfInt::Finite(tw) = bound else {
        return Some(terminal(r0));
    };
    let last = last_index(r0) as i64;
    let settled = if r0 % 2 == 1 { tw >= 2 * last } else { tw > 2 * (last - 1) };
    settled.then(|| terminal(r0))
}

fn terminal(r0: i64) -> Case {
    if r0 % 2 == 1 {
        Case::Point(last_index(r0))
    } else {
        Case::Interval(last_index(r0))
    }
}

/// Class attached to a ladder case: `ind(ω₂^(r0+1+i(p−1)))` on intervals,
/// `ω^(r0−i) ⊕ ω^(1+i)` on points.
pub fn inertia_class(p: u64, r0: i64, case: Case) -> RepClass {
    match case {
        Case::Interval(i) => RepClass::irreducible(p, r0 + 1 + i as i64 * (p as i64 - 1)),
        Case::Point(i) => RepClass::reducible(p, r0 - i as i64, 1 + i as i64, None).expect("no lambda"),
    }
}
