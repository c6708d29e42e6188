//! Weight families `a_p(k) = Σ c_j (k − k0)^j` and the machinery linking the
//! crystalline table at `k` to the semi-stable table at `k0`.

mod chart;
mod generate;
mod identity;

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::crystalline::ExceptionalData;
use crate::error::{Error, Result};
use crate::padic::{parse_element, ExactElement};

pub use chart::{chart_convergence, chart_limit, chart_point, ChartLimit, ChartPoint, ConvergenceRow};
pub use generate::{random_families, FamilyGenerator};
pub use identity::{consistency_check, identity_threshold, numerator_coefficients, verify_tau_identity, ConsistencyReport, EvalMode, TauReport};

/// Truncated Taylor expansion of `a_p` about `k0`, with `c0 = p^(r0/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApFamily {
    p: u64,
    k0: i64,
    coeffs: Vec<ExactElement>,
}

impl ApFamily {
    pub fn new(p: u64, k0: i64, coeffs: Vec<ExactElement>) -> Result<Self> {
        let data = ExceptionalData::from_base_weight(p, k0)?;
        let Some(c0) = coeffs.first() else {
            return Err(Error::InvalidFamily("no coefficients".into()));
        };
        if coeffs.iter().any(|c| c.prime() != p) {
            return Err(Error::InvalidFamily("coefficient over a different prime".into()));
        }
        if *c0 != ExactElement::pi_pow(p, data.r0) {
            return Err(Error::InvalidFamily(format!("c0 = {c0} is not p^({}/2)", data.r0)));
        }
        Ok(ApFamily { p, k0, coeffs })
    }

    /// Linear family `p^(r0/2)·(1 + (𝔏/2)(k − k0))`.
    pub fn linear(p: u64, k0: i64, l_invariant: &ExactElement) -> Result<Self> {
        let c0 = ExactElement::pi_pow(p, k0 - 2);
        let c1 = (&c0 * l_invariant).scale(&Ratio::new(BigInt::from(1), BigInt::from(2)));
        Self::new(p, k0, vec![c0, c1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k0(&self) -> i64 {
        self.k0
    }

    pub fn r0(&self) -> i64 {
        self.k0 - 2
    }

    pub fn coeffs(&self) -> &[ExactElement] {
        &self.coeffs
    }

    pub fn data(&self) -> ExceptionalData {
        ExceptionalData::from_base_weight(self.p, self.k0).expect("validated on construction")
    }

    pub fn coeff(&self, j: usize) -> ExactElement {
        self.coeffs.get(j).cloned().unwrap_or_else(|| ExactElement::zero(self.p))
    }

    /// `a_p(k)`; requires `k ≡ k0 mod (p−1)` and `k ≥ k0`.
    pub fn eval(&self, k: i64) -> Result<ExactElement> {
        self.data().check_weight(k)?;
        let h = ExactElement::from_integer(self.p, k - self.k0);
        Ok(self.coeffs.iter().rev().fold(ExactElement::zero(self.p), |acc, c| &(&acc * &h) + c))
    }

    /// `𝔏 = 2·a_p'(k0)/a_p(k0) = 2c1/c0`.
    pub fn l_invariant(&self) -> ExactElement {
        (&self.coeff(1) / &self.coeffs[0]).scale(&Ratio::from_integer(BigInt::from(2)))
    }

    /// Parses `p;k0;[c0,c1,...]`.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("{m} in family literal `{text}`"));
        let mut parts = text.splitn(3, ';');
        let p: u64 = parts.next().and_then(|s| s.trim().parse().ok()).ok_or_else(|| err("bad prime"))?;
        let k0: i64 = parts.next().and_then(|s| s.trim().parse().ok()).ok_or_else(|| err("bad k0"))?;
        let list = parts.next().ok_or_else(|| err("missing coefficients"))?.trim();
        let inner = list
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| err("coefficients must be bracketed"))?;
        if !crate::padic::modp::is_prime(p) || p < 3 {
            return Err(Error::InvalidPrime(p));
        }
        let coeffs = inner.split(',').map(|c| parse_element(p, c)).collect::<Result<Vec<_>>>()?;
        Self::new(p, k0, coeffs)
    }

    /// `k0 + (p−1)·p^m`, the weight with `t = m` used by sweeps.
    pub fn weight_at(&self, m: u32) -> i64 {
        self.k0 + (self.p as i64 - 1) * (self.p as i64).pow(m)
    }
}

impl fmt::Display for ApFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};[", self.p, self.k0)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}
