use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crystalline::ExceptionalData;
use crate::error::{Error, Result};
use crate::padic::ExactElement;

use super::ApFamily;

/// Seeded source of valid families with controlled `ν` and higher coefficients.
///
/// `𝔏 = H₋ + H₊ + u·p^ν` with `u` a random p-adic unit and `2ν ∈ [max(−r0−1, −3), 3]`;
/// about one family in twenty has `𝔏 = H₋ + H₊` (`ν = ∞`). Coefficients
/// `c_j` for `j ≥ 2` are `c0` times elements of valuation at least `v_p(𝔏)`,
/// so the first-order term dominates from small `t` on. Since `v_p(𝔏) ≥ −3/2`,
/// the slope of `a_p(k)` is `r0/2` for every `k` with `t ≥ 2`.
pub struct FamilyGenerator {
    rng: ChaCha8Rng,
    primes: Vec<u64>,
    max_degree: usize,
    r0_range: (i64, i64),
}

impl FamilyGenerator {
    pub fn new(seed: u64, primes: &[u64], max_degree: usize) -> Self {
        assert!(!primes.is_empty() && primes.iter().all(|&p| p >= 3));
        FamilyGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            primes: primes.to_vec(),
            max_degree: max_degree.max(1),
            r0_range: (1, i64::MAX),
        }
    }

    /// Restricts `r0` to `[lo, hi]`; primes that admit no such `r0` are dropped.
    pub fn with_r0_range(mut self, lo: i64, hi: i64) -> Result<Self> {
        self.primes.retain(|&p| lo.max(1) <= hi.min(p as i64 - 1));
        if self.primes.is_empty() {
            return Err(Error::InvalidFamily(format!("no prime admits r0 in [{lo}, {hi}]")));
        }
        self.r0_range = (lo, hi);
        Ok(self)
    }

    fn unit(&mut self, p: u64) -> Ratio<BigInt> {
        let p = p as i64;
        let num = self.rng.gen_range(1..p) + p * self.rng.gen_range(-3..=3);
        let den = loop {
            let d = self.rng.gen_range(1..4 * p);
            if d % p != 0 {
                break d;
            }
        };
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn next_family(&mut self) -> ApFamily {
        let p = self.primes[self.rng.gen_range(0..self.primes.len())];
        let r0 = self.rng.gen_range(self.r0_range.0.max(1)..=self.r0_range.1.min(p as i64 - 1));
        let data = ExceptionalData::from_slope(p, crate::padic::HalfInt::Finite(r0)).expect("slope in range");
        let h = ExactElement::from_rational(p, data.h_sum());
        let l = if self.rng.gen_ratio(1, 20) {
            h
        } else {
            let nu_twice = self.rng.gen_range((-r0 - 1).max(-3)..=3);
            let u = self.unit(p);
            &h + &ExactElement::pi_pow(p, nu_twice).scale(&u)
        };
        let vl = l.valuation().twice().unwrap_or(0);
        let c0 = ExactElement::pi_pow(p, r0);
        let c1 = (&c0 * &l).scale(&Ratio::new(BigInt::from(1), BigInt::from(2)));
        let mut coeffs = vec![c0.clone(), c1];
        let degree = self.rng.gen_range(1..=self.max_degree);
        for _ in 2..=degree {
            let c = if self.rng.gen_ratio(1, 4) {
                ExactElement::zero(p)
            } else {
                let e = vl + self.rng.gen_range(0..=3);
                let u = self.unit(p);
                &c0 * &ExactElement::pi_pow(p, e).scale(&u)
            };
            coeffs.push(c);
        }
        ApFamily::new(p, r0 + 2, coeffs).expect("generated family is valid")
    }
}

/// `count` families from a fixed seed; identical arguments give identical output.
pub fn random_families(seed: u64, primes: &[u64], count: usize, max_degree: usize) -> Vec<ApFamily> {
    let mut g = FamilyGenerator::new(seed, primes, max_degree);
    (0..count).map(|_| g.next_family()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let a = random_families(7, &[5, 7, 11, 13], 50, 3);
        let b = random_families(7, &[5, 7, 11, 13], 50, 3);
        assert_eq!(a, b);
        assert_ne!(a, random_families(8, &[5, 7, 11, 13], 50, 3));
        let mut g = FamilyGenerator::new(1, &[5, 7], 2).with_r0_range(5, 9).unwrap();
        for _ in 0..20 {
            let f = g.next_family();
            assert_eq!(f.p(), 7);
            assert!((5..=6).contains(&f.r0()));
        }
        assert!(FamilyGenerator::new(1, &[5], 2).with_r0_range(5, 9).is_err());
        for f in &a {
            assert!((3..=f.p() as i64 + 1).contains(&f.k0()));
            assert!(f.coeffs().len() <= 4);
            for m in 2..=4 {
                assert_eq!(f.eval(f.weight_at(m)).unwrap().valuation(), crate::padic::HalfInt::Finite(f.r0()));
            }
        }
    }
}
