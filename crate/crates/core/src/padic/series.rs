use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::exact_int::{int_valuation, ExactInt};
use super::{CappedElement, ExactElement, HalfInt};

/// Generalized binomial `n(n−1)…(n−m+1)/m!`, valid for any rational `n`.
pub fn binomial<I: ExactInt>(n: &Ratio<I>, m: u32) -> Ratio<I> {
    let mut acc = Ratio::<I>::one();
    for j in 0..m {
        let j = Ratio::from_integer(I::from_u32(j).unwrap());
        acc = acc * (n.clone() - j.clone()) / (j + Ratio::one());
    }
    acc
}

pub fn binomial_int(n: i64, m: u32) -> Ratio<BigInt> {
    binomial(&Ratio::from_integer(BigInt::from(n)), m)
}

/// Partial harmonic sum `H_l = 1 + 1/2 + … + 1/l`, with `H_0 = 0`.
pub fn harmonic<I: ExactInt>(l: u32) -> Ratio<I> {
    (1..=l).fold(Ratio::zero(), |acc, i| acc + Ratio::new(I::one(), I::from_u32(i).unwrap()))
}

/// `log(1+p) = Σ (−1)^(n+1) p^n / n`, truncated to absolute precision `n_prec`.
pub fn log_one_plus_p(p: u64, n_prec: i64) -> CappedElement {
    assert!(p >= 3 && n_prec >= 1);
    let pb = BigInt::from(p);
    let mut sum = Ratio::<BigInt>::zero();
    let mut n: u64 = 1;
    let mut power = pb.clone();
    // v_p(p^n/n) = n − v_p(n) ≥ n − ⌊log_p n⌋, which is nondecreasing in n.
    while (n as i64) - (ilog(n, p) as i64) < n_prec {
        if (n as i64) - int_valuation(&BigInt::from(n), p) < n_prec {
            let term = Ratio::new(power.clone(), BigInt::from(n));
            if n % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        n += 1;
        power *= &pb;
    }
    CappedElement::from_exact(&ExactElement::from_rational(p, sum), HalfInt::from_int(n_prec))
}

fn ilog(n: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut m = n;
    while m >= p {
        m /= p;
        k += 1;
    }
    k
}
