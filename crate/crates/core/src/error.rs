use thiserror::Error;

use crate::padic::HalfInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("{0} is not a prime >= 3")]
    InvalidPrime(u64),
    #[error("p = 3 is outside the supported range; pass the p = 3 override to proceed")]
    PrimeNeedsOverride,
    #[error("element has negative valuation {0}; no residue")]
    NegativeValuation(HalfInt),
    #[error("unit part is not a square modulo p")]
    NonSquareResidue,
    #[error("element has odd uniformizer valuation (v = {0})")]
    OddValuation(HalfInt),
    #[error("insufficient precision: only certified that valuation >= {bound}")]
    InsufficientPrecision { bound: HalfInt },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("unramified constant must be nonzero")]
    ZeroLambda,
    #[error("full-Galois comparison requested for an inertia-only class")]
    LevelUnavailable,
    #[error("slope {0} outside [1/2, (p-1)/2]")]
    SlopeOutOfRange(HalfInt),
    #[error("weight {k} is not congruent to k0 = {k0} modulo p - 1 = {modulus}")]
    WeightCongruenceViolation { k: i64, k0: i64, modulus: i64 },
    #[error("weight {k} is below the base weight k0 = {k0}")]
    WeightBelowBase { k: i64, k0: i64 },
    #[error("base weight k0 = {k0} outside [3, p + 1] for p = {p}")]
    BaseWeightOutOfRange { k0: i64, p: u64 },
    #[error("r = r0 makes the factor degenerate")]
    DegenerateWeight,
    #[error("no historical fudge factor for (i, r0) = ({i}, {r0})")]
    UnknownFactor { i: i64, r0: i64 },
    #[error("index {i} outside the ladder for r0 = {r0}")]
    IndexOutOfRange { i: i64, r0: i64 },
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
