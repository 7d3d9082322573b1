use thiserror::Error;

use crate::beatty::CoverFailure;

/// Errors reported by construction and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("numerator must be in [2, 2^31], got {0}")]
    NumeratorOutOfRange(i64),

    #[error("denominator must satisfy 1 <= q < p, got q={q} with p={p}")]
    DenominatorOutOfRange { p: i64, q: i64 },

    #[error("p={p} and q={q} must be coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("step d={d} must be a unit mod p={p}")]
    StepNotUnit { p: i64, d: i64 },

    #[error("a system must contain at least one sequence")]
    EmptySystem,

    #[error("operation requires equal numerators, found {0} and {1}")]
    MixedNumerators(i64, i64),

    #[error("density mismatch: denominators sum to {sum}, expected {p}")]
    DensityMismatch { sum: i64, p: i64 },

    #[error("not a disjoint cover: {0}")]
    NotACover(CoverFailure),

    #[error("combined period {0} exceeds the exact-check limit {1}")]
    PeriodTooLarge(i128, i128),

    #[error("numerator {0} exceeds the root-sum precision limit {1}")]
    RootSumModulusTooLarge(i64, i64),

    #[error("malformed block: {0}")]
    MalformedBlock(String),

    #[error("largest gap {largest} does not exceed q1={q1}")]
    GapBoundHypothesis { largest: i64, q1: i64 },

    #[error("gap bound needs at least two gap sizes (got a single-point orbit)")]
    GapBoundSinglePoint,

    #[error("sequence count {0} out of supported range [{1}, {2}]")]
    CountOutOfRange(u32, u32, u32),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("projected workload {projected} exceeds the budget {budget}")]
    BudgetProjection { projected: u64, budget: u64 },

    #[error("arithmetic overflow during {0}")]
    Overflow(&'static str),
}
