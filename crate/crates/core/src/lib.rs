//! Exact arithmetic for rational Beatty sequences and their disjoint
//! covering systems.
//!
//! A rational Beatty sequence `S(p/q, beta)` is the integer set
//! `{ floor((p/q)*n + beta) : n in Z }` with reduced modulus `p/q > 1`.
//! A family of such sequences is a *disjoint covering system* (DCS) when
//! every integer belongs to exactly one member. For equal numerators the
//! whole question reduces to exact residue arithmetic mod `p`, which is
//! what this crate implements:
//!
//! - [`beatty`]: sequence representation, membership, residue blocks,
//!   cover verification, complements, and union classification.
//! - [`correspondence`]: the induced partition of `Z_p` into arithmetic
//!   progressions, its normalization so the largest block is a prefix,
//!   and numeric root-of-unity vanishing checks.
//! - [`tg`]: sorted orbits `{a + i*d mod p}` and their gap structure
//!   (the three-gap theorem and its progression/counting corollaries).
//! - [`search`]: exhaustive search for equal-numerator covers over a
//!   bounded numerator range, with canonical machine-checkable
//!   certificates.
//!
//! All values are immutable after construction and all operations are
//! pure, so everything here is safe to share across threads.

pub mod beatty;
pub mod correspondence;
mod error;
pub mod modular;
pub mod rational;
pub mod search;
pub mod tg;

pub use beatty::{
    canonical_phase, classify_union, qbar, verify_dcs, BeattySpec, BeattySystem, CoverCertificate,
    CoverFailure, ResidueBlock, UnionClassification, UnionFailure,
};
pub use correspondence::{
    blocks_from_system, check_progression, check_root_sum, BlockPartition, ProgressionReport,
    RootSumReport,
};
pub use error::Error;
pub use rational::Rational;
pub use search::{
    exact_cover_search, fraenkel_system, search_conjecture, PerNumeratorStats, SearchConfig,
    SearchReport, SolutionCertificate,
};
pub use tg::{ApStructure, GapBoundReport, GapProfile, TgSequence};

/// Largest numerator accepted anywhere in the crate. Products of two
/// residues below this bound fit in `i64` without overflow.
pub const MAX_NUMERATOR: i64 = 1 << 31;
