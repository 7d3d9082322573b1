//! From an equal-numerator cover to a partition of `[0, p)` into
//! arithmetic-progression blocks.
//!
//! A verified system induces one residue block per sequence, and the
//! blocks partition `[0, p)`. Multiplying every residue by `-q1` (a unit
//! mod `p`) and translating the largest block's start to zero turns that
//! partition into a canonical one whose first block is the plain prefix
//! `{0, .., q1-1}`; the remaining block differences become
//! `(-q1 * qbar(p, q_i)) mod p`. Partition membership is preserved
//! because the map is a bijection on residues.
//!
//! The numeric check in [`check_root_sum`] evaluates, for every
//! primitive `p`-th root of unity, the sum over each block of the
//! corresponding root powers; a genuine partition makes every such sum
//! vanish (it is the full geometric sum), so the maximum residual is a
//! machine-precision zero.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::beatty::{verify_dcs, BeattySystem, ResidueBlock};
use crate::error::Error;
use crate::modular::{gcd, inverse, mul_mod, reduce, reduce128};

/// Numerators above this make double-precision root sums untrustworthy.
pub const ROOT_SUM_MODULUS_LIMIT: i64 = 10_000;

/// Default residual tolerance for [`check_root_sum`].
pub const DEFAULT_ROOT_SUM_TOL: f64 = 1e-9;

/// A family of residue blocks partitioning `[0, p)`, one per sequence.
///
/// Unnormalized partitions keep the blocks index-aligned with the
/// source system. Normalized partitions are ordered by descending
/// length (ties by ascending unnormalized start) and have
/// `blocks[0] = {0, .., q1-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub p: i64,
    pub blocks: Vec<ResidueBlock>,
    pub normalized: bool,
}

impl BlockPartition {
    /// True when the block element sets are pairwise disjoint and cover
    /// every residue in `[0, p)`.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.p as usize];
        let mut count = 0i64;
        for block in &self.blocks {
            for e in block.elements() {
                if seen[e as usize] {
                    return false;
                }
                seen[e as usize] = true;
                count += 1;
            }
        }
        count == self.p
    }

    /// Applies `x -> m*(x - b1) mod p`, where `b1` is the start of the
    /// largest block and `m` the inverse of its difference, after
    /// ordering blocks by descending length (ties by ascending start).
    /// The largest block becomes the prefix `{0, .., q1-1}` with
    /// difference 1. For blocks derived from a system the difference is
    /// `qbar(p, q1)`, whose inverse is `-q1 mod p`, so the remaining
    /// differences become `(-q1 * qbar(p, q_i)) mod p`. Re-normalizing
    /// a normalized partition is the identity.
    pub fn normalize(&self) -> BlockPartition {
        let mut blocks = self.blocks.clone();
        blocks.sort_by(|a, b| b.len.cmp(&a.len).then(a.start.cmp(&b.start)));
        let b1 = blocks[0].start;
        let p = self.p;
        let m = inverse(blocks[0].diff, p)
            .expect("partition invariant: block differences are units mod p");
        let blocks: Vec<ResidueBlock> = blocks
            .iter()
            .map(|blk| ResidueBlock {
                p,
                start: reduce128(m as i128 * (blk.start - b1) as i128, p),
                diff: reduce128(m as i128 * blk.diff as i128, p),
                len: blk.len,
            })
            .collect();
        debug_assert_eq!((blocks[0].start, blocks[0].diff), (0, 1));
        BlockPartition {
            p,
            blocks,
            normalized: true,
        }
    }
}

/// Residue blocks of a verified equal-numerator cover, index-aligned
/// with the system. Rejects systems that fail [`verify_dcs`], carrying
/// the cover failure.
pub fn blocks_from_system(system: &BeattySystem) -> Result<BlockPartition, Error> {
    let cert = verify_dcs(system)?;
    if let Some(failure) = cert.failure {
        return Err(Error::NotACover(failure));
    }
    let partition = BlockPartition {
        p: cert.p,
        blocks: system.specs().iter().map(|s| s.residue_block()).collect(),
        normalized: false,
    };
    debug_assert!(partition.is_partition());
    Ok(partition)
}

/// Absolute values of the per-block root-power sums, one entry per
/// primitive root exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSumReport {
    pub p: i64,
    /// `(k, |sum at exp(2*pi*i*k/p)|)` for every `k` coprime to `p`.
    pub residuals: Vec<(i64, f64)>,
    pub max_residual: f64,
    pub tol: f64,
    pub within_tol: bool,
}

/// Evaluates, at every primitive `p`-th root of unity `ξ`, the sum
/// `Σ_i ξ^{b_i} (1 + ξ^{d_i} + .. + ξ^{(q_i-1) d_i})` over the system's
/// residue blocks `(b_i, d_i, q_i)`, and reports each absolute value.
///
/// Requires equal numerators with denominators summing to `p`; the
/// input need not be a verified cover (non-covers simply report large
/// residuals).
pub fn check_root_sum(system: &BeattySystem, tol: f64) -> Result<RootSumReport, Error> {
    let p = system.numerator()?;
    if p > ROOT_SUM_MODULUS_LIMIT {
        return Err(Error::RootSumModulusTooLarge(p, ROOT_SUM_MODULUS_LIMIT));
    }
    let sum: i64 = system.specs().iter().map(|s| s.q()).sum();
    if sum != p {
        return Err(Error::DensityMismatch { sum, p });
    }

    let elements: Vec<i64> = system
        .specs()
        .iter()
        .flat_map(|s| s.residue_block().elements().collect::<Vec<_>>())
        .collect();
    // exp(2*pi*i*m/p) for m in [0, p); exponents are reduced before
    // lookup so no rounding accumulates across powers.
    let step = 2.0 * std::f64::consts::PI / p as f64;
    let roots: Vec<Complex64> = (0..p)
        .map(|m| Complex64::from_polar(1.0, step * m as f64))
        .collect();

    let residuals: Vec<(i64, f64)> = (1..p)
        .into_par_iter()
        .filter(|&k| gcd(k, p) == 1)
        .map(|k| {
            let total: Complex64 = elements
                .iter()
                .map(|&x| roots[mul_mod(k, x, p) as usize])
                .sum();
            (k, total.norm())
        })
        .collect();
    let max_residual = residuals.iter().fold(0.0f64, |acc, &(_, r)| acc.max(r));
    Ok(RootSumReport {
        p,
        residuals,
        max_residual,
        tol,
        within_tol: max_residual < tol,
    })
}

/// Result of the shifted-overlap progression check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProgressionReport {
    /// `B1 ∩ (B1 + step) ≠ ∅`.
    pub hypothesis: bool,
    /// `B2`, read as sorted integers, is a monotone arithmetic
    /// progression inside `[q1, p-1]` with common difference `step` or
    /// `p - step`.
    pub conclusion: bool,
}

/// Checks that a prefix block `B1 = {0, .., q1-1}` whose translate by
/// `step` still meets it forces the disjoint block `B2` (difference
/// `step`) to be a monotone progression above the prefix. The
/// implication holds for every partition arising from a verified cover;
/// a counterexample indicates a bug.
pub fn check_progression(
    b1: &ResidueBlock,
    b2: &ResidueBlock,
    q1: i64,
    step: i64,
) -> Result<ProgressionReport, Error> {
    if b1.p != b2.p {
        return Err(Error::MalformedBlock(format!(
            "blocks live in different moduli {} and {}",
            b1.p, b2.p
        )));
    }
    let p = b1.p;
    if b1.len != q1 || b1.sorted_elements() != (0..q1).collect::<Vec<_>>() {
        return Err(Error::MalformedBlock(format!(
            "first block must be the prefix {{0, .., {}}}",
            q1 - 1
        )));
    }
    let step = reduce(step, p);
    if step != b2.diff && b2.len > 1 {
        return Err(Error::MalformedBlock(format!(
            "step {} disagrees with the block difference {}",
            step, b2.diff
        )));
    }
    let b2_elems = b2.sorted_elements();
    if b2_elems.first().is_some_and(|&e| e < q1) {
        return Err(Error::MalformedBlock(
            "blocks must be disjoint".to_string(),
        ));
    }

    // B1 is the prefix, so B1 + step meets it iff some shifted element
    // wraps back below q1.
    let hypothesis = (0..q1).any(|x| reduce(x + step, p) < q1);

    let conclusion = b2_elems.windows(2).all(|w| {
        let d = w[1] - w[0];
        d == step || d == p - step
    }) && b2_elems
        .windows(3)
        .all(|w| w[1] - w[0] == w[2] - w[1]);

    Ok(ProgressionReport {
        hypothesis,
        conclusion,
    })
}
