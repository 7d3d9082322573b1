//! Exhaustive search for equal-numerator disjoint covers.
//!
//! For a numerator `p`, each candidate denominator tuple must be
//! descending with `sum q_i = p` and every `q_i` coprime to `p` (and
//! pairwise distinct unless multiplicity is allowed). A tuple admits a
//! cover exactly when the blocks `start_i + j * qbar(p, q_i)` of length
//! `q_i` can be aligned to partition `[0, p)`; the backtracking below
//! branches on the smallest uncovered residue, for which each unplaced
//! block has at most `q_i` alignments.
//!
//! Translation classes are deduplicated by pinning the first (largest)
//! block's start to 0; among blocks of equal length, starts are forced
//! ascending by index. Reports are fully deterministic: shards are cut
//! against the operation budget in a fixed order, so the worker count
//! never changes the result.

use rayon::prelude::*;

use crate::beatty::{qbar, verify_dcs, BeattySpec, BeattySystem, ResidueBlock};
use crate::error::Error;
use crate::modular::{gcd, mul_mod, reduce};
use crate::rational::Rational;
use crate::MAX_NUMERATOR;

/// Default cap on elementary cover operations per search run.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Above this numerator the up-front workload projection gives up and
/// reports the scan as over budget.
const PROJECTION_DP_LIMIT: i64 = 2_000_000;

/// Parameters of one conjecture search run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Number of sequences per system (>= 2).
    pub n: u32,
    pub p_min: i64,
    pub p_max: i64,
    /// Require pairwise distinct denominators (the conjecture setting).
    pub require_distinct: bool,
    /// Worker threads; never affects report content.
    pub workers: usize,
    /// Elementary cover-operation budget for the whole run.
    pub budget: u64,
}

impl SearchConfig {
    pub fn new(n: u32, p_min: i64, p_max: i64) -> Self {
        SearchConfig {
            n,
            p_min,
            p_max,
            require_distinct: true,
            workers: 1,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// A found cover in canonical form: descending denominators, block
/// starts as phases with `phases[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionCertificate {
    pub p: i64,
    pub q_tuple: Vec<i64>,
    pub phases: Vec<i64>,
    pub blocks: Vec<ResidueBlock>,
}

impl SolutionCertificate {
    /// Rebuilds the Beatty system this certificate witnesses. A block
    /// start `c` corresponds to the canonical phase `t = q*c mod p`.
    pub fn to_system(&self) -> BeattySystem {
        let specs = self
            .q_tuple
            .iter()
            .zip(&self.phases)
            .map(|(&q, &c)| {
                BeattySpec::from_phase(self.p, q, mul_mod(q, c, self.p))
                    .expect("certificate parameters are valid")
            })
            .collect();
        BeattySystem::new(specs).expect("certificates are non-empty")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerNumeratorStats {
    pub p: i64,
    pub tuples_examined: u64,
    pub certificates: u64,
}

/// Deterministic search outcome. `complete` is false when the budget
/// cut the scan short; in that case the statistics and certificates
/// cover a prefix of the `(p, q_tuple)` scan order.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub n: u32,
    pub p_min: i64,
    pub p_max: i64,
    pub require_distinct: bool,
    pub complete: bool,
    pub certificates: Vec<SolutionCertificate>,
    pub tuples_examined: u64,
    /// Descending sum-`p` tuples rejected by the coprimality filter.
    pub tuples_pruned: u64,
    pub cover_ops: u64,
    /// Per-numerator counts, for numerators with at least one tuple.
    pub per_numerator: Vec<PerNumeratorStats>,
}

/// The family `{S((2^n - 1)/2^(n-i), -2^(i-1) + 1)}` for `i = 1..n`: a
/// disjoint cover with pairwise distinct moduli for every `n`.
pub fn fraenkel_system(n: u32) -> Result<BeattySystem, Error> {
    if !(2..=30).contains(&n) {
        return Err(Error::CountOutOfRange(n, 2, 30));
    }
    let p = (1i64 << n) - 1;
    let specs = (1..=n)
        .map(|i| {
            let q = 1i64 << (n - i);
            let beta = Rational::integer(-(1i64 << (i - 1)) + 1);
            BeattySpec::new(p, q, beta)
        })
        .collect::<Result<Vec<_>, _>>()?;
    BeattySystem::new(specs)
}

/// All descending denominator tuples with `sum = p`, each entry in
/// `[1, p)` and coprime to `p`; strictly descending when
/// `require_distinct`.
pub fn enumerate_q_tuples(n: u32, p: i64, require_distinct: bool) -> Vec<Vec<i64>> {
    enumerate_q_tuples_counted(n, p, require_distinct).0
}

/// Enumeration plus the count of sum-`p` descending tuples discarded by
/// the coprimality filter.
fn enumerate_q_tuples_counted(n: u32, p: i64, require_distinct: bool) -> (Vec<Vec<i64>>, u64) {
    let mut out = Vec::new();
    let mut pruned = 0u64;
    if p < n as i64 {
        return (out, pruned);
    }
    let mut prefix = Vec::with_capacity(n as usize);
    extend_tuple(
        &mut prefix,
        p,
        p - 1,
        n,
        require_distinct,
        p,
        &mut out,
        &mut pruned,
    );
    (out, pruned)
}

/// Grows one descending tuple; `remaining` is the sum still to place
/// over `slots` entries, each at most `max_next`.
#[allow(clippy::too_many_arguments)]
fn extend_tuple(
    prefix: &mut Vec<i64>,
    remaining: i64,
    max_next: i64,
    slots: u32,
    strict: bool,
    p: i64,
    out: &mut Vec<Vec<i64>>,
    pruned: &mut u64,
) {
    if slots == 0 {
        if remaining == 0 {
            if prefix.iter().all(|&q| gcd(p, q) == 1) {
                out.push(prefix.clone());
            } else {
                *pruned += 1;
            }
        }
        return;
    }
    let s = slots as i64;
    // Smallest and largest sums the remaining slots below a given value
    // can still reach.
    let min_rest = if strict { s * (s - 1) / 2 } else { s - 1 };
    let hi = max_next.min(remaining - min_rest);
    for v in (1..=hi).rev() {
        let rest = remaining - v;
        let max_rest = if strict {
            (s - 1) * v - s * (s - 1) / 2
        } else {
            (s - 1) * v
        };
        if rest > max_rest {
            break; // even the largest continuation falls short
        }
        prefix.push(v);
        let next_max = if strict { v - 1 } else { v };
        extend_tuple(prefix, rest, next_max, slots - 1, strict, p, out, pruned);
        prefix.pop();
    }
}

/// Every alignment of the blocks of `q_tuple` (descending, summing to
/// `p`, coprime to `p`) that partitions `[0, p)`, with the first
/// block's start pinned to 0. Returns nothing for tuples violating the
/// constraints (no cover can exist for them).
pub fn exact_cover_search(p: i64, q_tuple: &[i64]) -> Vec<Vec<i64>> {
    let (solutions, _, aborted) = cover_search(p, q_tuple, u64::MAX);
    debug_assert!(!aborted);
    solutions
}

/// Backtracking state for one `(p, q_tuple)` shard.
struct CoverSearch<'a> {
    p: i64,
    qs: &'a [i64],
    diffs: Vec<i64>,
    covered: Vec<bool>,
    starts: Vec<i64>,
    placed: Vec<bool>,
    placed_count: usize,
    solutions: Vec<Vec<i64>>,
    ops: u64,
    budget: u64,
    aborted: bool,
}

fn cover_search(p: i64, q_tuple: &[i64], budget: u64) -> (Vec<Vec<i64>>, u64, bool) {
    if q_tuple.is_empty()
        || q_tuple.iter().sum::<i64>() != p
        || q_tuple.windows(2).any(|w| w[0] < w[1])
        || q_tuple.iter().any(|&q| q < 1 || q >= p || gcd(p, q) != 1)
    {
        return (Vec::new(), 0, false);
    }
    let diffs: Vec<i64> = q_tuple
        .iter()
        .map(|&q| qbar(p, q).expect("q is coprime to p"))
        .collect();
    let n = q_tuple.len();
    let mut search = CoverSearch {
        p,
        qs: q_tuple,
        diffs,
        covered: vec![false; p as usize],
        starts: vec![0; n],
        placed: vec![false; n],
        placed_count: 0,
        solutions: Vec::new(),
        ops: 0,
        budget,
        aborted: false,
    };
    // Translation canonicalization: the largest block starts at 0.
    search.ops = q_tuple[0] as u64;
    let placed = search.try_place(0, 0);
    debug_assert!(placed);
    search.recurse(0);
    (search.solutions, search.ops, search.aborted)
}

impl CoverSearch<'_> {
    fn recurse(&mut self, scan_from: i64) {
        if self.placed_count == self.qs.len() {
            self.solutions.push(self.starts.clone());
            return;
        }
        let r = (scan_from..self.p)
            .find(|&x| !self.covered[x as usize])
            .expect("an unplaced block implies an uncovered residue");
        for i in 0..self.qs.len() {
            if self.placed[i] {
                continue;
            }
            // Each alignment of block i that covers residue r.
            for j in 0..self.qs[i] {
                let c = reduce(r - mul_mod(j, self.diffs[i], self.p), self.p);
                if !self.index_order_ok(i, c) {
                    continue;
                }
                self.ops += self.qs[i] as u64;
                if self.ops > self.budget {
                    self.aborted = true;
                    return;
                }
                if self.try_place(i, c) {
                    self.recurse(r + 1);
                    self.unplace(i);
                    if self.aborted {
                        return;
                    }
                }
            }
        }
    }

    /// Equal-length blocks are interchangeable; force their starts
    /// ascending by index so each solution is emitted once.
    fn index_order_ok(&self, i: usize, c: i64) -> bool {
        for k in 0..self.qs.len() {
            if k == i || self.qs[k] != self.qs[i] || !self.placed[k] {
                continue;
            }
            if (k < i && self.starts[k] >= c) || (k > i && self.starts[k] <= c) {
                return false;
            }
        }
        true
    }

    fn try_place(&mut self, i: usize, c: i64) -> bool {
        let mut x = c;
        for covered_upto in 0..self.qs[i] {
            if self.covered[x as usize] {
                // roll back the prefix already marked
                let mut y = c;
                for _ in 0..covered_upto {
                    self.covered[y as usize] = false;
                    y = reduce(y + self.diffs[i], self.p);
                }
                return false;
            }
            self.covered[x as usize] = true;
            x = reduce(x + self.diffs[i], self.p);
        }
        self.starts[i] = c;
        self.placed[i] = true;
        self.placed_count += 1;
        true
    }

    fn unplace(&mut self, i: usize) {
        let mut x = self.starts[i];
        for _ in 0..self.qs[i] {
            self.covered[x as usize] = false;
            x = reduce(x + self.diffs[i], self.p);
        }
        self.placed[i] = false;
        self.placed_count -= 1;
    }
}

/// Lower bound on the cover operations the scan must perform, from a
/// counting DP over descending sum-`p` tuples (each tuple costs at
/// least the first block placement, about `p/n`).
fn project_workload(config: &SearchConfig) -> u64 {
    if config.p_max > PROJECTION_DP_LIMIT {
        return u64::MAX;
    }
    let n = config.n as usize;
    let p_max = config.p_max as usize;
    // parts[m] = number of partitions of m into exactly k positive
    // parts, rolled over k.
    let mut parts = vec![0u64; p_max + 1];
    let offset = if config.require_distinct {
        n * (n - 1) / 2
    } else {
        0
    };
    let mut layer = vec![0u64; p_max + 1];
    layer[0] = 1; // k = 0
    for k in 1..=n {
        for m in 0..=p_max {
            let a = if m >= 1 { layer[m - 1] } else { 0 };
            let b = if m >= k { parts[m - k] } else { 0 };
            parts[m] = a.saturating_add(b);
        }
        layer.copy_from_slice(&parts);
    }
    let mut total = 0u64;
    for p in config.p_min.max(2)..=config.p_max {
        let m = p as usize;
        if m < offset {
            continue;
        }
        let count = layer[m - offset];
        total = total.saturating_add(count.saturating_mul((p as u64).div_ceil(config.n as u64)));
    }
    total
}

struct Shard {
    p: i64,
    tuple: Vec<i64>,
}

struct ShardOutcome {
    solutions: Vec<Vec<i64>>,
    ops: u64,
    aborted: bool,
}

/// Scans every numerator in `[p_min, p_max]`, searching each admissible
/// denominator tuple for covers. Every certificate is re-verified
/// through [`verify_dcs`] before being reported.
pub fn search_conjecture(config: &SearchConfig) -> Result<SearchReport, Error> {
    if config.n < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least 2 sequences, got {}",
            config.n
        )));
    }
    if config.n > 64 {
        return Err(Error::InvalidConfig(format!(
            "sequence count {} is out of the supported range",
            config.n
        )));
    }
    if config.p_min > config.p_max {
        return Err(Error::InvalidConfig(format!(
            "empty numerator range [{}, {}]",
            config.p_min, config.p_max
        )));
    }
    if config.p_max > MAX_NUMERATOR {
        return Err(Error::InvalidConfig(format!(
            "numerator bound {} exceeds 2^31",
            config.p_max
        )));
    }
    if config.workers < 1 {
        return Err(Error::InvalidConfig("need at least one worker".into()));
    }
    let projected = project_workload(config);
    if projected > config.budget {
        return Err(Error::BudgetProjection {
            projected,
            budget: config.budget,
        });
    }

    let mut shards = Vec::new();
    let mut tuples_pruned = 0u64;
    for p in config.p_min.max(2)..=config.p_max {
        let (tuples, pruned) = enumerate_q_tuples_counted(config.n, p, config.require_distinct);
        tuples_pruned += pruned;
        shards.extend(tuples.into_iter().map(|tuple| Shard { p, tuple }));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;

    // Fixed-size waves keep the schedule (and therefore any budget cut)
    // identical for every worker count.
    const WAVE: usize = 64;
    let mut outcomes: Vec<ShardOutcome> = Vec::with_capacity(shards.len());
    let mut scheduled_ops = 0u64;
    for wave in shards.chunks(WAVE) {
        if scheduled_ops > config.budget {
            break;
        }
        let results: Vec<ShardOutcome> = pool.install(|| {
            wave.par_iter()
                .map(|shard| {
                    let (solutions, ops, aborted) =
                        cover_search(shard.p, &shard.tuple, config.budget);
                    ShardOutcome {
                        solutions,
                        ops,
                        aborted,
                    }
                })
                .collect()
        });
        scheduled_ops += results.iter().map(|o| o.ops).sum::<u64>();
        outcomes.extend(results);
    }

    // Deterministic cut: include the maximal prefix of shards whose
    // cumulative cost fits the budget.
    let mut complete = outcomes.len() == shards.len();
    let mut cover_ops = 0u64;
    let mut included = 0usize;
    for outcome in &outcomes {
        if outcome.aborted || cover_ops.saturating_add(outcome.ops) > config.budget {
            complete = false;
            break;
        }
        cover_ops += outcome.ops;
        included += 1;
    }

    let mut certificates = Vec::new();
    let mut per_numerator: Vec<PerNumeratorStats> = Vec::new();
    for (shard, outcome) in shards.iter().zip(&outcomes).take(included) {
        if per_numerator.last().map(|s| s.p) != Some(shard.p) {
            per_numerator.push(PerNumeratorStats {
                p: shard.p,
                tuples_examined: 0,
                certificates: 0,
            });
        }
        let stats = per_numerator.last_mut().unwrap();
        stats.tuples_examined += 1;
        for starts in &outcome.solutions {
            let cert = build_certificate(shard.p, &shard.tuple, starts);
            let verified = verify_dcs(&cert.to_system())
                .expect("certificate systems share one numerator");
            assert!(
                verified.ok,
                "search produced a non-cover at p={}, tuple {:?}",
                shard.p, shard.tuple
            );
            stats.certificates += 1;
            certificates.push(cert);
        }
    }
    certificates.sort_by(|a, b| {
        (a.p, &a.q_tuple, &a.phases).cmp(&(b.p, &b.q_tuple, &b.phases))
    });

    Ok(SearchReport {
        n: config.n,
        p_min: config.p_min,
        p_max: config.p_max,
        require_distinct: config.require_distinct,
        complete,
        certificates,
        tuples_examined: included as u64,
        tuples_pruned,
        cover_ops,
        per_numerator,
    })
}

fn build_certificate(p: i64, tuple: &[i64], starts: &[i64]) -> SolutionCertificate {
    let blocks = tuple
        .iter()
        .zip(starts)
        .map(|(&q, &c)| ResidueBlock {
            p,
            start: c,
            diff: qbar(p, q).expect("tuple entries are coprime to p"),
            len: q,
        })
        .collect();
    SolutionCertificate {
        p,
        q_tuple: tuple.to_vec(),
        phases: starts.to_vec(),
        blocks,
    }
}
