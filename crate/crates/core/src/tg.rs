//! Sorted orbits `{a + i*d mod p}` and their gap structure.
//!
//! For coprime `p, d` the first `q` multiples of `d` shifted by `a`,
//! sorted into `[0, p)`, have at most three distinct cyclic gap sizes,
//! and when there are three the largest is the sum of the other two.
//! Gaps of the smallest size are *small*; everything else is *larger*.
//! The structure of the points between and around the larger gaps is
//! what the progression and counting checks below exercise.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::modular::{gcd, reduce};
use crate::MAX_NUMERATOR;

/// The `q` distinct residues `{a + i*d mod p : i = 0..q-1}`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TgSequence {
    p: i64,
    a: i64,
    d: i64,
    q: i64,
    points: Vec<i64>,
}

/// Cyclic gap data of a [`TgSequence`]. `gaps[i]` separates
/// `points[i]` from `points[i+1]`, with the last entry wrapping around
/// (`p + points[0] - points[q-1]`). The sizes always sum to `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapProfile {
    pub gaps: Vec<i64>,
    pub size_counts: BTreeMap<i64, i64>,
    /// Smallest gap size (`c`).
    pub smallest: i64,
    /// Largest gap size (`G`).
    pub largest: i64,
    /// Number of gaps strictly exceeding the smallest size (`k`).
    pub larger_count: i64,
}

/// How the points decompose into arithmetic progressions, keyed by the
/// number of larger gaps. Every reported decomposition is a true
/// description of the point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApStructure {
    /// Exactly one larger gap: the points form a single cyclic AP whose
    /// difference is `min(d, p-d)`, i.e. `±d mod p`.
    SingleAp { diff: i64 },
    /// Exactly two larger gaps: the points split into two APs sharing
    /// the common difference `±2d mod p`, with lengths differing by at
    /// most one.
    TwoAps { diff: i64, lengths: (i64, i64) },
    Other,
}

/// Both sides of the count inequality relating a bounded orbit to the
/// points available inside its gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapBoundReport {
    /// Number of distinct gap sizes (2 or 3).
    pub gap_size_count: usize,
    /// `p - q1 - q`.
    pub lhs: i64,
    /// `(k-1)(G-1) + (q-k)(c-1)` for two sizes,
    /// `(k-1)(G-c-1) + (q-k)(c-1)` for three.
    pub rhs: i64,
    pub satisfied: bool,
}

impl TgSequence {
    /// Requires `gcd(p, d) = 1` and `1 <= q < p`. `a` and `d` are
    /// reduced mod `p`.
    pub fn new(a: i64, d: i64, q: i64, p: i64) -> Result<Self, Error> {
        if !(2..=MAX_NUMERATOR).contains(&p) {
            return Err(Error::NumeratorOutOfRange(p));
        }
        let d = reduce(d, p);
        if gcd(p, d) != 1 {
            return Err(Error::StepNotUnit { p, d });
        }
        if q < 1 || q >= p {
            return Err(Error::DenominatorOutOfRange { p, q });
        }
        let a = reduce(a, p);
        let mut points = Vec::with_capacity(q as usize);
        let mut x = a;
        for _ in 0..q {
            points.push(x);
            x += d;
            if x >= p {
                x -= p;
            }
        }
        points.sort_unstable();
        Ok(TgSequence { p, a, d, q, points })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn points(&self) -> &[i64] {
        &self.points
    }

    pub fn gap_profile(&self) -> GapProfile {
        let q = self.points.len();
        let mut gaps = Vec::with_capacity(q);
        for i in 0..q - 1 {
            gaps.push(self.points[i + 1] - self.points[i]);
        }
        gaps.push(self.p + self.points[0] - self.points[q - 1]);

        let mut size_counts = BTreeMap::new();
        for &g in &gaps {
            *size_counts.entry(g).or_insert(0) += 1;
        }
        let smallest = *size_counts.keys().next().unwrap();
        let largest = *size_counts.keys().next_back().unwrap();
        let larger_count = gaps.iter().filter(|&&g| g > smallest).count() as i64;
        GapProfile {
            gaps,
            size_counts,
            smallest,
            largest,
            larger_count,
        }
    }

    /// The three-gap property: at most 3 distinct gap sizes, the largest
    /// equal to the sum of the other two when there are exactly 3, and a
    /// single size only for single-point orbits.
    pub fn satisfies_three_gap(&self) -> bool {
        let profile = self.gap_profile();
        let sizes: Vec<i64> = profile.size_counts.keys().copied().collect();
        match sizes.len() {
            1 => self.q == 1,
            2 => true,
            3 => sizes[2] == sizes[0] + sizes[1],
            _ => false,
        }
    }

    /// Splits the cyclic point sequence at its larger gaps and reports
    /// the progression structure (see [`ApStructure`]).
    ///
    /// For orbits missing at most two residues (`q >= p - 2`) the
    /// progression representation stops being unique and the split's
    /// own difference need not relate to the step; those orbits are
    /// reported through their step-aligned representation instead (the
    /// whole orbit as a `±d` progression, or the even/odd orbit indices
    /// as two `±2d` progressions). Everywhere else the split
    /// representation already carries difference `±d` resp. `±2d`.
    pub fn classify_ap(&self) -> ApStructure {
        let (p, d) = (self.p, self.d);
        let profile = self.gap_profile();
        let c = profile.smallest;
        let larger: Vec<usize> = (0..profile.gaps.len())
            .filter(|&i| profile.gaps[i] > c)
            .collect();
        // The count cyclic gaps starting at index from, all equal to c?
        let run_is_uniform = |from: usize, count: usize| {
            let q = profile.gaps.len();
            (0..count).all(|s| profile.gaps[(from + s) % q] == c)
        };
        match *larger.as_slice() {
            [i] => {
                // All remaining gaps equal c, so the cyclic run starting
                // after the larger gap is an AP with difference c.
                if !run_is_uniform(i + 1, self.q as usize - 1) {
                    return ApStructure::Other;
                }
                if c == d || c == p - d {
                    ApStructure::SingleAp { diff: c }
                } else {
                    // only for the ambiguous full-minus-one orbit
                    debug_assert_eq!(self.q, p - 1);
                    ApStructure::SingleAp { diff: d.min(p - d) }
                }
            }
            [i, j] => {
                let len_a = (j - i) as i64;
                let len_b = self.q - len_a;
                if !run_is_uniform(i + 1, len_a as usize - 1)
                    || !run_is_uniform(j + 1, len_b as usize - 1)
                {
                    return ApStructure::Other;
                }
                let twice = (2 * d) % p;
                if (c == twice || c == p - twice) && (len_a - len_b).abs() <= 1 {
                    ApStructure::TwoAps {
                        diff: c,
                        lengths: (len_a, len_b),
                    }
                } else {
                    // only for the ambiguous full-minus-two orbit
                    debug_assert_eq!(self.q, p - 2);
                    ApStructure::TwoAps {
                        diff: twice.min(p - twice),
                        lengths: (self.q - self.q / 2, self.q / 2),
                    }
                }
            }
            _ => ApStructure::Other,
        }
    }

    /// Evaluates `p - q1 - q` against the gap-interior point count.
    /// Requires at least two gap sizes and a largest gap exceeding `q1`.
    pub fn gap_bound(&self, q1: i64) -> Result<GapBoundReport, Error> {
        let profile = self.gap_profile();
        let sizes = profile.size_counts.len();
        if sizes < 2 {
            return Err(Error::GapBoundSinglePoint);
        }
        if profile.largest <= q1 {
            return Err(Error::GapBoundHypothesis {
                largest: profile.largest,
                q1,
            });
        }
        let (c, g, k) = (profile.smallest, profile.largest, profile.larger_count);
        let rhs = if sizes == 2 {
            (k - 1) * (g - 1) + (self.q - k) * (c - 1)
        } else {
            (k - 1) * (g - c - 1) + (self.q - k) * (c - 1)
        };
        let lhs = self.p - q1 - self.q;
        Ok(GapBoundReport {
            gap_size_count: sizes,
            lhs,
            rhs,
            satisfied: lhs >= rhs,
        })
    }
}
