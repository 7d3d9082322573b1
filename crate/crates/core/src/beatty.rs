//! Rational Beatty sequences and exact cover verification.
//!
//! `S(p/q, beta) = { floor((p/q)*n + beta) : n in Z }` with `p/q` reduced
//! and `1 <= q < p`. Membership depends on `beta` only through the
//! canonical phase `t = floor(q * beta) mod p`: an integer `m` belongs to
//! the sequence iff `(t - q*m) mod p < q`. The residues hit by a sequence
//! therefore form an arithmetic progression mod `p` with difference
//! `qbar(p, q)` and length `q`, which is what every cover question here
//! reduces to.

use crate::error::Error;
use crate::modular::{gcd, inverse, lcm128, reduce, reduce128};
use crate::rational::Rational;
use crate::MAX_NUMERATOR;

/// Full-period union checks walk `lcm(p1, p2, p3)` integers; beyond this
/// the exact scan is refused rather than silently truncated.
pub const UNION_PERIOD_LIMIT: i128 = 10_000_000;

/// Least non-negative `x` with `x * q ≡ -1 (mod p)`. Requires
/// `gcd(p, q) = 1`.
pub fn qbar(p: i64, q: i64) -> Result<i64, Error> {
    if !(1..=MAX_NUMERATOR).contains(&p) {
        return Err(Error::NumeratorOutOfRange(p));
    }
    if q < 1 {
        return Err(Error::DenominatorOutOfRange { p, q });
    }
    let inv = inverse(q, p).ok_or(Error::NotCoprime { p, q })?;
    Ok(reduce(-inv, p))
}

/// Canonical phase `floor(q * beta) mod p` of the offset `beta`.
///
/// Two offsets yield the same integer sequence exactly when they yield
/// the same phase, so this is the only piece of `beta` membership ever
/// looks at.
pub fn canonical_phase(p: i64, q: i64, beta: Rational) -> Result<i64, Error> {
    if !(2..=MAX_NUMERATOR).contains(&p) {
        return Err(Error::NumeratorOutOfRange(p));
    }
    if q < 1 || q >= p {
        return Err(Error::DenominatorOutOfRange { p, q });
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(reduce128(beta.floor_mul(q), p))
}

/// One rational Beatty sequence `S(p/q, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BeattySpec {
    p: i64,
    q: i64,
    beta: Rational,
    t: i64,
}

impl BeattySpec {
    /// Requires `2 <= p <= 2^31`, `1 <= q < p`, and `gcd(p, q) = 1`.
    /// (`q = p`, i.e. modulus 1, never occurs in a multi-sequence cover.)
    pub fn new(p: i64, q: i64, beta: Rational) -> Result<Self, Error> {
        let t = canonical_phase(p, q, beta)?;
        Ok(BeattySpec { p, q, beta, t })
    }

    /// Builds the sequence with phase `t` directly, using the offset
    /// `t/q` (whose phase is exactly `t mod p`).
    pub fn from_phase(p: i64, q: i64, t: i64) -> Result<Self, Error> {
        if !(2..=MAX_NUMERATOR).contains(&p) {
            return Err(Error::NumeratorOutOfRange(p));
        }
        Self::new(p, q, Rational::new(reduce(t, p), q)?)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn beta(&self) -> Rational {
        self.beta
    }

    /// Canonical phase `floor(q * beta) mod p`.
    pub fn phase(&self) -> i64 {
        self.t
    }

    /// Exact membership test: `(t - q*m) mod p < q`.
    ///
    /// Agrees with enumerating `floor(p*n/q + beta)` over `n`; the two
    /// routes are kept independent and cross-checked in tests.
    pub fn contains(&self, m: i64) -> bool {
        reduce128(self.t as i128 - self.q as i128 * m as i128, self.p) < self.q
    }

    /// All sequence values in `[lo, hi]`, in increasing order, computed
    /// by direct floor evaluation (not via [`Self::contains`]).
    pub fn values_in_window(&self, lo: i64, hi: i64) -> Vec<i64> {
        if lo > hi {
            return Vec::new();
        }
        let (p, q) = (self.p as i128, self.q as i128);
        let (bn, bd) = (self.beta.num() as i128, self.beta.den() as i128);
        // v(n) = floor(p*n/q + beta) is strictly increasing since p > q.
        // v(n) >= lo  iff  n >= q*(lo - beta)/p
        // v(n) <= hi  iff  n <  q*(hi + 1 - beta)/p
        let ceil_div = |a: i128, b: i128| -> i128 { -((-a).div_euclid(b)) };
        let n_lo = ceil_div(q * (lo as i128 * bd - bn), p * bd);
        let n_hi = ceil_div(q * ((hi as i128 + 1) * bd - bn), p * bd) - 1;
        let mut out = Vec::new();
        for n in n_lo..=n_hi {
            let v = (p * n * bd + q * bn).div_euclid(q * bd);
            if v >= lo as i128 && v <= hi as i128 {
                out.push(v as i64);
            }
        }
        out
    }

    /// The residues mod `p` hit by this sequence, as an arithmetic
    /// progression block: start `(-qbar * t) mod p`, difference
    /// `qbar(p, q)`, length `q`.
    pub fn residue_block(&self) -> ResidueBlock {
        let d = qbar(self.p, self.q).expect("spec invariant: gcd(p, q) = 1");
        let start = reduce128(-(d as i128) * self.t as i128, self.p);
        ResidueBlock {
            p: self.p,
            start,
            diff: d,
            len: self.q,
        }
    }

    /// The complementary sequence with modulus `p/(p-q)`: it hits
    /// exactly the residues this one misses.
    ///
    /// The complementary canonical phase is `(-t - 1) mod p`. The
    /// offset `beta - qbar` realizes that phase whenever the fractional
    /// part of `beta` is small enough (in particular for all integer
    /// offsets) and is returned in that case; otherwise the offset is
    /// rebuilt from the phase directly.
    pub fn complement(&self) -> BeattySpec {
        let q2 = self.p - self.q;
        let target = reduce(-self.t - 1, self.p);
        if let Ok(beta) = self.beta.sub_int(qbar(self.p, self.q).unwrap()) {
            let spec = BeattySpec::new(self.p, q2, beta)
                .expect("complement parameters are valid whenever the input is");
            if spec.phase() == target {
                return spec;
            }
        }
        BeattySpec::from_phase(self.p, q2, target).expect("complement phase is in range")
    }

    /// Same sequence shifted by the integer `s`: `m` is a member iff
    /// `m + s` is a member of the translate.
    pub fn translate(&self, s: i64) -> Result<BeattySpec, Error> {
        BeattySpec::new(self.p, self.q, self.beta.sub_int(-s)?)
    }
}

impl std::fmt::Display for BeattySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S({}/{}, {})", self.p, self.q, self.beta)
    }
}

/// An arithmetic progression mod `p`: the `len` residues
/// `start + j*diff mod p`, `j = 0..len-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueBlock {
    pub p: i64,
    pub start: i64,
    pub diff: i64,
    pub len: i64,
}

impl ResidueBlock {
    pub fn new(p: i64, start: i64, diff: i64, len: i64) -> Result<Self, Error> {
        if !(1..=MAX_NUMERATOR).contains(&p) {
            return Err(Error::NumeratorOutOfRange(p));
        }
        if !(0..p).contains(&start) || !(0..p).contains(&diff) {
            return Err(Error::MalformedBlock(format!(
                "start {start} and diff {diff} must lie in [0, {p})"
            )));
        }
        if len < 1 || len > p {
            return Err(Error::MalformedBlock(format!(
                "length {len} must lie in [1, {p}]"
            )));
        }
        if len > 1 && gcd(diff, p) != 1 {
            return Err(Error::MalformedBlock(format!(
                "diff {diff} must be a unit mod {p} for length {len}"
            )));
        }
        Ok(ResidueBlock { p, start, diff, len })
    }

    pub fn elements(&self) -> impl Iterator<Item = i64> + '_ {
        let p = self.p;
        (0..self.len).scan(self.start, move |x, _| {
            let cur = *x;
            *x = reduce(*x + self.diff, p);
            Some(cur)
        })
    }

    pub fn sorted_elements(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.elements().collect();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, residue: i64) -> bool {
        // residue = start + j*diff mod p for some j in [0, len)
        let r = reduce(residue - self.start, self.p);
        if self.len == 1 {
            return r == 0;
        }
        let inv = inverse(self.diff, self.p).expect("block invariant: diff is a unit");
        reduce128(r as i128 * inv as i128, self.p) < self.len
    }
}

/// Outcome of checking `S1 ∪ S2 = S3` (with `S1`, `S2` disjoint) over
/// one full combined period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnionClassification {
    /// Both moduli lie in `{7/1, 7/2, 7/4}` and differ.
    SevenFamily,
    /// The two moduli are equal: `p1/q1 = p2/q2`.
    EqualModuli,
    /// Shared numerator `p` with `{q1, q2} = {q, p - 2q}` for some `q`.
    TwinComplement,
    /// The union does not hold.
    NotAUnion(UnionFailure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnionFailure {
    /// `S1` and `S2` share the witness integer.
    Overlap { witness: i64 },
    /// `S1 ∪ S2` and `S3` disagree at the witness integer.
    Mismatch { witness: i64 },
}

/// Checks `S1 ∪ S2 = S3` exactly over one period of length
/// `lcm(p1, p2, p3)` with `S1`, `S2` disjoint, then classifies the pair
/// of moduli. A verified disjoint union always falls into one of the
/// three classes; hitting none indicates an implementation bug and
/// panics.
pub fn classify_union(
    s1: &BeattySpec,
    s2: &BeattySpec,
    s3: &BeattySpec,
) -> Result<UnionClassification, Error> {
    let period = lcm128(lcm128(s1.p as i128, s2.p as i128), s3.p as i128);
    if period > UNION_PERIOD_LIMIT {
        return Err(Error::PeriodTooLarge(period, UNION_PERIOD_LIMIT));
    }
    for m in 0..period as i64 {
        let (a, b, c) = (s1.contains(m), s2.contains(m), s3.contains(m));
        if a && b {
            return Ok(UnionClassification::NotAUnion(UnionFailure::Overlap {
                witness: m,
            }));
        }
        if (a || b) != c {
            return Ok(UnionClassification::NotAUnion(UnionFailure::Mismatch {
                witness: m,
            }));
        }
    }

    let m1 = (s1.p, s1.q);
    let m2 = (s2.p, s2.q);
    let seven = [(7, 1), (7, 2), (7, 4)];
    if m1 != m2 && seven.contains(&m1) && seven.contains(&m2) {
        return Ok(UnionClassification::SevenFamily);
    }
    if m1 == m2 {
        return Ok(UnionClassification::EqualModuli);
    }
    if s1.p == s2.p && (s2.q == s1.p - 2 * s1.q || s1.q == s2.p - 2 * s2.q) {
        return Ok(UnionClassification::TwinComplement);
    }
    panic!("disjoint union {s1} ∪ {s2} = {s3} matches no classification; this is a bug");
}

/// An ordered family of Beatty sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeattySystem {
    specs: Vec<BeattySpec>,
    equal_numerator: bool,
}

impl BeattySystem {
    pub fn new(specs: Vec<BeattySpec>) -> Result<Self, Error> {
        let first = specs.first().ok_or(Error::EmptySystem)?;
        let equal_numerator = specs.iter().all(|s| s.p == first.p);
        Ok(BeattySystem {
            specs,
            equal_numerator,
        })
    }

    pub fn specs(&self) -> &[BeattySpec] {
        &self.specs
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    pub fn equal_numerator(&self) -> bool {
        self.equal_numerator
    }

    /// The shared numerator, or the first offending pair if mixed.
    pub fn numerator(&self) -> Result<i64, Error> {
        let p = self.specs[0].p;
        match self.specs.iter().find(|s| s.p != p) {
            None => Ok(p),
            Some(s) => Err(Error::MixedNumerators(p, s.p)),
        }
    }

    /// Every sequence shifted by the same integer `s`.
    pub fn translate(&self, s: i64) -> Result<BeattySystem, Error> {
        let specs = self
            .specs
            .iter()
            .map(|spec| spec.translate(s))
            .collect::<Result<Vec<_>, _>>()?;
        BeattySystem::new(specs)
    }
}

/// Witness that an equal-numerator system partitions the residues
/// `[0, p)`, or the first reason it does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    pub p: i64,
    /// Covering sequence index per residue; total exactly when `ok`.
    pub assignment: Vec<Option<usize>>,
    pub ok: bool,
    pub failure: Option<CoverFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverFailure {
    /// Denominators do not sum to `p`.
    Density { sum: i64, p: i64 },
    /// Smallest residue hit by no sequence.
    Uncovered { residue: i64 },
    /// Smallest residue hit twice, with the two sequence indices.
    DoublyCovered {
        residue: i64,
        first: usize,
        second: usize,
    },
}

impl std::fmt::Display for CoverFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoverFailure::Density { sum, p } => {
                write!(f, "denominators sum to {sum}, expected {p}")
            }
            CoverFailure::Uncovered { residue } => write!(f, "residue {residue} is uncovered"),
            CoverFailure::DoublyCovered {
                residue,
                first,
                second,
            } => write!(
                f,
                "residue {residue} is covered by sequences {first} and {second}"
            ),
        }
    }
}

/// Verifies that an equal-numerator system is a disjoint cover of the
/// integers, by checking that the denominators sum to `p` and the
/// residue blocks partition `[0, p)`.
///
/// Mixed numerators are a usage error, not a cover failure. When the
/// check fails, the smallest offending residue is reported.
pub fn verify_dcs(system: &BeattySystem) -> Result<CoverCertificate, Error> {
    let p = system.numerator()?;
    let sum: i64 = system.specs().iter().map(|s| s.q()).sum();
    if sum != p {
        return Ok(CoverCertificate {
            p,
            assignment: Vec::new(),
            ok: false,
            failure: Some(CoverFailure::Density { sum, p }),
        });
    }

    let mut first: Vec<Option<usize>> = vec![None; p as usize];
    let mut second: Vec<Option<usize>> = vec![None; p as usize];
    for (i, spec) in system.specs().iter().enumerate() {
        for r in spec.residue_block().elements() {
            let slot = &mut first[r as usize];
            match slot {
                None => *slot = Some(i),
                Some(_) => {
                    let s = &mut second[r as usize];
                    if s.is_none() {
                        *s = Some(i);
                    }
                }
            }
        }
    }

    for r in 0..p {
        match (first[r as usize], second[r as usize]) {
            (None, _) => {
                return Ok(CoverCertificate {
                    p,
                    assignment: Vec::new(),
                    ok: false,
                    failure: Some(CoverFailure::Uncovered { residue: r }),
                })
            }
            (Some(a), Some(b)) => {
                return Ok(CoverCertificate {
                    p,
                    assignment: Vec::new(),
                    ok: false,
                    failure: Some(CoverFailure::DoublyCovered {
                        residue: r,
                        first: a,
                        second: b,
                    }),
                })
            }
            (Some(_), None) => {}
        }
    }

    Ok(CoverCertificate {
        p,
        assignment: first,
        ok: true,
        failure: None,
    })
}
