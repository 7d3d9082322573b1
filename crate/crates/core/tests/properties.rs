//! Property tests pinning the library against independent oracles:
//! membership against direct floor evaluation, cover verification
//! against windowed brute force, and the proven gap/progression facts
//! against random orbits.

use std::collections::BTreeSet;

use proptest::prelude::*;

use beatty_core::modular::gcd;
use beatty_core::search::{exact_cover_search, search_conjecture, SearchConfig};
use beatty_core::tg::{ApStructure, TgSequence};
use beatty_core::{
    blocks_from_system, check_progression, check_root_sum, classify_union, qbar, verify_dcs,
    BeattySpec, BeattySystem, Rational, UnionClassification,
};

/// Floor-evaluation membership oracle, independent of the residue
/// characterization: `m` belongs iff the smallest sequence value >= `m`
/// equals `m`.
fn oracle_contains(spec: &BeattySpec, m: i64) -> bool {
    let (p, q) = (spec.p() as i128, spec.q() as i128);
    let (num, den) = (spec.beta().num() as i128, spec.beta().den() as i128);
    // smallest n with p*n/q + beta >= m
    let a = q * (m as i128 * den - num);
    let b = p * den;
    let n0 = -((-a).div_euclid(b));
    let v = (p * n0 * den + q * num).div_euclid(q * den);
    v == m as i128
}

fn oracle_values(spec: &BeattySpec, lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi).filter(|&m| oracle_contains(spec, m)).collect()
}

fn arb_spec(max_p: i64) -> impl Strategy<Value = BeattySpec> {
    (2..=max_p)
        .prop_flat_map(|p| {
            let coprime: Vec<i64> = (1..p).filter(|&q| gcd(p, q) == 1).collect();
            (Just(p), 0..coprime.len(), -60i64..=60, 1i64..=12)
                .prop_map(move |(p, qi, num, den)| (p, coprime[qi], num, den))
        })
        .prop_map(|(p, q, num, den)| {
            BeattySpec::new(p, q, Rational::new(num, den).unwrap()).unwrap()
        })
}

/// An equal-numerator system with 2..=4 sequences, usually not a cover.
fn arb_system(max_p: i64) -> impl Strategy<Value = BeattySystem> {
    (3..=max_p)
        .prop_flat_map(|p| {
            let coprime: Vec<i64> = (1..p).filter(|&q| gcd(p, q) == 1).collect();
            let len = coprime.len();
            (
                Just(p),
                prop::collection::vec((0..len, -30i64..=30, 1i64..=8), 2..=4),
            )
                .prop_map(move |(p, picks)| {
                    let specs = picks
                        .iter()
                        .map(|&(qi, num, den)| {
                            BeattySpec::new(p, coprime[qi], Rational::new(num, den).unwrap())
                                .unwrap()
                        })
                        .collect();
                    BeattySystem::new(specs).unwrap()
                })
        })
        .boxed()
}

fn arb_tg(max_p: i64) -> impl Strategy<Value = TgSequence> {
    (2..=max_p)
        .prop_flat_map(|p| {
            let units: Vec<i64> = (1..p).filter(|&d| gcd(p, d) == 1).collect();
            (Just(p), 0..units.len(), 0..p, 1..p)
                .prop_map(move |(p, di, a, q)| TgSequence::new(a, units[di], q, p).unwrap())
        })
        .boxed()
}

proptest! {
    /// Residue-characterization membership equals the floor oracle on a
    /// window spanning several periods either side of zero.
    #[test]
    fn membership_matches_floor_oracle(spec in arb_spec(120)) {
        let p = spec.p();
        for m in -2 * p..=2 * p {
            prop_assert_eq!(spec.contains(m), oracle_contains(&spec, m), "m = {}", m);
        }
    }

    /// Windowed enumeration agrees with the oracle values exactly.
    #[test]
    fn window_enumeration_matches_oracle(spec in arb_spec(120)) {
        let p = spec.p();
        let got: Vec<i64> = spec.values_in_window(-2 * p, 2 * p);
        let want: Vec<i64> = oracle_values(&spec, -2 * p, 2 * p).into_iter().collect();
        prop_assert_eq!(got, want);
    }

    /// The residue block is exactly the set of covered residues.
    #[test]
    fn residue_block_is_membership_set(spec in arb_spec(200)) {
        let from_block: BTreeSet<i64> = spec.residue_block().elements().collect();
        let from_membership: BTreeSet<i64> =
            (0..spec.p()).filter(|&m| spec.contains(m)).collect();
        prop_assert_eq!(from_block, from_membership);
    }

    /// Complement hits exactly the missed residues; complementing twice
    /// restores the residue set; the offset formula `beta - qbar` is
    /// used verbatim for integer offsets.
    #[test]
    fn complement_properties(spec in arb_spec(200)) {
        let comp = spec.complement();
        prop_assert_eq!(comp.p(), spec.p());
        prop_assert_eq!(comp.q(), spec.p() - spec.q());
        for r in 0..spec.p() {
            prop_assert_ne!(spec.contains(r), comp.contains(r), "residue {}", r);
        }
        let twice = comp.complement();
        prop_assert_eq!(
            twice.residue_block().sorted_elements(),
            spec.residue_block().sorted_elements()
        );
        if spec.beta().den() == 1 {
            let expected = spec.beta().sub_int(qbar(spec.p(), spec.q()).unwrap()).unwrap();
            prop_assert_eq!(comp.beta(), expected);
        }
    }

    /// verify_dcs agrees with counting covering sequences per residue
    /// through the floor oracle.
    #[test]
    fn verify_matches_windowed_brute_force(system in arb_system(48)) {
        let p = system.numerator().unwrap();
        let brute_ok = (0..p).all(|m| {
            system.specs().iter().filter(|s| oracle_contains(s, m)).count() == 1
        });
        let cert = verify_dcs(&system).unwrap();
        prop_assert_eq!(cert.ok, brute_ok);
        if cert.ok {
            // the assignment is a genuine witness
            for (m, owner) in cert.assignment.iter().enumerate() {
                prop_assert!(system.specs()[owner.unwrap()].contains(m as i64));
            }
        }
    }

    /// Three-gap facts on random orbits: gaps sum to p, at most three
    /// sizes, largest = sum of the other two when three.
    #[test]
    fn three_gap_randomized(tg in arb_tg(3000)) {
        let profile = tg.gap_profile();
        prop_assert_eq!(profile.gaps.iter().sum::<i64>(), tg.p());
        prop_assert!(tg.satisfies_three_gap());
    }

    /// Progression corollaries: one larger gap forces a single AP with
    /// difference ±d; two larger gaps force two APs with difference
    /// ±2d and lengths within one of each other.
    #[test]
    fn ap_structure_randomized(tg in arb_tg(3000)) {
        let p = tg.p();
        let d = tg.d();
        match tg.classify_ap() {
            ApStructure::SingleAp { diff } => {
                prop_assert!(diff == d % p || diff == (p - d) % p, "diff {}", diff);
            }
            ApStructure::TwoAps { diff, lengths } => {
                let twice = (2 * d) % p;
                prop_assert!(diff == twice || diff == (p - twice) % p, "diff {}", diff);
                prop_assert!((lengths.0 - lengths.1).abs() <= 1);
            }
            ApStructure::Other => {
                // only when the larger-gap count is not 1 or 2
                let k = tg.gap_profile().larger_count;
                prop_assert!(k != 1 && k != 2, "k = {}", k);
            }
        }
    }

    /// The counting inequality holds whenever its hypothesis does.
    #[test]
    fn gap_bound_randomized(tg in arb_tg(3000), q1_seed in 1i64..=1000) {
        let profile = tg.gap_profile();
        if profile.size_counts.len() < 2 {
            return Ok(());
        }
        let q1 = 1 + q1_seed % profile.largest.max(1);
        match tg.gap_bound(q1) {
            Ok(report) => {
                prop_assert!(report.satisfied, "lhs {} rhs {}", report.lhs, report.rhs);
            }
            Err(_) => prop_assert!(profile.largest <= q1),
        }
    }
}

/// Covers found by search over small numerators, multiplicity allowed.
fn small_covers(n: u32, p_max: i64) -> Vec<BeattySystem> {
    let mut config = SearchConfig::new(n, 2, p_max);
    config.require_distinct = false;
    let report = search_conjecture(&config).unwrap();
    assert!(report.complete);
    report.certificates.iter().map(|c| c.to_system()).collect()
}

#[test]
fn union_classification_covers_all_found_three_covers() {
    // For any 3-sequence cover, S1 ∪ S2 equals the complement of S3,
    // disjointly; the classification must land in one of the three
    // proven cases for every one of them.
    let mut checked = 0;
    for system in small_covers(3, 16) {
        let s = system.specs();
        let got = classify_union(&s[0], &s[1], &s[2].complement()).unwrap();
        assert!(
            !matches!(got, UnionClassification::NotAUnion(_)),
            "cover {:?} failed: {:?}",
            s,
            got
        );
        checked += 1;
    }
    assert!(checked > 10, "only {checked} covers found");
}

/// 500 verified covers spread over random tuples, alignments, and
/// translations at small numerators.
fn many_random_covers(count: usize) -> Vec<BeattySystem> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = rng.random_range(3..=30i64);
        let n = rng.random_range(2..=4u32);
        let tuples = beatty_core::search::enumerate_q_tuples(n, p, false);
        if tuples.is_empty() {
            continue;
        }
        let tuple = &tuples[rng.random_range(0..tuples.len())];
        let solutions = exact_cover_search(p, tuple);
        if solutions.is_empty() {
            continue;
        }
        let starts = &solutions[rng.random_range(0..solutions.len())];
        let specs: Vec<BeattySpec> = tuple
            .iter()
            .zip(starts)
            .map(|(&q, &c)| BeattySpec::from_phase(p, q, (q * c) % p).unwrap())
            .collect();
        let system = BeattySystem::new(specs).unwrap();
        out.push(system.translate(rng.random_range(-40..=40)).unwrap());
    }
    out
}

#[test]
fn block_partitions_hold_for_500_random_verified_systems() {
    for system in many_random_covers(500) {
        assert!(verify_dcs(&system).unwrap().ok);
        let partition = blocks_from_system(&system).unwrap();
        assert!(partition.is_partition());
        assert!(partition.normalize().is_partition());
    }
}

#[test]
fn normalized_partitions_from_search_results() {
    for system in small_covers(3, 14).into_iter().chain(small_covers(4, 12)) {
        let partition = blocks_from_system(&system).unwrap();
        assert!(partition.is_partition());
        let normalized = partition.normalize();
        assert!(normalized.is_partition());
        let q1 = normalized.blocks[0].len;
        assert_eq!(
            normalized.blocks[0].sorted_elements(),
            (0..q1).collect::<Vec<_>>()
        );
        // lengths preserved as a multiset
        let mut before: Vec<i64> = partition.blocks.iter().map(|b| b.len).collect();
        let mut after: Vec<i64> = normalized.blocks.iter().map(|b| b.len).collect();
        before.sort_unstable();
        after.sort_unstable();
        assert_eq!(before, after);
        // differences follow from qbar for every block
        let p = partition.p;
        for block in &normalized.blocks {
            let expected = (-(q1 as i128) * qbar(p, block.len).unwrap() as i128)
                .rem_euclid(p as i128) as i64;
            assert_eq!(block.diff, expected);
        }
    }
}

#[test]
fn progression_check_on_normalized_blocks() {
    for system in small_covers(3, 14).into_iter().chain(small_covers(4, 12)) {
        let normalized = blocks_from_system(&system).unwrap().normalize();
        let b1 = &normalized.blocks[0];
        let q1 = b1.len;
        for b2 in &normalized.blocks[1..] {
            let report = check_progression(b1, b2, q1, b2.diff).unwrap();
            assert!(
                !report.hypothesis || report.conclusion,
                "hypothesis without conclusion at p={} block {:?}",
                normalized.p,
                b2
            );
        }
    }
}

#[test]
fn root_sums_vanish_on_search_results() {
    for system in small_covers(3, 14) {
        let report = check_root_sum(&system, 1e-9).unwrap();
        assert!(
            report.within_tol,
            "residual {} at p={}",
            report.max_residual,
            system.numerator().unwrap()
        );
    }
}

#[test]
fn root_sums_vanish_near_the_modulus_limit() {
    // p = 2^13 - 1 = 8191, the largest canonical system under the
    // 10^4 precision guard
    let system = beatty_core::fraenkel_system(13).unwrap();
    assert!(verify_dcs(&system).unwrap().ok);
    let report = check_root_sum(&system, 1e-9).unwrap();
    assert_eq!(report.residuals.len(), 8190);
    assert!(report.within_tol, "max residual {}", report.max_residual);
}

#[test]
fn cover_search_matches_oracle_for_four_blocks() {
    // n = 4 over the full range, multiplicity included
    for p in 4i64..=40 {
        for tuple in beatty_core::search::enumerate_q_tuples(4, p, false) {
            let mut got = exact_cover_search(p, &tuple);
            got.sort();
            let want = naive_cover_oracle(p, &tuple);
            assert_eq!(got, want, "p={p} tuple={tuple:?}");
        }
    }
}

#[test]
fn cover_search_matches_oracle_for_two_and_three_blocks_to_forty() {
    for p in 2i64..=40 {
        for n in 2u32..=3 {
            for tuple in beatty_core::search::enumerate_q_tuples(n, p, false) {
                let mut got = exact_cover_search(p, &tuple);
                got.sort();
                let want = naive_cover_oracle(p, &tuple);
                assert_eq!(got, want, "p={p} tuple={tuple:?}");
            }
        }
    }
}

/// Exhausts all phase combinations with start 0 pinned on the first
/// block, keeping ascending starts among equal lengths.
fn naive_cover_oracle(p: i64, tuple: &[i64]) -> Vec<Vec<i64>> {
    let diffs: Vec<i64> = tuple.iter().map(|&q| qbar(p, q).unwrap()).collect();
    let n = tuple.len();
    let mut starts = vec![0i64; n];
    let mut out = Vec::new();
    loop {
        let mut used = vec![false; p as usize];
        let mut ok = true;
        'blocks: for i in 0..n {
            let mut x = starts[i];
            for _ in 0..tuple[i] {
                if used[x as usize] {
                    ok = false;
                    break 'blocks;
                }
                used[x as usize] = true;
                x = (x + diffs[i]).rem_euclid(p);
            }
        }
        let canonical = (1..n).all(|i| tuple[i] != tuple[i - 1] || starts[i] > starts[i - 1]);
        if ok && canonical && used.iter().all(|&u| u) {
            out.push(starts.clone());
        }
        let mut idx = n - 1;
        loop {
            if idx == 0 {
                out.sort();
                return out;
            }
            starts[idx] += 1;
            if starts[idx] < p {
                break;
            }
            starts[idx] = 0;
            idx -= 1;
        }
    }
}
