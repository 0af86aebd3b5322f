use itertools::Itertools;
use mindisp::cff::{
    michel_scott_bound, min_ground_size, parse_family, verify_cover_free, write_family, GroundSize, SetFamily,
};
use proptest::prelude::*;

/// Direct reading of the definition over 0-based bit masks.
fn naive_cover_free(sets: &[u32], k: usize, r: usize) -> bool {
    let d = sets.len();
    for kset in (0..d).combinations(k) {
        let inter = kset.iter().fold(u32::MAX, |acc, &i| acc & sets[i]);
        let rest: Vec<usize> = (0..d).filter(|i| !kset.contains(i)).collect();
        for lset in rest.into_iter().combinations(r) {
            let union = lset.iter().fold(0, |acc, &j| acc | sets[j]);
            if inter & !union == 0 {
                return false;
            }
        }
    }
    true
}

fn to_family(n: usize, sets: &[u32]) -> SetFamily {
    let lists: Vec<Vec<usize>> = sets
        .iter()
        .map(|&m| (0..n).filter(|&b| m >> b & 1 == 1).map(|b| b + 1).collect())
        .collect();
    SetFamily::new(n, &lists).unwrap()
}

/// All multisets of `d` subsets of `[n]`; cover-freeness does not depend on
/// the order of members.
fn for_each_family(n: usize, d: usize, mut f: impl FnMut(&[u32])) {
    let masks: Vec<u32> = (0..1u32 << n).collect();
    for combo in masks.into_iter().combinations_with_replacement(d) {
        f(&combo);
    }
}

#[test]
fn verifier_agrees_with_naive_reference() {
    let mut checked = 0u64;
    for n in 0..=5 {
        for d in 2..=5 {
            for_each_family(n, d, |sets| {
                let family = to_family(n, sets);
                for k in 1..=2 {
                    for r in 1..=2 {
                        if k + r > d {
                            continue;
                        }
                        let verdict = verify_cover_free(&family, k, r).unwrap();
                        assert_eq!(
                            verdict.is_cover_free(),
                            naive_cover_free(sets, k, r),
                            "n={n} sets={sets:?} k={k} r={r}"
                        );
                        if let Some(w) = verdict.witness() {
                            assert_eq!(w.intersected.len(), k);
                            assert_eq!(w.covering.len(), r);
                            assert!(w.certifies(&family));
                        }
                        checked += 1;
                    }
                }
            });
        }
    }
    assert!(checked > 1_000_000);
}

/// Smallest `n` such that some ordered `d`-tuple of subsets of `[n]` is
/// `(k, r)`-cover-free, with no symmetry breaking or pruning at all.
fn naive_min_ground(k: usize, r: usize, d: usize) -> usize {
    (1..)
        .find(|&n| {
            (0..d)
                .map(|_| 0..1u32 << n)
                .multi_cartesian_product()
                .any(|sets| naive_cover_free(&sets, k, r))
        })
        .unwrap()
}

fn exact(k: usize, r: usize, d: usize) -> usize {
    match min_ground_size(k, r, d, u64::MAX).unwrap() {
        GroundSize::Exact { value, family } => {
            assert!(verify_cover_free(&family, k, r).unwrap().is_cover_free());
            value
        }
        GroundSize::Bracket { lo, hi } => panic!("unbounded search returned [{lo}, {hi}]"),
    }
}

#[test]
fn exact_values_match_naive_generator() {
    for (k, r, d) in [(1, 1, 2), (1, 1, 3), (1, 2, 3), (1, 1, 4), (2, 1, 3), (1, 2, 4)] {
        assert_eq!(exact(k, r, d), naive_min_ground(k, r, d), "C({k},{r},{d})");
    }
}

#[test]
fn exact_values_respect_michel_scott() {
    for k in 1..=2 {
        for s in 1..=2 {
            for t in 1..=2 {
                if s + t > 3 {
                    continue;
                }
                for d in (k + t)..=5 {
                    if d < k + s + t {
                        continue;
                    }
                    let c = exact(k, s + t, d);
                    let bound = michel_scott_bound(k, s, t, d).unwrap();
                    assert!(c as f64 >= bound.ceil(), "C({k},{},{d})={c} < {bound}", s + t);
                }
            }
        }
    }
}

#[test]
fn bracket_is_consistent_with_exact_value() {
    let c = exact(2, 2, 5);
    match min_ground_size(2, 2, 5, 50).unwrap() {
        GroundSize::Bracket { lo, hi } => assert!(lo <= c && c <= hi),
        GroundSize::Exact { value, .. } => assert_eq!(value, c),
    }
}

fn family_strategy() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(0..1u32 << n, 4..=7)))
}

proptest! {
    #[test]
    fn monotone_in_r((n, sets) in family_strategy(), k in 1usize..=2) {
        let family = to_family(n, &sets);
        let d = sets.len();
        for r in 2..=(d - k) {
            if verify_cover_free(&family, k, r).unwrap().is_cover_free() {
                for r2 in 1..r {
                    prop_assert!(verify_cover_free(&family, k, r2).unwrap().is_cover_free());
                }
            }
        }
    }

    #[test]
    fn monotone_in_k((n, sets) in family_strategy(), r in 1usize..=2) {
        let family = to_family(n, &sets);
        let d = sets.len();
        for k in 2..=(d - r) {
            if verify_cover_free(&family, k, r).unwrap().is_cover_free() {
                for k2 in 1..k {
                    prop_assert!(verify_cover_free(&family, k2, r).unwrap().is_cover_free());
                }
            }
        }
    }

    #[test]
    fn family_file_round_trip((n, sets) in family_strategy()) {
        let family = to_family(n, &sets);
        prop_assert_eq!(parse_family(&write_family(&family)).unwrap(), family);
    }
}
