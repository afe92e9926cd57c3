use std::collections::BTreeSet;

use colperm::ferrers::{self, all_bounds, enumerate_restricted, enumerate_restricted_d, FerrersBound};
use colperm::verify::{self, TheoremId, VerifyParams};
use colperm::{enumerate_group, ColoredPermutation, GroupContext};

const CAP: u64 = 1_000_000;

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

#[test]
fn group_orders() {
    for r in 1..=4usize {
        for n in 0..=4usize {
            let all: BTreeSet<_> = enumerate_group(r, n, CAP).unwrap().collect();
            let expected = (r as u128).pow(n as u32) * factorial(n as u128);
            assert_eq!(all.len() as u128, expected, "r={r} n={n}");
            assert_eq!(GroupContext::new(r, n).unwrap().order(), expected);
        }
    }
    // G(3,2) has 3^2 * 2 = 18 elements.
    assert_eq!(enumerate_group(3, 2, CAP).unwrap().count(), 18);
}

#[test]
fn cap_is_enforced() {
    assert!(enumerate_group(3, 6, 1000).is_err());
    assert!(enumerate_restricted(3, &FerrersBound::full(6), 1000).is_err());
}

#[test]
fn bound_counts_are_catalan() {
    for n in 0..=7 {
        assert_eq!(all_bounds(n, CAP).unwrap().len() as u128, ferrers::catalan(n));
    }
}

#[test]
fn restricted_matches_filter() {
    for r in 1..=3usize {
        for n in 1..=4usize {
            let group: Vec<ColoredPermutation> = enumerate_group(r, n, CAP).unwrap().collect();
            for f in all_bounds(n, CAP).unwrap() {
                let listed: Vec<_> = enumerate_restricted(r, &f, CAP).unwrap().collect();
                let as_set: BTreeSet<_> = listed.iter().cloned().collect();
                assert_eq!(as_set.len(), listed.len(), "duplicates for {f:?}");
                let filtered: BTreeSet<_> =
                    group.iter().filter(|p| f.member(p).unwrap()).cloned().collect();
                assert_eq!(as_set, filtered, "r={r} f={f:?}");
                assert_eq!(listed.len() as u128, f.restricted_count(r));
            }
        }
    }
}

#[test]
fn restricted_d_matches_filter() {
    for n in 1..=5usize {
        let group: Vec<ColoredPermutation> = enumerate_group(2, n, CAP)
            .unwrap()
            .filter(|p| p.is_even_signed())
            .collect();
        for f in all_bounds(n, CAP).unwrap() {
            let listed: BTreeSet<_> = enumerate_restricted_d(&f, CAP).unwrap().collect();
            let filtered: BTreeSet<_> =
                group.iter().filter(|p| f.member(p).unwrap()).cloned().collect();
            assert_eq!(listed, filtered, "f={f:?}");
            assert_eq!(listed.len() as u128, f.restricted_count_d());
        }
    }
}

#[test]
fn partition_preserves_order() {
    let f = FerrersBound::parse("2,3,4,4").unwrap();
    let whole: Vec<_> = enumerate_restricted(3, &f, CAP).unwrap().collect();
    let parts: Vec<_> = enumerate_restricted(3, &f, CAP)
        .unwrap()
        .partition()
        .into_iter()
        .flatten()
        .collect();
    assert_eq!(whole, parts);
}

#[test]
fn min_sequence_is_least() {
    for n in 1..=4usize {
        let bounds = all_bounds(n, CAP).unwrap();
        for p in enumerate_group(2, n, CAP).unwrap() {
            let m = ferrers::min_sequence(&p);
            assert!(m.member(&p).unwrap());
            for g in bounds.iter().filter(|g| g.member(&p).unwrap()) {
                assert!(
                    m.values().iter().zip(g.values()).all(|(a, b)| a <= b),
                    "{p} admits {g:?} but min is {m:?}"
                );
            }
        }
    }
}

fn run_all(threads: usize) -> Vec<String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let params = VerifyParams::new(2, 4).all_bounds();
    pool.install(|| verify::check_range(TheoremId::ALL, &params).unwrap())
        .iter()
        .map(|rep| rep.to_json(false).to_string())
        .collect()
}

#[test]
fn reports_independent_of_thread_count() {
    let one = run_all(1);
    let four = run_all(4);
    assert_eq!(one, four);
    assert!(one.iter().all(|s| s.contains("\"status\":\"pass\"")), "{one:?}");
}
