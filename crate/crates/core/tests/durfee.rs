mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rankwork::durfee::*;
use rankwork::partitions::{eta2_moment_table, partitions_of, Partition};
use rankwork::qseries::{r2_full_rank_series, r2_odd_series};
use rug::Integer;

fn entry(value: u32, mark: u8) -> MarkedEntry {
    MarkedEntry { value, mark }
}

#[test]
fn marked_counts_for_tiny_n() {
    assert!(enumerate_marked(1).unwrap().is_empty());
    assert_eq!(enumerate_marked(2).unwrap().len(), 1);
    assert_eq!(enumerate_marked(3).unwrap().len(), 4);
    assert!(nf2_distribution(1).unwrap().is_empty());
    let d2 = nf2_distribution(2).unwrap();
    assert_eq!(d2.len(), 1);
    assert_eq!(d2.values().sum::<Integer>(), 1);
}

#[test]
fn full_rank_examples() {
    let s = MarkedDurfeeSymbol { top: vec![entry(1, 1)], bottom: vec![], side: 1 };
    assert_eq!(s.full_rank(), 0);
    let s = MarkedDurfeeSymbol { top: vec![entry(2, 2), entry(2, 1), entry(1, 1)], bottom: vec![], side: 2 };
    assert!(s.is_valid());
    assert_eq!(s.full_rank(), 3);
}

#[test]
fn enumeration_matches_rule_oracle() {
    for n in 1..=13u32 {
        let mut ours: Vec<i64> = enumerate_marked(n as u64).unwrap().iter().map(|s| s.full_rank()).collect();
        let mut oracle = common::marked_symbol_ranks(n, false);
        ours.sort_unstable();
        oracle.sort_unstable();
        assert_eq!(ours, oracle, "n = {n}");
    }
}

#[test]
fn odd_enumeration_matches_rule_oracle() {
    for n in 1..=16u32 {
        let ours = count_odd_marked(n as u64);
        let oracle = common::marked_symbol_ranks(n, true).len();
        assert_eq!(ours, oracle as u64, "n = {n}");
    }
}

#[test]
fn every_enumerated_symbol_is_valid_and_distinct() {
    for n in 1..=12u64 {
        let all = enumerate_marked(n).unwrap();
        for s in &all {
            assert!(s.is_valid());
            assert_eq!(s.n(), n);
        }
        let mut keys: Vec<String> = all.iter().map(|s| format!("{s:?}")).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), all.len());
        for s in enumerate_odd_marked(n).unwrap() {
            assert!(s.is_valid_odd());
            assert_eq!(s.n_odd(), n);
        }
    }
}

#[test]
fn marked_count_equals_rank_moment() {
    let eta = eta2_moment_table(24);
    for n in 1..=24u64 {
        assert_eq!(count_marked(n), eta[n as usize], "n = {n}");
    }
}

#[test]
fn full_rank_distribution_matches_series() {
    let series = r2_full_rank_series(25).unwrap();
    for n in 1..=24u64 {
        let dist = nf2_distribution(n).unwrap();
        let poly = series.coeff(n as usize);
        let from_series: BTreeMap<i64, Integer> = poly.terms().clone();
        assert_eq!(dist, from_series, "n = {n}");
    }
}

#[test]
fn odd_moment_small_values() {
    assert_eq!(eta2_odd_moment(1).unwrap(), 0);
    assert_eq!(eta2_odd_moment(2).unwrap(), 1);
    let expected = [0, 0, 1, 4, 10, 20, 36, 60, 95, 144];
    for (n, e) in expected.iter().enumerate().skip(1) {
        assert_eq!(eta2_odd_moment(n as u64).unwrap(), *e, "n = {n}");
    }
}

#[test]
fn odd_moment_matches_series_oracle_and_marked_count() {
    let oracle = common::eta2_odd_series(31);
    let series = r2_odd_series(31).unwrap();
    for n in 1..=30u64 {
        let m = eta2_odd_moment(n).unwrap();
        assert_eq!(m, Integer::from(oracle[n as usize]), "n = {n}");
        assert_eq!(series.coeff(n as usize), &m);
        assert_eq!(count_odd_marked(n), m);
    }
}

#[test]
fn odd_symbols_are_valid() {
    for n in 1..=20u64 {
        for s in enumerate_odd(n).unwrap() {
            assert!(s.is_valid());
            assert_eq!(s.n(), n);
        }
    }
}

#[test]
fn residue_reduction_preserves_total() {
    let d = nf2_distribution(12).unwrap();
    let total: Integer = d.values().sum();
    for t in 2..7 {
        let r = reduce_mod(&d, t);
        assert_eq!(r.iter().sum::<Integer>(), total);
    }
}

proptest! {
    #[test]
    fn durfee_symbol_round_trip(n in 1u32..25, pick in 0usize..10_000) {
        let all: Vec<Partition> = partitions_of(n).collect();
        let p = &all[pick % all.len()];
        let d = DurfeeSymbol::from_partition(p);
        prop_assert_eq!(d.n(), n as u64);
        prop_assert_eq!(d.rank(), p.rank());
        prop_assert!(d.top.iter().chain(&d.bottom).all(|&x| x <= d.side));
    }

    #[test]
    fn full_rank_distribution_is_symmetric(n in 2u64..18) {
        // w²/((1−w)(w³−1)) and R(w;q) − R(w²;q) are both invariant under w ↦ 1/w
        let d = nf2_distribution(n).unwrap();
        for (m, c) in &d {
            prop_assert_eq!(d.get(&-m).cloned().unwrap_or_default(), c.clone());
        }
    }
}
