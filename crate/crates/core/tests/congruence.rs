mod common;

use proptest::prelude::*;
use rankwork::congruence::*;
use rug::Integer;

fn oracle_survives(values: &[u128], a: u64, b: u64, modulus: u64, n_max: u64) -> bool {
    (0..=n_max).all(|n| values[(a * n + b) as usize] % modulus as u128 == 0)
}

#[test]
fn classical_partition_congruences() {
    for (a, b, m) in [(5, 4, 5), (7, 5, 7), (11, 6, 11), (25, 24, 25), (49, 47, 49)] {
        let c = verify_progression(Statistic::P, a, b, m, 300).unwrap();
        assert_eq!(c.status, Status::VerifiedUpTo { n: 300 }, "p({a}n+{b}) mod {m}");
    }
    let c = verify_progression(Statistic::P, 13, 6, 13, 300).unwrap();
    assert!(!c.verified());
}

#[test]
fn spt_congruences() {
    for (a, b, m) in [(5, 4, 5), (7, 5, 7), (13, 6, 13)] {
        assert!(verify_progression(Statistic::Spt, a, b, m, 200).unwrap().verified(), "spt({a}n+{b}) mod {m}");
    }
}

#[test]
fn scan_finds_ramanujan_progressions() {
    for (m, b) in [(5, 4), (7, 5), (11, 6)] {
        let found = scan(Statistic::P, m, m, 200).unwrap();
        let prim: Vec<(u64, u64)> = primitive(&found).iter().map(|c| (c.a, c.b)).collect();
        assert_eq!(prim, vec![(m, b)]);
    }
}

#[test]
fn scan_matches_oracle_exhaustively() {
    let p = common::p_table(12 * 40 + 12);
    let found = scan(Statistic::P, 3, 12, 40).unwrap();
    let got: Vec<(u64, u64)> = found.iter().map(|c| (c.a, c.b)).collect();
    let mut expected = Vec::new();
    for a in 1..=12u64 {
        for b in 0..a {
            if oracle_survives(&p, a, b, 3, 40) {
                expected.push((a, b));
            }
        }
    }
    let mut got_sorted = got.clone();
    got_sorted.sort();
    assert_eq!(got_sorted, expected);
}

#[test]
fn caps_and_arguments() {
    assert!(verify_progression(Statistic::P, 0, 0, 5, 10).is_err());
    assert!(verify_progression(Statistic::P, 5, 5, 5, 10).is_err());
    assert!(verify_progression(Statistic::Eta2, 5, 4, 5, 10_000).is_err());
    assert!(Statistic::Nf2 { r: 0, t: 3 }.table(NF2_CAP + 1).is_err());
}

#[test]
fn candidate_output_formats() {
    let c = verify_progression(Statistic::P, 5, 4, 5, 50).unwrap();
    assert_eq!(c.to_json()["status"], "verified-up-to 50");
    assert_eq!(c.to_csv_row(), "\"p\",5,4,5,50,verified-up-to 50");
    assert_eq!(ProgressionCandidate::CSV_HEADER, "statistic,A,B,modulus,n_max_tested,status");
}

#[test]
fn nf2_tables_agree() {
    for t in [2u32, 3, 5] {
        let series = nf2_residue_table(t, 30).unwrap();
        let enumerated = nf2_residue_table_by_enumeration(t, 30).unwrap();
        assert_eq!(series, enumerated, "t = {t}");
    }
    let table = nf2_residue_table(3, 14).unwrap();
    for n in 1..=14u32 {
        let mut counts = vec![0i64; 3];
        for r in common::marked_symbol_ranks(n, false) {
            counts[r.rem_euclid(3) as usize] += 1;
        }
        let row: Vec<Integer> = counts.into_iter().map(Integer::from).collect();
        assert_eq!(table[n as usize], row, "n = {n}");
    }
}

#[test]
fn nf2_statistic_parses_and_tabulates() {
    let s: Statistic = "nf2(1,3)".parse().unwrap();
    let t = s.table(20).unwrap();
    let full = nf2_residue_table(3, 20).unwrap();
    for n in 0..=20 {
        assert_eq!(t[n], full[n][1]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scan_output_is_sound(modulus in 2u64..8, a_max in 1u64..10, n_max in 5u64..30) {
        let p = common::p_table((a_max * n_max + a_max) as usize);
        for c in scan(Statistic::P, modulus, a_max, n_max).unwrap() {
            prop_assert!(oracle_survives(&p, c.a, c.b, modulus, n_max));
        }
    }

    #[test]
    fn verify_agrees_with_oracle(a in 1u64..20, b in 0u64..20, modulus in 2u64..14) {
        prop_assume!(b < a);
        let p = common::p_table((a * 25 + b) as usize);
        let c = verify_progression(Statistic::P, a, b, modulus, 25).unwrap();
        prop_assert_eq!(c.verified(), oracle_survives(&p, a, b, modulus, 25));
    }
}
