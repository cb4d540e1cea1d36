mod common;

use proptest::prelude::*;
use rankwork::modular::*;
use rankwork::{Error, PrecisionContext};
use rug::{Complex, Rational};
use std::f64::consts::PI;

fn close(z: &Complex, re: f64, im: f64, tol: f64) -> bool {
    (z.real().to_f64() - re).abs() < tol && (z.imag().to_f64() - im).abs() < tol
}

fn a_oracle(k: i64, n: i64) -> (f64, f64) {
    let mut acc = (0.0, 0.0);
    for h in 0..k {
        if common::gcd(h, k) != 1 {
            continue;
        }
        let t = PI * (common::dedekind_f64(h, k) - 2.0 * (h * n) as f64 / k as f64);
        acc.0 += t.cos();
        acc.1 += t.sin();
    }
    acc
}

fn a_odd_oracle(k: i64, n: i64) -> (f64, f64) {
    let mut acc = (0.0, 0.0);
    for h in 0..k {
        if common::gcd(h, k) != 1 {
            continue;
        }
        let t = PI
            * (k as f64 / 2.0
                + common::dedekind_f64(2 * h, k)
                + 1.5 * (h * k) as f64
                + (h * (1 - 4 * n)) as f64 / (2 * k) as f64);
        acc.0 += t.cos();
        acc.1 += t.sin();
    }
    acc
}

#[test]
fn sawtooth_values() {
    assert_eq!(sawtooth(&Rational::from((1, 2))), 0);
    assert_eq!(sawtooth(&Rational::from((1, 4))), Rational::from((-1, 4)));
    assert_eq!(sawtooth(&Rational::from(3)), 0);
    assert_eq!(sawtooth(&Rational::from((7, 3))), Rational::from((-1, 6)));
}

#[test]
fn dedekind_small_values() {
    assert_eq!(dedekind_sum(0, 1).unwrap(), 0);
    assert_eq!(dedekind_sum(1, 2).unwrap(), 0);
    assert_eq!(dedekind_sum(1, 3).unwrap(), Rational::from((1, 18)));
    assert_eq!(dedekind_sum(2, 3).unwrap(), Rational::from((-1, 18)));
    assert!(matches!(dedekind_sum(3, 6), Err(Error::NotCoprime { .. })));
    assert!(dedekind_sum(1, 0).is_err());
}

#[test]
fn dedekind_matches_float_oracle() {
    for k in 1..60 {
        for h in 0..k {
            if gcd(h, k) == 1 {
                let s = dedekind_sum(h, k).unwrap().to_f64();
                assert!((s - common::dedekind_f64(h, k)).abs() < 1e-9, "s({h},{k})");
            }
        }
    }
}

#[test]
fn omega_values() {
    let ctx = PrecisionContext::new(30);
    assert!(close(&omega(0, 1, &ctx).unwrap(), 1.0, 0.0, 1e-25));
    assert!(close(&omega(1, 2, &ctx).unwrap(), 1.0, 0.0, 1e-25));
    let w = omega(1, 3, &ctx).unwrap();
    assert!(close(&w, (PI / 18.0).cos(), (PI / 18.0).sin(), 1e-14));
}

#[test]
fn kloosterman_values() {
    let ctx = PrecisionContext::new(30);
    for n in 0..5 {
        assert!(close(&kloosterman_a(1, n, &ctx).unwrap(), 1.0, 0.0, 1e-25));
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert!(close(&kloosterman_a(2, n, &ctx).unwrap(), sign, 0.0, 1e-25));
    }
    for k in 1..25 {
        for n in [1, 7, 100] {
            let a = kloosterman_a(k, n, &ctx).unwrap();
            let (re, im) = a_oracle(k, n);
            assert!(close(&a, re, im, 1e-9), "A_{k}({n})");
            assert!(a.imag().to_f64().abs() < 1e-25, "A_{k}({n}) should be real");
            assert!(a.real().to_f64().abs() <= k as f64 + 1e-9);
        }
    }
}

#[test]
fn odd_kloosterman_values() {
    let ctx = PrecisionContext::new(30);
    assert!(close(&kloosterman_a_odd(1, 5, &ctx).unwrap(), 0.0, 1.0, 1e-25));
    for k in (1..30).step_by(2) {
        for n in [1, 2, 50] {
            let (re, im) = a_odd_oracle(k, n);
            assert!(close(&kloosterman_a_odd(k, n, &ctx).unwrap(), re, im, 1e-9), "A_{k}o({n})");
        }
    }
    assert!(matches!(kloosterman_a_odd(4, 1, &ctx), Err(Error::KEven(4))));
}

#[test]
fn hprime_conventions() {
    use HPrimeConvention::*;
    assert_eq!(solve_hprime(1, 3, EvenModK).unwrap(), 2);
    assert_eq!(solve_hprime(1, 2, Mod2K).unwrap(), 3);
    assert_eq!(solve_hprime(0, 1, EvenModK).unwrap(), 0);
    assert_eq!(solve_hprime(1, 2, Mod4K).unwrap(), 7);
    assert_eq!(solve_hprime(1, 3, Mod4KDivisibleBy4).unwrap(), 8);
    assert!(matches!(solve_hprime(1, 2, EvenModK), Err(Error::NoSolution { .. })));
    assert!(matches!(solve_hprime(2, 3, Mod4K), Err(Error::NoSolution { .. })));
    assert!(matches!(solve_hprime(2, 4, Mod2K), Err(Error::NotCoprime { .. })));
    assert_eq!(default_convention(5), EvenModK);
    assert_eq!(default_convention(6), Mod2K);
}

#[test]
fn farey_neighbours_of_one_half() {
    assert_eq!(farey_neighbors(1, 2, 3).unwrap(), (1, 3, 2, 3));
    assert_eq!(farey_neighbors(0, 1, 4).unwrap(), (-1, 4, 1, 4));
    assert!(farey_neighbors(1, 5, 4).is_err());
    let ctx = PrecisionContext::new(20);
    let f = farey_frame(1, 2, 3, 10, &Rational::from((1, 100)), &ctx).unwrap();
    assert_eq!(f.theta_left, Rational::from((1, 10)));
    assert_eq!(f.hprime, 3);
    assert!(close(&f.z, 0.2, -0.02, 1e-15));
}

proptest! {
    #[test]
    fn dedekind_reciprocity(h in 1i64..400, k in 1i64..400) {
        prop_assume!(gcd(h, k) == 1);
        let lhs = dedekind_sum(h, k).unwrap() + dedekind_sum(k, h).unwrap();
        let rhs = Rational::from((-1, 4))
            + (Rational::from((h, k)) + Rational::from((k, h)) + Rational::from((1, h * k))) / Rational::from(12);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dedekind_is_odd_and_periodic(h in -300i64..300, k in 1i64..200) {
        prop_assume!(gcd(h, k) == 1);
        prop_assert_eq!(dedekind_sum(-h, k).unwrap(), -dedekind_sum(h, k).unwrap());
        prop_assert_eq!(dedekind_sum(h + k, k).unwrap(), dedekind_sum(h, k).unwrap());
    }

    #[test]
    fn hprime_solves_its_congruence(h in 0i64..200, k in 1i64..200) {
        prop_assume!(gcd(h, k) == 1);
        let c = default_convention(k);
        let hp = solve_hprime(h, k, c).unwrap();
        let m = if k % 2 == 1 { k } else { 2 * k };
        prop_assert_eq!((h * hp + 1).rem_euclid(m), 0);
        if k % 2 == 1 {
            prop_assert_eq!(hp % 2, 0);
            let h4 = solve_hprime(h, k, HPrimeConvention::Mod4KDivisibleBy4).unwrap();
            prop_assert_eq!(h4 % 4, 0);
            prop_assert_eq!((h * h4 + 1).rem_euclid(k), 0);
        }
    }

    #[test]
    fn farey_neighbours_are_adjacent(
        (order, k, h) in (1i64..80).prop_flat_map(|n| (Just(n), 1..=n)).prop_flat_map(|(n, k)| (Just(n), Just(k), 0..k))
    ) {
        prop_assume!(gcd(h, k) == 1);
        let (h1, k1, h2, k2) = farey_neighbors(h, k, order).unwrap();
        prop_assert_eq!(h * k1 - h1 * k, 1);
        prop_assert_eq!(h2 * k - h * k2, 1);
        prop_assert!(k1 > order - k && k1 <= order);
        prop_assert!(k2 > order - k && k2 <= order);
    }
}
