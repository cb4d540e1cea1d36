use proptest::prelude::*;
use rankwork::transforms::eval::{e2, eta, qpoch_inf};
use rankwork::transforms::*;
use rankwork::{Error, PrecisionContext};
use rug::{Complex, Float};

fn eta_f64(x: f64, y: f64) -> (f64, f64) {
    // q^{1/24} Π (1 − qⁿ) in plain floating point
    let (r, t) = ((-2.0 * std::f64::consts::PI * y).exp(), 2.0 * std::f64::consts::PI * x);
    let mut acc = ((t / 24.0).cos() * r.powf(1.0 / 24.0), (t / 24.0).sin() * r.powf(1.0 / 24.0));
    for n in 1..400 {
        let m = r.powi(n);
        let (c, s) = (1.0 - m * (t * n as f64).cos(), -m * (t * n as f64).sin());
        acc = (acc.0 * c - acc.1 * s, acc.0 * s + acc.1 * c);
    }
    acc
}

#[test]
fn eta_matches_float_product() {
    let ctx = PrecisionContext::new(30);
    for (x, y) in [(0.0, 1.0), (0.3, 0.7), (-0.45, 0.4), (0.1, 2.5)] {
        let v = eta(&ctx.complex(x, y), &ctx).unwrap();
        let (re, im) = eta_f64(x, y);
        assert!((v.real().to_f64() - re).abs() < 1e-13 && (v.imag().to_f64() - im).abs() < 1e-13);
    }
    // reduction to the fundamental domain near the real axis
    let v = eta(&ctx.complex(0.5, 0.02), &ctx).unwrap();
    assert!(v.real().is_finite());
}

#[test]
fn e2_at_i_is_three_over_pi() {
    let ctx = PrecisionContext::new(40);
    let v = e2(&ctx.i(), &ctx).unwrap();
    let expected = 3.0 / std::f64::consts::PI;
    assert!((v.real().to_f64() - expected).abs() < 1e-15);
    assert!(v.imag().to_f64().abs() < 1e-35);
}

#[test]
fn qpoch_matches_pentagonal_head() {
    let ctx = PrecisionContext::new(30);
    let q = ctx.complex(0.01, 0.0);
    let v = qpoch_inf(&q, &ctx).unwrap().real().to_f64();
    assert!((v - (1.0 - 0.01 - 1e-4 + 1e-10 + 1e-14)).abs() < 1e-18);
}

#[test]
fn law_ids_round_trip() {
    for law in Law::ALL {
        assert_eq!(law.id().parse::<Law>().unwrap(), law);
    }
    assert!("not-a-law".parse::<Law>().is_err());
}

#[test]
fn default_suite_passes_at_fifty_digits() {
    let ctx = PrecisionContext::new(50);
    let results = run_suite(&default_suite(), &ctx);
    let mut failures = Vec::new();
    for (case, r) in &results {
        match r {
            Ok(rep) if rep.pass => {}
            Ok(rep) => failures.push(format!("{rep}")),
            Err(e) => failures.push(format!("{:?}: {e}", case.law)),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    let laws: std::collections::BTreeSet<Law> = results.iter().map(|(c, _)| c.law).collect();
    assert_eq!(laws.len(), Law::ALL.len());
}

#[test]
fn r2_modular_at_higher_precision() {
    let ctx = PrecisionContext::new(70);
    let z = ctx.complex(0.9, 0.1);
    let rep = verify_r2_modular(2, 5, &z, &ctx).unwrap();
    assert!(rep.pass, "{rep}");
    assert!(rep.relative().to_f64() < 1e-60);
}

#[test]
fn residual_detects_a_wrong_frame() {
    let ctx = PrecisionContext::new(30);
    let z = ctx.complex(1.0, 0.0);
    let good = verify_r2_modular(1, 3, &z, &ctx).unwrap();
    let mut bad = good.clone();
    bad.rhs = Complex::with_val(ctx.prec(), &bad.rhs * Float::with_val(ctx.prec(), 1.000001));
    let re = ResidualReport::new(bad.law, bad.inputs, bad.lhs, bad.rhs, bad.tol, &ctx);
    assert!(good.pass && !re.pass);
}

#[test]
fn laplacian_residual_decays_like_step_squared() {
    let ctx = PrecisionContext::new(40);
    let z = ctx.complex(0.1, 0.9);
    let a = verify_laplacian(&z, &ctx.float(4e-3), &ctx).unwrap().residual.to_f64();
    let b = verify_laplacian(&z, &ctx.float(2e-3), &ctx).unwrap().residual.to_f64();
    let ratio = a / b;
    assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn invalid_frames_are_rejected() {
    let ctx = PrecisionContext::new(20);
    let z = ctx.complex(1.0, 0.0);
    assert!(matches!(verify_r2_modular(2, 4, &z, &ctx), Err(Error::NotCoprime { .. })));
    assert!(matches!(verify_odd_laws(OddCase::KOdd, 1, 2, &z, None, &ctx), Err(Error::NoValidFrame(_))));
    assert!(matches!(verify_odd_laws(OddCase::KEven, 1, 3, &z, None, &ctx), Err(Error::NoValidFrame(_))));
    assert!(verify_r2_modular(0, 1, &ctx.complex(-1.0, 0.0), &ctx).is_err());
    assert!(verify_eta_inversion(&ctx.complex(0.0, -1.0), &ctx).is_err());
    let json = verify_eta_inversion(&ctx.i(), &ctx).unwrap().to_json();
    assert_eq!(json["law"], "eta-inversion");
    assert_eq!(json["pass"], true);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn eta_inversion_holds(x in -2.0f64..2.0, y in 0.05f64..3.0) {
        let ctx = PrecisionContext::new(40);
        let rep = verify_eta_inversion(&ctx.complex(x, y), &ctx).unwrap();
        prop_assert!(rep.pass, "{}", rep);
    }

    #[test]
    fn e2_inversion_holds(x in -1.0f64..1.0, y in 0.3f64..2.0) {
        let ctx = PrecisionContext::new(40);
        let rep = verify_e2_inversion(&ctx.complex(x, y), &ctx).unwrap();
        prop_assert!(rep.pass, "{}", rep);
    }

    #[test]
    fn maass_translation_holds(x in -0.5f64..0.5, y in 0.5f64..1.5) {
        let ctx = PrecisionContext::new(30);
        let rep = verify_maass_translation(&ctx.complex(x, y), &ctx).unwrap();
        prop_assert!(rep.pass, "{}", rep);
    }
}
