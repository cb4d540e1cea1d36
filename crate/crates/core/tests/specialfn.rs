use proptest::prelude::*;
use rankwork::specialfn::*;
use rankwork::PrecisionContext;
use rug::float::Constant;
use rug::{Complex, Float, Rational};

fn rel(a: &Float, b: &Float) -> f64 {
    let d = Float::with_val(a.prec(), a - b).abs();
    (d / Float::with_val(a.prec(), b.abs_ref())).to_f64()
}

fn crel(a: &Complex, b: &Complex) -> f64 {
    let d = Complex::with_val(a.prec().0, a - b).abs().real().to_f64();
    d / Complex::with_val(b.prec().0, b.abs_ref()).real().to_f64()
}

fn parse(ctx: &PrecisionContext, s: &str) -> Float {
    Float::with_val(ctx.prec(), Float::parse(s).unwrap())
}

// reference values computed with mpmath at 45 digits
#[test]
fn bessel_reference_values() {
    let ctx = PrecisionContext::new(40);
    let cases = [
        ((0, 1), 1.0, "1.26606587775200833559824462521471753760767031"),
        ((1, 1), 10.0, "2670.98830370125465434103196677215254914574515"),
        ((1, 3), 2.0, "2.15878258137286302395019801689969364197273808"),
        ((5, 2), 100.0, "1040553196140803858194888046467097044457900.73"),
    ];
    for ((p, q), x, expected) in cases {
        let v = bessel_i(&Rational::from((p, q)), &ctx.float(x), &ctx).unwrap();
        assert!(rel(&v, &parse(&ctx, expected)) < 1e-38, "I_{p}/{q}({x})");
    }
}

#[test]
fn bessel_half_orders_match_elementary_forms() {
    let ctx = PrecisionContext::new(40);
    let pi = Float::with_val(ctx.prec(), Constant::Pi);
    for x in [0.1, 1.0, 10.0, 100.0] {
        let xf = ctx.float(x);
        let pre = Float::with_val(ctx.prec(), 2u32 / Float::with_val(ctx.prec(), &pi * &xf)).sqrt();
        let sh = Float::with_val(ctx.prec(), &pre * Float::with_val(ctx.prec(), xf.sinh_ref()));
        let ch = Float::with_val(ctx.prec(), &pre * Float::with_val(ctx.prec(), xf.cosh_ref()));
        let plus = bessel_i(&Rational::from((1, 2)), &xf, &ctx).unwrap();
        let minus = bessel_i(&Rational::from((-1, 2)), &xf, &ctx).unwrap();
        assert!(rel(&plus, &sh) < 1e-38, "I_1/2({x})");
        assert!(rel(&minus, &ch) < 1e-38, "I_-1/2({x})");
        for two_s in [1, -1, 3, -3] {
            let closed = bessel_i_half_closed(two_s, &xf, &ctx).unwrap();
            let series = bessel_i(&Rational::from((two_s, 2)), &xf, &ctx).unwrap();
            assert!(rel(&closed, &series) < 1e-36, "order {two_s}/2 at {x}");
        }
    }
}

#[test]
fn bessel_large_argument() {
    let ctx = PrecisionContext::new(30);
    let x = 200.0f64;
    let v = bessel_i(&Rational::from((5, 2)), &ctx.float(x), &ctx).unwrap().to_f64();
    let asym = (x.exp() / (2.0 * std::f64::consts::PI * x).sqrt()) as f64;
    assert!((v / asym - 1.0).abs() < 0.01 + 25.0 / (8.0 * x));
    assert!(bessel_i(&Rational::from(1), &ctx.float(-1.0), &ctx).is_err());
}

#[test]
fn incomplete_gamma_reference_values() {
    let ctx = PrecisionContext::new(40);
    let cases = [
        (1.0, "0.178147711781560690192582318168043390714522097"),
        (10.0, "0.00000126090426132415706812885047458940380931298477"),
        (0.01, "16.6547596303336744179093339031225097194494614"),
    ];
    for (x, expected) in cases {
        let e = parse(&ctx, expected);
        let xf = parse(&ctx, &x.to_string());
        let a = incomplete_gamma_upper_neg_half(&xf, &ctx).unwrap();
        let b = incomplete_gamma_upper_neg_half_quadrature(&xf, &ctx).unwrap();
        assert!(rel(&a, &e) < 1e-38, "erfc path at {x}");
        assert!(rel(&b, &e) < 1e-30, "quadrature path at {x}");
    }
    assert!(incomplete_gamma_upper_neg_half_checked(&ctx.float(1.0), &ctx).is_ok());
    assert!(incomplete_gamma_upper_neg_half(&ctx.float(0.0), &ctx).is_err());
}

#[test]
fn incomplete_gamma_asymptotic() {
    let ctx = PrecisionContext::new(30);
    let x = 100.0f64;
    let v = incomplete_gamma_upper_neg_half(&ctx.float(x), &ctx).unwrap().to_f64();
    let lead = x.powf(-1.5) * (-x).exp();
    assert!((v / lead - 1.0).abs() < 0.05);
}

#[test]
fn mordell_rules_agree() {
    let ctx = PrecisionContext::new(30);
    for (k, nu, z) in [(1u32, 0i64, (1.0, 0.0)), (3, 1, (0.8, 0.1)), (2, 1, (1.1, 0.2))] {
        let z = ctx.complex(z.0, z.1);
        let a = rankwork::specialfn::mordell::mordell_i_with(k, nu, &z, QuadRule::Trapezoid, &ctx).unwrap();
        let b = rankwork::specialfn::mordell::mordell_i_with(k, nu, &z, QuadRule::TanhSinh, &ctx).unwrap();
        assert!(crel(&a.value, &b.value) < 1e-25, "I_{k},{nu}");
    }
    let z = ctx.complex(0.9, 0.0);
    for kind in [OddKind::IPlus, OddKind::IMinus, OddKind::JPlus, OddKind::JMinus] {
        let a = rankwork::specialfn::mordell::mordell_odd_with(kind, 1, 0, &z, QuadRule::Trapezoid, &ctx).unwrap();
        let b = rankwork::specialfn::mordell::mordell_odd_with(kind, 1, 0, &z, QuadRule::TanhSinh, &ctx).unwrap();
        assert!(crel(&a.value, &b.value) < 1e-25, "{kind:?}");
    }
    assert!(mordell_i(1, 0, &ctx.complex(-1.0, 0.0), &ctx).is_err());
}

#[test]
fn mordell_w_sign_symmetry_at_real_z() {
    let ctx = PrecisionContext::new(25);
    let z = ctx.complex(1.0, 0.0);
    let w = ctx.complex(0.05, 0.02);
    let plus = mordell_i_w(1, 0, &z, &w, 1, &ctx).unwrap();
    let minus = mordell_i_w(1, 0, &z, &w, -1, &ctx).unwrap();
    assert!(plus.real().is_finite() && minus.real().is_finite());
    assert!(crel(&plus, &minus) > 1e-10);
}

#[test]
fn nonholo_paths_agree() {
    let ctx = PrecisionContext::new(30);
    for (x, y) in [(0.0, 0.25), (0.3, 0.8), (-0.25, 0.5), (1.0 / 7.0, 0.2)] {
        let z = ctx.complex(x, y);
        let a = nonholo_integral(&z, &ctx).unwrap();
        let b = nonholo_series(&z, &ctx).unwrap();
        assert!(crel(&a, &b) < 1e-25, "N({x}+{y}i)");
    }
    assert!(nonholo_series(&ctx.complex(0.0, -1.0), &ctx).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nonholo_is_one_periodic(x in -0.5f64..0.5, y in 0.2f64..1.5) {
        let ctx = PrecisionContext::new(25);
        let z = ctx.complex(x, y);
        let a = nonholo_series(&z, &ctx).unwrap();
        let b = nonholo_series(&Complex::with_val(ctx.prec(), &z + 1u32), &ctx).unwrap();
        prop_assert!(crel(&a, &b) < 1e-20);
    }

    #[test]
    fn bessel_recurrence(x in 0.1f64..50.0, p in -5i32..5) {
        // I_{s−1} − I_{s+1} = (2s/x) I_s
        let ctx = PrecisionContext::new(30);
        let s = Rational::from((2 * p + 1, 2));
        let xf = ctx.float(x);
        let lo = bessel_i(&Rational::from(&s - Rational::from(1)), &xf, &ctx).unwrap();
        let hi = bessel_i(&Rational::from(&s + Rational::from(1)), &xf, &ctx).unwrap();
        let mid = bessel_i(&s, &xf, &ctx).unwrap();
        let lhs = Float::with_val(ctx.prec(), &lo - &hi);
        let rhs = mid * Float::with_val(ctx.prec(), Rational::from(&s * 2u32)) / &xf;
        let scale = lo.to_f64().abs().max(hi.to_f64().abs());
        prop_assert!(Float::with_val(ctx.prec(), &lhs - &rhs).abs().to_f64() <= 1e-25 * scale);
    }

    #[test]
    fn incomplete_gamma_recurrence(x in 0.05f64..60.0) {
        // Γ(−1/2;x) = −2Γ(1/2;x) + 2x^{−1/2}e^{−x}, Γ(1/2;x) = √π erfc √x
        let ctx = PrecisionContext::new(30);
        let xf = ctx.float(x);
        let g = incomplete_gamma_upper_neg_half(&xf, &ctx).unwrap().to_f64();
        let q = incomplete_gamma_upper_neg_half_quadrature(&xf, &ctx).unwrap().to_f64();
        prop_assert!(((g - q) / g).abs() < 1e-12);
    }
}
