use std::collections::BTreeMap;

use rayon::prelude::*;
use rug::float::Constant;
use rug::{Complex, Float, Rational};

use super::diff::{l_operator, laplacian_check, lo_operator};
use super::eval::{
    cal_r, e2, eta, g_odd, h_odd, h_odd_w, l_odd_w, m_odd, maass_m, qpoch_inf, r2, r2_odd,
    r2_odd_w, r2_w,
};
use super::{Law, ResidualReport};
use crate::modular::{default_convention, omega, solve_hprime, HPrimeConvention};
use crate::specialfn::mordell::{mordell_i, mordell_i_w, mordell_odd, mordell_odd_w, OddKind};
use crate::specialfn::nonholo::{nonholo_integral, nonholo_series};
use crate::specialfn::precision::{
    cabs, exp_pi_i_rational, fmt_complex, fmt_float, pow10, principal_pow, sqrt_right_half, two_pi_i_times,
};
use crate::specialfn::quadrature::exp_sinh;
use crate::{Error, PrecisionContext, Result};

/// 10^{−(digits−10)}, the default acceptance threshold.
pub fn default_tol(ctx: &PrecisionContext) -> Float {
    pow10(-(ctx.digits as i32 - 10), ctx.prec())
}

fn pi(ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.prec(), Constant::Pi)
}

fn c(ctx: &PrecisionContext, v: impl Into<f64>) -> Complex {
    Complex::with_val(ctx.prec(), v.into())
}

fn show(z: &Complex) -> String {
    fmt_complex(z, 12)
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn require_right(z: &Complex) -> Result<()> {
    if z.real().is_sign_negative() || z.real().is_zero() {
        return Err(Error::InvalidArgument("need Re z > 0".into()));
    }
    Ok(())
}

fn require_upper(z: &Complex) -> Result<()> {
    if z.imag().is_sign_negative() || z.imag().is_zero() {
        return Err(Error::InvalidArgument("need Im z > 0".into()));
    }
    Ok(())
}

/// e^{2πi(a + i·b)/m} for an integer a and complex b.
fn exp_frame(a: i64, b: &Complex, m: i64, ctx: &PrecisionContext) -> Complex {
    let mut ib = Complex::with_val(ctx.prec(), b);
    ib.mul_i_mut(false);
    let t = (ib + a) / m;
    two_pi_i_times(&t).exp()
}

/// q = e^{2πi(h+iz)/k}.
pub fn frame_q(h: i64, k: i64, z: &Complex, ctx: &PrecisionContext) -> Complex {
    exp_frame(h, z, k, ctx)
}

/// q₁ = e^{2πi(h′+i/z)/k}.
pub fn frame_q1(hprime: i64, k: i64, z: &Complex, ctx: &PrecisionContext) -> Complex {
    let zi = Complex::with_val(ctx.prec(), z.recip_ref());
    exp_frame(hprime, &zi, k, ctx)
}

fn exp_c(z: Complex) -> Complex {
    z.exp()
}

/// e^{π(1/z − z)/(12k)}.
fn e_pi_12k(z: &Complex, k: i64, ctx: &PrecisionContext) -> Complex {
    let zi = Complex::with_val(ctx.prec(), z.recip_ref());
    exp_c((zi - z) * pi(ctx) / (12 * k))
}

fn twisted_phase(hprime: i64, nu: i64, k: i64, prec: u32) -> Complex {
    exp_pi_i_rational(&Rational::from((hprime * (-3 * nu * nu + nu), k)), prec)
}

/// Σ_ν (−1)^ν e^{πih′(−3ν²+ν)/k} · f(ν), summed in ν order.
fn nu_sum<F>(k: i64, hprime: i64, ctx: &PrecisionContext, f: F) -> Result<Complex>
where
    F: Fn(i64) -> Result<Complex> + Sync,
{
    let prec = ctx.prec();
    let terms: Result<Vec<Complex>> = (0..k)
        .into_par_iter()
        .map(|nu| {
            let sign = if nu % 2 == 0 { 1 } else { -1 };
            Ok(twisted_phase(hprime, nu, k, prec) * f(nu)? * sign)
        })
        .collect();
    let mut acc = Complex::new(prec);
    for t in terms? {
        acc += t;
    }
    Ok(acc)
}

/// The transformation law of R₂(q) for q = e^{2πi(h+iz)/k}:
///
/// R₂(q) = ω_{h,k} z^{1/2} e^{π(1/z−z)/12k} [ (q₁;q₁)_∞⁻¹ (−3k/(4πz) + 1/(24z²) + 1/24) − R₂(q₁)/z² ]
///         − (z^{1/2}/2k) ω_{h,k} e^{−πz/12k} Σ_ν (−1)^ν e^{πih′(−3ν²+ν)/k} I_{k,ν}(z).
pub fn verify_r2_modular(h: i64, k: i64, z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_right(z)?;
    let prec = ctx.prec();
    let hp = solve_hprime(h, k, default_convention(k))?;
    let q = frame_q(h, k, z, ctx);
    let q1 = frame_q1(hp, k, z, ctx);
    let lhs = r2(&q, ctx)?;
    let om = omega(h, k, ctx)?;
    let sz = sqrt_right_half(z)?;
    let pref = Complex::with_val(prec, &om * &sz) * e_pi_12k(z, k, ctx);
    let piz = Complex::with_val(prec, z * pi(ctx));
    let z2 = Complex::with_val(prec, z.square_ref());
    let poly = -Complex::with_val(prec, (piz.clone() * 4u32).recip() * (3 * k))
        + Complex::with_val(prec, (z2.clone() * 24u32).recip())
        + Complex::with_val(prec, 1) / 24u32;
    let x = Complex::with_val(prec, &pref * poly) / qpoch_inf(&q1, ctx)?;
    let b = Complex::with_val(prec, &pref * r2(&q1, ctx)?) / &z2;
    let s = nu_sum(k, hp, ctx, |nu| mordell_i(k as u32, nu, z, ctx))?;
    let y = Complex::with_val(prec, &sz * &om) / (2 * k) * exp_c(-piz / (12 * k)) * s;
    let rhs = Complex::with_val(prec, &x - &b) - &y;
    let mut rep = ResidualReport::new(
        Law::R2Modular,
        inputs(&[("h", h.to_string()), ("k", k.to_string()), ("hprime", hp.to_string()), ("z", show(z))]),
        lhs.clone(),
        rhs,
        default_tol(ctx),
        ctx,
    );
    if cabs(&b) > Float::with_val(prec, 1e-20) {
        let fitted = (lhs - x + y) / b;
        rep.notes.push(format!("fitted coefficient of the R2(q1)/z^2 term: {}", fmt_complex(&fitted, 15)));
    }
    Ok(rep)
}

/// The transformation law of ℛ₂(w;q); see [`verify_r2_modular`] for the frame.
pub fn verify_r2w_modular(h: i64, k: i64, z: &Complex, w: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_right(z)?;
    if w.real().is_zero() {
        return Err(Error::InvalidArgument("need Re w != 0".into()));
    }
    let prec = ctx.prec();
    let p = pi(ctx);
    let hp = solve_hprime(h, k, default_convention(k))?;
    let q = frame_q(h, k, z, ctx);
    let q1 = frame_q1(hp, k, z, ctx);
    let lhs = r2_w(w, &q, ctx)?;
    let om = omega(h, k, ctx)?;
    let sz = sqrt_right_half(z)?;
    let e12 = e_pi_12k(z, k, ctx);
    let zi = Complex::with_val(prec, z.recip_ref());
    // E = e^{3πkw²/z − πiw − πw/z}
    let w2 = Complex::with_val(prec, w.square_ref());
    let mut piw = Complex::with_val(prec, w * &p);
    let t_a = Complex::with_val(prec, &w2 * &zi) * &p * (3 * k);
    let t_c = Complex::with_val(prec, &piw * &zi);
    piw.mul_i_mut(false);
    let big_e = exp_c(t_a - piw - t_c);
    let one = c(ctx, 1.0);
    let ew = two_pi_i_times(w).exp();
    let first = Complex::with_val(prec, &one - &ew).recip();
    // e^{−2πw/z}
    let em = exp_c(-(Complex::with_val(prec, w * &zi) * &p * 2u32));
    let mut second = Complex::with_val(prec, &big_e / (Complex::with_val(prec, &one - em) * z));
    second.mul_i_mut(false);
    let t1 = Complex::with_val(prec, &om * &sz) * &e12 / qpoch_inf(&q1, ctx)? * (first - second);
    let mut iwz = Complex::with_val(prec, w * &zi);
    iwz.mul_i_mut(false);
    let mut t2 = Complex::with_val(prec, sz.recip_ref()) * &om * &e12 * &big_e * r2_w(&iwz, &q1, ctx)?;
    t2.mul_i_mut(false);
    let s = nu_sum(k, hp, ctx, |nu| {
        Ok(mordell_i_w(k as u32, nu, z, w, 1, ctx)? + mordell_i_w(k as u32, nu, z, w, -1, ctx)?)
    })?;
    let piz = Complex::with_val(prec, z * &p);
    let t3 = -(Complex::with_val(prec, &sz * &om) / k * exp_c(-piz / (12 * k)) * s);
    let rhs = t1 + t2 + t3;
    Ok(ResidualReport::new(
        Law::R2wModular,
        inputs(&[
            ("h", h.to_string()),
            ("k", k.to_string()),
            ("hprime", hp.to_string()),
            ("z", show(z)),
            ("w", show(w)),
        ]),
        lhs,
        rhs,
        default_tol(ctx),
        ctx,
    ))
}

pub fn verify_eta_inversion(z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_upper(z)?;
    let prec = ctx.prec();
    let minv = -Complex::with_val(prec, z.recip_ref());
    let lhs = eta(&minv, ctx)?;
    let mut miz = Complex::with_val(prec, z);
    miz.mul_i_mut(true);
    let rhs = sqrt_right_half(&miz)? * eta(z, ctx)?;
    Ok(ResidualReport::new(Law::EtaInversion, inputs(&[("z", show(z))]), lhs, rhs, default_tol(ctx), ctx))
}

/// E₂(−1/z) = z²E₂(z) + 6z/(πi).
pub fn verify_e2_inversion(z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_upper(z)?;
    let prec = ctx.prec();
    let minv = -Complex::with_val(prec, z.recip_ref());
    let lhs = e2(&minv, ctx)?;
    let z2 = Complex::with_val(prec, z.square_ref());
    let mut corr = Complex::with_val(prec, z * 6u32) / pi(ctx);
    corr.mul_i_mut(true);
    let rhs = z2 * e2(z, ctx)? + corr;
    Ok(ResidualReport::new(Law::E2Inversion, inputs(&[("z", show(z))]), lhs, rhs, default_tol(ctx), ctx))
}

/// ∫₀^∞ η(iu/24) (−i(iu+z))^{−3/2} du.
pub fn theta_correction_integral(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    require_upper(z)?;
    let prec = ctx.prec();
    let f = |u: &Float| -> Complex {
        let tau = Complex::with_val(prec, (0, Float::with_val(prec, u / 24u32)));
        let e = match eta(&tau, ctx) {
            Ok(v) => v,
            Err(_) => return Complex::new(prec),
        };
        // −i(iu + z) = u − iz
        let mut miz = Complex::with_val(prec, z);
        miz.mul_i_mut(true);
        let base = miz + u;
        let three_half = Float::with_val(prec, 1.5);
        match principal_pow(&base, &three_half) {
            Ok(b) => e / b,
            Err(_) => Complex::new(prec),
        }
    };
    let nats = (ctx.digits + ctx.guard) as f64 * std::f64::consts::LN_10 + 20.0;
    let upper = 288.0 * nats / std::f64::consts::PI;
    let zero = Float::new(prec);
    Ok(exp_sinh(f, &zero, upper, &ctx.tol(), ctx)?.value)
}

struct InversionPieces {
    s3: Complex,
    theta: Complex,
}

fn inversion_pieces(z: &Complex, ctx: &PrecisionContext) -> Result<InversionPieces> {
    let prec = ctx.prec();
    let mut miz = Complex::with_val(prec, z);
    miz.mul_i_mut(true);
    let s = sqrt_right_half(&miz)?;
    let s3 = Complex::with_val(prec, &s * Complex::with_val(prec, s.square_ref()));
    let theta = theta_correction_integral(z, ctx)?;
    Ok(InversionPieces { s3, theta })
}

fn sqrt_f(v: u32, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.prec(), v).sqrt()
}

/// (s³/(16√3π)) ∫₀^∞ η(iu/24)(−i(iu+z))^{−3/2} du, s = (−iz)^{1/2}.
fn theta_term(p: &InversionPieces, ctx: &PrecisionContext) -> Complex {
    let den = sqrt_f(3, ctx) * pi(ctx) * 16u32;
    Complex::with_val(ctx.prec(), &p.s3 * &p.theta) / den
}

/// s³/(48√6).
fn fricke_factor(p: &InversionPieces, ctx: &PrecisionContext) -> Complex {
    Complex::with_val(ctx.prec(), &p.s3 / (sqrt_f(6, ctx) * 48u32))
}

/// ℛ(−1/z) = (2√6/η(z/24))(−s/(32π) + s³/24³ + 1/(24s)) − (s³/(48√6)) ℛ(z/576)
///           + (s³/(16√3π)) ∫₀^∞ η(iu/24)(−i(iu+z))^{−3/2} du.
pub fn verify_r_inversion(z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_upper(z)?;
    let prec = ctx.prec();
    let pieces = inversion_pieces(z, ctx)?;
    let minv = -Complex::with_val(prec, z.recip_ref());
    let lhs = cal_r(&minv, ctx)?;
    let mut miz = Complex::with_val(prec, z);
    miz.mul_i_mut(true);
    let s = sqrt_right_half(&miz)?;
    let poly = -Complex::with_val(prec, &s / (pi(ctx) * 32u32)) + Complex::with_val(prec, &pieces.s3 / 13824u32)
        + Complex::with_val(prec, (s.clone() * 24u32).recip());
    let a = poly * sqrt_f(6, ctx) * 2u32 / eta(&Complex::with_val(prec, z / 24u32), ctx)?;
    let b = fricke_factor(&pieces, ctx) * cal_r(&Complex::with_val(prec, z / 576u32), ctx)?;
    let cc = theta_term(&pieces, ctx);
    let rhs = Complex::with_val(prec, &a - &b) + &cc;
    let mut rep = ResidualReport::new(Law::RInversion, inputs(&[("z", show(z))]), lhs.clone(), rhs, default_tol(ctx), ctx);
    let fitted = (lhs - a - cc) / b;
    rep.notes.push(format!("fitted coefficient of the s^3/(48 sqrt 6) R(z/576) term: {}", fmt_complex(&fitted, 15)));
    Ok(rep)
}

/// 𝒩(−1/z) = −(s³/(48√6)) 𝒩(z/576) + (s³/(16√3π)) ∫₀^∞ η(iu/24)(−i(iu+z))^{−3/2} du.
pub fn verify_nonholo_inversion(z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_upper(z)?;
    let prec = ctx.prec();
    let pieces = inversion_pieces(z, ctx)?;
    let minv = -Complex::with_val(prec, z.recip_ref());
    let lhs = nonholo_series(&minv, ctx)?;
    let b = fricke_factor(&pieces, ctx) * nonholo_series(&Complex::with_val(prec, z / 576u32), ctx)?;
    let rhs = theta_term(&pieces, ctx) - b;
    Ok(ResidualReport::new(Law::NonholoInversion, inputs(&[("z", show(z))]), lhs, rhs, default_tol(ctx), ctx))
}

/// ℳ(−1/z) = −((−iz)^{3/2}/(48√6)) ℳ(z/576); the theta integrals of ℛ and
/// 𝒩 cancel, so no quadrature enters either side.
pub fn verify_maass_inversion(z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_upper(z)?;
    let prec = ctx.prec();
    let mut miz = Complex::with_val(prec, z);
    miz.mul_i_mut(true);
    let s = sqrt_right_half(&miz)?;
    let s3 = Complex::with_val(prec, &s * Complex::with_val(prec, s.square_ref()));
    let minv = -Complex::with_val(prec, z.recip_ref());
    let lhs = maass_m(&minv, ctx)?;
    let rhs = -(s3 / (sqrt_f(6, ctx) * 48u32)) * maass_m(&Complex::with_val(prec, z / 576u32), ctx)?;
    let tol = pow10(-(ctx.digits as i32 - 15), prec);
    Ok(ResidualReport::new(Law::MaassInversion, inputs(&[("z", show(z))]), lhs, rhs, tol, ctx))
}

pub fn verify_maass_translation(z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_upper(z)?;
    let lhs = maass_m(&Complex::with_val(ctx.prec(), z + 1u32), ctx)?;
    let rhs = maass_m(z, ctx)?;
    Ok(ResidualReport::new(Law::MaassTranslation, inputs(&[("z", show(z))]), lhs, rhs, default_tol(ctx), ctx))
}

pub fn verify_nonholo_dual(z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_upper(z)?;
    let lhs = nonholo_integral(z, ctx)?;
    let rhs = nonholo_series(z, ctx)?;
    Ok(ResidualReport::new(Law::NonholoDual, inputs(&[("z", show(z))]), lhs, rhs, default_tol(ctx), ctx))
}

pub fn verify_nonholo_translation(z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_upper(z)?;
    let lhs = nonholo_integral(&Complex::with_val(ctx.prec(), z + 1u32), ctx)?;
    let rhs = nonholo_integral(z, ctx)?;
    Ok(ResidualReport::new(Law::NonholoTranslation, inputs(&[("z", show(z))]), lhs, rhs, default_tol(ctx), ctx))
}

/// L(w ↦ ℛ₂(w;q)) = R₂(q).
pub fn verify_l_consistency(q: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    let lhs = l_operator(|w| r2_w(w, q, ctx), ctx)?;
    let rhs = r2(q, ctx)?;
    let tol = pow10(-((ctx.digits / 2) as i32), ctx.prec());
    Ok(ResidualReport::new(Law::LConsistency, inputs(&[("q", show(q))]), lhs, rhs, tol, ctx))
}

/// Lᵒ(w ↦ ℛᵒ(q;w)) = R₂ᵒ(q).
pub fn verify_lo_consistency(q: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    let lhs = lo_operator(|w| r2_odd_w(q, w, ctx), ctx)?;
    let rhs = r2_odd(q, ctx)?;
    let tol = pow10(-((ctx.digits / 2) as i32 - 5), ctx.prec());
    Ok(ResidualReport::new(Law::LoConsistency, inputs(&[("q", show(q))]), lhs, rhs, tol, ctx))
}

/// |Δ_{3/2} ℳ(z)| at the given stencil radius; passes when below step².
pub fn verify_laplacian(z: &Complex, step: &Float, ctx: &PrecisionContext) -> Result<ResidualReport> {
    require_upper(z)?;
    if z.imag().to_f64() <= 4.0 * step.to_f64() {
        return Err(Error::InvalidArgument("need Im z > 4·step".into()));
    }
    let prec = ctx.prec();
    let value = laplacian_check(|p| maass_m(p, ctx), z, step, ctx)?;
    let tol = Float::with_val(prec, step.square_ref());
    let lhs = Complex::with_val(prec, (&value, 0));
    let mut rep = ResidualReport::new(
        Law::Laplacian,
        inputs(&[("z", show(z)), ("step", fmt_float(step, 6))]),
        lhs,
        Complex::new(prec),
        tol,
        ctx,
    );
    // the check is absolute: |Δ ℳ| itself must be small
    rep.pass = value < rep.tol;
    Ok(rep)
}

/// Which odd-case law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OddCase {
    KOdd,
    KEven,
}

/// The transformation laws of R₂ᵒ(q) (w = None) and ℛᵒ(q;w) (w given).
pub fn verify_odd_laws(
    case: OddCase,
    h: i64,
    k: i64,
    z: &Complex,
    w: Option<&Complex>,
    ctx: &PrecisionContext,
) -> Result<ResidualReport> {
    require_right(z)?;
    match case {
        OddCase::KOdd => {
            if k % 2 == 0 {
                return Err(Error::NoValidFrame(format!("k = {k} is even")));
            }
            let hp = solve_hprime(h, k, HPrimeConvention::Mod4KDivisibleBy4)
                .map_err(|e| Error::NoValidFrame(e.to_string()))?;
            match w {
                None => odd_k_odd(h, k, hp, z, ctx),
                Some(w) => odd_k_odd_w(h, k, hp, z, w, ctx),
            }
        }
        OddCase::KEven => {
            if k % 2 == 1 {
                return Err(Error::NoValidFrame(format!("k = {k} is odd")));
            }
            let hp = solve_hprime(h, k, HPrimeConvention::Mod4K).map_err(|e| Error::NoValidFrame(e.to_string()))?;
            match w {
                None => odd_k_even(h, k, hp, z, ctx),
                Some(w) => odd_k_even_w(h, k, hp, z, w, ctx),
            }
        }
    }
}

fn zpow(z: &Complex, e: f64, ctx: &PrecisionContext) -> Result<Complex> {
    principal_pow(z, &Float::with_val(ctx.prec(), e))
}

fn frame_inputs(h: i64, k: i64, hp: i64, z: &Complex, w: Option<&Complex>) -> BTreeMap<String, String> {
    let mut m = inputs(&[("h", h.to_string()), ("k", k.to_string()), ("hprime", hp.to_string()), ("z", show(z))]);
    if let Some(w) = w {
        m.insert("w".into(), show(w));
    }
    m
}

/// e^{π/(24kz) − 2πz/(3k)}.
fn odd_real_exp(z: &Complex, k: i64, ctx: &PrecisionContext) -> Complex {
    let prec = ctx.prec();
    let p = pi(ctx);
    let zi = Complex::with_val(prec, z.recip_ref());
    let a = Complex::with_val(prec, &zi * &p) / (24 * k);
    let b = Complex::with_val(prec, z * &p) * 2u32 / (3 * k);
    exp_c(a - b)
}

/// e^{−2πz/(3k)}.
fn exp_m2piz_3k(z: &Complex, k: i64, ctx: &PrecisionContext) -> Complex {
    let p = pi(ctx);
    exp_c(-(Complex::with_val(ctx.prec(), z * &p) * 2u32 / (3 * k)))
}

fn odd_k_odd(h: i64, k: i64, hp: i64, z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    let prec = ctx.prec();
    let p = pi(ctx);
    let q = frame_q(h, k, z, ctx);
    let q1h = frame_q1(hp, 2 * k, z, ctx);
    let lhs = r2_odd(&q, ctx)?;
    let om = omega(2 * h, k, ctx)?;
    let sqrt2 = sqrt_f(2, ctx);
    let phase = exp_pi_i_rational(&(Rational::from((h, 2 * k)) + Rational::from((k + 1 + 3 * h * k, 2))), prec);
    let z32 = zpow(z, 1.5, ctx)?;
    let z52 = zpow(z, 2.5, ctx)?;
    let g = g_odd(&q1h, ctx)? * (3 * k) / (Complex::with_val(prec, &z32 * &p) * 8u32);
    let hh = h_odd(&q1h, ctx)? / (z52 * 16u32);
    let t1 = -(Complex::with_val(prec, &om * &phase) * odd_real_exp(z, k, ctx) / &sqrt2) * (-g - hh);
    let terms: Result<Vec<Complex>> = (0..k)
        .into_par_iter()
        .flat_map_iter(|nu| [(nu, 1i64), (nu, -1i64)])
        .map(|(nu, s)| {
            let r = Rational::from((hp * (-3 * nu * nu + nu) - 2 * s * nu, 2 * k)) + Rational::from((s, 6 * k));
            let kind = if s == 1 { OddKind::IPlus } else { OddKind::IMinus };
            Ok(exp_pi_i_rational(&r, prec) * mordell_odd(kind, k as u32, nu, z, ctx)? * s)
        })
        .collect();
    let mut sum = Complex::new(prec);
    for t in terms? {
        sum += t;
    }
    let phase2 = exp_pi_i_rational(&(Rational::from((k * (3 * h + 1), 2)) + Rational::from((h, 2 * k))), prec);
    let sz = sqrt_right_half(z)?;
    let t2 = -(phase2 * exp_m2piz_3k(z, k, ctx) * &om * sz * sum / (Float::with_val(prec, &sqrt2 * 8u32) * k));
    Ok(ResidualReport::new(Law::OddKOdd, frame_inputs(h, k, hp, z, None), lhs, t1 + t2, default_tol(ctx), ctx))
}

fn odd_k_even(h: i64, k: i64, hp: i64, z: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    let prec = ctx.prec();
    let p = pi(ctx);
    let q = frame_q(h, k, z, ctx);
    let q1 = frame_q1(hp, k, z, ctx);
    let lhs = r2_odd(&q, ctx)?;
    let om = omega(h, k / 2, ctx)?;
    let z32 = zpow(z, 1.5, ctx)?;
    let z52 = zpow(z, 2.5, ctx)?;
    let zi = Complex::with_val(prec, z.recip_ref());
    // e^{−2πz/(3k) − 10π/(3kz)} · e^{πi(−h′/2 + (h+7h′)/(2k))}
    let ex = exp_c(-(Complex::with_val(prec, z * &p) * 2u32 / (3 * k)) - Complex::with_val(prec, &zi * &p) * 10u32 / (3 * k));
    let phase = exp_pi_i_rational(&(Rational::from((-hp, 2)) + Rational::from((h + 7 * hp, 2 * k))), prec);
    let m = m_odd(&q1, ctx)? * (3 * k) / (Complex::with_val(prec, &z32 * &p) * 8u32);
    let q1m2 = Complex::with_val(prec, q1.square_ref()).recip();
    let r = q1m2 * r2_odd(&q1, ctx)? / z52;
    let t1 = ex * phase * &om * (-m - r);
    let half = k / 2;
    let terms: Result<Vec<Complex>> = (0..half)
        .into_par_iter()
        .flat_map_iter(|nu| [(nu, 1i64), (nu, -1i64)])
        .map(|(nu, s)| {
            let r = Rational::from((hp * (-6 * nu - 6 * nu * nu + 2 * s * nu + s), k))
                - Rational::from((2 * nu, k))
                + Rational::from((s, 3 * k));
            let kind = if s == 1 { OddKind::JPlus } else { OddKind::JMinus };
            let sign = if nu % 2 == 0 { 1 } else { -1 };
            Ok(exp_pi_i_rational(&r, prec) * mordell_odd(kind, k as u32, nu, z, ctx)? * sign)
        })
        .collect();
    let mut sum = Complex::new(prec);
    for t in terms? {
        sum += t;
    }
    let sign = if ((1 + hp) / 2) % 2 == 0 { 1 } else { -1 };
    let phase2 = exp_pi_i_rational(&(Rational::from((h - 3 * hp, 2 * k)) - Rational::from((1, k))), prec);
    let sz = sqrt_right_half(z)?;
    let t2 = phase2 * exp_m2piz_3k(z, k, ctx) * &om * sz * sum * sign / (8 * k);
    Ok(ResidualReport::new(Law::OddKEven, frame_inputs(h, k, hp, z, None), lhs, t1 + t2, default_tol(ctx), ctx))
}

fn odd_k_odd_w(h: i64, k: i64, hp: i64, z: &Complex, w: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    let prec = ctx.prec();
    let p = pi(ctx);
    let q = frame_q(h, k, z, ctx);
    let q1h = frame_q1(hp, 2 * k, z, ctx);
    let lhs = r2_odd_w(&q, w, ctx)?;
    let om = omega(2 * h, k, ctx)?;
    let sqrt2 = sqrt_f(2, ctx);
    let sz = sqrt_right_half(z)?;
    let zi = Complex::with_val(prec, z.recip_ref());
    let phase = exp_pi_i_rational(&(Rational::from((h, 2 * k)) + Rational::from((k + 1 + 3 * h * k, 2))), prec);
    // e^{2πiw + 3πkw²/(2z) − πw/(2z)}
    let w2 = Complex::with_val(prec, w.square_ref());
    let wexp = two_pi_i_times(w) + Complex::with_val(prec, &w2 * &zi) * &p * (3 * k) / 2u32
        - Complex::with_val(prec, w * &zi) * &p / 2u32;
    let mut iwz = Complex::with_val(prec, w * &zi);
    iwz.mul_i_mut(false);
    let t1 = -(Complex::with_val(prec, sz.recip_ref()) * &om * phase * odd_real_exp(z, k, ctx) * exp_c(wexp)
        * h_odd_w(&q1h, &iwz, ctx)?
        / &sqrt2);
    let terms: Result<Vec<Complex>> = (0..k)
        .into_par_iter()
        .flat_map_iter(|nu| [(nu, 1i64), (nu, -1i64)])
        .map(|(nu, s)| {
            let r = Rational::from((hp * (-3 * nu * nu + nu) - 6 * s * nu + s, 2 * k));
            let kind = if s == 1 { OddKind::IPlus } else { OddKind::IMinus };
            Ok(exp_pi_i_rational(&r, prec) * mordell_odd_w(kind, k as u32, nu, z, w, ctx)? * s)
        })
        .collect();
    let mut sum = Complex::new(prec);
    for t in terms? {
        sum += t;
    }
    let phase2 = exp_pi_i_rational(&(Rational::from((k * (3 * h + 1), 2)) + Rational::from((h, 2 * k))), prec);
    let mut piw = Complex::with_val(prec, w * &p);
    piw.mul_i_mut(true);
    let t2 = -(phase2 * &om * sz * exp_c(piw) * exp_m2piz_3k(z, k, ctx) * sum / (Float::with_val(prec, &sqrt2 * k)));
    Ok(ResidualReport::new(Law::OddKOddW, frame_inputs(h, k, hp, z, Some(w)), lhs, t1 + t2, default_tol(ctx), ctx))
}

fn odd_k_even_w(h: i64, k: i64, hp: i64, z: &Complex, w: &Complex, ctx: &PrecisionContext) -> Result<ResidualReport> {
    let prec = ctx.prec();
    let p = pi(ctx);
    let q = frame_q(h, k, z, ctx);
    let q1 = frame_q1(hp, k, z, ctx);
    let lhs = r2_odd_w(&q, w, ctx)?;
    let om = omega(h, k / 2, ctx)?;
    let sz = sqrt_right_half(z)?;
    let zi = Complex::with_val(prec, z.recip_ref());
    let ex = exp_c(-(Complex::with_val(prec, z * &p) * 2u32 / (3 * k)) - Complex::with_val(prec, &zi * &p) * 10u32 / (3 * k));
    let phase = exp_pi_i_rational(&(Rational::from((-hp, 2)) + Rational::from((h + 7 * hp, 2 * k))), prec);
    // e^{2πiw + 3πkw²/(2z) − 2πw/z}
    let w2 = Complex::with_val(prec, w.square_ref());
    let wexp = two_pi_i_times(w) + Complex::with_val(prec, &w2 * &zi) * &p * (3 * k) / 2u32
        - Complex::with_val(prec, w * &zi) * &p * 2u32;
    let mut iwz = Complex::with_val(prec, w * &zi);
    iwz.mul_i_mut(false);
    let t1 = Complex::with_val(prec, sz.recip_ref()) * ex * phase * exp_c(wexp) * &om * l_odd_w(&q1, &iwz, ctx)?;
    let half = k / 2;
    let terms: Result<Vec<Complex>> = (0..half)
        .into_par_iter()
        .flat_map_iter(|nu| [(nu, 1i64), (nu, -1i64)])
        .map(|(nu, s)| {
            let r = Rational::from((hp * (-12 * nu - 12 * nu * nu + 4 * s * nu + 2 * s) - 12 * nu + 2 * s, 2 * k));
            let kind = if s == 1 { OddKind::JPlus } else { OddKind::JMinus };
            let sign = if nu % 2 == 0 { 1 } else { -1 };
            Ok(exp_pi_i_rational(&r, prec) * mordell_odd_w(kind, k as u32, nu, z, w, ctx)? * sign)
        })
        .collect();
    let mut sum = Complex::new(prec);
    for t in terms? {
        sum += t;
    }
    let sign = if ((1 + hp) / 2) % 2 == 0 { 1 } else { -1 };
    let phase2 = exp_pi_i_rational(&Rational::from((h - 3 * hp - 6, 2 * k)), prec);
    let mut piw = Complex::with_val(prec, w * &p);
    piw.mul_i_mut(true);
    let t2 = phase2 * exp_c(piw) * exp_m2piz_3k(z, k, ctx) * &om * sz * sum * sign / k;
    Ok(ResidualReport::new(Law::OddKEvenW, frame_inputs(h, k, hp, z, Some(w)), lhs, t1 + t2, default_tol(ctx), ctx))
}

/// One entry of the fixed verification suite.
#[derive(Debug, Clone)]
pub struct SuiteCase {
    pub law: Law,
    pub h: i64,
    pub k: i64,
    pub z: (f64, f64),
    pub w: Option<(f64, f64)>,
    pub step: Option<f64>,
}

impl SuiteCase {
    fn new(law: Law, h: i64, k: i64, z: (f64, f64)) -> Self {
        SuiteCase { law, h, k, z, w: None, step: None }
    }

    fn with_w(mut self, w: (f64, f64)) -> Self {
        self.w = Some(w);
        self
    }
}

/// The frozen frame set run by the verification suite.
pub fn default_suite() -> Vec<SuiteCase> {
    let mut out = Vec::new();
    for (h, k) in [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4)] {
        for z in [(1.0, 0.0), (0.8, 0.0), (1.1, 0.2)] {
            out.push(SuiteCase::new(Law::R2Modular, h, k, z));
        }
    }
    for (h, k, z) in [(0, 1, (1.0, 0.0)), (1, 3, (0.8, 0.0))] {
        for w in [(0.05, 0.02), (0.01, 0.03)] {
            out.push(SuiteCase::new(Law::R2wModular, h, k, z).with_w(w));
        }
    }
    out.push(SuiteCase::new(Law::LConsistency, 0, 1, (0.15, 0.0)));
    out.push(SuiteCase::new(Law::LoConsistency, 0, 1, (0.1, 0.0)));
    for z in [(0.0, 1.0), (0.0, 2.0), (1.0 / 3.0, 1.0)] {
        out.push(SuiteCase::new(Law::EtaInversion, 0, 1, z));
        out.push(SuiteCase::new(Law::E2Inversion, 0, 1, z));
    }
    for z in [(0.0, 0.25), (1.0 / 7.0, 0.2), (0.3, 0.8), (-0.25, 0.5), (0.45, 0.35)] {
        out.push(SuiteCase::new(Law::NonholoDual, 0, 1, z));
    }
    out.push(SuiteCase::new(Law::NonholoTranslation, 0, 1, (0.3, 0.8)));
    for z in [(0.3, 0.8), (-0.1, 1.2)] {
        out.push(SuiteCase::new(Law::MaassTranslation, 0, 1, z));
    }
    for z in [(0.0, 1.0), (0.2, 1.1)] {
        out.push(SuiteCase::new(Law::MaassInversion, 0, 1, z));
        out.push(SuiteCase::new(Law::RInversion, 0, 1, z));
        out.push(SuiteCase::new(Law::NonholoInversion, 0, 1, z));
    }
    out.push(SuiteCase { step: Some(1e-3), ..SuiteCase::new(Law::Laplacian, 0, 1, (0.1, 0.9)) });
    out.push(SuiteCase::new(Law::OddKOdd, 0, 1, (1.0, 0.0)));
    out.push(SuiteCase::new(Law::OddKOdd, 1, 3, (1.0, 0.0)));
    out.push(SuiteCase::new(Law::OddKEven, 1, 2, (0.9, 0.0)));
    out.push(SuiteCase::new(Law::OddKEven, 1, 4, (1.0, 0.0)));
    out.push(SuiteCase::new(Law::OddKOddW, 0, 1, (1.0, 0.0)).with_w((0.05, 0.02)));
    out.push(SuiteCase::new(Law::OddKEvenW, 1, 2, (0.9, 0.0)).with_w((0.05, 0.02)));
    out
}

/// Runs one case; the point is z except for the consistency laws, where
/// it is q.
pub fn run_case(case: &SuiteCase, ctx: &PrecisionContext) -> Result<ResidualReport> {
    let prec = ctx.prec();
    let z = Complex::with_val(prec, case.z);
    let w = case.w.map(|w| Complex::with_val(prec, w));
    let need_w = || w.clone().ok_or_else(|| Error::InvalidArgument("law needs w".into()));
    match case.law {
        Law::R2Modular => verify_r2_modular(case.h, case.k, &z, ctx),
        Law::R2wModular => verify_r2w_modular(case.h, case.k, &z, &need_w()?, ctx),
        Law::RInversion => verify_r_inversion(&z, ctx),
        Law::NonholoInversion => verify_nonholo_inversion(&z, ctx),
        Law::MaassInversion => verify_maass_inversion(&z, ctx),
        Law::MaassTranslation => verify_maass_translation(&z, ctx),
        Law::NonholoDual => verify_nonholo_dual(&z, ctx),
        Law::NonholoTranslation => verify_nonholo_translation(&z, ctx),
        Law::EtaInversion => verify_eta_inversion(&z, ctx),
        Law::E2Inversion => verify_e2_inversion(&z, ctx),
        Law::OddKOdd => verify_odd_laws(OddCase::KOdd, case.h, case.k, &z, None, ctx),
        Law::OddKEven => verify_odd_laws(OddCase::KEven, case.h, case.k, &z, None, ctx),
        Law::OddKOddW => verify_odd_laws(OddCase::KOdd, case.h, case.k, &z, Some(&need_w()?), ctx),
        Law::OddKEvenW => verify_odd_laws(OddCase::KEven, case.h, case.k, &z, Some(&need_w()?), ctx),
        Law::LConsistency => verify_l_consistency(&z, ctx),
        Law::LoConsistency => verify_lo_consistency(&z, ctx),
        Law::Laplacian => {
            let step = Float::with_val(prec, case.step.unwrap_or(1e-3));
            verify_laplacian(&z, &step, ctx)
        }
    }
}

/// Runs the suite, cases in parallel, reports in suite order.
pub fn run_suite(cases: &[SuiteCase], ctx: &PrecisionContext) -> Vec<(SuiteCase, Result<ResidualReport>)> {
    cases.par_iter().map(|c| (c.clone(), run_case(c, ctx))).collect()
}
