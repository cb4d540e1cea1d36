//! The upper incomplete Gamma function at parameter −1/2.

use rug::ops::Pow;
use rug::float::Constant;
use rug::{Complex, Float};

use super::quadrature::exp_sinh;
use crate::{Error, PrecisionContext, Result};

/// Γ(−1/2; x) = 2(x^{−1/2}e^{−x} − √π erfc(√x)).
pub fn incomplete_gamma_upper_neg_half(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *x <= 0 {
        return Err(Error::InvalidArgument("incomplete Gamma needs x > 0".into()));
    }
    // the two terms cancel to relative size ~1/(2x)
    let extra = (x.to_f64().max(1.0) * 4.0).log2().ceil() as u32 + 16;
    let prec = ctx.prec() + extra;
    let x = Float::with_val(prec, x);
    let sx = Float::with_val(prec, x.sqrt_ref());
    let a = Float::with_val(prec, (-x.clone()).exp()) / &sx;
    let b = Float::with_val(prec, Constant::Pi).sqrt() * sx.erfc();
    Ok(Float::with_val(ctx.prec(), (a - b) * 2u32))
}

/// Γ(−1/2; x) as ∫_x^∞ e^{−t} t^{−3/2} dt by exp-sinh quadrature.
pub fn incomplete_gamma_upper_neg_half_quadrature(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *x <= 0 {
        return Err(Error::InvalidArgument("incomplete Gamma needs x > 0".into()));
    }
    let prec = ctx.prec();
    let x0 = Float::with_val(prec, x);
    let f = |u: &Float| {
        let t = Float::with_val(prec, u + &x0);
        let v = Float::with_val(prec, (-t.clone()).exp()) / t.clone().pow(1.5f64);
        Complex::with_val(prec, v)
    };
    let upper = ctx.digits as f64 * std::f64::consts::LN_10 + 60.0;
    let zero = Float::new(prec);
    // relative accuracy: scale the tolerance by the size of the answer
    let scale = Float::with_val(prec, (-x0.clone()).exp()) / x0.clone().pow(1.5f64);
    let tol = ctx.tol() * scale.min(&Float::with_val(prec, 1u32));
    let r = exp_sinh(f, &zero, upper, &tol, ctx)?;
    Ok(Float::with_val(prec, r.value.real()))
}

/// Both evaluation paths, failing when they disagree beyond 10^{−(digits−5)}
/// relative.
pub fn incomplete_gamma_upper_neg_half_checked(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let a = incomplete_gamma_upper_neg_half(x, ctx)?;
    let b = incomplete_gamma_upper_neg_half_quadrature(x, ctx)?;
    let diff = Float::with_val(ctx.prec(), &a - &b).abs();
    let limit = Float::with_val(ctx.prec(), a.abs_ref()) * ctx.raised(0).tol() * 100000u32;
    if diff > limit {
        return Err(Error::QuadratureDisagreement(format!(
            "incomplete Gamma paths differ by {}",
            diff.to_string_radix(10, Some(6))
        )));
    }
    Ok(a)
}
