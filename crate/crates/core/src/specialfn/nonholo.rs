//! The non-holomorphic function 𝒩(z) as a theta integral and as an
//! incomplete-Gamma series.

use rug::ops::Pow;
use rug::float::Constant;
use rug::{Complex, Float};

use super::gamma::incomplete_gamma_upper_neg_half;
use super::precision::two_pi_i_times;
use super::quadrature::exp_sinh;
use crate::transforms::eval::eta;
use crate::{Error, PrecisionContext, Result};

fn require_upper(z: &Complex) -> Result<()> {
    if z.imag().is_sign_negative() || z.imag().is_zero() {
        return Err(Error::InvalidArgument("z must lie in the upper half-plane".into()));
    }
    Ok(())
}

/// 𝒩(z) = (1/(4√2 π)) ∫₀^∞ η(24(−x + i(y+t))) / (2y+t)^{3/2} dt, z = x+iy.
///
/// This is the integral of η(24τ)(−i(τ+z))^{−3/2} along τ = −z̄ + it, whose
/// base −i(τ+z) = 2y + t stays on the positive real axis.
pub fn nonholo_integral(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    require_upper(z)?;
    let prec = ctx.prec();
    let x = Float::with_val(prec, z.real());
    let y = Float::with_val(prec, z.imag());
    let two_y = Float::with_val(prec, &y * 2u32);
    let f = |t: &Float| -> Complex {
        let im = Float::with_val(prec, &y + t) * 24u32;
        let re = Float::with_val(prec, -&x) * 24u32;
        let tau = Complex::with_val(prec, (re, im));
        let base = Float::with_val(prec, &two_y + t);
        let e = eta(&tau, ctx).unwrap_or_else(|_| Complex::new(prec));
        e / base.pow(1.5f64)
    };
    let upper = ((ctx.digits + ctx.guard) as f64 * std::f64::consts::LN_10 + 20.0) / (2.0 * std::f64::consts::PI);
    let zero = Float::new(prec);
    let r = exp_sinh(f, &zero, upper, &ctx.tol(), ctx)?;
    let pi = Float::with_val(prec, Constant::Pi);
    let c = Float::with_val(prec, 2u32).sqrt() * pi * 4u32;
    Ok(r.value / c)
}

/// 𝒩(z) = (1/(4√π)) Σ_{k∈ℤ} (−1)^k |6k+1| Γ(−1/2; 4π(6k+1)²y) q^{−(6k+1)²}.
///
/// The weight is |6k+1|: integrating the theta integral term by term gives
/// √(2π)|a| e^{4πa²y} Γ(−1/2; 4πa²y) for the q^{a²} term of η(24τ).
pub fn nonholo_series(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    require_upper(z)?;
    let prec = ctx.prec();
    let y = Float::with_val(prec, z.imag());
    let yf = y.to_f64();
    let pi = Float::with_val(prec, Constant::Pi);
    let limit = (ctx.digits + ctx.guard) as f64 * std::f64::consts::LN_10 + 20.0;
    let mut sum = Complex::new(prec);
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in [k, -k - 1] {
            let a = 6 * kk + 1;
            let a2 = (a * a) as f64;
            // |term| ≈ e^{−2π a² y}
            if 2.0 * std::f64::consts::PI * a2 * yf > limit {
                continue;
            }
            any = true;
            let arg = Float::with_val(prec, &pi * &y) * (4 * a * a);
            let g = incomplete_gamma_upper_neg_half(&arg, ctx)?;
            let qpow = two_pi_i_times(&Complex::with_val(prec, z * (-(a * a)))).exp();
            let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
            sum += qpow * g * (sign * a.abs());
        }
        if !any {
            break;
        }
        k += 1;
    }
    let c = Float::with_val(prec, pi.sqrt_ref()) * 4u32;
    Ok(sum / c)
}
