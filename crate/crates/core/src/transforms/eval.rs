//! Numerical evaluation of η, E₂, the rank moment generating functions and
//! their w-deformations, and the completed function ℳ.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::specialfn::nonholo::nonholo_series;
use crate::specialfn::precision::{cabs, sqrt_right_half, two_pi_i_times};
use crate::{Error, PrecisionContext, Result};

/// |q| above which direct summation is refused.
const MAX_ABS_Q: f64 = 0.99;

fn decay_rate(q: &Complex) -> Result<f64> {
    let a = cabs(q).to_f64();
    if a >= MAX_ABS_Q {
        return Err(Error::SlowConvergence(format!("{a}")));
    }
    Ok(if a == 0.0 { f64::INFINITY } else { -a.ln() })
}

fn limit_nats(ctx: &PrecisionContext) -> f64 {
    (ctx.digits + ctx.guard) as f64 * std::f64::consts::LN_10 + 20.0
}

fn qpow(q: &Complex, e: i64) -> Complex {
    q.clone().pow(e as i32)
}

/// Σ_{n∈ℤ} term(n), where |term(n)| ≲ |q|^{lead(n)} with `lead` eventually
/// increasing in |n|.
fn bilateral<L, T>(q: &Complex, ctx: &PrecisionContext, lead: L, term: T) -> Result<Complex>
where
    L: Fn(i64) -> f64,
    T: Fn(i64) -> Result<Complex>,
{
    let rate = decay_rate(q)?;
    let limit = limit_nats(ctx);
    let mut sum = Complex::new(ctx.prec());
    if rate.is_infinite() {
        for n in -1..=1 {
            if lead(n) <= 0.0 {
                sum += term(n)?;
            }
        }
        return Ok(sum);
    }
    sum += term(0)?;
    let mut n = 1i64;
    loop {
        let mut live = false;
        for m in [n, -n] {
            if lead(m) * rate <= limit {
                live = true;
                sum += term(m)?;
            }
        }
        if !live && n > 4 {
            break;
        }
        n += 1;
        if n > 1_000_000 {
            return Err(Error::NonconvergentSeries(1_000_000));
        }
    }
    Ok(sum)
}

/// (q;q)_∞ via the pentagonal number theorem.
pub fn qpoch_inf(q: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    bilateral(
        q,
        ctx,
        |k| (k * (3 * k - 1) / 2) as f64,
        |k| {
            let t = qpow(q, k * (3 * k - 1) / 2);
            Ok(if k % 2 == 0 { t } else { -t })
        },
    )
}

/// Dedekind η(z), reduced towards the fundamental domain by z ↦ z + 1 and
/// z ↦ −1/z before summing.
pub fn eta(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if z.imag().is_sign_negative() || z.imag().is_zero() {
        return Err(Error::InvalidArgument("η needs Im z > 0".into()));
    }
    let prec = ctx.prec();
    let mut z = Complex::with_val(prec, z);
    let mut factor = Complex::with_val(prec, 1);
    for _ in 0..200 {
        if z.imag().to_f64() >= 0.5 || z.imag().is_infinite() {
            let q = two_pi_i_times(&z).exp();
            let pre = Complex::with_val(prec, &z / 24u32);
            let pre = two_pi_i_times(&pre).exp();
            return Ok(factor * pre * qpoch_inf(&q, ctx)?);
        }
        let m = Float::with_val(prec, z.real().round_ref());
        z -= &m;
        let shift = Complex::with_val(prec, (0, Float::with_val(prec, Constant::Pi) * &m / 12u32));
        factor *= shift.exp();
        let mut miz = z.clone();
        miz.mul_i_mut(true);
        factor /= sqrt_right_half(&miz)?;
        z = -z.recip();
    }
    Err(Error::NonconvergentSeries(200))
}

/// E₂(z) = 1 − 24 Σ n qⁿ/(1 − qⁿ).
pub fn e2(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if z.imag().is_sign_negative() || z.imag().is_zero() {
        return Err(Error::InvalidArgument("E₂ needs Im z > 0".into()));
    }
    let prec = ctx.prec();
    let q = two_pi_i_times(z).exp();
    let rate = decay_rate(&q)?;
    let limit = limit_nats(ctx);
    let mut sum = Complex::new(prec);
    let mut qn = Complex::with_val(prec, 1);
    let mut n = 1u64;
    while (n as f64) * rate <= limit + (n as f64).ln() {
        qn *= &q;
        let den = Complex::with_val(prec, 1) - &qn;
        sum += Complex::with_val(prec, &qn * n) / den;
        n += 1;
    }
    Ok(Complex::with_val(prec, 1) - sum * 24u32)
}

/// R₂(q) = (1/(q;q)_∞) Σ_{n≠0} (−1)^{n+1} q^{3n(n+1)/2}/(1 − qⁿ)².
pub fn r2(q: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let one = Complex::with_val(prec, 1);
    let s = bilateral(
        q,
        ctx,
        |n| {
            let m = n.abs();
            if n >= 0 { (3 * m * (m + 1) / 2) as f64 } else { (3 * m * (m - 1) / 2 + 2 * m) as f64 }
        },
        |n| {
            if n == 0 {
                return Ok(Complex::new(prec));
            }
            let m = n.abs();
            let sign = if m % 2 == 1 { 1 } else { -1 };
            let (e, d) = if n > 0 { (3 * m * (m + 1) / 2, m) } else { (3 * m * (m - 1) / 2 + 2 * m, m) };
            let den = Complex::with_val(prec, &one - qpow(q, d)).square();
            Ok(qpow(q, e) / den * sign)
        },
    )?;
    Ok(s / qpoch_inf(q, ctx)?)
}

fn pole_guard(den: &Complex, n: i64, ctx: &PrecisionContext) -> Result<()> {
    let d = cabs(den);
    let floor = Float::with_val(ctx.prec(), 10).pow(-((ctx.digits / 4) as i32));
    if d < floor {
        return Err(Error::PoleProximity { n, dist: d.to_string_radix(10, Some(6)) });
    }
    Ok(())
}

/// ℛ₂(w;q) = −(1/(q;q)_∞) Σ_{n≠0} (−1)ⁿ q^{n(3n+1)/2}/(1 − e^{2πiw}qⁿ).
pub fn r2_w(w: &Complex, q: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let zeta = two_pi_i_times(&Complex::with_val(prec, w)).exp();
    let s = bilateral(
        q,
        ctx,
        |n| {
            let m = n.abs();
            (m * (3 * m + 1) / 2) as f64
        },
        |n| {
            if n == 0 {
                return Ok(Complex::new(prec));
            }
            let m = n.abs();
            let sign = if m % 2 == 0 { 1 } else { -1 };
            if n > 0 {
                let den = Complex::with_val(prec, 1) - Complex::with_val(prec, &zeta * qpow(q, m));
                pole_guard(&den, n, ctx)?;
                Ok(qpow(q, m * (3 * m + 1) / 2) / den * sign)
            } else {
                // q^{m(3m−1)/2}/(1 − ζq^{−m}) = q^{m(3m+1)/2}/(q^m − ζ)
                let den = Complex::with_val(prec, qpow(q, m) - &zeta);
                pole_guard(&den, n, ctx)?;
                Ok(qpow(q, m * (3 * m + 1) / 2) / den * sign)
            }
        },
    )?;
    Ok(-s / qpoch_inf(q, ctx)?)
}

/// ℛ(z) = R₂(q²⁴) q⁻¹ with q = e^{2πiz}.
pub fn cal_r(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let q24 = two_pi_i_times(&Complex::with_val(prec, z * 24u32)).exp();
    let qinv = two_pi_i_times(&Complex::with_val(prec, -z)).exp();
    Ok(r2(&q24, ctx)? * qinv)
}

/// The holomorphic part ℛ(z) − 1/(24η(24z)) + E₂(24z)/(8η(24z)).
pub fn maass_holomorphic(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let z24 = Complex::with_val(prec, z * 24u32);
    let e = eta(&z24, ctx)?;
    let e2v = e2(&z24, ctx)?;
    let corr = (e2v / 8u32 - Complex::with_val(prec, 1) / 24u32) / e;
    Ok(cal_r(z, ctx)? + corr)
}

/// ℳ(z) = ℛ(z) − 𝒩(z) − 1/(24η(24z)) + E₂(24z)/(8η(24z)).
pub fn maass_m(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    Ok(maass_holomorphic(z, ctx)? - nonholo_series(z, ctx)?)
}

/// ℛᵒ(q;w) = (1/(q²;q²)_∞) Σ (−1)ⁿ q^{3n²+n}/(1 − e^{2πiw}q^{2n+1}).
pub fn r2_odd_w(q: &Complex, w: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let zeta = two_pi_i_times(&Complex::with_val(prec, w)).exp();
    let s = bilateral(
        q,
        ctx,
        |n| {
            let m = n.abs();
            if n >= 0 { (3 * m * m + m) as f64 } else { (3 * m * m + m - 1) as f64 }
        },
        |n| {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            if n >= 0 {
                let den = Complex::with_val(prec, 1) - Complex::with_val(prec, &zeta * qpow(q, 2 * n + 1));
                pole_guard(&den, n, ctx)?;
                Ok(qpow(q, 3 * n * n + n) / den * sign)
            } else {
                let m = -n;
                let d = 2 * m - 1;
                let den = Complex::with_val(prec, qpow(q, d) - &zeta);
                pole_guard(&den, n, ctx)?;
                Ok(qpow(q, 3 * m * m - m + d) / den * sign)
            }
        },
    )?;
    let q2 = Complex::with_val(prec, q.square_ref());
    Ok(s / qpoch_inf(&q2, ctx)?)
}

/// R₂ᵒ(q) = (1/(q²;q²)_∞) Σ (−1)ⁿ q^{3n²+5n+2}/(1 − q^{2n+1})³.
pub fn r2_odd(q: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let one = Complex::with_val(prec, 1);
    let s = bilateral(
        q,
        ctx,
        |n| {
            let m = n.abs();
            if n >= 0 { (3 * m * m + 5 * m + 2) as f64 } else { (3 * m * m - 5 * m + 2 + 3 * (2 * m - 1)) as f64 }
        },
        |n| {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            if n >= 0 {
                let den = Complex::with_val(prec, &one - qpow(q, 2 * n + 1)).pow(3);
                Ok(qpow(q, 3 * n * n + 5 * n + 2) / den * sign)
            } else {
                let m = -n;
                let d = 2 * m - 1;
                let den = Complex::with_val(prec, &one - qpow(q, d)).pow(3);
                Ok(qpow(q, 3 * m * m - 5 * m + 2 + 3 * d) / den * -sign)
            }
        },
    )?;
    let q2 = Complex::with_val(prec, q.square_ref());
    Ok(s / qpoch_inf(&q2, ctx)?)
}

/// hᵒ(q;w) = (1/(q;q)_∞) Σ (−1)^m q^{(3m²+m)/2}/(1 + e^{πiw}q^m).
pub fn h_odd_w(q: &Complex, w: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let half = Complex::with_val(prec, w / 2u32);
    let zeta = two_pi_i_times(&half).exp();
    let s = bilateral(
        q,
        ctx,
        |n| {
            let m = n.abs();
            ((3 * m * m + m) / 2) as f64
        },
        |n| {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            let m = n.abs();
            let e = (3 * m * m + m) / 2;
            let den = if n >= 0 {
                Complex::with_val(prec, 1) + Complex::with_val(prec, &zeta * qpow(q, m))
            } else {
                Complex::with_val(prec, qpow(q, m) + &zeta)
            };
            pole_guard(&den, n, ctx)?;
            Ok(qpow(q, e) / den * sign)
        },
    )?;
    Ok(s / qpoch_inf(q, ctx)?)
}

/// lᵒ(q;w) = (1/(q²;q²)_∞) Σ (−1)^m q^{3m²+5m}/(1 − e^{2πiw}q^{2m+1}).
pub fn l_odd_w(q: &Complex, w: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let zeta = two_pi_i_times(&Complex::with_val(prec, w)).exp();
    let s = bilateral(
        q,
        ctx,
        |n| {
            let m = n.abs();
            if n >= 0 { (3 * m * m + 5 * m) as f64 } else { (3 * m * m - 3 * m - 1) as f64 }
        },
        |n| {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            if n >= 0 {
                let den = Complex::with_val(prec, 1) - Complex::with_val(prec, &zeta * qpow(q, 2 * n + 1));
                pole_guard(&den, n, ctx)?;
                Ok(qpow(q, 3 * n * n + 5 * n) / den * sign)
            } else {
                let m = -n;
                let d = 2 * m - 1;
                let den = Complex::with_val(prec, qpow(q, d) - &zeta);
                pole_guard(&den, n, ctx)?;
                Ok(qpow(q, 3 * m * m - 5 * m + d) / den * sign)
            }
        },
    )?;
    let q2 = Complex::with_val(prec, q.square_ref());
    Ok(s / qpoch_inf(&q2, ctx)?)
}

/// gᵒ(q) = (1/(q;q)_∞) Σ (−1)^m q^{(3m²+m)/2}/(1 + q^m).
pub fn g_odd(q: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    h_odd_w(q, &Complex::new(ctx.prec()), ctx)
}

/// hᵒ(q) = (1/(q;q)_∞) Σ (−1)^m q^{(3m²+m)/2}(1 − 3q^m)/(1 + q^m)³.
pub fn h_odd(q: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let one = Complex::with_val(prec, 1);
    let s = bilateral(
        q,
        ctx,
        |n| {
            let m = n.abs();
            ((3 * m * m + m) / 2) as f64
        },
        |n| {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            let m = n.abs();
            let qm = qpow(q, m);
            if n >= 0 {
                let num = Complex::with_val(prec, &one - Complex::with_val(prec, &qm * 3u32));
                let den = Complex::with_val(prec, &one + &qm).pow(3);
                Ok(qpow(q, (3 * m * m + m) / 2) * num / den * sign)
            } else {
                let num = Complex::with_val(prec, &qm - 3u32);
                let den = Complex::with_val(prec, &qm + &one).pow(3);
                Ok(qpow(q, (3 * m * m + 3 * m) / 2) * num / den * sign)
            }
        },
    )?;
    Ok(s / qpoch_inf(q, ctx)?)
}

/// mᵒ(q) = (1/(q²;q²)_∞) Σ (−1)^m q^{3m²+5m}/(1 − q^{2m+1}).
pub fn m_odd(q: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    l_odd_w(q, &Complex::new(ctx.prec()), ctx)
}
