//! Modified Bessel functions of the first kind.

use rug::float::Constant;
use rug::{Float, Rational};

use crate::{Error, PrecisionContext, Result};

const MAX_TERMS: usize = 1_000_000;

/// I_s(x) by the ascending series Σ (x/2)^{2m+s} / (m! Γ(m+s+1)).
///
/// The loop stops once the geometric bound on the remaining terms falls
/// below 10^{−digits} relative to the partial sum.
pub fn bessel_i(s: &Rational, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *x <= 0 {
        return Err(Error::InvalidArgument("bessel_i needs x > 0".into()));
    }
    if s.is_integer() && *s < 0 {
        return bessel_i(&Rational::from(-s), x, ctx);
    }
    let xf = x.to_f64();
    // the largest term is about e^x; carry enough bits to absorb it
    let extra = (xf / std::f64::consts::LN_2) as u32 / 8 + 16;
    let prec = ctx.prec() + extra;
    let sf = Float::with_val(prec, s);
    let half_x = Float::with_val(prec, x) / 2u32;
    let q = Float::with_val(prec, half_x.square_ref());
    // term_0 = (x/2)^s / Γ(s+1)
    let s1 = Float::with_val(prec, &sf + 1u32);
    let mut term = Float::with_val(prec, half_x.ln_ref()) * &sf;
    term = term.exp() / s1.gamma();
    let mut sum = term.clone();
    let tol = ctx.tol();
    let qf = q.to_f64();
    for m in 1..MAX_TERMS {
        let denom = Float::with_val(prec, &sf + m as u32) * m as u32;
        term *= &q;
        term /= &denom;
        sum += &term;
        let mf = m as f64;
        let ratio = qf / ((mf + 1.0) * (mf + 1.0 + s.to_f64()));
        if ratio < 0.5 && mf + 1.0 + s.to_f64() > 0.0 {
            let bound = Float::with_val(prec, term.abs_ref()) * (ratio / (1.0 - ratio));
            if bound <= Float::with_val(prec, sum.abs_ref()) * &tol {
                return Ok(Float::with_val(ctx.prec(), sum));
            }
        }
    }
    Err(Error::NonconvergentSeries(MAX_TERMS))
}

/// Closed forms for orders ±1/2 and ±3/2.
pub fn bessel_i_half_closed(twice_order: i32, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.prec() + 16;
    let x = Float::with_val(prec, x);
    let pi = Float::with_val(prec, Constant::Pi);
    let pre = (Float::with_val(prec, 2u32) / (pi * &x)).sqrt();
    let (sh, ch) = (Float::with_val(prec, x.sinh_ref()), Float::with_val(prec, x.cosh_ref()));
    let v = match twice_order {
        1 => sh,
        -1 => ch,
        3 => Float::with_val(prec, &ch - Float::with_val(prec, &sh / &x)),
        -3 => Float::with_val(prec, &sh - Float::with_val(prec, &ch / &x)),
        _ => return Err(Error::InvalidArgument(format!("no closed form for order {twice_order}/2"))),
    };
    Ok(Float::with_val(ctx.prec(), pre * v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_at_one() {
        let ctx = PrecisionContext::new(40);
        let x = ctx.float(1.0);
        let v = bessel_i(&Rational::from((1, 2)), &x, &ctx).unwrap();
        let pi = ctx.pi();
        let expected = (Float::with_val(ctx.prec(), 2u32) / pi).sqrt() * Float::with_val(ctx.prec(), x.sinh_ref());
        assert!(Float::with_val(ctx.prec(), &v - &expected).abs() < 1e-38);
    }

    #[test]
    fn integer_negative_order_reflects() {
        let ctx = PrecisionContext::new(30);
        let x = ctx.float(3.0);
        let a = bessel_i(&Rational::from(-2), &x, &ctx).unwrap();
        let b = bessel_i(&Rational::from(2), &x, &ctx).unwrap();
        assert_eq!(a, b);
        assert!(bessel_i(&Rational::from(1), &ctx.float(0.0), &ctx).is_err());
    }
}
