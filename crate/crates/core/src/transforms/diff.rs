//! Finite-difference operators: L, Lᵒ and the weight 3/2 hyperbolic
//! Laplacian.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::specialfn::precision::{cabs, two_pi_i_times};
use crate::{PrecisionContext, Result};

/// Derivative estimates at w = 0 from steps h, h/2, h/4 and their
/// Richardson limit.
#[derive(Debug, Clone)]
pub struct Derivatives {
    pub first: Complex,
    pub second: Complex,
    /// First-derivative estimates at the three levels of extrapolation.
    pub first_estimates: [Complex; 3],
}

fn richardson(d: [Complex; 3], prec: u32) -> ([Complex; 3], Complex) {
    let r1 = (Complex::with_val(prec, &d[1] * 4u32) - &d[0]) / 3u32;
    let r2 = (Complex::with_val(prec, &d[2] * 4u32) - &d[1]) / 3u32;
    let fin = (Complex::with_val(prec, &r2 * 16u32) - &r1) / 15u32;
    ([d[0].clone(), r1, fin.clone()], fin)
}

/// Central differences at w = 0 with step 10^{−digits/4}.
pub fn derivatives_at_zero<G>(g: G, ctx: &PrecisionContext) -> Result<Derivatives>
where
    G: Fn(&Complex) -> Result<Complex>,
{
    let prec = ctx.prec();
    let base = Float::with_val(prec, 10).pow(-((ctx.digits / 4) as i32));
    let g0 = g(&Complex::new(prec))?;
    let mut d1: Vec<Complex> = Vec::with_capacity(3);
    let mut d2: Vec<Complex> = Vec::with_capacity(3);
    for level in 0..3u32 {
        let h = base.clone() >> level;
        let plus = g(&Complex::with_val(prec, (&h, 0)))?;
        let minus = g(&Complex::with_val(prec, (-h.clone(), 0)))?;
        let h2 = Float::with_val(prec, h.square_ref());
        d1.push(Complex::with_val(prec, &plus - &minus) / (h * 2u32));
        let mid = Complex::with_val(prec, &g0 * 2u32);
        d2.push((plus + minus - mid) / h2);
    }
    let d1: [Complex; 3] = d1.try_into().expect("three levels");
    let d2: [Complex; 3] = d2.try_into().expect("three levels");
    let (first_estimates, first) = richardson(d1, prec);
    let (_, second) = richardson(d2, prec);
    Ok(Derivatives { first, second, first_estimates })
}

/// L(g) = (1/2πi) g′(0).
pub fn l_operator<G>(g: G, ctx: &PrecisionContext) -> Result<Complex>
where
    G: Fn(&Complex) -> Result<Complex>,
{
    let d = derivatives_at_zero(g, ctx)?;
    let two_pi_i = two_pi_i_times(&Complex::with_val(ctx.prec(), 1));
    Ok(d.first / two_pi_i)
}

/// Lᵒ(g) = −(1/8π²)[∂_w e^{−2πiw} ∂_w g]_{w=0} = −(g″(0) − 2πi g′(0))/(8π²).
pub fn lo_operator<G>(g: G, ctx: &PrecisionContext) -> Result<Complex>
where
    G: Fn(&Complex) -> Result<Complex>,
{
    let prec = ctx.prec();
    let d = derivatives_at_zero(g, ctx)?;
    let two_pi_i = two_pi_i_times(&Complex::with_val(prec, 1));
    let inner = d.second - d.first * two_pi_i;
    let pi2 = Float::with_val(prec, Constant::Pi).square() * 8u32;
    Ok(-inner / pi2)
}

/// |Δ_{3/2} f(z)| from an 8-point circle stencil of radius `step`:
/// Δ_k = −y²(∂ₓ² + ∂ᵧ²) + 2iky ∂_z̄, where the stencil mean gives the
/// Laplacian and the first Fourier mode gives ∂_z̄.
pub fn laplacian_check<F>(f: F, z: &Complex, step: &Float, ctx: &PrecisionContext) -> Result<Float>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    const POINTS: u32 = 8;
    let prec = ctx.prec();
    let f0 = f(z)?;
    let mut mean = Complex::new(prec);
    let mut mode = Complex::new(prec);
    for j in 0..POINTS {
        let angle = Float::with_val(prec, Constant::Pi) * (2 * j) / POINTS;
        let (s, c) = angle.sin_cos(Float::new(prec));
        let omega = Complex::with_val(prec, (c, s));
        let point = Complex::with_val(prec, &omega * step) + z;
        let v = f(&point)?;
        mode += Complex::with_val(prec, &omega * &v);
        mean += v;
    }
    mean /= POINTS;
    let h2 = Float::with_val(prec, step.square_ref());
    let lap = (mean - f0) * 4u32 / h2;
    let dzbar = mode / (Float::with_val(prec, step * POINTS));
    let y = Float::with_val(prec, z.imag());
    let y2 = Float::with_val(prec, y.square_ref());
    let mut weight_term = Complex::with_val(prec, dzbar * y) * 3u32;
    weight_term.mul_i_mut(false);
    let delta = weight_term - lap * y2;
    Ok(cabs(&delta))
}
