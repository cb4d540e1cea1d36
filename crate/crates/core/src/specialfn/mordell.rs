//! Mordell-type integrals ∫_ℝ e^{−ax²+bx} K(c + βx) dx.
//!
//! Every kernel K is a rational function of e^θ whose singularities lie on
//! a lattice θ ∈ s₀ + P·ℤ, which gives the distance from the real line to
//! the nearest pole and hence the truncation margin.

use rug::float::Constant;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use super::precision::two_pi_i_times;
use super::quadrature::{tanh_sinh, trapezoid, QuadResult};
use crate::{Error, PrecisionContext, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadRule {
    Trapezoid,
    TanhSinh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kernel {
    /// cosh θ / sinh² θ
    CoshOverSinh2,
    /// 1 / sinh³ θ
    InvSinh3,
    /// e^{σθ} / (1 − e^{2πiw} e^{2σθ})
    Hw { sigma: i32 },
    /// 1 / (2 sinh(−πiw − θ/2))
    HwOdd,
}

struct Problem<'a> {
    a: Complex,
    b: Complex,
    c: Complex,
    beta: Complex,
    kernel: Kernel,
    w: Option<&'a Complex>,
}

/// Which of the four odd Mordell integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OddKind {
    IPlus,
    IMinus,
    JPlus,
    JMinus,
}

impl OddKind {
    pub fn sign(self) -> i32 {
        match self {
            OddKind::IPlus | OddKind::JPlus => 1,
            OddKind::IMinus | OddKind::JMinus => -1,
        }
    }

    pub fn is_i(self) -> bool {
        matches!(self, OddKind::IPlus | OddKind::IMinus)
    }
}

fn frac_pi_i(num: f64, den: f64, ctx: &PrecisionContext) -> Complex {
    let v = Float::with_val(ctx.prec(), Constant::Pi) * num / den;
    Complex::with_val(ctx.prec(), (0, v))
}

fn check_z(z: &Complex) -> Result<()> {
    if z.real().is_sign_negative() || z.real().is_zero() {
        return Err(Error::InvalidArgument("Mordell integrals need Re z > 0".into()));
    }
    Ok(())
}

impl Problem<'_> {
    fn eval_kernel(&self, theta: &Complex, prec: u32) -> Complex {
        match self.kernel {
            Kernel::CoshOverSinh2 => {
                let s = Complex::with_val(prec, theta.sinh_ref());
                let c = Complex::with_val(prec, theta.cosh_ref());
                c / s.square()
            }
            Kernel::InvSinh3 => {
                let s = Complex::with_val(prec, theta.sinh_ref());
                let s3 = Complex::with_val(prec, s.square_ref()) * &s;
                s3.recip()
            }
            Kernel::Hw { sigma } => {
                let t = Complex::with_val(prec, theta * sigma);
                let e = Complex::with_val(prec, t.exp_ref());
                let w = self.w.expect("kernel needs w");
                let ew = two_pi_i_times(w).exp();
                let den = Complex::with_val(prec, 1) - ew * Complex::with_val(prec, e.square_ref());
                e / den
            }
            Kernel::HwOdd => {
                let w = self.w.expect("kernel needs w");
                let mut piw = Complex::with_val(prec, w * Float::with_val(prec, Constant::Pi));
                piw.mul_i_mut(false);
                let arg = -piw - Complex::with_val(prec, theta / 2u32);
                (Complex::with_val(prec, arg.sinh_ref()) * 2u32).recip()
            }
        }
    }

    /// Singular set of the kernel in the θ variable: (s₀, P) with θ ∈ s₀ + Pℤ.
    fn singular_lattice(&self) -> ((f64, f64), (f64, f64)) {
        use std::f64::consts::PI;
        let w = self.w.map(|w| (w.real().to_f64(), w.imag().to_f64()));
        match self.kernel {
            Kernel::CoshOverSinh2 | Kernel::InvSinh3 => ((0.0, 0.0), (0.0, PI)),
            Kernel::Hw { sigma } => {
                let (wr, wi) = w.unwrap_or((0.0, 0.0));
                // σθ = −πiw + πim
                let s = sigma as f64;
                ((PI * wi * s, -PI * wr * s), (0.0, PI))
            }
            Kernel::HwOdd => {
                let (wr, wi) = w.unwrap_or((0.0, 0.0));
                // θ = −2πiw − 2πim
                ((2.0 * PI * wi, -2.0 * PI * wr), (0.0, 2.0 * PI))
            }
        }
    }

    /// Distance to the real axis of the nearest pole in x with |Re x − x₀| ≤ window.
    fn pole_distance(&self, x0: f64, window: f64) -> f64 {
        let c = (self.c.real().to_f64(), self.c.imag().to_f64());
        let beta = (self.beta.real().to_f64(), self.beta.imag().to_f64());
        let ((s0r, s0i), (_, p)) = self.singular_lattice();
        let b2 = beta.0 * beta.0 + beta.1 * beta.1;
        let mut best = f64::INFINITY;
        for m in -4000i64..=4000 {
            let nr = s0r - c.0;
            let ni = s0i + p * m as f64 - c.1;
            let xr = (nr * beta.0 + ni * beta.1) / b2;
            let xi = (ni * beta.0 - nr * beta.1) / b2;
            if (xr - x0).abs() <= window {
                best = best.min(xi.abs());
            }
        }
        best
    }

    fn integrate(&self, rule: QuadRule, ctx: &PrecisionContext) -> Result<QuadResult> {
        let prec = ctx.prec();
        let ra = self.a.real().to_f64();
        let rb = self.b.real().to_f64();
        if ra <= 0.0 {
            return Err(Error::InvalidArgument("Gaussian factor must decay".into()));
        }
        let x0 = rb / (2.0 * ra);
        let coarse = ((ctx.digits + ctx.guard) as f64 * std::f64::consts::LN_10 / ra).sqrt() + x0.abs() + 4.0;
        let d = self.pole_distance(x0, coarse);
        if d < 1e-12 {
            return Err(Error::SingularityOnPath);
        }
        let margin = (ctx.digits + ctx.guard) as f64 * std::f64::consts::LN_10
            + ra * x0 * x0
            + 3.0 * (-d.ln()).max(0.0)
            + 10.0;
        let radius = (margin / ra).sqrt() + ctx.quadrature_cutoff_sigma / ra.sqrt();
        let f = |x: &Float| -> Complex {
            let x2 = Float::with_val(prec, x.square_ref());
            let expo = Complex::with_val(prec, &self.b * x) - Complex::with_val(prec, &self.a * &x2);
            let theta = Complex::with_val(prec, &self.beta * x) + &self.c;
            expo.exp() * self.eval_kernel(&theta, prec)
        };
        let tol = ctx.tol();
        let center = Float::with_val(prec, x0);
        let rad = Float::with_val(prec, radius);
        match rule {
            QuadRule::Trapezoid => trapezoid(f, &center, &rad, &tol, ctx),
            QuadRule::TanhSinh => {
                let lo = Float::with_val(prec, &center - &rad);
                let hi = Float::with_val(prec, &center + &rad);
                tanh_sinh(f, &lo, &hi, &tol, ctx)
            }
        }
    }
}

fn scaled(z: &Complex, num: f64, den: f64, ctx: &PrecisionContext) -> Complex {
    let pi = Float::with_val(ctx.prec(), Constant::Pi) * num / den;
    Complex::with_val(ctx.prec(), z * pi)
}

/// I_{k,ν}(z) = ∫ e^{−3πzx²/k} cosh θ / sinh² θ dx, θ = πiν/k − πi/(6k) − πzx/k.
pub fn mordell_i(k: u32, nu: i64, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    mordell_i_with(k, nu, z, QuadRule::Trapezoid, ctx).map(|r| r.value)
}

pub fn mordell_i_with(k: u32, nu: i64, z: &Complex, rule: QuadRule, ctx: &PrecisionContext) -> Result<QuadResult> {
    check_z(z)?;
    let kf = k as f64;
    let p = Problem {
        a: scaled(z, 3.0, kf, ctx),
        b: ctx.zero(),
        c: frac_pi_i(nu as f64, kf, ctx) - frac_pi_i(1.0, 6.0 * kf, ctx),
        beta: -scaled(z, 1.0, kf, ctx),
        kernel: Kernel::CoshOverSinh2,
        w: None,
    };
    p.integrate(rule, ctx)
}

/// I^±_{k,ν}(z;w) = ∫ e^{−3πzx²/k} H_w(±θ) dx with H_w(x) = eˣ/(1 − e^{2πiw}e^{2x}).
pub fn mordell_i_w(k: u32, nu: i64, z: &Complex, w: &Complex, sign: i32, ctx: &PrecisionContext) -> Result<Complex> {
    check_z(z)?;
    let kf = k as f64;
    let p = Problem {
        a: scaled(z, 3.0, kf, ctx),
        b: ctx.zero(),
        c: frac_pi_i(nu as f64, kf, ctx) - frac_pi_i(1.0, 6.0 * kf, ctx),
        beta: -scaled(z, 1.0, kf, ctx),
        kernel: Kernel::Hw { sigma: sign.signum() },
        w: Some(w),
    };
    p.integrate(QuadRule::Trapezoid, ctx).map(|r| r.value)
}

/// Iᵒ±_{k,ν}(z) and Jᵒ±_{k,ν}(z): ∫ e^{−3πzx²/(2k)+πzx/k} / sinh³ θ dx with
/// θ = ∓πiν/k + πzx/k ± πi/(6k) (I) or θ = −πi(2ν+1)/k + πzx/k ± πi/(3k) (J).
pub fn mordell_odd(kind: OddKind, k: u32, nu: i64, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    mordell_odd_with(kind, k, nu, z, QuadRule::Trapezoid, ctx).map(|r| r.value)
}

pub fn mordell_odd_with(
    kind: OddKind,
    k: u32,
    nu: i64,
    z: &Complex,
    rule: QuadRule,
    ctx: &PrecisionContext,
) -> Result<QuadResult> {
    check_z(z)?;
    let kf = k as f64;
    let s = kind.sign() as f64;
    let c = if kind.is_i() {
        frac_pi_i(-s * nu as f64, kf, ctx) + frac_pi_i(s, 6.0 * kf, ctx)
    } else {
        frac_pi_i(-(2 * nu + 1) as f64, kf, ctx) + frac_pi_i(s, 3.0 * kf, ctx)
    };
    let p = Problem {
        a: scaled(z, 3.0, 2.0 * kf, ctx),
        b: scaled(z, 1.0, kf, ctx),
        c,
        beta: scaled(z, 1.0, kf, ctx),
        kernel: Kernel::InvSinh3,
        w: None,
    };
    p.integrate(rule, ctx)
}

/// w-dependent odd integrals with Hᵒ_w(x) = 1/(2 sinh(−πiw − x/2)):
/// I: ∫ e^{−3πzx²/(2k)+3πzx/k} Hᵒ_w(±2πiν/k − 2πzx/k ∓ πi/(3k)) dx,
/// J: ∫ e^{−3πzx²/(2k)+3πzx/k} Hᵒ_w(2πi(2ν+1)/k − 2πzx/k ∓ 2πi/(3k)) dx.
pub fn mordell_odd_w(
    kind: OddKind,
    k: u32,
    nu: i64,
    z: &Complex,
    w: &Complex,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    check_z(z)?;
    let kf = k as f64;
    let s = kind.sign() as f64;
    let c = if kind.is_i() {
        frac_pi_i(2.0 * s * nu as f64, kf, ctx) - frac_pi_i(s, 3.0 * kf, ctx)
    } else {
        frac_pi_i(2.0 * (2 * nu + 1) as f64, kf, ctx) - frac_pi_i(2.0 * s, 3.0 * kf, ctx)
    };
    let p = Problem {
        a: scaled(z, 3.0, 2.0 * kf, ctx),
        b: scaled(z, 3.0, kf, ctx),
        c,
        beta: -scaled(z, 2.0, kf, ctx),
        kernel: Kernel::HwOdd,
        w: Some(w),
    };
    p.integrate(QuadRule::Trapezoid, ctx).map(|r| r.value)
}
