//! Quadrature rules at arbitrary precision.
//!
//! Every rule refines by halving the step and accepts a value only when two
//! consecutive node densities agree. Node values are computed in parallel
//! and summed in index order so results are deterministic.

use rayon::prelude::*;
use rug::{Complex, Float};

use super::precision::cabs;
use crate::{Error, PrecisionContext, Result};

const MAX_LEVELS: u32 = 20;

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: Complex,
    /// |T(h) − T(h/2)| at acceptance.
    pub last_change: Float,
    pub nodes: usize,
}

fn ordered_sum(values: Vec<Complex>, prec: u32) -> Complex {
    let mut acc = Complex::new(prec);
    for v in values {
        acc += v;
    }
    acc
}

fn accept(prev: &Complex, cur: &Complex, tol: &Float) -> (bool, Float) {
    let diff = cabs(&Complex::with_val(cur.prec().0, cur - prev));
    let scale = cabs(cur).max(&Float::with_val(cur.prec().0, 1));
    let ok = diff <= Float::with_val(cur.prec().0, tol * &scale);
    (ok, diff)
}

/// Trapezoid rule for ∫ f over [center − radius, center + radius], meant for
/// integrands that are analytic in a strip and negligible at the endpoints.
pub fn trapezoid<F>(f: F, center: &Float, radius: &Float, tol: &Float, ctx: &PrecisionContext) -> Result<QuadResult>
where
    F: Fn(&Float) -> Complex + Sync,
{
    let prec = ctx.prec();
    let mut steps: u64 = 16;
    let mut h = Float::with_val(prec, radius / steps);
    let node = |j: i64, h: &Float| -> Float { Float::with_val(prec, h * j) + center };
    let first: Vec<Complex> = (-(steps as i64)..=(steps as i64))
        .into_par_iter()
        .map(|j| f(&node(j, &h)))
        .collect();
    let mut sum = ordered_sum(first, prec);
    let mut value = Complex::with_val(prec, &sum * &h);
    let mut nodes = 2 * steps as usize + 1;
    for _ in 0..MAX_LEVELS {
        h /= 2u32;
        steps *= 2;
        let fresh: Vec<Complex> = (0..steps as i64)
            .into_par_iter()
            .map(|i| {
                let j = 2 * i - steps as i64 + 1;
                f(&node(j, &h))
            })
            .collect();
        nodes += fresh.len();
        sum += ordered_sum(fresh, prec);
        let next = Complex::with_val(prec, &sum * &h);
        let (ok, diff) = accept(&value, &next, tol);
        value = next;
        if ok {
            return Ok(QuadResult { value, last_change: diff, nodes });
        }
    }
    Err(Error::QuadratureDisagreement(format!("trapezoid not converged after {nodes} nodes")))
}

fn tanh_sinh_tmax(prec: u32) -> f64 {
    ((prec as f64) * std::f64::consts::LN_2 / std::f64::consts::PI * 2.0).asinh() + 0.5
}

/// Tanh-sinh rule on [a, b].
pub fn tanh_sinh<F>(f: F, a: &Float, b: &Float, tol: &Float, ctx: &PrecisionContext) -> Result<QuadResult>
where
    F: Fn(&Float) -> Complex + Sync,
{
    let prec = ctx.prec();
    let c = Float::with_val(prec, a + b) / 2u32;
    let r = Float::with_val(prec, b - a) / 2u32;
    let half_pi = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;
    let tmax = tanh_sinh_tmax(prec);
    let term = |t: &Float| -> Option<Complex> {
        let u = Float::with_val(prec, t.sinh_ref()) * &half_pi;
        let th = Float::with_val(prec, u.tanh_ref());
        let ch = Float::with_val(prec, u.cosh_ref());
        let weight = Float::with_val(prec, &half_pi * Float::with_val(prec, t.cosh_ref())) / ch.square() * &r;
        let x = Float::with_val(prec, &r * &th) + &c;
        if x <= *a || x >= *b {
            return None;
        }
        Some(f(&x) * weight)
    };
    run_levels(term, tmax, tmax, tol, prec)
}

/// Exp-sinh rule on [a, ∞); `upper` is a point beyond which the integrand
/// is negligible.
pub fn exp_sinh<F>(f: F, a: &Float, upper: f64, tol: &Float, ctx: &PrecisionContext) -> Result<QuadResult>
where
    F: Fn(&Float) -> Complex + Sync,
{
    let prec = ctx.prec();
    let half_pi = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;
    let lower_t = tanh_sinh_tmax(prec) + 0.5;
    let span = (upper - a.to_f64()).max(2.0);
    let upper_t = (span.ln() * 2.0 / std::f64::consts::PI).asinh() + 0.2;
    let term = |t: &Float| -> Option<Complex> {
        let u = Float::with_val(prec, t.sinh_ref()) * &half_pi;
        let e = Float::with_val(prec, u.exp_ref());
        let weight = Float::with_val(prec, &half_pi * Float::with_val(prec, t.cosh_ref())) * &e;
        let x = e + a;
        Some(f(&x) * weight)
    };
    run_levels(term, lower_t, upper_t, tol, prec)
}

fn run_levels<T>(term: T, t_lo: f64, t_hi: f64, tol: &Float, prec: u32) -> Result<QuadResult>
where
    T: Fn(&Float) -> Option<Complex> + Sync,
{
    let mut h = 0.5f64;
    let eval = |h: f64, odd_only: bool| -> Vec<Complex> {
        let jlo = -(t_lo / h).ceil() as i64;
        let jhi = (t_hi / h).ceil() as i64;
        (jlo..=jhi)
            .into_par_iter()
            .filter(|j| !odd_only || j.rem_euclid(2) == 1)
            .filter_map(|j| {
                let t = Float::with_val(prec, j) * h;
                term(&t)
            })
            .collect()
    };
    let first = eval(h, false);
    let mut nodes = first.len();
    let mut sum = ordered_sum(first, prec);
    let mut value = Complex::with_val(prec, &sum * h);
    for _ in 0..MAX_LEVELS {
        h /= 2.0;
        let fresh = eval(h, true);
        nodes += fresh.len();
        sum += ordered_sum(fresh, prec);
        let next = Complex::with_val(prec, &sum * h);
        let (ok, diff) = accept(&value, &next, tol);
        value = next;
        if ok {
            return Ok(QuadResult { value, last_change: diff, nodes });
        }
    }
    Err(Error::QuadratureDisagreement(format!("double-exponential rule not converged after {nodes} nodes")))
}
