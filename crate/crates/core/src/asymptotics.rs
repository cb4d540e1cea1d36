//! Circle-method series for p(n), η₂(n) and η₂ᵒ(n), with error diagnostics
//! against exact values.

use rayon::prelude::*;
use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::modular::{kloosterman_a, kloosterman_a_odd};
use crate::specialfn::bessel::bessel_i;
use crate::specialfn::precision::fmt_float;
use crate::{Error, PrecisionContext, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Multiplier on ⌈√n⌉ for the Rademacher truncation.
pub const RADEMACHER_K_FACTOR: u64 = 2;

#[derive(Debug, Clone)]
pub struct AsymptoticReport {
    pub statistic: String,
    pub n: u64,
    pub k_max: u64,
    pub terms: Vec<(u64, Float)>,
    pub truncated_sum: Float,
    /// Imaginary part left over when the sum is formally complex.
    pub imag_residual: Option<Float>,
    pub exact: Option<Integer>,
    pub abs_error: Option<Float>,
    pub rel_error: Option<Float>,
    pub digits: u32,
}

impl AsymptoticReport {
    fn new(statistic: &str, n: u64, k_max: u64, terms: Vec<(u64, Float)>, ctx: &PrecisionContext) -> Self {
        let mut sum = Float::new(ctx.prec());
        for (_, t) in &terms {
            sum += t;
        }
        AsymptoticReport {
            statistic: statistic.to_string(),
            n,
            k_max,
            terms,
            truncated_sum: sum,
            imag_residual: None,
            exact: None,
            abs_error: None,
            rel_error: None,
            digits: ctx.digits,
        }
    }

    /// Fills in the error fields from an exact value.
    pub fn with_exact(mut self, exact: Integer) -> Self {
        let prec = self.truncated_sum.prec();
        let diff = Float::with_val(prec, &self.truncated_sum - &exact).abs();
        let rel = if exact == 0 { None } else { Some(Float::with_val(prec, &diff / &exact).abs()) };
        self.abs_error = Some(diff);
        self.rel_error = rel;
        self.exact = Some(exact);
        self
    }

    /// The nearest integer to the truncated sum.
    pub fn rounded(&self) -> Integer {
        self.truncated_sum.to_integer().unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        let d = self.digits;
        json!({
            "schema_version": SCHEMA_VERSION,
            "statistic": self.statistic,
            "n": self.n,
            "k_max": self.k_max,
            "digits": d,
            "terms": self.terms.iter().map(|(k, t)| json!({"k": k, "value": fmt_float(t, d)})).collect::<Vec<_>>(),
            "truncated_sum": fmt_float(&self.truncated_sum, d),
            "imag_residual": self.imag_residual.as_ref().map(|v| fmt_float(v, 6)),
            "exact": self.exact.as_ref().map(|e| e.to_string()),
            "abs_error": self.abs_error.as_ref().map(|v| fmt_float(v, 6)),
            "rel_error": self.rel_error.as_ref().map(|v| fmt_float(v, 6)),
        })
    }
}

/// Digits needed so the exponentially large main term of index n leaves
/// `digits` significant digits for the comparison.
pub fn auto_digits(n: u64, digits: u32) -> u32 {
    let need = std::f64::consts::PI * (24.0 * n as f64).sqrt() / (6.0 * std::f64::consts::LN_10) + 15.0;
    digits.max(need.ceil() as u32)
}

fn auto_ctx(n: u64, ctx: &PrecisionContext) -> PrecisionContext {
    PrecisionContext { digits: auto_digits(n, ctx.digits), ..*ctx }
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

fn require_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

fn isqrt(n: u64) -> u64 {
    Integer::from(n).sqrt().to_u64().unwrap_or(1)
}

fn sorted(mut terms: Vec<(u64, Float)>) -> Vec<(u64, Float)> {
    terms.sort_by_key(|(k, _)| *k);
    terms
}

/// (2π/(24n−1)^{3/4}) Σ_{k≤k_max} (A_k(n)/k) I_{3/2}(π√(24n−1)/(6k)).
pub fn rademacher_p(n: u64, k_max: Option<u64>, ctx: &PrecisionContext) -> Result<AsymptoticReport> {
    require_n(n)?;
    let ctx = auto_ctx(n, ctx);
    let prec = ctx.prec();
    let k_max = k_max.unwrap_or_else(|| RADEMACHER_K_FACTOR * isqrt(n).max(1) + 1);
    let m = Float::with_val(prec, 24 * n - 1);
    let sm = Float::with_val(prec, m.sqrt_ref());
    let m34 = Float::with_val(prec, &sm * Float::with_val(prec, sm.sqrt_ref()));
    let pref = pi(prec) * 2u32 / m34;
    let order = Rational::from((3, 2));
    let terms: Result<Vec<(u64, Float)>> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let a = kloosterman_a(k as i64, n as i64, &ctx)?;
            let x = Float::with_val(prec, &sm * pi(prec)) / (6 * k);
            let b = bessel_i(&order, &x, &ctx)?;
            Ok((k, Float::with_val(prec, a.real() * &b) * &pref / k))
        })
        .collect();
    Ok(AsymptoticReport::new("p", n, k_max, sorted(terms?), &ctx))
}

/// Σ_{k≤⌊√n⌋} A_k(n)[−(3/(2m^{1/4})) I_{1/2}(x) + (πm^{1/4}/(12k)) I_{−1/2}(x) + (π/(12k m^{3/4})) I_{3/2}(x)],
/// m = 24n−1, x = π√m/(6k).
pub fn eta2_series(n: u64, ctx: &PrecisionContext) -> Result<AsymptoticReport> {
    eta2_series_truncated(n, isqrt(n).max(1), ctx)
}

pub fn eta2_series_truncated(n: u64, k_max: u64, ctx: &PrecisionContext) -> Result<AsymptoticReport> {
    require_n(n)?;
    let ctx = auto_ctx(n, ctx);
    let prec = ctx.prec();
    let m = Float::with_val(prec, 24 * n - 1);
    let sm = Float::with_val(prec, m.sqrt_ref());
    let m14 = Float::with_val(prec, sm.sqrt_ref());
    let m34 = Float::with_val(prec, &sm * &m14);
    let p = pi(prec);
    let terms: Result<Vec<(u64, Float)>> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let a = kloosterman_a(k as i64, n as i64, &ctx)?;
            let x = Float::with_val(prec, &sm * &p) / (6 * k);
            let i_half = bessel_i(&Rational::from((1, 2)), &x, &ctx)?;
            let i_mhalf = bessel_i(&Rational::from((-1, 2)), &x, &ctx)?;
            let i_3half = bessel_i(&Rational::from((3, 2)), &x, &ctx)?;
            let t1 = -(Float::with_val(prec, 3u32) / Float::with_val(prec, &m14 * 2u32)) * i_half;
            let t2 = Float::with_val(prec, &p * &m14) / (12 * k) * i_mhalf;
            let t3 = Float::with_val(prec, &p / &m34) / (12 * k) * i_3half;
            Ok((k, Float::with_val(prec, a.real() * (t1 + t2 + t3))))
        })
        .collect();
    Ok(AsymptoticReport::new("eta2", n, k_max, sorted(terms?), &ctx))
}

/// e^{π√(24n−1)/6}/(4√3).
pub fn eta2_main_term(n: u64, ctx: &PrecisionContext) -> Result<Float> {
    require_n(n)?;
    let ctx = auto_ctx(n, ctx);
    let prec = ctx.prec();
    let sm = Float::with_val(prec, 24 * n - 1).sqrt();
    let e = (sm * pi(prec) / 6u32).exp();
    Ok(e / (Float::with_val(prec, 3u32).sqrt() * 4u32))
}

/// (3/8)√n e^{π√(3n−1)/3}.
pub fn eta2_odd_main_term(n: u64, ctx: &PrecisionContext) -> Result<Float> {
    require_n(n)?;
    let ctx = auto_ctx(n, ctx);
    let prec = ctx.prec();
    let sm = Float::with_val(prec, 3 * n - 1).sqrt();
    let e = (sm * pi(prec) / 3u32).exp();
    Ok(e * Float::with_val(prec, n).sqrt() * 3u32 / 8u32)
}

/// Coefficient of (3n−1)^{1/4} I_{−1/2} in the odd series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HalfCoefficient {
    /// −3π²/4 as printed.
    Printed,
    /// −3/4, obtained by carrying the I_{−1/2} reduction through again.
    Rederived,
}

/// Constant c_k in front of (3n−1)^{3/4} I_{−3/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TailConstant {
    /// π/(16k), as in the theorem statement.
    PiOver16K,
    /// π/(4k), as in the final display of the proof.
    PiOver4K,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OddNormalization {
    pub half: HalfCoefficient,
    pub tail: TailConstant,
}

impl OddNormalization {
    pub const ALL: [OddNormalization; 4] = [
        OddNormalization { half: HalfCoefficient::Printed, tail: TailConstant::PiOver16K },
        OddNormalization { half: HalfCoefficient::Printed, tail: TailConstant::PiOver4K },
        OddNormalization { half: HalfCoefficient::Rederived, tail: TailConstant::PiOver16K },
        OddNormalization { half: HalfCoefficient::Rederived, tail: TailConstant::PiOver4K },
    ];

    /// The normalization the calibration experiment selects.
    pub const CALIBRATED: OddNormalization =
        OddNormalization { half: HalfCoefficient::Rederived, tail: TailConstant::PiOver4K };

    pub fn label(&self) -> String {
        let h = match self.half {
            HalfCoefficient::Printed => "-3pi^2/4",
            HalfCoefficient::Rederived => "-3/4",
        };
        let t = match self.tail {
            TailConstant::PiOver16K => "pi/(16k)",
            TailConstant::PiOver4K => "pi/(4k)",
        };
        format!("half={h} tail={t}")
    }
}

impl Default for OddNormalization {
    fn default() -> Self {
        OddNormalization::CALIBRATED
    }
}

/// −(i/√2) Σ_{k odd ≤ k_max} A_kᵒ(n)[a·m^{1/4} I_{−1/2}(x) + c_k m^{3/4} I_{−3/2}(x)],
/// m = 3n−1, x = π√m/(3k).
pub fn eta2_odd_series(n: u64, normalization: OddNormalization, ctx: &PrecisionContext) -> Result<AsymptoticReport> {
    eta2_odd_series_truncated(n, isqrt(n).max(1), normalization, ctx)
}

pub fn eta2_odd_series_truncated(
    n: u64,
    k_max: u64,
    normalization: OddNormalization,
    ctx: &PrecisionContext,
) -> Result<AsymptoticReport> {
    require_n(n)?;
    let ctx = auto_ctx(n, ctx);
    let prec = ctx.prec();
    let p = pi(prec);
    let m = Float::with_val(prec, 3 * n - 1);
    let sm = Float::with_val(prec, m.sqrt_ref());
    let m14 = Float::with_val(prec, sm.sqrt_ref());
    let m34 = Float::with_val(prec, &sm * &m14);
    let half = match normalization.half {
        HalfCoefficient::Printed => -(Float::with_val(prec, p.square_ref()) * 3u32 / 4u32),
        HalfCoefficient::Rederived => Float::with_val(prec, -0.75),
    };
    let tail_den = match normalization.tail {
        TailConstant::PiOver16K => 16,
        TailConstant::PiOver4K => 4,
    };
    let sqrt2 = Float::with_val(prec, 2u32).sqrt();
    let terms: Result<Vec<(u64, Complex)>> = (1..=k_max)
        .into_par_iter()
        .filter(|k| k % 2 == 1)
        .map(|k| {
            let a = kloosterman_a_odd(k as i64, n as i64, &ctx)?;
            let x = Float::with_val(prec, &sm * &p) / (3 * k);
            let i_mhalf = bessel_i(&Rational::from((-1, 2)), &x, &ctx)?;
            let i_m3half = bessel_i(&Rational::from((-3, 2)), &x, &ctx)?;
            let t1 = Float::with_val(prec, &half * &m14) * i_mhalf;
            let t2 = Float::with_val(prec, &p * &m34) / (tail_den * k as i64) * i_m3half;
            // −(i/√2)·A·(t1+t2)
            let mut v = a * (t1 + t2) / &sqrt2;
            v.mul_i_mut(true);
            Ok((k, v))
        })
        .collect();
    let mut terms = terms?;
    terms.sort_by_key(|(k, _)| *k);
    let mut imag = Float::new(prec);
    let real: Vec<(u64, Float)> = terms
        .into_iter()
        .map(|(k, v)| {
            imag += v.imag();
            (k, Float::with_val(prec, v.real()))
        })
        .collect();
    let mut rep = AsymptoticReport::new("eta2_odd", n, k_max, real, &ctx);
    rep.imag_residual = Some(imag.abs());
    Ok(rep)
}

/// Outcome of the odd-normalization experiment.
#[derive(Debug, Clone)]
pub struct CalibrationReport {
    /// (normalization, max relative error of the k=1 truncation over the window).
    pub candidates: Vec<(OddNormalization, f64)>,
    pub window: (u64, u64),
    pub threshold: f64,
    pub winner: Option<OddNormalization>,
}

impl CalibrationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "window": [self.window.0, self.window.1],
            "threshold": self.threshold,
            "candidates": self.candidates.iter().map(|(c, e)| json!({"normalization": c.label(), "max_rel_error": e})).collect::<Vec<_>>(),
            "winner": self.winner.map(|w| w.label()),
        })
    }
}

/// Relative-error window for the calibration.
pub const CALIBRATION_THRESHOLD: f64 = 1e-2;

/// Compares the k=1-truncated odd series against exact η₂ᵒ(n) over
/// n ∈ [lo, hi] for each candidate in `candidates`; the winner is the
/// candidate with the smallest maximum error, provided it lies within
/// [`CALIBRATION_THRESHOLD`].
pub fn calibrate_odd_normalization(
    exact: &[Integer],
    lo: u64,
    hi: u64,
    candidates: &[OddNormalization],
    ctx: &PrecisionContext,
) -> Result<CalibrationReport> {
    if (hi as usize) >= exact.len() || lo == 0 || lo > hi {
        return Err(Error::InvalidArgument("calibration window outside the exact table".into()));
    }
    let mut out = Vec::new();
    for &c in candidates {
        let errs: Result<Vec<f64>> = (lo..=hi)
            .into_par_iter()
            .map(|n| {
                let r = eta2_odd_series_truncated(n, 1, c, ctx)?.with_exact(exact[n as usize].clone());
                Ok(r.rel_error.map(|e| e.to_f64()).unwrap_or(f64::INFINITY))
            })
            .collect();
        let worst = errs?.into_iter().fold(0.0f64, f64::max);
        out.push((c, worst));
    }
    let winner = out
        .iter()
        .filter(|(_, e)| *e < CALIBRATION_THRESHOLD)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(c, _)| *c);
    Ok(CalibrationReport { candidates: out, window: (lo, hi), threshold: CALIBRATION_THRESHOLD, winner })
}

/// Calibration restricted to the two printed constants; fails with
/// `NormalizationUnresolved` when neither is within the window.
pub fn calibrate_printed(exact: &[Integer], lo: u64, hi: u64, ctx: &PrecisionContext) -> Result<OddNormalization> {
    let printed = [OddNormalization::ALL[0], OddNormalization::ALL[1]];
    let r = calibrate_odd_normalization(exact, lo, hi, &printed, ctx)?;
    r.winner.ok_or(Error::NormalizationUnresolved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partition_table;

    #[test]
    fn rademacher_small() {
        let ctx = PrecisionContext::new(30);
        let table = partition_table(60);
        for n in [1u64, 2, 5, 10, 37, 60] {
            assert_eq!(rademacher_p(n, None, &ctx).unwrap().rounded(), table[n as usize], "n = {n}");
        }
    }

    #[test]
    fn auto_digits_grows() {
        assert_eq!(auto_digits(1, 50), 50);
        assert!(auto_digits(10_000, 20) > 70);
    }

    #[test]
    fn main_term_positive() {
        let ctx = PrecisionContext::new(20);
        assert!(eta2_main_term(1, &ctx).unwrap() > 0);
    }
}
