use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type BigFloat = Float;
pub type BigComplex = Complex;

/// Working precision, carried explicitly through every numerical routine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionContext {
    /// Decimal digits the results are meant to be accurate to.
    pub digits: u32,
    /// Extra decimal digits carried internally.
    pub guard: u32,
    /// Extra Gaussian decay scales added to quadrature truncation radii.
    pub quadrature_cutoff_sigma: f64,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(50)
    }
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Self {
        PrecisionContext { digits: digits.max(15), guard: 10, quadrature_cutoff_sigma: 1.0 }
    }

    pub fn with_guard(mut self, guard: u32) -> Self {
        self.guard = guard;
        self
    }

    /// Binary precision including guard digits.
    pub fn prec(&self) -> u32 {
        ((self.digits + self.guard) as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    /// A context carrying `extra` more decimal digits.
    pub fn raised(&self, extra: u32) -> Self {
        PrecisionContext { digits: self.digits + extra, ..*self }
    }

    /// 10^{−digits}.
    pub fn tol(&self) -> Float {
        pow10(-(self.digits as i32), self.prec())
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.prec(), v)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.prec(), (re, im))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec(), Constant::Pi)
    }

    pub fn zero(&self) -> Complex {
        Complex::new(self.prec())
    }

    pub fn one(&self) -> Complex {
        Complex::with_val(self.prec(), 1)
    }

    pub fn i(&self) -> Complex {
        Complex::with_val(self.prec(), (0, 1))
    }

    /// Parses a decimal such as `"0.8"` or `"1/3"` exactly, then rounds.
    pub fn parse_real(&self, s: &str) -> Result<Float> {
        let s = s.trim();
        if let Ok(r) = s.parse::<Rational>() {
            return Ok(Float::with_val(self.prec(), &r));
        }
        let parsed = Float::parse(s).map_err(|e| Error::InvalidArgument(format!("{s}: {e}")))?;
        Ok(Float::with_val(self.prec(), parsed))
    }
}

pub fn pow10(e: i32, prec: u32) -> Float {
    Float::with_val(prec, 10).pow(e)
}

/// 2πi·z at the precision of `z`.
pub fn two_pi_i_times(z: &Complex) -> Complex {
    let prec = z.prec().0;
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let mut out = Complex::with_val(prec, z * &two_pi);
    out.mul_i_mut(false);
    out
}

/// e^{πi r} for an exact rational r, reduced mod 2 before rounding.
pub fn exp_pi_i_rational(r: &Rational, prec: u32) -> Complex {
    let two = Rational::from(2);
    let q = Rational::from(r / &two).floor();
    let reduced = r - q * two;
    let angle = Float::with_val(prec, &reduced) * Float::with_val(prec, Constant::Pi);
    let (s, c) = angle.sin_cos(Float::new(prec));
    Complex::with_val(prec, (c, s))
}

/// Principal branch w^p, asserting Re w > 0 so no cut can be crossed.
pub fn principal_pow(w: &Complex, p: &Float) -> Result<Complex> {
    if w.real().is_sign_negative() || w.real().is_zero() {
        return Err(Error::PrecisionLoss(format!(
            "branch argument {} has nonpositive real part",
            w.to_string_radix(10, Some(12))
        )));
    }
    Ok(Complex::with_val(w.prec().0, w.pow(p)))
}

pub fn sqrt_right_half(w: &Complex) -> Result<Complex> {
    let half = Float::with_val(w.prec().0, 0.5);
    principal_pow(w, &half)
}

/// |z| as a float at the precision of `z`.
pub fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Decimal string with `digits` significant digits.
pub fn fmt_float(x: &Float, digits: u32) -> String {
    x.to_string_radix(10, Some(digits as usize))
}

pub fn fmt_complex(z: &Complex, digits: u32) -> String {
    let (re, im) = (z.real(), z.imag());
    let re_s = fmt_float(re, digits);
    let im_abs = Float::with_val(im.prec(), im.abs_ref());
    let sign = if im.is_sign_negative() { "-" } else { "+" };
    format!("{re_s} {sign} {}i", fmt_float(&im_abs, digits))
}
