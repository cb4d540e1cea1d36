//! Residual verification of the modular transformation laws.
//!
//! Each check evaluates both sides of a law independently at the working
//! precision and reports |lhs − rhs| together with the scale max(|lhs|,
//! |rhs|). A check passes when residual < tol · max(1, scale).

pub mod diff;
pub mod eval;
mod laws;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::{Complex, Float};
use serde_json::{json, Value};

use crate::specialfn::precision::{cabs, fmt_complex, fmt_float};
use crate::{Error, PrecisionContext};

pub use diff::{l_operator, laplacian_check, lo_operator};
pub use laws::*;

/// Every law that can be checked, by its command-line identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// R₂(q) under q ↦ q₁ with the Mordell integrals I_{k,ν}.
    R2Modular,
    /// ℛ₂(w;q) under q ↦ q₁ with the integrals I^±_{k,ν}(z;w).
    R2wModular,
    /// ℛ(−1/z) against ℛ(z/576), η(z/24) and the theta integral.
    RInversion,
    /// 𝒩(−1/z) against 𝒩(z/576) and the same theta integral.
    NonholoInversion,
    /// ℳ(−1/z) = −((−iz)^{3/2}/(48√6)) ℳ(z/576).
    MaassInversion,
    MaassTranslation,
    /// 𝒩 as an integral against its incomplete-Gamma series.
    NonholoDual,
    NonholoTranslation,
    EtaInversion,
    E2Inversion,
    /// R₂ᵒ(q) law for k odd.
    OddKOdd,
    /// R₂ᵒ(q) law for k even.
    OddKEven,
    /// ℛᵒ(q;w) law for k odd.
    OddKOddW,
    /// ℛᵒ(q;w) law for k even.
    OddKEvenW,
    LConsistency,
    LoConsistency,
    Laplacian,
}

impl Law {
    pub const ALL: [Law; 17] = [
        Law::R2Modular,
        Law::R2wModular,
        Law::RInversion,
        Law::NonholoInversion,
        Law::MaassInversion,
        Law::MaassTranslation,
        Law::NonholoDual,
        Law::NonholoTranslation,
        Law::EtaInversion,
        Law::E2Inversion,
        Law::OddKOdd,
        Law::OddKEven,
        Law::OddKOddW,
        Law::OddKEvenW,
        Law::LConsistency,
        Law::LoConsistency,
        Law::Laplacian,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Law::R2Modular => "r2-modular",
            Law::R2wModular => "r2w-modular",
            Law::RInversion => "r-inversion",
            Law::NonholoInversion => "nonholo-inversion",
            Law::MaassInversion => "maass-inversion",
            Law::MaassTranslation => "maass-translation",
            Law::NonholoDual => "nonholo-dual",
            Law::NonholoTranslation => "nonholo-translation",
            Law::EtaInversion => "eta-inversion",
            Law::E2Inversion => "e2-inversion",
            Law::OddKOdd => "odd-k-odd",
            Law::OddKEven => "odd-k-even",
            Law::OddKOddW => "odd-k-odd-w",
            Law::OddKEvenW => "odd-k-even-w",
            Law::LConsistency => "l-consistency",
            Law::LoConsistency => "lo-consistency",
            Law::Laplacian => "laplacian",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Law::ALL
            .iter()
            .copied()
            .find(|l| l.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown law '{s}'")))
    }
}

/// Outcome of one law check.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub law: Law,
    pub inputs: BTreeMap<String, String>,
    pub lhs: Complex,
    pub rhs: Complex,
    pub residual: Float,
    pub scale: Float,
    pub tol: Float,
    pub pass: bool,
    pub digits: u32,
    pub notes: Vec<String>,
}

impl ResidualReport {
    pub fn new(law: Law, inputs: BTreeMap<String, String>, lhs: Complex, rhs: Complex, tol: Float, ctx: &PrecisionContext) -> Self {
        let prec = ctx.prec();
        let residual = cabs(&Complex::with_val(prec, &lhs - &rhs));
        let scale = cabs(&lhs).max(&cabs(&rhs));
        let bound = Float::with_val(prec, &tol * Float::with_val(prec, scale.max_ref(&Float::with_val(prec, 1))));
        let pass = residual < bound;
        ResidualReport { law, inputs, lhs, rhs, residual, scale, tol, pass, digits: ctx.digits, notes: Vec::new() }
    }

    /// residual / max(1, scale).
    pub fn relative(&self) -> Float {
        let prec = self.residual.prec();
        let s = Float::with_val(prec, self.scale.max_ref(&Float::with_val(prec, 1)));
        Float::with_val(prec, &self.residual / s)
    }

    pub fn to_json(&self) -> Value {
        let d = self.digits;
        json!({
            "law": self.law.id(),
            "inputs": self.inputs,
            "digits": d,
            "lhs": fmt_complex(&self.lhs, d),
            "rhs": fmt_complex(&self.rhs, d),
            "residual": fmt_float(&self.residual, 6),
            "scale": fmt_float(&self.scale, 6),
            "tol": fmt_float(&self.tol, 3),
            "pass": self.pass,
            "notes": self.notes,
        })
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} [{}] residual={} scale={} tol={} {}",
            self.law,
            inputs.join(", "),
            fmt_float(&self.residual, 4),
            fmt_float(&self.scale, 4),
            fmt_float(&self.tol, 2),
            if self.pass { "pass" } else { "FAIL" }
        )?;
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
