use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("gcd({h}, {k}) != 1")]
    NotCoprime { h: i64, k: i64 },
    #[error("k = {0} is even, an odd modulus is required")]
    KEven(i64),
    #[error("no h' exists for h = {h}, k = {k}: {reason}")]
    NoSolution { h: i64, k: i64, reason: String },
    #[error("polynomial division left a nonzero remainder at q^{0}")]
    NonzeroRemainder(usize),
    #[error("series did not converge within {0} terms")]
    NonconvergentSeries(usize),
    #[error("quadrature rules disagree: {0}")]
    QuadratureDisagreement(String),
    #[error("integrand singular on the integration path")]
    SingularityOnPath,
    #[error("branch argument too close to the cut: {0}")]
    PrecisionLoss(String),
    #[error("|q| = {0} is too close to 1 for direct summation")]
    SlowConvergence(String),
    #[error("pole proximity: |1 - e(w) q^{n}| = {dist}")]
    PoleProximity { n: i64, dist: String },
    #[error("no normalization reproduces the exact values within the calibration window")]
    NormalizationUnresolved,
    #[error("no valid frame: {0}")]
    NoValidFrame(String),
    #[error("exact oracle range exceeded: {0}")]
    OracleRangeExceeded(String),
}
