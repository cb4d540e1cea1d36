//! Partition rank statistics, marked Durfee symbols, circle-method series and
//! numerical verification of the modular transformation laws of the second
//! rank moment generating functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`] and [`durfee`] are combinatorial ground truth.
//! - [`qseries`] builds the generating functions as exact truncated series.
//! - [`modular`] holds Dedekind sums, multipliers, Kloosterman-type sums and
//!   Farey data.
//! - [`specialfn`] provides the arbitrary-precision kernels (Bessel,
//!   incomplete Gamma, quadrature, Mordell integrals).
//! - [`asymptotics`] evaluates the circle-method series.
//! - [`transforms`] evaluates the modular objects and checks their laws.
//! - [`congruence`] scans arithmetic progressions for divisibility.

pub mod asymptotics;
pub mod congruence;
pub mod durfee;
pub mod error;
pub mod modular;
pub mod partitions;
pub mod qseries;
pub mod specialfn;
pub mod transforms;

pub use error::{Error, Result};
pub use specialfn::precision::{BigComplex, BigFloat, PrecisionContext};
