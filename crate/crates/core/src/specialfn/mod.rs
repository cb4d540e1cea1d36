//! Arbitrary-precision special functions and quadrature.

pub mod bessel;
pub mod gamma;
pub mod mordell;
pub mod nonholo;
pub mod precision;
pub mod quadrature;

pub use bessel::{bessel_i, bessel_i_half_closed};
pub use gamma::{
    incomplete_gamma_upper_neg_half, incomplete_gamma_upper_neg_half_checked,
    incomplete_gamma_upper_neg_half_quadrature,
};
pub use mordell::{mordell_i, mordell_i_w, mordell_odd, mordell_odd_w, OddKind, QuadRule};
pub use nonholo::{nonholo_integral, nonholo_series};
