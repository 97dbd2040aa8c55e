//! Special functions and their accuracy contracts (double precision).

pub mod airy;
pub mod bessel;
pub mod erf;
pub mod gamma;

pub use airy::{airy, airy_ai};
pub use bessel::{bessel_j, bessel_j_deriv, bessel_j_x_deriv};
pub use erf::{erf, erfc, gaussian_det, gaussian_det_asymptotic, gaussian_det_asymptotic_optimal};
pub use gamma::{gamma, ln_gamma};
