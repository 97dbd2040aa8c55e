#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagonal;
pub mod error;
pub mod fredholm;
pub mod kernels;
pub mod linalg;
pub mod monodromy;
pub mod prediction;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Real, C};

/// `f64` instances of the generic types.
pub type Profile = kernels::KernelProfile<f64>;
pub type Operator = fredholm::DiscretizedOperator<f64>;
pub type Density = spectral::CholeskyDensity<f64>;
pub type Matrix = linalg::Matrix<f64>;
pub type Mat2 = linalg::Mat2<f64>;
pub type Complex = C<f64>;
