//! Conditional image embedding engine.
//!
//! A vision transformer whose patch sequence is extended with a conditioning
//! token, trained with a bidirectional InfoNCE loss and a learned temperature,
//! evaluated with an exact cosine-similarity index and a bootstrapped
//! recall benchmark. Queries are embedded conditionally, galleries are not.

pub mod autodiff;
pub mod bench;
pub mod data;
pub mod error;
pub mod index;
pub mod model;
pub mod rng;
pub mod synth;
pub mod train;

pub use error::{Error, Result};

/// Scalar type used by tensors and model parameters.
///
/// 32-bit by default; the `f64` feature switches the whole crate to 64-bit
/// for tight gradient tolerances. On-disk embedding stores stay 32-bit.
#[cfg(feature = "f64")]
pub type Scalar = f64;
#[cfg(not(feature = "f64"))]
pub type Scalar = f32;

/// Relative tolerance the gradient checker must meet in this build.
#[cfg(feature = "f64")]
pub const GRAD_CHECK_TOL: Scalar = 1e-6;
#[cfg(not(feature = "f64"))]
pub const GRAD_CHECK_TOL: Scalar = 1e-3;
