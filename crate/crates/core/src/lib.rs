//! Numerical laboratory for the fourth moment of the Eisenstein series
//! E(z, ½+iT) on the modular surface and for the L-function main terms
//! that predict it.

pub mod arith;
pub mod eisenstein;
pub mod mainterm;
pub mod error;
pub mod moments;
pub mod par;
pub mod quad;
pub mod spectral;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use par::Parallelism;

/// The scalar type of every complex-valued operation.
pub type ComplexValue = Complex64;
