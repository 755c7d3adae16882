//! Zonal polynomials, principal angles and design tests on complex
//! Grassmannians `G(m, C^n)`.
//!
//! The algebra is exact over arbitrary precision rationals. Float principal
//! angles are supported for configurations with irrational angles and for
//! random sampling.

pub mod designs;
pub mod error;
pub mod grassmann;
pub mod linalg;
pub mod partitions;
pub mod scalar;
pub mod symfunc;
pub mod zonal;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use scalar::{ExactComplex, ExactScalar, Scalar};
pub use symfunc::SchurExpansion;
