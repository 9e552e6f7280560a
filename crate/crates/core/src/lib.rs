//! Generalized Zernike polynomials on the unit disk and their ladder operators.

pub mod cli;
pub mod error;
pub mod fit;
pub mod jacobi;
pub mod ops1d;
pub mod ops2d;
pub mod polyrep;
pub mod quadrature;
pub mod report;
pub mod scalar;
pub mod sobolev;
pub mod verify;
pub mod zernike;

pub use error::{Error, Result};
