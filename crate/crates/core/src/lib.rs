//! Weierstrass sigma products over perturbed square lattices and numerical
//! uniqueness diagnostics for the Bargmann-Fock space.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod experiments;
pub mod fock;
pub mod logcomplex;
pub mod quadrature;
pub mod sequences;
pub mod sigma_gamma;
pub mod sigma_weierstrass;

pub use error::{Error, Result};
pub use logcomplex::LogComplex;

/// Version tag written into every CSV and JSON artifact.
pub const SCHEMA_VERSION: u32 = 1;
