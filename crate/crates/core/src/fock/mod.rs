//! The Bargmann-Fock space: orthonormal monomials, truncated norms, the
//! reproducing kernel, the Bargmann transform, Gabor atoms, and evaluation
//! matrices on point sets.

mod bargmann;
mod basis;
mod gabor;
mod kernel;
mod matrix;
mod norm;

pub use bargmann::{
    bargmann_check, bargmann_transform, hermite_function, sample_disc, BargmannCheck, BargmannRow, LineQuadrature,
};
pub use basis::{incomplete_gamma_ratio, log_onb_constant, onb_monomial, onb_monomial_log, MAX_DEGREE};
pub use gabor::{fock_point, gabor_atom, gabor_inner_product};
pub use kernel::{normalized_kernel, normalized_kernel_overlap, reproducing_kernel};
pub use matrix::{evaluation_matrix, smallest_singular_value, write_matrix_csv, EvaluationMatrix, MAX_SWEEPS};
pub use norm::{fock_norm_on_grid, fock_norm_truncated, NormEstimate, CONVERGENCE_RATIO};

/// `K = ceil(2 pi R^2)`, twice the expected number of lattice points in the
/// disc of radius `R`.
pub fn degree_budget(radius: f64) -> usize {
    (2.0 * std::f64::consts::PI * radius * radius).ceil() as usize
}
