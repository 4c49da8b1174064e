use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::PolarQuadrature;

/// Increment ratio below which a truncated norm counts as stabilized.
pub const CONVERGENCE_RATIO: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    /// Squared norm over the largest disc.
    pub value: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    /// `(R_i, value_i)` in increasing `R_i`.
    pub increment_history: Vec<(f64, f64)>,
    /// Last increment below [`CONVERGENCE_RATIO`] times the previous value.
    pub converged: bool,
}

impl NormEstimate {
    /// Successive differences `value_i - value_{i-1}`, starting from the
    /// second radius.
    pub fn increments(&self) -> Vec<f64> {
        self.increment_history.windows(2).map(|w| w[1].1 - w[0].1).collect()
    }

    fn from_history(history: Vec<(f64, f64)>) -> Self {
        let n = history.len();
        let converged = n >= 2 && {
            let prev = history[n - 2].1;
            history[n - 1].1 - prev < CONVERGENCE_RATIO * prev
        };
        let (radius, value) = history[n - 1];
        NormEstimate {
            value,
            radius,
            increment_history: history,
            converged,
        }
    }
}

/// `int_{|z| <= R} |f|^2 e^{-pi |z|^2} dA` for every `R` in `radii`
/// (strictly increasing), with `log_abs_f` returning `log |f(z)|`.
pub fn fock_norm_on_grid<F>(log_abs_f: F, radii: &[f64], quad: &PolarQuadrature) -> Result<NormEstimate>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    if radii.is_empty() || radii.windows(2).any(|w| !(w[1] > w[0])) || !(radii[0] > 0.0) {
        return Err(Error::InvalidArgument(
            "radii must be positive and strictly increasing".into(),
        ));
    }
    let edges = PolarQuadrature::band_edges(radii);
    let bands = quad
        .annulus_integrals(&edges, |z| 2.0 * log_abs_f(z) - PI * z.norm_sqr())
        .map_err(|z| Error::NonFiniteNode { re: z.re, im: z.im })?;
    let mut history = Vec::with_capacity(radii.len());
    let mut acc = 0.0;
    let mut k = 0;
    for (band, pair) in bands.iter().zip(edges.windows(2)) {
        acc += band;
        while k < radii.len() && (pair[1] - radii[k]).abs() < 1e-12 {
            history.push((radii[k], acc));
            k += 1;
        }
    }
    Ok(NormEstimate::from_history(history))
}

/// Truncated norm at `R`, with history at `R/4`, `R/2`, `R`.
pub fn fock_norm_truncated<F>(log_abs_f: F, radius: f64, quad: &PolarQuadrature) -> Result<NormEstimate>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    fock_norm_on_grid(log_abs_f, &[0.25 * radius, 0.5 * radius, radius], quad)
}
