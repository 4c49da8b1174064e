use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dist_to_gamma;
use crate::error::{Error, Result};
use crate::sequences::{dist_to_lattice, enumerate_lattice, DRegularSequence};

/// Exponent in the split radius `kappa^{1+eps} d |z|` when none is given.
pub const DEFAULT_EPS: f64 = 0.1;

/// Smallest distance to `Gamma` or `Lambda / d` accepted by [`h_factors`].
pub const DISTANCE_GUARD: f64 = 1e-9;

/// Split of `log |h(z)|`, where
/// `h(z) = sigma_Gamma(z) / sigma_Lambda(dz) * dist(dz, Lambda) / dist(z, Gamma)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HFactorDiagnostic {
    pub eps: f64,
    pub kappa: f64,
    pub split_radius: f64,
    pub log_h1: f64,
    pub log_h2: f64,
    pub log_h3: f64,
    pub dist_gamma: f64,
    pub dist_lambda: f64,
}

impl HFactorDiagnostic {
    pub fn log_h(&self) -> f64 {
        self.log_h1 + self.log_h2 + self.log_h3
    }

    /// `log |sigma_Gamma(z)|` reassembled from the factors and
    /// `log |sigma_Lambda(dz)|`.
    pub fn reconstruct(&self, log_sigma_lattice_dz: f64) -> f64 {
        self.log_h() + log_sigma_lattice_dz + self.dist_gamma.ln() - self.dist_lambda.ln()
    }
}

/// Computes `log |h_1|`, `log |h_2|`, `log |h_3|` split at
/// `|lambda| = kappa^{1+eps} d |z|`.
///
/// Factors beyond the stored radius are those of the continuation
/// `gamma = lambda / d`, for which every `h` term is exactly zero.
pub fn h_factors(seq: &DRegularSequence, z: Complex64, eps: f64) -> Result<HFactorDiagnostic> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if seq.len() != enumerate_lattice(seq.radius()).len() {
        return Err(Error::Precondition(
            "h factors need every index of the stored disc".into(),
        ));
    }
    let d = seq.d();
    let w = z * d;
    let dist_gamma = dist_to_gamma(seq, z);
    let dist_lambda = dist_to_lattice(w);
    let distance = dist_gamma.min(dist_lambda / d);
    if distance < DISTANCE_GUARD {
        return Err(Error::DegeneratePoint {
            re: z.re,
            im: z.im,
            distance,
        });
    }
    let kappa = seq
        .points()
        .iter()
        .filter(|p| !p.index.is_origin())
        .map(|p| {
            let r = p.index.norm() / (d * p.gamma.norm());
            r.max(1.0 / r)
        })
        .fold(1.0, f64::max);
    let split = kappa.powf(1.0 + eps) * d * z.norm();

    let ln_abs_one_minus = |a: Complex64| 0.5 * (a.norm_sqr() - 2.0 * a.re).ln_1p();
    let mut log_h1 = 0.0;
    let mut inner_products = 0.0;
    let mut log_h3 = 0.0;
    let mut gamma_00 = None;
    for p in seq.points() {
        if p.index.is_origin() {
            gamma_00 = Some(p.gamma);
            continue;
        }
        let l = p.index.point();
        let a = z / p.gamma;
        let b = w / l;
        let lin = (a - b).re;
        let prod = ln_abs_one_minus(a) - ln_abs_one_minus(b);
        if p.index.norm() <= split {
            log_h1 += lin;
            inner_products += prod;
        } else {
            log_h3 += lin + prod;
        }
    }
    let g00 = gamma_00.ok_or(Error::MissingIndex(crate::sequences::LatticeIndex::ORIGIN))?;
    let log_h2 = dist_lambda.ln() - dist_gamma.ln() + (z - g00).norm().ln() - w.norm().ln() + inner_products;
    Ok(HFactorDiagnostic {
        eps,
        kappa,
        split_radius: split,
        log_h1,
        log_h2,
        log_h3,
        dist_gamma,
        dist_lambda,
    })
}
