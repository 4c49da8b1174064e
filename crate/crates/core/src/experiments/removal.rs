use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{fock_norm_on_grid, NormEstimate};
use crate::quadrature::PolarQuadrature;
use crate::sequences::{DRegularSequence, LatticeIndex};
use crate::sigma_weierstrass::SigmaLattice;

/// Points removed from the lattice, in order: `0`, then `1`.
pub const REMOVAL_ORDER: [LatticeIndex; 2] = [LatticeIndex::ORIGIN, LatticeIndex { m: 1, n: 0 }];

/// Consecutive annulus increments must keep at least this ratio for the
/// one-point removal to count as divergent.
pub const DIVERGENCE_RATIO: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRemovalReport {
    pub schema_version: u32,
    pub k: usize,
    pub removed: Vec<LatticeIndex>,
    pub norm: NormEstimate,
    /// `N(R_i) - N(R_{i-1})`.
    pub increments: Vec<f64>,
    /// Ratio of each increment to the one before.
    pub increment_ratios: Vec<f64>,
    /// Increment ratios all at least [`DIVERGENCE_RATIO`].
    pub divergent: bool,
}

/// Truncated norms of `sigma_Lambda(z) / prod_{j<k} (z - lambda_j)`.
pub fn point_removal_study(k: usize, r_grid: &[f64], quad: &PolarQuadrature) -> Result<PointRemovalReport> {
    if k > 2 {
        return Err(Error::InvalidArgument(format!("k must be 0, 1 or 2, got {k}")));
    }
    let removed: Vec<LatticeIndex> = REMOVAL_ORDER[..k].to_vec();
    let zeros: Vec<Complex64> = removed.iter().map(|i| i.point()).collect();
    let sigma = SigmaLattice::new(1e-12);
    let norm = fock_norm_on_grid(
        |z| sigma.log_modulus(z) - zeros.iter().map(|&l| (z - l).norm().ln()).sum::<f64>(),
        r_grid,
        quad,
    )?;
    let increments = norm.increments();
    let increment_ratios: Vec<f64> = increments.windows(2).map(|w| w[1] / w[0]).collect();
    let divergent = !increment_ratios.is_empty() && increment_ratios.iter().all(|&r| r >= DIVERGENCE_RATIO);
    Ok(PointRemovalReport {
        schema_version: crate::SCHEMA_VERSION,
        k,
        removed,
        norm,
        increments,
        increment_ratios,
        divergent,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscCheck {
    pub r: f64,
    /// `c / 2`: discs of this radius around the points never overlap.
    pub r_hat: f64,
    pub disjoint: bool,
    /// First overlapping pair in canonical order and their distance.
    pub offending: Option<(LatticeIndex, LatticeIndex, f64)>,
}

/// Checks that discs of radius `r` centred at the stored points are
/// pairwise disjoint.
pub fn disc_removal_check(seq: &DRegularSequence, r: f64) -> Result<DiscCheck> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("disc radius must be positive, got {r}")));
    }
    let pts = seq.points();
    let hits: Vec<Option<(usize, usize, f64)>> = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            for j in (i + 1)..pts.len() {
                let dist = (pts[i].gamma - pts[j].gamma).norm();
                if dist < 2.0 * r {
                    return Some((i, j, dist));
                }
            }
            None
        })
        .collect();
    let offending = hits
        .into_iter()
        .flatten()
        .next()
        .map(|(i, j, dist)| (pts[i].index, pts[j].index, dist));
    Ok(DiscCheck {
        r,
        r_hat: 0.5 * seq.c(),
        disjoint: offending.is_none(),
        offending,
    })
}
