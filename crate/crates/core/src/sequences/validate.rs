use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DRegularSequence, LatticeIndex};
use crate::error::{Error, Result};

/// Relative slack on the deviation bound, absorbing the rounding of
/// `(lambda + rho e^{i theta}) / d`.
const DEVIATION_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `|lambda - d gamma| > phi(|lambda|)`
    Deviation,
    /// `|gamma - gamma'| < c |lambda - lambda'|`
    Separation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: LatticeIndex,
    pub other: Option<LatticeIndex>,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub kappa: f64,
    /// `(R, S_b(R))`, `S_b(R) = sum'_{|lambda| <= R} |d/lambda - 1/gamma| / |lambda|`.
    pub partial_sum_b: Vec<(f64, f64)>,
    /// `(r, S_c(r) / r)`, `S_c(r) = sum'_{|lambda| <= r} |d/lambda - 1/gamma|`.
    pub normalized_sum_c: Vec<(f64, f64)>,
    pub valid: bool,
    pub first_violation: Option<Violation>,
}

/// Checks both regularity conditions over every stored point and pair and
/// computes the comparability constant and the convergent sums.
pub fn validate_d_regular(seq: &DRegularSequence) -> Result<RegularityReport> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let d = seq.d();
    let phi = seq.phi();
    let pts = seq.points();

    let mut first_violation = None;
    for p in pts {
        if !p.index.is_origin() && p.gamma == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroGamma(p.index));
        }
        let dev = (p.index.point() - p.gamma * d).norm();
        let bound = phi.at_radius(p.index.norm());
        if dev > bound + DEVIATION_SLACK * (1.0 + p.index.norm()) {
            first_violation = Some(Violation {
                index: p.index,
                other: None,
                kind: ViolationKind::Deviation,
            });
            break;
        }
    }

    if first_violation.is_none() {
        let c = seq.c();
        let firsts: Vec<Option<(usize, usize)>> = (0..pts.len())
            .into_par_iter()
            .map(|i| {
                for j in (i + 1)..pts.len() {
                    let dl = (pts[i].index.point() - pts[j].index.point()).norm();
                    let dg = (pts[i].gamma - pts[j].gamma).norm();
                    if dg < c * dl * (1.0 - 1e-12) {
                        return Some((i, j));
                    }
                }
                None
            })
            .collect();
        if let Some((i, j)) = firsts.into_iter().flatten().next() {
            first_violation = Some(Violation {
                index: pts[i].index,
                other: Some(pts[j].index),
                kind: ViolationKind::Separation,
            });
        }
    }

    let kappa = pts
        .iter()
        .filter(|p| !p.index.is_origin())
        .map(|p| {
            let r = p.index.norm() / (d * p.gamma.norm());
            r.max(1.0 / r)
        })
        .fold(1.0, f64::max);

    let grid = default_grid(seq.radius());
    Ok(RegularityReport {
        kappa,
        partial_sum_b: partial_sum_b(seq, &grid),
        normalized_sum_c: normalized_sum_c(seq, &grid),
        valid: first_violation.is_none(),
        first_violation,
    })
}

/// Powers of two up to the stored radius, followed by the radius itself.
fn default_grid(radius: f64) -> Vec<f64> {
    let mut g = Vec::new();
    let mut r = 1.0;
    while r < radius {
        g.push(r);
        r *= 2.0;
    }
    if radius >= 1.0 {
        g.push(radius);
    }
    g
}

/// `|d/lambda - 1/gamma|` for each non-origin stored point, in canonical order.
pub(crate) fn deviations(seq: &DRegularSequence) -> impl Iterator<Item = (f64, f64)> + '_ {
    let d = seq.d();
    seq.points().iter().filter(|p| !p.index.is_origin()).map(move |p| {
        let l = p.index.point();
        ((d / l - p.gamma.inv()).norm(), p.index.norm())
    })
}

/// `S_b(R)` on each radius of `grid`.
pub fn partial_sum_b(seq: &DRegularSequence, grid: &[f64]) -> Vec<(f64, f64)> {
    grid.iter()
        .map(|&r| {
            let s: f64 = deviations(seq)
                .take_while(|&(_, l)| l <= r)
                .map(|(dev, l)| dev / l)
                .sum();
            (r, s)
        })
        .collect()
}

/// `S_c(r) / r` on each radius of `grid`.
pub fn normalized_sum_c(seq: &DRegularSequence, grid: &[f64]) -> Vec<(f64, f64)> {
    grid.iter()
        .map(|&r| {
            let s: f64 = deviations(seq).take_while(|&(_, l)| l <= r).map(|(dev, _)| dev).sum();
            (r, s / r)
        })
        .collect()
}
