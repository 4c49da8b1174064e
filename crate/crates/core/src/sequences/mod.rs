//! The integer lattice and its `d`-regular perturbations.
//!
//! A [`DRegularSequence`] stores the points `gamma_mn` for every lattice index
//! with `|lambda_mn| <= radius`, the scale `d`, the separation constant `c`
//! and the majorant profile `phi`. Everything that sums over a sequence walks
//! the points in canonical index order (`|lambda|`, then `arg lambda`).

mod diagnostics;
mod io;
mod lattice;
mod phi;
mod validate;

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use diagnostics::{quadratic_partial_sums, remove_points, upper_density};
pub use io::{read_points_csv, write_points_csv, SequenceSpec};
pub use lattice::{dist_to_lattice, enumerate_lattice, nearest_index, LatticeIndex};
pub use phi::{phi_admissible, PhiAdmissibility, PhiKind, PhiProfile, PHI_GRID_MAX};
pub use validate::{normalized_sum_c, partial_sum_b, validate_d_regular, RegularityReport, Violation, ViolationKind};

/// Maximum number of times the perturbation radius of a single point is
/// halved while enforcing separation.
pub const MAX_HALVINGS: u32 = 8;

/// A stored point of a sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeqPoint {
    pub index: LatticeIndex,
    pub gamma: Complex64,
}

/// Finite window of a `d`-regular sequence. Immutable after construction.
#[derive(Clone, Debug)]
pub struct DRegularSequence {
    d: f64,
    c: f64,
    phi: PhiProfile,
    radius: f64,
    points: Arc<Vec<SeqPoint>>,
    lookup: Arc<HashMap<LatticeIndex, usize>>,
}

impl DRegularSequence {
    /// Builds a sequence from explicit points. Points are re-sorted into
    /// canonical order; `gamma == 0` at a non-origin index is rejected.
    pub fn from_points(d: f64, c: f64, phi: PhiProfile, radius: f64, mut points: Vec<SeqPoint>) -> Result<Self> {
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::InvalidArgument(format!("d must be positive, got {d}")));
        }
        if points.is_empty() {
            return Err(Error::EmptySequence);
        }
        points.sort_by_key(|p| p.index);
        let mut lookup = HashMap::with_capacity(points.len());
        for (k, p) in points.iter().enumerate() {
            if !p.index.is_origin() && p.gamma == Complex64::new(0.0, 0.0) {
                return Err(Error::ZeroGamma(p.index));
            }
            if !(p.gamma.re.is_finite() && p.gamma.im.is_finite()) {
                return Err(Error::InvalidArgument(format!("non-finite gamma at {}", p.index)));
            }
            if lookup.insert(p.index, k).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate index {}", p.index)));
            }
        }
        Ok(DRegularSequence {
            d,
            c,
            phi,
            radius,
            points: Arc::new(points),
            lookup: Arc::new(lookup),
        })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn phi(&self) -> &PhiProfile {
        &self.phi
    }

    /// Every index with `|lambda| <= radius` was generated (some may have
    /// been removed since).
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn points(&self) -> &[SeqPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, index: LatticeIndex) -> Option<Complex64> {
        self.lookup.get(&index).map(|&k| self.points[k].gamma)
    }

    pub fn contains(&self, index: LatticeIndex) -> bool {
        self.lookup.contains_key(&index)
    }

    /// The point at the origin index, if stored.
    pub fn gamma_origin(&self) -> Option<Complex64> {
        self.get(LatticeIndex::ORIGIN)
    }

    /// Radius of the disc (around the origin, in the `gamma` plane) that is
    /// guaranteed to contain no point with an index beyond `radius`.
    ///
    /// For `|lambda| > R`, `d|gamma| >= |lambda| - phi(|lambda|) >=
    /// |lambda| (1 - phi(R)/R)` because `phi(t)/t` is non-increasing.
    pub fn gamma_coverage(&self) -> f64 {
        if self.radius < 1.0 {
            return 0.0;
        }
        let q = self.phi.at_radius(self.radius) / self.radius;
        (self.radius * (1.0 - q)).max(0.0) / self.d
    }

    /// Same index set and profile, with every point multiplied by `factor`;
    /// the result is `d / factor`-regular.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(Error::InvalidArgument("rescale factor must be positive".into()));
        }
        let points = self
            .points
            .iter()
            .map(|p| SeqPoint {
                index: p.index,
                gamma: p.gamma * factor,
            })
            .collect();
        DRegularSequence::from_points(self.d / factor, self.c * factor, self.phi.clone(), self.radius, points)
    }

    /// Smallest ratio `|gamma - gamma'| / |lambda - lambda'|` over stored pairs.
    pub fn measured_separation(&self) -> f64 {
        let pts = &self.points;
        (0..pts.len())
            .into_par_iter()
            .map(|i| {
                let mut best = f64::INFINITY;
                for j in (i + 1)..pts.len() {
                    let dl = (pts[i].index.point() - pts[j].index.point()).norm();
                    let dg = (pts[i].gamma - pts[j].gamma).norm();
                    best = best.min(dg / dl);
                }
                best
            })
            .collect::<Vec<f64>>()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }
}

/// `Gamma = Lambda / d` restricted to `|lambda| <= radius`.
pub fn make_scaled_lattice(d: f64, radius: f64) -> Result<DRegularSequence> {
    if !(d > 0.0) {
        return Err(Error::InvalidArgument(format!("d must be positive, got {d}")));
    }
    let points = enumerate_lattice(radius)
        .into_iter()
        .map(|index| SeqPoint {
            index,
            gamma: index.point() / d,
        })
        .collect();
    DRegularSequence::from_points(d, 1.0 / d, PhiProfile::zero(), radius, points)
}

/// Default separation target used when the caller does not supply one.
pub fn default_separation(d: f64) -> f64 {
    0.25 / d
}

/// Random perturbation of `Lambda / d` with `|lambda - d gamma| <=
/// fill * phi(max(1, |lambda|))`, separated at level `default_separation(d)`.
pub fn make_perturbed_lattice(d: f64, phi: &PhiProfile, fill: f64, seed: u64, radius: f64) -> Result<DRegularSequence> {
    make_perturbed_lattice_separated(d, phi, fill, seed, radius, default_separation(d))
}

/// As [`make_perturbed_lattice`] with an explicit separation target
/// `c_target`. Offending pairs have their perturbation radius halved, at
/// most [`MAX_HALVINGS`] times per point.
pub fn make_perturbed_lattice_separated(
    d: f64,
    phi: &PhiProfile,
    fill: f64,
    seed: u64,
    radius: f64,
    c_target: f64,
) -> Result<DRegularSequence> {
    if !(d > 0.0) {
        return Err(Error::InvalidArgument(format!("d must be positive, got {d}")));
    }
    if !(0.0..=1.0).contains(&fill) {
        return Err(Error::InvalidArgument(format!("fill must lie in [0, 1], got {fill}")));
    }
    if !(c_target > 0.0) {
        return Err(Error::InvalidArgument("separation target must be positive".into()));
    }
    let report = phi_admissible(phi);
    if let Some((t, reason)) = report.failure {
        return Err(Error::PhiUndefined { t, reason });
    }
    if !report.admissible() {
        return Err(Error::InvalidArgument("phi profile is not admissible".into()));
    }

    let indices = enumerate_lattice(radius);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angles: Vec<f64> = indices.iter().map(|_| 2.0 * PI * rng.gen::<f64>()).collect();
    let mut rho: Vec<f64> = indices.iter().map(|i| fill * phi.at_radius(i.norm())).collect();
    let mut halvings = vec![0u32; indices.len()];

    loop {
        let gammas: Vec<Complex64> = indices
            .iter()
            .zip(&rho)
            .zip(&angles)
            .map(|((i, &r), &t)| (i.point() + Complex64::from_polar(r, t)) / d)
            .collect();
        let offending = separation_offenders(&indices, &gammas, c_target);
        if offending.is_empty() {
            let points = indices
                .iter()
                .zip(gammas)
                .map(|(&index, gamma)| SeqPoint { index, gamma })
                .collect();
            let mut seq = DRegularSequence::from_points(d, c_target, phi.clone(), radius, points)?;
            seq.c = seq.measured_separation();
            return Ok(seq);
        }
        let mut marked = vec![false; indices.len()];
        for &(i, j) in &offending {
            marked[i] = true;
            marked[j] = true;
        }
        let (fi, fj) = offending[0];
        for (k, m) in marked.iter().enumerate() {
            if !*m {
                continue;
            }
            if halvings[k] >= MAX_HALVINGS {
                return Err(Error::SeparationUnachievable(indices[fi], indices[fj]));
            }
            rho[k] *= 0.5;
            halvings[k] += 1;
        }
    }
}

/// Pairs `(i, j)`, `i < j`, with `|gamma_i - gamma_j| < c |lambda_i - lambda_j|`,
/// in lexicographic order.
fn separation_offenders(indices: &[LatticeIndex], gammas: &[Complex64], c: f64) -> Vec<(usize, usize)> {
    (0..indices.len())
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            for j in (i + 1)..indices.len() {
                let dl = (indices[i].point() - indices[j].point()).norm();
                let dg = (gammas[i] - gammas[j]).norm();
                if dg < c * dl {
                    bad.push((i, j));
                }
            }
            bad
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_lattice_basics() {
        let s = make_scaled_lattice(2.0, 2.0).unwrap();
        assert_eq!(s.len(), 13);
        assert_eq!(s.get(LatticeIndex::new(1, 0)).unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(s.c(), 0.5);
        assert!(s.phi().is_zero());
    }

    #[test]
    fn zero_fill_reproduces_scaled_lattice() {
        let a = make_perturbed_lattice(1.3, &PhiProfile::power(0.3, 0.4), 0.0, 11, 6.0).unwrap();
        let b = make_scaled_lattice(1.3, 6.0).unwrap();
        assert_eq!(a.points(), b.points());
    }

    #[test]
    fn seeded_generation_is_bit_identical() {
        let phi = PhiProfile::power(0.3, 0.4);
        let a = make_perturbed_lattice(1.0, &phi, 1.0, 7, 10.0).unwrap();
        let b = make_perturbed_lattice(1.0, &phi, 1.0, 7, 10.0).unwrap();
        for (p, q) in a.points().iter().zip(b.points()) {
            assert_eq!(p.gamma.re.to_bits(), q.gamma.re.to_bits());
            assert_eq!(p.gamma.im.to_bits(), q.gamma.im.to_bits());
        }
        let c = make_perturbed_lattice(1.0, &phi, 1.0, 8, 10.0).unwrap();
        assert_ne!(a.points(), c.points());
    }

    #[test]
    fn impossible_separation_is_reported() {
        // target above 1/d can never hold for neighbouring points
        let err = make_perturbed_lattice_separated(1.0, &PhiProfile::constant(0.4), 1.0, 3, 3.0, 1.5).unwrap_err();
        assert!(matches!(err, Error::SeparationUnachievable(_, _)));
    }

    #[test]
    fn rejects_inadmissible_profile() {
        let err = make_perturbed_lattice(1.0, &PhiProfile::power(1.0, 1.0), 0.5, 1, 3.0).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn zero_gamma_rejected() {
        let pts = vec![
            SeqPoint {
                index: LatticeIndex::ORIGIN,
                gamma: Complex64::new(0.0, 0.0),
            },
            SeqPoint {
                index: LatticeIndex::new(1, 0),
                gamma: Complex64::new(0.0, 0.0),
            },
        ];
        let err = DRegularSequence::from_points(1.0, 1.0, PhiProfile::zero(), 1.0, pts).unwrap_err();
        assert_eq!(err, Error::ZeroGamma(LatticeIndex::new(1, 0)));
    }

    #[test]
    fn coverage_accounts_for_drift() {
        let s = make_scaled_lattice(0.5, 10.0).unwrap();
        assert_eq!(s.gamma_coverage(), 20.0);
        let p = make_perturbed_lattice(1.0, &PhiProfile::constant(0.4), 1.0, 1, 10.0).unwrap();
        assert!((p.gamma_coverage() - 9.6).abs() < 1e-12);
    }
}
