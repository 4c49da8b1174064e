use std::collections::HashSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{DRegularSequence, LatticeIndex, SeqPoint};
use crate::error::{Error, Result};

/// Disc-counting density `max_z #(Gamma ∩ D(z, r)) / (pi r^2)` for each `r`.
///
/// Centers run over the half-unit grid inside the disc of radius
/// `coverage - r`, where `coverage` is [`DRegularSequence::gamma_coverage`].
/// When that disc is empty only the origin is used.
pub fn upper_density(seq: &DRegularSequence, r_grid: &[f64]) -> Vec<(f64, f64)> {
    let coverage = seq.gamma_coverage();
    let gammas: Vec<Complex64> = seq.points().iter().map(|p| p.gamma).collect();
    r_grid
        .iter()
        .map(|&r| {
            let span = coverage - r;
            let mut centers = Vec::new();
            if span > 0.0 {
                let k = (span / 0.5).floor() as i64;
                for a in -k..=k {
                    for b in -k..=k {
                        let c = Complex64::new(0.5 * a as f64, 0.5 * b as f64);
                        if c.norm() <= span {
                            centers.push(c);
                        }
                    }
                }
            } else {
                centers.push(Complex64::new(0.0, 0.0));
            }
            let r2 = r * r;
            let best = centers
                .par_iter()
                .map(|&c| gammas.iter().filter(|&&g| (g - c).norm_sqr() <= r2).count())
                .max()
                .unwrap_or(0);
            (r, best as f64 / (PI * r2))
        })
        .collect()
}

/// `|sum_{0 < |gamma| < R} 1 / gamma^2|` for each `R`, summed in canonical
/// index order.
pub fn quadratic_partial_sums(seq: &DRegularSequence, r_grid: &[f64]) -> Vec<(f64, f64)> {
    r_grid
        .iter()
        .map(|&r| {
            let mut s = Complex64::new(0.0, 0.0);
            for p in seq.points() {
                let m = p.gamma.norm();
                if m > 0.0 && m < r {
                    s += (p.gamma * p.gamma).inv();
                }
            }
            (r, s.norm())
        })
        .collect()
}

/// Copy of `seq` without the listed indices. The separation constant is
/// re-measured on the remaining points.
pub fn remove_points(seq: &DRegularSequence, indices: &[LatticeIndex]) -> Result<DRegularSequence> {
    for &i in indices {
        if !seq.contains(i) {
            return Err(Error::MissingIndex(i));
        }
    }
    if indices.is_empty() {
        return Ok(seq.clone());
    }
    let drop: HashSet<LatticeIndex> = indices.iter().copied().collect();
    let kept: Vec<SeqPoint> = seq
        .points()
        .iter()
        .filter(|p| !drop.contains(&p.index))
        .copied()
        .collect();
    if kept.is_empty() {
        return Err(Error::EmptySequence);
    }
    let provisional = DRegularSequence::from_points(seq.d(), seq.c(), seq.phi().clone(), seq.radius(), kept.clone())?;
    let c = if kept.len() > 1 {
        provisional.measured_separation()
    } else {
        seq.c()
    };
    DRegularSequence::from_points(seq.d(), c, seq.phi().clone(), seq.radius(), kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{make_perturbed_lattice, make_scaled_lattice, PhiProfile};

    #[test]
    fn lattice_density_tends_to_one() {
        let s = make_scaled_lattice(1.0, 40.0).unwrap();
        let dens = upper_density(&s, &[15.0]);
        assert!((dens[0].1 - 1.0).abs() < 0.05, "{dens:?}");
    }

    #[test]
    fn dilated_lattice_density_quarter() {
        // gamma = 2 lambda
        let s = make_scaled_lattice(0.5, 20.0).unwrap();
        let dens = upper_density(&s, &[20.0]);
        assert!((dens[0].1 - 0.25).abs() < 0.02, "{dens:?}");
        assert!(upper_density(&s, &[]).is_empty());
    }

    #[test]
    fn lattice_quadratic_sums_cancel() {
        for d in [1.0, 0.8, 1.25] {
            let s = make_scaled_lattice(d, 20.0).unwrap();
            for (_, v) in quadratic_partial_sums(&s, &[2.0, 5.0, 10.0, 15.0]) {
                assert!(v < 1e-12, "d={d}: {v}");
            }
        }
    }

    #[test]
    fn perturbed_quadratic_sums_bounded() {
        let s = make_perturbed_lattice(1.0, &PhiProfile::power(0.3, 0.4), 1.0, 7, 40.0).unwrap();
        let sums = quadratic_partial_sums(&s, &[4.0, 8.0, 16.0, 32.0]);
        let max = sums.iter().map(|x| x.1).fold(0.0, f64::max);
        let min = sums.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
        // the tail beyond 4 is a small perturbation of a cancelling sum
        assert!(max - min < 1.0, "{sums:?}");
    }

    #[test]
    fn removal_semantics() {
        let s = make_scaled_lattice(1.0, 3.0).unwrap();
        let same = remove_points(&s, &[]).unwrap();
        assert_eq!(same.points(), s.points());
        let r = remove_points(&s, &[LatticeIndex::ORIGIN, LatticeIndex::new(1, 0)]).unwrap();
        assert_eq!(r.len(), s.len() - 2);
        assert!(!r.contains(LatticeIndex::ORIGIN));
        assert_eq!(r.c(), 1.0);
        assert!(matches!(
            remove_points(&s, &[LatticeIndex::new(9, 9)]),
            Err(Error::MissingIndex(_))
        ));
        let all: Vec<LatticeIndex> = s.points().iter().map(|p| p.index).collect();
        assert_eq!(remove_points(&s, &all).unwrap_err(), Error::EmptySequence);
    }
}
