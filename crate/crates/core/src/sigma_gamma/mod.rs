//! The canonical product
//! `sigma_Gamma(z) = (z - gamma_00) prod' (1 - z/gamma) exp(z/gamma + d^2 z^2 / (2 lambda^2))`
//! of a `d`-regular sequence.
//!
//! The stored points give the product over `|lambda| <= radius` exactly.
//! Past the stored radius the sequence is continued by the unperturbed points
//! `lambda / d`, whose factors are those of `sigma_Lambda(dz)` and fold into
//! the lattice tail series. [`continuation_bound`] bounds how far any other
//! admissible continuation could move the log-modulus.

mod hfactors;
mod scan;

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logcomplex::LogComplex;
use crate::sequences::{DRegularSequence, LatticeIndex, PhiProfile};
use crate::sigma_weierstrass::lattice_sums::LatticeTail;

pub use hfactors::{h_factors, HFactorDiagnostic, DEFAULT_EPS, DISTANCE_GUARD};
pub use scan::{growth_exponent_scan, write_growth_scan_csv, GrowthRow, GrowthSample, GrowthScan};

const BLOCK: usize = 1024;

/// Largest `d|z| / (R - sqrt 2)` accepted for the lattice tail series.
const MAX_SERIES_RATIO: f64 = 0.8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaGammaEvaluation {
    pub value: LogComplex,
    pub truncation_radius: f64,
    /// Bound on the absolute error of the log-modulus.
    pub tail_bound: f64,
}

#[derive(Clone, Copy, Debug)]
struct Factor {
    gamma: Complex64,
    inv_gamma: Complex64,
    /// `d^2 / (2 lambda^2)`
    quad: Complex64,
}

/// Evaluator for `sigma_Gamma` on the disc `|z| <= z_max`.
#[derive(Clone, Debug)]
pub struct SigmaGamma {
    d: f64,
    radius: f64,
    phi: PhiProfile,
    z_max: f64,
    origin: Option<Complex64>,
    factors: Vec<Factor>,
    tail: LatticeTail,
}

impl SigmaGamma {
    /// Fails with [`Error::InsufficientRadius`] when `d z_max` is too close to
    /// the stored radius for the lattice tail series to converge.
    pub fn new(seq: &DRegularSequence, z_max: f64, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")));
        }
        let d = seq.d();
        let radius = seq.radius();
        let needed = d * z_max / MAX_SERIES_RATIO + SQRT_2;
        let radius_ok = radius >= needed.max(3.0);
        if !radius_ok {
            return Err(Error::InsufficientRadius {
                stored: radius,
                required: needed.max(3.0),
            });
        }
        let mut origin = None;
        let mut factors = Vec::with_capacity(seq.len());
        for p in seq.points() {
            if p.index.is_origin() {
                origin = Some(p.gamma);
                continue;
            }
            let l = p.index.point();
            factors.push(Factor {
                gamma: p.gamma,
                inv_gamma: p.gamma.inv(),
                quad: (d * d) / (2.0 * l * l),
            });
        }
        Ok(SigmaGamma {
            d,
            radius,
            phi: seq.phi().clone(),
            z_max,
            origin,
            factors,
            tail: LatticeTail::new(radius, (d * z_max).max(1e-3), tol),
        })
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    pub fn truncation_radius(&self) -> f64 {
        self.radius
    }

    /// Error bound for `|z| = z_abs`: lattice series remainder plus
    /// [`continuation_bound`].
    pub fn tail_bound(&self, z_abs: f64) -> f64 {
        self.tail.error_bound + continuation_bound(&self.phi, self.d, z_abs, self.radius)
    }

    fn check_range(&self, z: Complex64) {
        assert!(
            z.norm() <= self.z_max * (1.0 + 1e-12),
            "|z| = {} outside evaluator range {}",
            z.norm(),
            self.z_max
        );
    }

    /// `log sigma_Gamma(z)`. Panics if `|z| > z_max`.
    pub fn log_sigma(&self, z: Complex64) -> LogComplex {
        self.check_range(z);
        let mut total = Complex64::new(0.0, 0.0);
        if let Some(g0) = self.origin {
            if z == g0 {
                return LogComplex::ZERO;
            }
            total += (z - g0).ln();
        }
        let z2 = z * z;
        let blocks: Vec<Option<Complex64>> = self
            .factors
            .par_chunks(BLOCK)
            .map(|chunk| {
                let mut s = Complex64::new(0.0, 0.0);
                for f in chunk {
                    if z == f.gamma {
                        return None;
                    }
                    let a = z * f.inv_gamma;
                    let re = 0.5 * (a.norm_sqr() - 2.0 * a.re).ln_1p();
                    let im = (-a.im).atan2(1.0 - a.re);
                    s += Complex64::new(re, im) + a + z2 * f.quad;
                }
                Some(s)
            })
            .collect();
        for b in blocks {
            match b {
                Some(s) => total += s,
                None => return LogComplex::ZERO,
            }
        }
        total += self.tail.log_correction(z * self.d);
        LogComplex::new(total.re, total.im)
    }

    /// `log |sigma_Gamma(z)|`, sequential, for use inside parallel loops.
    pub fn log_modulus(&self, z: Complex64) -> f64 {
        self.check_range(z);
        let mut s = 0.0;
        if let Some(g0) = self.origin {
            s += (z - g0).norm().ln();
        }
        let z2 = z * z;
        for f in &self.factors {
            let a = z * f.inv_gamma;
            s += 0.5 * (a.norm_sqr() - 2.0 * a.re).ln_1p() + a.re + (z2 * f.quad).re;
        }
        s + self.tail.log_correction(z * self.d).re
    }

    /// `log F_Gamma(z) = log |sigma_Gamma(z)| - d^2 pi |z|^2 / 2`.
    pub fn log_regularized(&self, z: Complex64) -> f64 {
        self.log_modulus(z) - 0.5 * PI * self.d * self.d * z.norm_sqr()
    }
}

/// Bound on the change of `log |sigma_Gamma(z)|`, `|z| = z_abs`, when the
/// points beyond `radius` are replaced by any others obeying
/// `|lambda - d gamma| <= phi(|lambda|)`.
///
/// Per factor, with `t = |lambda|`, `q = phi(radius)/radius` and
/// `rho = d z_abs / (radius (1 - q))`, the change is at most
/// `z_abs^2 d^2 phi(t) / (t^3 (1 - q)^2 (1 - rho))`. The sum over
/// `t > radius` is compared with an area integral over unit cells.
pub fn continuation_bound(phi: &PhiProfile, d: f64, z_abs: f64, radius: f64) -> f64 {
    if phi.is_zero() || z_abs == 0.0 {
        return 0.0;
    }
    let a = radius - SQRT_2;
    if a < 1.0 {
        return f64::INFINITY;
    }
    let q = phi.at_radius(radius) / radius;
    if q >= 1.0 {
        return f64::INFINITY;
    }
    let rho = d * z_abs / (radius * (1.0 - q));
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    let Some(integral) = phi.tail_integral(a) else {
        return f64::INFINITY;
    };
    let per_term = z_abs * z_abs * d * d / ((1.0 - q) * (1.0 - q) * (1.0 - rho));
    per_term * 2.0 * PI * (1.0 + 0.5 * SQRT_2 / a) * integral
}

/// Smallest radius (found by doubling) at which [`continuation_bound`] and
/// the series condition allow accuracy `tol` at `|z| = z_abs`;
/// infinite if none below `1e18`.
pub fn required_radius(phi: &PhiProfile, d: f64, z_abs: f64, tol: f64) -> f64 {
    let series = (d * z_abs / MAX_SERIES_RATIO + SQRT_2).max(3.0);
    let mut r = series;
    while r < 1e18 {
        if continuation_bound(phi, d, z_abs, r) <= 0.5 * tol {
            return r;
        }
        r *= 2.0;
    }
    f64::INFINITY
}

/// `sigma_Gamma(z)` with a certified log-modulus error of at most `tol`.
pub fn sigma_gamma_log(seq: &DRegularSequence, z: Complex64, tol: f64) -> Result<SigmaGammaEvaluation> {
    let z_abs = z.norm();
    let eval = SigmaGamma::new(seq, z_abs, 0.5 * tol)?;
    let tail_bound = eval.tail_bound(z_abs);
    if tail_bound > tol {
        return Err(Error::InsufficientRadius {
            stored: seq.radius(),
            required: required_radius(seq.phi(), seq.d(), z_abs, tol),
        });
    }
    Ok(SigmaGammaEvaluation {
        value: eval.log_sigma(z),
        truncation_radius: seq.radius(),
        tail_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularizedModulus {
    /// `log F_Gamma(z)`.
    pub log_value: f64,
    /// `F_Gamma(z)` when `log_value <= 700`.
    pub value: Option<f64>,
    pub tail_bound: f64,
}

/// `F_Gamma(z) = |sigma_Gamma(z)| exp(-d^2 pi |z|^2 / 2)`.
pub fn regularized_modulus(seq: &DRegularSequence, z: Complex64, tol: f64) -> Result<RegularizedModulus> {
    let e = sigma_gamma_log(seq, z, tol)?;
    let d = seq.d();
    let log_value = e.value.log_modulus - 0.5 * PI * d * d * z.norm_sqr();
    Ok(RegularizedModulus {
        log_value,
        value: (log_value <= 700.0).then(|| log_value.exp()),
        tail_bound: e.tail_bound,
    })
}

/// `dist(z, Gamma)` over the stored points and the continuation `lambda / d`
/// beyond the stored radius.
pub fn dist_to_gamma(seq: &DRegularSequence, z: Complex64) -> f64 {
    let mut best = seq
        .points()
        .iter()
        .map(|p| (p.gamma - z).norm())
        .fold(f64::INFINITY, f64::min);
    let d = seq.d();
    let w = z * d;
    // continuation points within d * best of dz
    let reach = if best.is_finite() { d * best } else { w.norm() + 2.0 };
    let lo_m = (w.re - reach).floor() as i64;
    let hi_m = (w.re + reach).ceil() as i64;
    let lo_n = (w.im - reach).floor() as i64;
    let hi_n = (w.im + reach).ceil() as i64;
    let r2 = seq.radius() * seq.radius();
    for m in lo_m..=hi_m {
        for n in lo_n..=hi_n {
            let i = LatticeIndex::new(m, n);
            if (i.norm_sqr() as f64) > r2 {
                best = best.min((i.point() / d - z).norm());
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{make_perturbed_lattice, make_scaled_lattice};
    use crate::sigma_weierstrass::SigmaLattice;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lattice_case_matches_weierstrass() {
        let seq = make_scaled_lattice(1.0, 20.0).unwrap();
        let s = SigmaLattice::new(1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let z = Complex64::from_polar(rng.gen_range(0.0..4.0), rng.gen_range(-PI..PI));
            let a = sigma_gamma_log(&seq, z, 1e-10).unwrap();
            let b = s.log_sigma(z);
            assert!((a.value.log_modulus - b.log_modulus).abs() < 1e-8, "z={z}");
            assert!(a.tail_bound <= 1e-10);
        }
    }

    #[test]
    fn scaled_lattice_carries_one_over_d() {
        let s = SigmaLattice::new(1e-12);
        for d in [0.8, 1.25] {
            let seq = make_scaled_lattice(d, 24.0).unwrap();
            let z = Complex64::new(1.7, -2.9);
            let a = sigma_gamma_log(&seq, z, 1e-10).unwrap().value;
            let b = s.log_sigma(z * d);
            assert!((a.log_modulus + d.ln() - b.log_modulus).abs() < 1e-6);
            assert!(a.argument_difference(&b).abs() < 1e-6);
        }
    }

    #[test]
    fn vanishes_on_stored_points() {
        let phi = PhiProfile::power(0.3, 0.4);
        let seq = make_perturbed_lattice(1.0, &phi, 1.0, 7, 12.0).unwrap();
        let e = SigmaGamma::new(&seq, 5.0, 1e-10).unwrap();
        for p in seq.points().iter().filter(|p| p.gamma.norm() < 5.0) {
            assert!(e.log_sigma(p.gamma).is_zero());
            assert_eq!(e.log_modulus(p.gamma), f64::NEG_INFINITY);
        }
    }

    #[test]
    fn perturbed_sequence_needs_radius() {
        let phi = PhiProfile::power(0.3, 0.4);
        let seq = make_perturbed_lattice(1.0, &phi, 1.0, 7, 12.0).unwrap();
        match sigma_gamma_log(&seq, Complex64::new(2.0, 1.0), 1e-8) {
            Err(Error::InsufficientRadius { stored, required }) => {
                assert_eq!(stored, 12.0);
                assert!(required > 12.0);
                assert!(continuation_bound(&phi, 1.0, 5f64.sqrt(), required) <= 1e-8);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bound_shrinks_with_radius() {
        let phi = PhiProfile::power(0.3, 0.4);
        let mut prev = f64::INFINITY;
        for r in [8.0, 16.0, 32.0, 64.0] {
            let b = continuation_bound(&phi, 1.0, 3.0, r);
            assert!(b < prev);
            prev = b;
        }
    }

    #[test]
    fn regularized_matches_weight() {
        let seq = make_scaled_lattice(1.0, 20.0).unwrap();
        let s = SigmaLattice::new(1e-12);
        let z = Complex64::new(2.3, 0.4);
        let f = regularized_modulus(&seq, z, 1e-10).unwrap();
        assert!((f.value.unwrap() - s.log_weight_modulus(z).exp()).abs() < 1e-8);
    }

    #[test]
    fn distance_includes_continuation() {
        let seq = make_scaled_lattice(1.0, 3.0).unwrap();
        let z = Complex64::new(4.1, 0.0);
        assert!((dist_to_gamma(&seq, z) - 0.1).abs() < 1e-12);
        assert!((dist_to_gamma(&seq, Complex64::new(0.3, 0.4)) - 0.5).abs() < 1e-12);
    }
}
