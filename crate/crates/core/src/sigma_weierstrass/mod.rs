//! The Weierstrass sigma function of the square lattice `Z + iZ`.
//!
//! `sigma(z) = z prod' (1 - z/lambda) exp(z/lambda + z^2/(2 lambda^2))`.
//! Arguments are reduced to the cell `[-1/2, 1/2)^2` with
//! `sigma(z + lambda) = (-1)^{m+n+mn} exp(pi conj(lambda) (z + lambda/2)) sigma(z)`,
//! the product is taken over a small disc and the rest of the lattice is
//! folded into a short power series (see [`lattice_sums`]).

pub mod lattice_sums;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logcomplex::LogComplex;
use crate::sequences::{dist_to_lattice, nearest_index, LatticeIndex};
use crate::SCHEMA_VERSION;
use lattice_sums::{lattice_points, LatticeTail};

/// Product disc used for reduced arguments.
const CELL_TRUNCATION: f64 = 3.0;

/// Truncated product plus series tail, valid for `|w| <= w_max`.
#[derive(Clone, Debug)]
pub struct SigmaLattice {
    table: Vec<Complex64>,
    tail: LatticeTail,
}

impl SigmaLattice {
    /// Evaluator for reduced arguments (`|w| <= 1/sqrt 2`).
    pub fn new(tol: f64) -> Self {
        Self::with_truncation(CELL_TRUNCATION, FRAC_1_SQRT_2, tol)
    }

    /// Product over `|lambda| <= radius`, tail series accurate to `tol` for
    /// `|w| <= w_max`. Panics unless `w_max < radius - sqrt 2`.
    pub fn with_truncation(radius: f64, w_max: f64, tol: f64) -> Self {
        SigmaLattice {
            table: lattice_points(radius),
            tail: LatticeTail::new(radius, w_max, tol),
        }
    }

    pub fn truncation_radius(&self) -> f64 {
        self.tail.radius
    }

    /// Bound on the absolute error of `log sigma` from the series tail.
    pub fn tail_bound(&self) -> f64 {
        self.tail.error_bound
    }

    pub fn tail(&self) -> &LatticeTail {
        &self.tail
    }

    /// Unwrapped `log sigma(w)` without reduction; `None` at a zero.
    fn product_log(&self, w: Complex64) -> Option<Complex64> {
        if w == Complex64::new(0.0, 0.0) {
            return None;
        }
        let mut s = w.ln();
        for &l in &self.table {
            if w == l {
                return None;
            }
            let q = w / l;
            let re = 0.5 * (q.norm_sqr() - 2.0 * q.re).ln_1p();
            let im = (-q.im).atan2(1.0 - q.re);
            s += Complex64::new(re, im) + q + 0.5 * q * q;
        }
        Some(s + self.tail.log_correction(w))
    }

    fn product_log_modulus(&self, w: Complex64) -> f64 {
        if w == Complex64::new(0.0, 0.0) {
            return f64::NEG_INFINITY;
        }
        let mut s = w.norm().ln();
        for &l in &self.table {
            let q = w / l;
            let t = q.norm_sqr() - 2.0 * q.re;
            if t == -1.0 {
                return f64::NEG_INFINITY;
            }
            s += 0.5 * t.ln_1p() + q.re + 0.5 * (q.re * q.re - q.im * q.im);
        }
        s + self.tail.log_correction(w).re
    }

    /// `sigma(w)` evaluated directly, for `|w|` within the evaluator's range.
    pub fn log_sigma_unreduced(&self, w: Complex64) -> LogComplex {
        match self.product_log(w) {
            Some(s) => LogComplex::new(s.re, s.im),
            None => LogComplex::ZERO,
        }
    }

    /// Derivative of `log sigma` at `w`: the Weierstrass zeta function.
    pub fn zeta(&self, w: Complex64) -> Complex64 {
        let mut s = w.inv();
        for &l in &self.table {
            s += (w - l).inv() + l.inv() + w / (l * l);
        }
        s + self.tail.derivative_correction(w)
    }

    /// `sigma(z)` for any `z`, via reduction to the fundamental cell.
    pub fn log_sigma(&self, z: Complex64) -> LogComplex {
        let (idx, z0) = reduce(z);
        let Some(base) = self.product_log(z0) else {
            return LogComplex::ZERO;
        };
        let l = idx.point();
        let shift = PI * l.conj() * (z0 + 0.5 * l);
        let sign = if quasi_period_sign_negative(idx) { PI } else { 0.0 };
        LogComplex::new(base.re + shift.re, base.im + shift.im + sign)
    }

    /// `log |sigma(z)|`.
    pub fn log_modulus(&self, z: Complex64) -> f64 {
        let (idx, z0) = reduce(z);
        let l = idx.point();
        self.product_log_modulus(z0) + PI * ((l.conj() * z0).re + 0.5 * l.norm_sqr())
    }

    /// `log G(z) = log |sigma(z)| - pi |z|^2 / 2`, computed on the reduced
    /// argument, where it is exactly periodic.
    pub fn log_weight_modulus(&self, z: Complex64) -> f64 {
        let (_, z0) = reduce(z);
        self.product_log_modulus(z0) - 0.5 * PI * z0.norm_sqr()
    }
}

/// Nearest lattice index and the remainder in `[-1/2, 1/2)^2`.
pub fn reduce(z: Complex64) -> (LatticeIndex, Complex64) {
    let idx = nearest_index(z);
    (idx, z - idx.point())
}

/// `true` when `(-1)^{m+n+mn} = -1`.
pub fn quasi_period_sign_negative(idx: LatticeIndex) -> bool {
    (idx.m + idx.n + idx.m * idx.n).rem_euclid(2) == 1
}

/// `sigma(z)` in log form with log-modulus error at most `tol`.
pub fn sigma_lattice_log(z: Complex64, tol: f64) -> LogComplex {
    SigmaLattice::new(tol).log_sigma(z)
}

/// `sigma(z)` from the product over a disc around the origin large enough
/// for `z` itself, with no reduction. Used to cross-check the reduction.
pub fn sigma_lattice_log_direct(z: Complex64, tol: f64) -> LogComplex {
    let a = z.norm();
    let radius = (3.0 * a + 3.0).max(CELL_TRUNCATION);
    SigmaLattice::with_truncation(radius, a.max(FRAC_1_SQRT_2), tol).log_sigma_unreduced(z)
}

/// The Weierstrass zeta function `sigma'/sigma` at `w`, `|w| <= 1/sqrt 2`.
pub fn weierstrass_zeta(w: Complex64, tol: f64) -> Complex64 {
    SigmaLattice::new(tol).zeta(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaConstants {
    pub eta1: Complex64,
    pub eta2: Complex64,
    /// `|eta2 + i eta1|`.
    pub residual: f64,
    /// Largest difference between the series values and fourth-order
    /// central differences of `log sigma`.
    pub finite_difference_gap: f64,
}

/// `eta_1 = 2 zeta(1/2)`, `eta_2 = 2 zeta(i/2)`.
pub fn eta_constants(tol: f64) -> EtaConstants {
    let s = SigmaLattice::new(tol.min(1e-12));
    let w1 = Complex64::new(0.5, 0.0);
    let w2 = Complex64::new(0.0, 0.5);
    let eta1 = 2.0 * s.zeta(w1);
    let eta2 = 2.0 * s.zeta(w2);
    let fd = |w: Complex64, dir: Complex64| -> Complex64 {
        let h = 1e-3;
        let f = |t: f64| s.product_log(w + dir * t).expect("no zero near half periods");
        (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h * dir)
    };
    let one = Complex64::new(1.0, 0.0);
    let gap = (2.0 * fd(w1, one) - eta1).norm().max((2.0 * fd(w2, one) - eta2).norm());
    EtaConstants {
        eta1,
        eta2,
        residual: (eta2 + Complex64::i() * eta1).norm(),
        finite_difference_gap: gap,
    }
}

/// `G(z) = |sigma(z)| exp(-pi |z|^2 / 2)`.
pub fn weierstrass_modulus(z: Complex64, tol: f64) -> f64 {
    SigmaLattice::new(tol).log_weight_modulus(z).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GSample {
    pub x: f64,
    pub y: f64,
    pub g: f64,
    pub dist: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundScan {
    pub grid_step: f64,
    /// `min G(z) / dist(z, Lambda)` over samples with `dist >= grid_step`.
    pub c1_hat: f64,
    /// `max G(z)` over the grid.
    pub c2_hat: f64,
    pub argmax: Complex64,
    pub samples: Vec<GSample>,
}

/// Scans `G` over the cell `[-1/2, 1/2)^2` on a square grid.
pub fn weierstrass_bound_scan(grid_step: f64, tol: f64) -> Result<BoundScan> {
    weierstrass_bound_scan_translated(grid_step, tol, LatticeIndex::ORIGIN)
}

/// As [`weierstrass_bound_scan`] on the cell translated by `offset`.
pub fn weierstrass_bound_scan_translated(grid_step: f64, tol: f64, offset: LatticeIndex) -> Result<BoundScan> {
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(Error::InvalidArgument(format!(
            "grid_step must lie in (0, 0.1], got {grid_step}"
        )));
    }
    let n = (1.0 / grid_step).round() as usize;
    let step = 1.0 / n as f64;
    let s = SigmaLattice::new(tol);
    let base = offset.point();
    let samples: Vec<GSample> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let z = base + Complex64::new(-0.5 + (k % n) as f64 * step, -0.5 + (k / n) as f64 * step);
            GSample {
                x: z.re,
                y: z.im,
                g: s.log_weight_modulus(z).exp(),
                dist: dist_to_lattice(z),
            }
        })
        .collect();
    let mut c2_hat = 0.0;
    let mut argmax = base;
    let mut c1_hat = f64::INFINITY;
    for p in &samples {
        if p.g > c2_hat {
            c2_hat = p.g;
            argmax = Complex64::new(p.x, p.y);
        }
        if p.dist >= grid_step {
            c1_hat = c1_hat.min(p.g / p.dist);
        }
    }
    Ok(BoundScan {
        grid_step: step,
        c1_hat,
        c2_hat,
        argmax,
        samples,
    })
}

/// Writes the scan as `x,y,G,dist` rows.
pub fn write_bound_scan_csv<W: Write>(scan: &BoundScan, mut out: W) -> Result<()> {
    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "G", "dist"])?;
    for p in &scan.samples {
        w.serialize((p.x, p.y, p.g, p.dist))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zeros_on_lattice() {
        assert!(sigma_lattice_log(Complex64::new(0.0, 0.0), 1e-10).is_zero());
        assert!(sigma_lattice_log(Complex64::new(3.0, 4.0), 1e-10).is_zero());
        assert_eq!(weierstrass_modulus(Complex64::new(-2.0, 1.0), 1e-10), 0.0);
    }

    #[test]
    fn odd_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = SigmaLattice::new(1e-12);
        for _ in 0..20 {
            let z = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            let a = s.log_sigma(z);
            let b = s.log_sigma(-z);
            assert!((a.log_modulus - b.log_modulus).abs() < 1e-9);
            let d = (a.argument_difference(&b).abs() - PI).abs();
            assert!(d < 1e-9, "z={z}: {d}");
        }
    }

    #[test]
    fn rotation_symmetry() {
        // sigma(iz) = i sigma(z)
        let s = SigmaLattice::new(1e-12);
        let z = Complex64::new(1.3, -2.2);
        let a = s.log_sigma(Complex64::i() * z);
        let b = s.log_sigma(z);
        assert!((a.log_modulus - b.log_modulus).abs() < 1e-10);
        assert!((a.argument_difference(&b) - 0.5 * PI).abs() < 1e-9);
    }

    #[test]
    fn weight_is_periodic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = SigmaLattice::new(1e-12);
        for _ in 0..100 {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let l = Complex64::new(rng.gen_range(-2..=2) as f64, rng.gen_range(-2..=2) as f64);
            let g0 = s.log_weight_modulus(z).exp();
            let g1 = s.log_weight_modulus(z + l).exp();
            assert!((g0 - g1).abs() <= 1e-8 * g0.max(1e-12));
        }
    }

    #[test]
    fn reduction_matches_direct_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = SigmaLattice::new(1e-12);
        for _ in 0..12 {
            let z = Complex64::from_polar(rng.gen_range(0.3..4.0), rng.gen_range(-PI..PI));
            let a = s.log_sigma(z);
            let b = sigma_lattice_log_direct(z, 1e-10);
            assert!((a.log_modulus - b.log_modulus).abs() < 1e-8, "z={z}");
            assert!(a.argument_difference(&b).abs() < 1e-8, "z={z}: sign rule");
        }
    }

    #[test]
    fn doubling_truncation_within_bound() {
        let z = Complex64::new(0.37, -0.21);
        let a = SigmaLattice::with_truncation(3.0, FRAC_1_SQRT_2, 1e-9);
        let b = SigmaLattice::with_truncation(6.0, FRAC_1_SQRT_2, 1e-9);
        let gap = (a.log_modulus(z) - b.log_modulus(z)).abs();
        assert!(gap <= a.tail_bound() + b.tail_bound() + 1e-14);
    }

    #[test]
    fn eta_values() {
        let e = eta_constants(1e-10);
        assert!((e.eta1 - Complex64::new(PI, 0.0)).norm() < 1e-8, "{:?}", e.eta1);
        assert!((e.eta2 - Complex64::new(0.0, -PI)).norm() < 1e-8, "{:?}", e.eta2);
        assert!(e.residual < 1e-8);
        assert!(e.finite_difference_gap < 1e-7);
    }

    #[test]
    fn scan_constants() {
        let a = weierstrass_bound_scan(0.02, 1e-10).unwrap();
        assert!(a.c1_hat > 0.0 && a.c2_hat.is_finite());
        assert!((a.argmax.re.abs() - 0.5).abs() < 1e-12 && (a.argmax.im.abs() - 0.5).abs() < 1e-12);
        let b = weierstrass_bound_scan_translated(0.02, 1e-10, LatticeIndex::new(2, -1)).unwrap();
        assert!((a.c1_hat - b.c1_hat).abs() < 1e-8 && (a.c2_hat - b.c2_hat).abs() < 1e-8);
        assert!(weierstrass_bound_scan(0.2, 1e-10).is_err());
    }
}
