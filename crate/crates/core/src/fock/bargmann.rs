use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::basis::onb_monomial;
use crate::error::{Error, Result};

/// Uniform trapezoid rule on `[-half_width, half_width]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineQuadrature {
    pub half_width: f64,
    pub step: f64,
}

impl Default for LineQuadrature {
    fn default() -> Self {
        LineQuadrature {
            half_width: 8.0,
            step: 0.01,
        }
    }
}

impl LineQuadrature {
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let n = (self.half_width / self.step).round() as i64;
        (-n..=n).map(move |j| j as f64 * self.step)
    }

    /// Trapezoid sum of `f` over the window.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        let n = (self.half_width / self.step).round() as i64;
        let mut s = Complex64::new(0.0, 0.0);
        for j in -n..=n {
            let w = if j.abs() == n { 0.5 } else { 1.0 };
            s += f(j as f64 * self.step) * w;
        }
        s * self.step
    }
}

/// Log of the real-exponent kernel `e^{2 pi t z - pi t^2 - pi z^2 / 2}`.
fn kernel_exponent(t: f64, z: Complex64) -> Complex64 {
    2.0 * PI * t * z - PI * t * t - 0.5 * PI * z * z
}

/// `(Bf)(z) = 2^{1/4} int f(t) e^{2 pi t z - pi t^2 - pi z^2 / 2} dt`.
///
/// Fails with [`Error::WindowTooSmall`] when the integrand at either end of
/// the window exceeds `tol` in modulus.
pub fn bargmann_transform<F>(f: F, z: Complex64, quad: &LineQuadrature, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let c = 2f64.powf(0.25);
    let integrand = |t: f64| f(t) * kernel_exponent(t, z).exp();
    let endpoint = integrand(-quad.half_width)
        .norm()
        .max(integrand(quad.half_width).norm());
    if !(endpoint <= tol) {
        return Err(Error::WindowTooSmall { endpoint, tol });
    }
    Ok(quad.integrate(integrand) * c)
}

/// `h_k(t) = (2 pi)^{1/4} psi_k(sqrt(2 pi) t)` with `psi_k` the
/// `L^2`-normalized Hermite functions; `B h_k = e_k`.
pub fn hermite_function(k: usize, t: f64) -> f64 {
    let x = (2.0 * PI).sqrt() * t;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for j in 0..k {
        let jf = j as f64;
        let next = SQRT_2 / (jf + 1.0).sqrt() * x * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (2.0 * PI).powf(0.25) * cur
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BargmannRow {
    pub k: usize,
    /// `max_z |B h_k(z) - e_k(z)|` over the sample points.
    pub max_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BargmannCheck {
    pub schema_version: u32,
    pub tol: f64,
    pub points: Vec<Complex64>,
    pub rows: Vec<BargmannRow>,
    pub passed: bool,
}

/// `count` points drawn uniformly from the disc `|z| <= radius`.
pub fn sample_disc(count: usize, radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
        })
        .collect()
}

/// Compares `B h_k` with `e_k` for `k = 0..=kmax` at 20 seeded points in
/// `|z| <= 1.5`.
pub fn bargmann_check(kmax: usize, tol: f64, seed: u64, quad: &LineQuadrature) -> Result<BargmannCheck> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")));
    }
    let points = sample_disc(20, 1.5, seed);
    let mut rows = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let mut max_error = 0.0f64;
        for &z in &points {
            let b = bargmann_transform(|t| Complex64::new(hermite_function(k, t), 0.0), z, quad, 1e-12)?;
            max_error = max_error.max((b - onb_monomial(k, z)?).norm());
        }
        rows.push(BargmannRow { k, max_error });
    }
    let passed = rows.iter().all(|r| r.max_error <= tol);
    Ok(BargmannCheck {
        schema_version: crate::SCHEMA_VERSION,
        tol,
        points,
        rows,
        passed,
    })
}
