use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::logcomplex::LogComplex;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 170;

pub(crate) fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|j| (j as f64).ln()).sum()
}

/// `ln (pi^k / k!)^{1/2}`.
pub fn log_onb_constant(k: usize) -> f64 {
    0.5 * (k as f64 * PI.ln() - ln_factorial(k))
}

/// `e_k(z) = (pi^k / k!)^{1/2} z^k` in log form.
pub fn onb_monomial_log(k: usize, z: Complex64) -> Result<LogComplex> {
    if k > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(k));
    }
    if k == 0 {
        return Ok(LogComplex::ONE);
    }
    let lz = LogComplex::from_complex(z);
    if lz.is_zero() {
        return Ok(LogComplex::ZERO);
    }
    Ok(LogComplex::new(
        log_onb_constant(k) + k as f64 * lz.log_modulus,
        k as f64 * lz.argument,
    ))
}

/// `e_k(z)`, the orthonormal monomial basis of the Fock space.
pub fn onb_monomial(k: usize, z: Complex64) -> Result<Complex64> {
    Ok(onb_monomial_log(k, z)?.to_complex())
}

/// Regularized lower incomplete gamma `P(k+1, x) = gamma(k+1, x) / k!`.
pub fn incomplete_gamma_ratio(k: usize, x: f64) -> f64 {
    // P(k+1, x) = 1 - e^{-x} sum_{j<=k} x^j / j!
    if x <= 0.0 {
        return 0.0;
    }
    let mut term = 1.0;
    let mut s = 1.0;
    for j in 1..=k {
        term *= x / j as f64;
        s += term;
    }
    if x < 1.0 + k as f64 {
        // series sum_{j>k} x^j/j! e^{-x} avoids cancellation
        let mut t = (k as f64 * x.ln() - ln_factorial(k) - x).exp();
        let mut acc = 0.0;
        let mut j = k + 1;
        loop {
            t *= x / j as f64;
            acc += t;
            if t < 1e-18 * acc || t == 0.0 {
                break;
            }
            j += 1;
        }
        acc
    } else {
        1.0 - (-x).exp() * s
    }
}
