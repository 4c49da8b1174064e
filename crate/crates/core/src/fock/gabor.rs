//! Gabor atoms with the Gaussian window `g(t) = e^{-pi t^2}`.
//!
//! Under the transform of [`super::bargmann_transform`] the atom indexed by
//! `gamma` becomes a multiple of the normalized kernel at
//! `u(gamma) = Im gamma - i Re gamma / (2 pi)`:
//! `|B atom_gamma| = 2^{-1/4} |k_{u(gamma)}|`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::LineQuadrature;

/// `e^{i Re(gamma) t} g(t - Im(gamma))`.
pub fn gabor_atom(gamma: Complex64, t: f64) -> Complex64 {
    let s = t - gamma.im;
    Complex64::from_polar((-PI * s * s).exp(), gamma.re * t)
}

/// Fock-space point carrying the atom indexed by `gamma`.
pub fn fock_point(gamma: Complex64) -> Complex64 {
    Complex64::new(gamma.im, -gamma.re / (2.0 * PI))
}

/// `<atom_gamma, atom_eta>` in `L^2(R)` by the trapezoid rule.
pub fn gabor_inner_product(gamma: Complex64, eta: Complex64, quad: &LineQuadrature) -> Complex64 {
    quad.integrate(|t| gabor_atom(gamma, t) * gabor_atom(eta, t).conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{bargmann_transform, normalized_kernel, normalized_kernel_overlap};

    #[test]
    fn atom_basics() {
        assert_eq!(gabor_atom(Complex64::new(0.0, 0.0), 0.3).re, (-PI * 0.09f64).exp());
        let g = Complex64::new(2.0, -0.5);
        for t in [-1.0, 0.0, 0.7] {
            assert!((gabor_atom(g, t).norm() - (-PI * (t + 0.5f64).powi(2)).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn inner_products_match_kernel_overlaps() {
        let q = LineQuadrature::default();
        let pts = [
            Complex64::new(0.0, 0.0),
            Complex64::new(3.0, 0.4),
            Complex64::new(-2.0, -0.7),
        ];
        for &a in &pts {
            for &b in &pts {
                let ip = gabor_inner_product(a, b, &q).norm();
                let k = normalized_kernel_overlap(fock_point(a), fock_point(b)) / 2f64.sqrt();
                assert!((ip - k).abs() < 1e-12, "{a} {b}");
            }
        }
    }

    #[test]
    fn transform_is_a_kernel_multiple() {
        let q = LineQuadrature::default();
        let gamma = Complex64::new(1.7, -0.6);
        for z in [Complex64::new(0.1, 0.2), Complex64::new(-0.9, 0.5)] {
            let b = bargmann_transform(|t| gabor_atom(gamma, t), z, &q, 1e-10).unwrap();
            let k = normalized_kernel(z, fock_point(gamma)).modulus();
            assert!((b.norm() - 2f64.powf(-0.25) * k).abs() < 1e-10);
        }
    }
}
