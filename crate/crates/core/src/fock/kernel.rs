use std::f64::consts::PI;

use num_complex::Complex64;

use crate::logcomplex::LogComplex;

/// `K(z, w) = e^{pi conj(w) z}`.
pub fn reproducing_kernel(z: Complex64, w: Complex64) -> LogComplex {
    LogComplex::exp(PI * w.conj() * z)
}

/// `k_w(z) = K(z, w) e^{-pi |w|^2 / 2}`, unit norm in the Fock space.
pub fn normalized_kernel(z: Complex64, w: Complex64) -> LogComplex {
    reproducing_kernel(z, w).scale_log(-0.5 * PI * w.norm_sqr())
}

/// `|<k_w, k_v>| = e^{-pi |w - v|^2 / 2}`.
pub fn normalized_kernel_overlap(w: Complex64, v: Complex64) -> f64 {
    (-0.5 * PI * (w - v).norm_sqr()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::onb_monomial;
    use crate::quadrature::PolarQuadrature;

    #[test]
    fn kernel_identities() {
        let z = Complex64::new(0.7, -1.1);
        let w = Complex64::new(-0.3, 0.4);
        assert_eq!(
            reproducing_kernel(z, Complex64::new(0.0, 0.0)).to_complex(),
            Complex64::new(1.0, 0.0)
        );
        let a = reproducing_kernel(z, w).to_complex();
        let b = reproducing_kernel(w, z).to_complex().conj();
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn reproduces_monomials() {
        let quad = PolarQuadrature::new(24, 96);
        for k in 0..5 {
            for w in [Complex64::new(0.5, -0.2), Complex64::new(-1.2, 0.8)] {
                let integral = quad.integrate_complex(6.5, |z| {
                    onb_monomial(k, z).unwrap()
                        * reproducing_kernel(z, w).to_complex().conj()
                        * (-PI * z.norm_sqr()).exp()
                });
                assert!((integral - onb_monomial(k, w).unwrap()).norm() < 1e-6, "k={k}");
            }
        }
    }

    #[test]
    fn overlap_of_normalized_kernels() {
        let quad = PolarQuadrature::new(24, 96);
        let w = Complex64::new(0.4, 0.1);
        let v = Complex64::new(-0.6, 0.9);
        let ip = quad.integrate_complex(7.0, |z| {
            normalized_kernel(z, w).to_complex()
                * normalized_kernel(z, v).to_complex().conj()
                * (-PI * z.norm_sqr()).exp()
        });
        assert!((ip.norm() - normalized_kernel_overlap(w, v)).abs() < 1e-8);
    }
}
