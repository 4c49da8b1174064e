mod common;

use num_complex::Complex64;
use sigmafock::sigma_weierstrass::{weierstrass_modulus, SigmaLattice};

#[test]
fn reduced_product_matches_theta_far_from_origin() {
    let s = SigmaLattice::new(1e-12);
    for z in [
        Complex64::new(0.31, 0.12),
        Complex64::new(2.7, -1.4),
        Complex64::new(-3.9, 3.05),
        Complex64::new(0.5, 4.6),
    ] {
        let lib = s.log_sigma(z).to_complex();
        let oracle = common::theta_sigma(z);
        assert!(
            (lib - oracle).norm() <= 1e-10 * oracle.norm(),
            "z={z}: {lib} vs {oracle}"
        );
    }
}

#[test]
fn weighted_modulus_reference_values() {
    assert!((weierstrass_modulus(Complex64::new(0.5, 0.5), 1e-12) - 0.381_379_88).abs() < 5e-9);
    assert!((weierstrass_modulus(Complex64::new(0.5, 0.0), 1e-12) - 0.320_700_98).abs() < 5e-9);
    assert!((common::theta_g(Complex64::new(0.5, 0.5)) - 0.381_379_88).abs() < 5e-9);
}

#[test]
fn lattice_points_are_exact_zeros() {
    let s = SigmaLattice::new(1e-12);
    assert!(s.log_sigma(Complex64::new(3.0, -2.0)).is_zero());
    assert!(s.log_sigma(Complex64::new(0.0, 0.0)).is_zero());
}
