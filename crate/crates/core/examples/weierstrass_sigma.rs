//! The Weierstrass sigma function of the square lattice.

use num_complex::Complex64;
use sigmafock::sigma_weierstrass::{eta_constants, weierstrass_bound_scan, SigmaLattice};

fn main() -> sigmafock::Result<()> {
    let sigma = SigmaLattice::new(1e-12);
    for z in [
        Complex64::new(0.5, 0.0),
        Complex64::new(0.5, 0.5),
        Complex64::new(7.3, -4.1),
    ] {
        let v = sigma.log_sigma(z);
        println!(
            "z = {z}: log|sigma| = {:.10}, arg = {:.6}, G = {:.10}",
            v.log_modulus,
            v.argument,
            sigma.log_weight_modulus(z).exp()
        );
    }

    let eta = eta_constants(1e-12);
    println!(
        "eta1 = {}, eta2 = {}, fd gap {:.1e}",
        eta.eta1, eta.eta2, eta.finite_difference_gap
    );

    let scan = weierstrass_bound_scan(0.02, 1e-10)?;
    println!(
        "unit cell: min G / dist = {:.6}, max G = {:.6} at {}",
        scan.c1_hat, scan.c2_hat, scan.argmax
    );
    Ok(())
}
