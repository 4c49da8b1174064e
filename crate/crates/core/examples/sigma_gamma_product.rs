//! Canonical product of a perturbed lattice, its h-factor split, and the
//! growth of its regularized modulus.

use num_complex::Complex64;
use sigmafock::sequences::{make_perturbed_lattice, PhiProfile};
use sigmafock::sigma_gamma::{growth_exponent_scan, h_factors, SigmaGamma, DEFAULT_EPS};
use sigmafock::sigma_weierstrass::SigmaLattice;

fn main() -> sigmafock::Result<()> {
    let seq = make_perturbed_lattice(1.0, &PhiProfile::power(0.3, 0.4), 1.0, 7, 40.0)?;
    let eval = SigmaGamma::new(&seq, 6.0, 1e-10)?;
    let lattice = SigmaLattice::new(1e-12);

    for z in [
        Complex64::new(0.7, 0.2),
        Complex64::new(-2.6, 1.9),
        Complex64::new(4.1, -3.3),
    ] {
        let h = h_factors(&seq, z, DEFAULT_EPS)?;
        println!(
            "z = {z}: log|sigma_Gamma| = {:.8}, h1 {:+.5} h2 {:+.5} h3 {:+.5}, reconstructed {:.8}",
            eval.log_modulus(z),
            h.log_h1,
            h.log_h2,
            h.log_h3,
            h.reconstruct(lattice.log_modulus(z * seq.d()))
        );
    }

    let scan = growth_exponent_scan(&seq, &[4.0, 8.0, 16.0], 1e-10)?;
    for row in &scan.rows {
        println!("r = {:>4}: M+ = {:.4}, M- = {:.4}", row.r, row.m_plus, row.m_minus);
    }
    Ok(())
}
