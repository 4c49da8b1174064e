//! Generate a perturbed lattice, check it, and look at its diagnostics.

use sigmafock::sequences::{
    make_perturbed_lattice, phi_admissible, quadratic_partial_sums, upper_density, validate_d_regular, PhiProfile,
};

fn main() -> sigmafock::Result<()> {
    let phi = PhiProfile::power(0.3, 0.4);
    let adm = phi_admissible(&phi);
    println!(
        "phi = 0.3 t^0.4: integral {:.4}, o(t/ln t) {}",
        adm.integral_value, adm.o_small_ok
    );

    let seq = make_perturbed_lattice(1.0, &phi, 1.0, 7, 24.0)?;
    println!("{} points, measured separation c = {:.4}", seq.len(), seq.c());

    let report = validate_d_regular(&seq)?;
    println!("valid: {}, kappa = {:.4}", report.valid, report.kappa);
    for (r, s) in &report.partial_sum_b {
        println!("  S_b({r:>5.1}) = {s:.5}");
    }

    for (r, d) in upper_density(&seq, &[2.0, 4.0, 8.0]) {
        println!("density at r = {r}: {d:.4}");
    }
    for (r, s) in quadratic_partial_sums(&seq, &[4.0, 8.0, 16.0]) {
        println!("|sum 1/gamma^2| up to {r}: {s:.5}");
    }
    Ok(())
}
