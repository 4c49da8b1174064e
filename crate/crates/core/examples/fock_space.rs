//! Truncated norms, the Bargmann transform, Gabor atoms, and an
//! evaluation-matrix singular value.

use num_complex::Complex64;
use sigmafock::fock::{
    bargmann_check, degree_budget, evaluation_matrix, fock_norm_truncated, fock_point, gabor_inner_product,
    normalized_kernel_overlap, onb_monomial_log, smallest_singular_value, LineQuadrature,
};
use sigmafock::quadrature::PolarQuadrature;
use sigmafock::sequences::make_scaled_lattice;

fn main() -> sigmafock::Result<()> {
    let quad = PolarQuadrature::default();
    let e3 = fock_norm_truncated(|z| onb_monomial_log(3, z).unwrap().log_modulus, 3.0, &quad)?;
    println!("||e_3||^2 on |z| <= R: {:?}", e3.increment_history);

    let check = bargmann_check(5, 1e-6, 0, &LineQuadrature::default())?;
    for row in &check.rows {
        println!("k = {}: max |B h_k - e_k| = {:.2e}", row.k, row.max_error);
    }

    let (a, b) = (Complex64::new(1.0, 0.3), Complex64::new(-0.5, 0.8));
    let direct = gabor_inner_product(a, b, &LineQuadrature::default()).norm();
    let via_kernel = normalized_kernel_overlap(fock_point(a), fock_point(b)) / 2f64.sqrt();
    println!("|<atom, atom'>| = {direct:.12} vs kernel side {via_kernel:.12}");

    let seq = make_scaled_lattice(1.25, 12.0)?;
    let m = evaluation_matrix(&seq, 3.0 * 2f64.sqrt() + 2.0, degree_budget(3.0))?;
    println!(
        "{} x {} evaluation matrix, sigma_min = {:.6}",
        m.point_count(),
        m.degree_count(),
        smallest_singular_value(&m)?
    );
    Ok(())
}
