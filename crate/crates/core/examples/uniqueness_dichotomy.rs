//! Both sides of the dichotomy on perturbed and scaled lattices.

use sigmafock::experiments::{classify, recommended_sequence_radius, write_verdict_json};
use sigmafock::quadrature::PolarQuadrature;
use sigmafock::sequences::{make_perturbed_lattice, make_scaled_lattice, PhiProfile};

fn main() -> sigmafock::Result<()> {
    let quad = PolarQuadrature::default();

    let sparse = make_perturbed_lattice(
        0.8,
        &PhiProfile::power(0.5, 0.4),
        1.0,
        7,
        recommended_sequence_radius(0.8, 8.0),
    )?;
    let v = classify(&sparse, &[4.0, 6.0, 8.0], &quad)?;
    println!("d = 0.8: {:?}", v.mode);
    for t in &v.trace {
        println!("  N({}) = {:.10}", t.r, t.value);
    }

    let dense = make_scaled_lattice(1.25, recommended_sequence_radius(1.25, 5.0))?;
    let v = classify(&dense, &[3.0, 4.0, 5.0], &quad)?;
    println!("d = 1.25: {:?}", v.mode);
    write_verdict_json(&v, std::io::stdout().lock())?;
    Ok(())
}
