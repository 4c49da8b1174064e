//! Dividing lattice zeros out of the sigma function, and disc separation.

use sigmafock::experiments::{disc_removal_check, point_removal_study};
use sigmafock::quadrature::PolarQuadrature;
use sigmafock::sequences::{make_perturbed_lattice, PhiProfile};

fn main() -> sigmafock::Result<()> {
    let quad = PolarQuadrature::default();
    for k in 0..=2 {
        let r = point_removal_study(k, &[4.0, 6.0, 8.0], &quad)?;
        println!(
            "k = {k}: N = {:?}, increments {:?}, converged {}",
            r.norm.increment_history.iter().map(|p| p.1).collect::<Vec<_>>(),
            r.increments,
            r.norm.converged
        );
    }

    let seq = make_perturbed_lattice(1.0, &PhiProfile::power(0.3, 0.4), 1.0, 7, 10.0)?;
    for r in [0.4 * seq.c(), 0.45] {
        let check = disc_removal_check(&seq, r)?;
        println!(
            "discs of radius {r:.4}: disjoint {}, offending {:?}",
            check.disjoint, check.offending
        );
    }
    Ok(())
}
