use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dist_to_gamma, SigmaGamma};
use crate::error::{Error, Result};
use crate::sequences::DRegularSequence;
use crate::SCHEMA_VERSION;

/// Samples closer than this to `Gamma` are left out of `M_minus`.
const MINUS_EXCLUSION: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthSample {
    pub r: f64,
    pub theta: f64,
    pub log_f: f64,
    pub dist: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub r: f64,
    /// `max_theta log F_Gamma(r e^{i theta}) / r^2`
    pub m_plus: f64,
    /// `min_theta log(F_Gamma / dist(z, Gamma)) / r^2`, samples near `Gamma` excluded
    pub m_minus: f64,
    /// [`SigmaGamma::tail_bound`] at this radius
    pub tail_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthScan {
    pub rows: Vec<GrowthRow>,
    pub samples: Vec<GrowthSample>,
}

/// Scans `log F_Gamma` on circles `|z| = r` with `max(64, ceil(8 r))`
/// angles each. Every radius must lie inside the stored coverage.
pub fn growth_exponent_scan(seq: &DRegularSequence, r_grid: &[f64], tol: f64) -> Result<GrowthScan> {
    let r_max = r_grid.iter().copied().fold(0.0, f64::max);
    if r_grid.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::InvalidArgument("scan radii must be positive".into()));
    }
    let coverage = seq.gamma_coverage();
    if r_max > coverage {
        return Err(Error::InsufficientRadius {
            stored: seq.radius(),
            required: r_max * seq.d() / (1.0 - seq.phi().at_radius(seq.radius()) / seq.radius()).max(1e-3),
        });
    }
    let eval = SigmaGamma::new(seq, r_max, tol)?;
    let mut rows = Vec::with_capacity(r_grid.len());
    let mut samples = Vec::new();
    for &r in r_grid {
        let n = 64usize.max((8.0 * r).ceil() as usize);
        let ring: Vec<GrowthSample> = (0..n)
            .into_par_iter()
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / n as f64;
                let z = Complex64::from_polar(r, theta);
                GrowthSample {
                    r,
                    theta,
                    log_f: eval.log_regularized(z),
                    dist: dist_to_gamma(seq, z),
                }
            })
            .collect();
        let r2 = r * r;
        let m_plus = ring.iter().map(|s| s.log_f / r2).fold(f64::NEG_INFINITY, f64::max);
        let m_minus = ring
            .iter()
            .filter(|s| s.dist >= MINUS_EXCLUSION)
            .map(|s| (s.log_f - s.dist.ln()) / r2)
            .fold(f64::INFINITY, f64::min);
        rows.push(GrowthRow {
            r,
            m_plus,
            m_minus,
            tail_bound: eval.tail_bound(r),
        });
        samples.extend(ring);
    }
    Ok(GrowthScan { rows, samples })
}

/// Writes the per-angle samples as `r,theta,logF,dist` rows.
pub fn write_growth_scan_csv<W: Write>(scan: &GrowthScan, mut out: W) -> Result<()> {
    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["r", "theta", "logF", "dist"])?;
    for s in &scan.samples {
        w.serialize((s.r, s.theta, s.log_f, s.dist))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{make_perturbed_lattice, make_scaled_lattice, PhiProfile};
    use crate::sigma_weierstrass::weierstrass_bound_scan;

    #[test]
    fn lattice_growth_bounded_by_cell_constants() {
        let seq = make_scaled_lattice(1.0, 24.0).unwrap();
        let scan = growth_exponent_scan(&seq, &[2.0, 4.0, 6.0, 8.0], 1e-10).unwrap();
        let cells = weierstrass_bound_scan(0.02, 1e-10).unwrap();
        for row in &scan.rows {
            assert!(row.m_plus <= cells.c2_hat.ln() / (row.r * row.r) + 1e-9, "{row:?}");
            assert!(
                row.m_minus >= -(cells.c1_hat.ln().abs() + 0.5) / (row.r * row.r),
                "{row:?}"
            );
        }
        assert_eq!(scan.samples.len(), 64 * 4);
    }

    #[test]
    fn perturbed_growth_exponent_decreases() {
        let seq = make_perturbed_lattice(1.0, &PhiProfile::power(0.3, 0.4), 1.0, 7, 40.0).unwrap();
        let scan = growth_exponent_scan(&seq, &[4.0, 6.0, 8.0, 12.0, 16.0], 1e-10).unwrap();
        let m: Vec<f64> = scan.rows.iter().map(|r| r.m_plus).collect();
        assert!(m.windows(2).all(|w| w[1] < w[0]), "{m:?}");
    }

    #[test]
    fn radius_outside_coverage_is_rejected() {
        let seq = make_scaled_lattice(1.0, 5.0).unwrap();
        assert!(growth_exponent_scan(&seq, &[6.0], 1e-8).is_err());
    }
}
