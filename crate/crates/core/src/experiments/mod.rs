//! End-to-end witnesses of the uniqueness dichotomy for `d`-regular
//! sequences, with JSON and CSV reports.
//!
//! * `d < 1`: the truncated Fock norm of `sigma_Gamma` stabilizes
//!   ([`non_uniqueness_certificate`]).
//! * `d > 1`: the smallest singular value of the evaluation matrix stays
//!   bounded below as the disc grows, while the same geometry rescaled to
//!   `2 - d` collapses ([`uniqueness_evidence`]).
//!
//! The thresholds (one order of magnitude floor, two orders of decay,
//! increment ratio 0.05) are calibration choices, repeated in every report.

mod removal;
mod report;

use std::f64::consts::SQRT_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{degree_budget, evaluation_matrix, fock_norm_on_grid, smallest_singular_value, NormEstimate};
use crate::quadrature::PolarQuadrature;
use crate::sequences::DRegularSequence;
use crate::sigma_gamma::SigmaGamma;

pub use removal::{disc_removal_check, point_removal_study, DiscCheck, PointRemovalReport};
pub use report::{write_verdict_csv, write_verdict_json};

/// Evidence requires every trace value to stay above this fraction of the first.
pub const EVIDENCE_FLOOR: f64 = 0.1;
/// The contrast trace must end below this fraction of its first value.
pub const CONTRAST_DECAY: f64 = 0.01;

const CALIBRATION: &str = "calibration: certificate when the last norm increment is below 0.05 x the previous value; \
evidence when sigma_min stays within one order of magnitude of its first value and the 2-d contrast decays by two orders";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictMode {
    NonUniquenessCertificate,
    UniquenessEvidence,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    #[serde(rename = "R")]
    pub r: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniquenessVerdict {
    pub schema_version: u32,
    pub mode: VerdictMode,
    pub d: f64,
    /// Norm values (`d < 1`) or smallest singular values (`d > 1`).
    pub trace: Vec<TracePoint>,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_estimate: Option<NormEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_min_trace: Option<Vec<TracePoint>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contrast_trace: Option<Vec<TracePoint>>,
    pub notes: String,
}

/// Rows of the evaluation matrix at disc radius `R` are taken from
/// `|gamma| <= sqrt 2 R + 2`; the degree budget stays `ceil(2 pi R^2)`.
pub fn evidence_row_radius(radius: f64) -> f64 {
    SQRT_2 * radius + 2.0
}

/// Stored index radius that lets every experiment run on discs up to `r_max`.
pub fn recommended_sequence_radius(seq_d: f64, r_max: f64) -> f64 {
    let certificate = 2.0 * seq_d * r_max + 8.0;
    let evidence = 1.1 * seq_d * evidence_row_radius(r_max) + 4.0;
    certificate.max(evidence).ceil()
}

fn check_grid(r_grid: &[f64]) -> Result<()> {
    if r_grid.is_empty() || r_grid.windows(2).any(|w| !(w[1] > w[0])) || !(r_grid[0] > 0.0) {
        return Err(Error::InvalidArgument(
            "radii must be positive and strictly increasing".into(),
        ));
    }
    Ok(())
}

fn check_coverage(seq: &DRegularSequence, needed: f64) -> Result<()> {
    if seq.gamma_coverage() < needed {
        return Err(Error::InsufficientRadius {
            stored: seq.radius(),
            required: recommended_sequence_radius(seq.d(), needed),
        });
    }
    Ok(())
}

/// Truncated Fock norms of `sigma_Gamma` on `r_grid`. Requires `d < 1`.
pub fn non_uniqueness_certificate(
    seq: &DRegularSequence,
    r_grid: &[f64],
    quad: &PolarQuadrature,
) -> Result<UniquenessVerdict> {
    if !(seq.d() < 1.0) {
        return Err(Error::Precondition(format!("certificate needs d < 1, got {}", seq.d())));
    }
    check_grid(r_grid)?;
    let r_max = *r_grid.last().unwrap();
    check_coverage(seq, r_max)?;
    let eval = SigmaGamma::new(seq, r_max, 1e-12)?;
    let norm = fock_norm_on_grid(|z| eval.log_modulus(z), r_grid, quad)?;
    let vanishes = seq
        .points()
        .iter()
        .filter(|p| p.gamma.norm() <= r_max)
        .all(|p| eval.log_sigma(p.gamma).is_zero());
    let converged = norm.converged && vanishes;
    let trace = norm
        .increment_history
        .iter()
        .map(|&(r, value)| TracePoint { r, value })
        .collect();
    let notes = format!(
        "witness: product over the stored points continued by lambda/d beyond index radius {}, \
itself d-regular with the same phi; vanishes on every stored point within R = {r_max}: {vanishes}; \
bound on its log-distance to any other continuation at R: {:.3e}; {CALIBRATION}",
        seq.radius(),
        eval.tail_bound(r_max)
    );
    Ok(UniquenessVerdict {
        schema_version: crate::SCHEMA_VERSION,
        mode: if converged {
            VerdictMode::NonUniquenessCertificate
        } else {
            VerdictMode::Inconclusive
        },
        d: seq.d(),
        trace,
        converged,
        norm_estimate: Some(norm),
        sigma_min_trace: None,
        contrast_trace: None,
        notes,
    })
}

/// `(R, sigma_min)` for each `R`, rows from [`evidence_row_radius`].
pub fn sigma_min_trace(seq: &DRegularSequence, r_grid: &[f64]) -> Result<Vec<TracePoint>> {
    check_grid(r_grid)?;
    check_coverage(seq, evidence_row_radius(*r_grid.last().unwrap()))?;
    r_grid
        .par_iter()
        .map(|&r| {
            let a = evaluation_matrix(seq, evidence_row_radius(r), degree_budget(r))?;
            Ok(TracePoint {
                r,
                value: smallest_singular_value(&a)?,
            })
        })
        .collect()
}

/// Smallest singular value traces for `seq` and for its rescaling to
/// `2 - d`. Requires `d > 1` and at least three radii.
pub fn uniqueness_evidence(seq: &DRegularSequence, r_grid: &[f64]) -> Result<UniquenessVerdict> {
    let d = seq.d();
    if !(d > 1.0) {
        return Err(Error::Precondition(format!("uniqueness evidence needs d > 1, got {d}")));
    }
    if r_grid.len() < 3 {
        return Err(Error::InvalidArgument(
            "uniqueness evidence needs at least three radii".into(),
        ));
    }
    let trace = sigma_min_trace(seq, r_grid)?;
    let contrast_seq = seq.rescaled(d / (2.0 - d))?;
    let contrast = sigma_min_trace(&contrast_seq, r_grid)?;
    let first = trace[0].value;
    let floor_ok = first > 0.0 && trace.iter().all(|t| t.value >= EVIDENCE_FLOOR * first);
    let c0 = contrast[0].value;
    let decay_ok = contrast.last().unwrap().value <= CONTRAST_DECAY * c0;
    let converged = floor_ok && decay_ok;
    let notes = format!(
        "rows |gamma| <= sqrt2 R + 2, columns K = ceil(2 pi R^2); trace floor held: {floor_ok}; \
contrast at d' = {:.4} decayed two orders: {decay_ok}; {CALIBRATION}",
        2.0 - d
    );
    Ok(UniquenessVerdict {
        schema_version: crate::SCHEMA_VERSION,
        mode: if converged {
            VerdictMode::UniquenessEvidence
        } else {
            VerdictMode::Inconclusive
        },
        d,
        trace: trace.clone(),
        converged,
        norm_estimate: None,
        sigma_min_trace: Some(trace),
        contrast_trace: Some(contrast),
        notes,
    })
}

/// Dispatches on `d`: certificate below 1, evidence above 1, and an
/// inconclusive verdict at `d = 1`.
pub fn classify(seq: &DRegularSequence, r_grid: &[f64], quad: &PolarQuadrature) -> Result<UniquenessVerdict> {
    let d = seq.d();
    if d < 1.0 {
        non_uniqueness_certificate(seq, r_grid, quad)
    } else if d > 1.0 {
        uniqueness_evidence(seq, r_grid)
    } else {
        check_grid(r_grid)?;
        let trace = sigma_min_trace(seq, r_grid)?;
        Ok(UniquenessVerdict {
            schema_version: crate::SCHEMA_VERSION,
            mode: VerdictMode::Inconclusive,
            d,
            trace: trace.clone(),
            converged: false,
            norm_estimate: None,
            sigma_min_trace: Some(trace),
            contrast_trace: None,
            notes: format!("d = 1 is the boundary case: the dichotomy says nothing here; {CALIBRATION}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{make_perturbed_lattice, make_scaled_lattice, PhiProfile};

    #[test]
    fn scaled_lattice_certificate() {
        let seq = make_scaled_lattice(0.8, recommended_sequence_radius(0.8, 8.0)).unwrap();
        let v = non_uniqueness_certificate(&seq, &[4.0, 6.0, 8.0], &PolarQuadrature::new(32, 128)).unwrap();
        assert_eq!(v.mode, VerdictMode::NonUniquenessCertificate);
        assert!(v.converged);
        assert_eq!(v.trace.len(), 3);
    }

    #[test]
    fn certificate_requires_small_d() {
        let seq = make_scaled_lattice(1.25, 20.0).unwrap();
        assert!(matches!(
            non_uniqueness_certificate(&seq, &[2.0, 3.0], &PolarQuadrature::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn dense_lattice_evidence() {
        let seq = make_scaled_lattice(1.25, recommended_sequence_radius(1.25, 5.0)).unwrap();
        let v = uniqueness_evidence(&seq, &[3.0, 4.0, 5.0]).unwrap();
        assert_eq!(v.mode, VerdictMode::UniquenessEvidence, "{v:?}");
        let c = v.contrast_trace.unwrap();
        assert!(c[2].value <= 0.01 * c[0].value);
    }

    #[test]
    fn boundary_case_inconclusive() {
        let seq = make_scaled_lattice(1.0, recommended_sequence_radius(1.0, 5.0)).unwrap();
        let v = classify(&seq, &[3.0, 4.0, 5.0], &PolarQuadrature::default()).unwrap();
        assert_eq!(v.mode, VerdictMode::Inconclusive);
        assert!(v.notes.contains("boundary"));
    }

    #[test]
    fn thin_coverage_rejected() {
        let seq = make_perturbed_lattice(0.8, &PhiProfile::power(0.5, 0.4), 1.0, 7, 5.0).unwrap();
        assert!(matches!(
            non_uniqueness_certificate(&seq, &[4.0, 6.0, 8.0], &PolarQuadrature::default()),
            Err(Error::InsufficientRadius { .. })
        ));
    }
}
