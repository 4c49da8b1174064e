//! Command-line front end. Every subcommand writes JSON or CSV to `--out`
//! (stdout when absent); failures print one line
//! `sigmafock: error[<tag>]: <reason>` on stderr.
//!
//! Exit codes: 0 success, 1 validation failure, 2 numerical contract not
//! met, 3 I/O error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::experiments::{
    classify, disc_removal_check, non_uniqueness_certificate, point_removal_study, recommended_sequence_radius,
    uniqueness_evidence, write_verdict_csv, write_verdict_json,
};
use crate::fock::{
    bargmann_check, degree_budget, evaluation_matrix, fock_norm_on_grid, onb_monomial_log, write_matrix_csv,
    LineQuadrature, MAX_DEGREE,
};
use crate::quadrature::PolarQuadrature;
use crate::sequences::{phi_admissible, validate_d_regular, write_points_csv, DRegularSequence, SequenceSpec};
use crate::sigma_gamma::{
    growth_exponent_scan, h_factors, regularized_modulus, sigma_gamma_log, write_growth_scan_csv, SigmaGamma,
};
use crate::sigma_weierstrass::{sigma_lattice_log, weierstrass_bound_scan, write_bound_scan_csv, SigmaLattice};
use crate::SCHEMA_VERSION;

/// Environment variable capping the rayon worker count.
pub const THREADS_ENV: &str = "SIGMAFOCK_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "sigmafock",
    version,
    about = "Sigma products over perturbed lattices and Fock-space uniqueness diagnostics"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a sequence from a JSON spec and write its points as CSV.
    Gen(GenArgs),
    /// Check the regularity conditions of a generated sequence.
    Validate(SeqArgs),
    /// Evaluate the Weierstrass sigma function of the integer lattice.
    Sigma(SigmaArgs),
    /// Evaluate the canonical product of a sequence.
    SigmaGamma(SigmaGammaArgs),
    /// Split log|h| into its three factors.
    HFactors(HFactorArgs),
    /// Scan |sigma| e^{-pi|z|^2/2} over the unit cell, or the growth of a sequence product.
    ScanBounds(ScanArgs),
    /// Truncated Fock norm of a target function.
    FockNorm(FockNormArgs),
    /// Compare Bargmann transforms of Hermite functions with the monomial basis.
    BargmannCheck(BargmannArgs),
    /// Run the uniqueness dichotomy experiment.
    Uniqueness(UniquenessArgs),
    /// Norm of the lattice sigma function with points divided out, or a disc disjointness check.
    RemovePoints(RemoveArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Sequence spec (JSON).
    #[arg(long)]
    pub seq: PathBuf,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides the seed in the spec.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// Sequence spec (JSON).
    #[arg(long)]
    pub seq: PathBuf,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    /// Evaluation point as RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Absolute tolerance of the evaluation.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SigmaGammaArgs {
    /// Sequence spec (JSON).
    #[arg(long)]
    pub seq: PathBuf,
    /// Evaluation point as RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Absolute tolerance of the evaluation.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HFactorArgs {
    /// Sequence spec (JSON).
    #[arg(long)]
    pub seq: PathBuf,
    /// Evaluation point as RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Split exponent in kappa^{1+eps} d |z|.
    #[arg(long, default_value_t = crate::sigma_gamma::DEFAULT_EPS)]
    pub eps: f64,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// With a sequence, scan the growth of its product on --radii instead.
    #[arg(long)]
    pub seq: Option<PathBuf>,
    /// CSV of samples; with it the summary goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Absolute tolerance of the evaluation.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Grid step of the unit-cell scan.
    #[arg(long, default_value_t = 0.02)]
    pub step: f64,
    /// Comma-separated, strictly increasing radii.
    #[arg(long, value_delimiter = ',', default_value = "4,6,8")]
    pub radii: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormTarget {
    /// Canonical product of --seq.
    SigmaGamma,
    /// Weierstrass sigma function of the lattice.
    SigmaLattice,
    /// The constant 1.
    One,
    /// The normalized monomial of degree --kmax.
    Monomial,
}

#[derive(Debug, Args)]
pub struct FockNormArgs {
    /// Sequence spec (JSON).
    #[arg(long)]
    pub seq: Option<PathBuf>,
    /// Function whose norm is computed.
    #[arg(long, value_enum, default_value_t = NormTarget::SigmaGamma)]
    pub target: NormTarget,
    /// Truncation radius; the history is taken at R/4, R/2, R.
    #[arg(long = "R", default_value_t = 8.0)]
    pub radius: f64,
    /// Explicit radius grid, overriding --R.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// Degree for the monomial target.
    #[arg(long, default_value_t = 0)]
    pub kmax: usize,
    /// Absolute tolerance of the evaluation.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BargmannArgs {
    #[arg(long, default_value_t = 5)]
    pub kmax: usize,
    /// Absolute tolerance of the evaluation.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Seed of the sample points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UniquenessMode {
    Auto,
    Certificate,
    Evidence,
}

#[derive(Debug, Args)]
pub struct UniquenessArgs {
    /// Sequence spec (JSON).
    #[arg(long)]
    pub seq: PathBuf,
    /// Which side of the dichotomy to test; auto dispatches on d.
    #[arg(long, value_enum, default_value_t = UniquenessMode::Auto)]
    pub mode: UniquenessMode,
    /// Comma-separated, strictly increasing radii.
    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    pub radii: Vec<f64>,
    /// JSON verdict; a CSV companion is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluation matrix at the largest radius, as CSV.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RemoveArgs {
    /// Number of lattice points divided out (0, 1 or 2).
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Comma-separated, strictly increasing radii.
    #[arg(long, value_delimiter = ',', default_value = "4,6,8")]
    pub radii: Vec<f64>,
    /// Disc radius: check disjointness around the points of --seq instead.
    #[arg(long, requires = "seq")]
    pub disc: Option<f64>,
    /// Sequence spec (JSON).
    #[arg(long)]
    pub seq: Option<PathBuf>,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Why a subcommand did not succeed.
#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Validation(String),
    Contract(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Contract(_) => 2,
            Failure::Lib(e) => match e {
                Error::Io(_) => 3,
                Error::InsufficientRadius { .. }
                | Error::NonFiniteNode { .. }
                | Error::WindowTooSmall { .. }
                | Error::NonConvergence { .. } => 2,
                _ => 1,
            },
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Failure::Validation(_) => "validation",
            Failure::Contract(_) => "contract",
            Failure::Lib(e) => match e {
                Error::InvalidArgument(_) => "invalid_argument",
                Error::PhiUndefined { .. } => "phi_undefined",
                Error::ZeroGamma(_) => "zero_gamma",
                Error::EmptySequence => "empty_sequence",
                Error::MissingIndex(_) => "missing_index",
                Error::SeparationUnachievable(..) => "separation_unachievable",
                Error::InsufficientRadius { .. } => "insufficient_radius",
                Error::DegeneratePoint { .. } => "degenerate_point",
                Error::NonFiniteNode { .. } => "non_finite_node",
                Error::WindowTooSmall { .. } => "window_too_small",
                Error::DegreeOutOfRange(_) => "degree_out_of_range",
                Error::NonConvergence { .. } => "non_convergence",
                Error::Precondition(_) => "precondition",
                Error::Io(_) => "io",
                Error::Parse(_) => "parse",
            },
        }
    }

    pub fn reason(&self) -> String {
        let text = match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Validation(s) | Failure::Contract(s) => s.clone(),
        };
        text.replace('\n', " ")
    }
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE,IM, got {s:?}")),
    }
}

/// Caps the global rayon pool at `SIGMAFOCK_THREADS` workers when set.
pub fn configure_threads() -> Option<usize> {
    let n = std::env::var(THREADS_ENV).ok()?.trim().parse::<usize>().ok()?;
    if n == 0 {
        return None;
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok()?;
    Some(n)
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(config),
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = e.print();
                0
            }
            _ => {
                let text = e.to_string();
                let line = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                eprintln!("sigmafock: error[usage]: {line}");
                1
            }
        },
    }
}

pub fn run(config: RunConfig) -> i32 {
    configure_threads();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&config, &mut lock) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("sigmafock: error[{}]: {}", f.tag(), f.reason());
            f.exit_code()
        }
    }
}

fn emit<F>(path: Option<&Path>, stdout: &mut dyn Write, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> crate::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => write(stdout)?,
    }
    Ok(())
}

fn emit_json<T: Serialize>(path: Option<&Path>, stdout: &mut dyn Write, value: &T) -> Result<(), Failure> {
    emit(path, stdout, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)?;
        Ok(())
    })
}

fn load(path: &Path) -> Result<SequenceSpec, Failure> {
    SequenceSpec::from_path(path).map_err(|e| match e {
        Error::Io(msg) => Failure::Lib(Error::Io(format!("{}: {msg}", path.display()))),
        other => Failure::Lib(other),
    })
}

fn build(path: &Path) -> Result<DRegularSequence, Failure> {
    Ok(load(path)?.build()?)
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

fn envelope<T: Serialize>(body: T) -> Envelope<T> {
    Envelope {
        schema_version: SCHEMA_VERSION,
        body,
    }
}

/// Runs a parsed command, writing unnamed outputs to `stdout`.
pub fn execute(config: &RunConfig, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &config.command {
        Command::Gen(a) => {
            let mut spec = load(&a.seq)?;
            if let Some(seed) = a.seed {
                spec.seed = seed;
            }
            let seq = spec.build()?;
            emit(a.out.as_deref(), stdout, |w| write_points_csv(&seq, w))
        }
        Command::Validate(a) => {
            let seq = build(&a.seq)?;
            let report = validate_d_regular(&seq)?;
            let phi = phi_admissible(seq.phi());
            #[derive(Serialize)]
            struct Out<'a> {
                report: &'a crate::sequences::RegularityReport,
                phi: &'a crate::sequences::PhiAdmissibility,
                separation: f64,
            }
            emit_json(
                a.out.as_deref(),
                stdout,
                &envelope(Out {
                    report: &report,
                    phi: &phi,
                    separation: seq.c(),
                }),
            )?;
            if !report.valid {
                let what = report
                    .first_violation
                    .as_ref()
                    .map(|v| format!("{:?} at {}", v.kind, v.index))
                    .unwrap_or_default();
                return Err(Failure::Validation(format!("sequence is not d-regular: {what}")));
            }
            if !phi.admissible() {
                return Err(Failure::Validation("phi profile is not admissible".into()));
            }
            Ok(())
        }
        Command::Sigma(a) => {
            check_tol(a.tol)?;
            let v = sigma_lattice_log(a.z, a.tol);
            #[derive(Serialize)]
            struct Out {
                z: Complex64,
                log_modulus: f64,
                argument: f64,
                log_weighted_modulus: f64,
            }
            emit_json(
                a.out.as_deref(),
                stdout,
                &envelope(Out {
                    z: a.z,
                    log_modulus: v.log_modulus,
                    argument: v.argument,
                    log_weighted_modulus: SigmaLattice::new(a.tol).log_weight_modulus(a.z),
                }),
            )
        }
        Command::SigmaGamma(a) => {
            check_tol(a.tol)?;
            let seq = build(&a.seq)?;
            let ev = sigma_gamma_log(&seq, a.z, a.tol)?;
            let reg = regularized_modulus(&seq, a.z, a.tol)?;
            #[derive(Serialize)]
            struct Out {
                z: Complex64,
                log_modulus: f64,
                argument: f64,
                truncation_radius: f64,
                tail_bound: f64,
                log_regularized_modulus: f64,
            }
            emit_json(
                a.out.as_deref(),
                stdout,
                &envelope(Out {
                    z: a.z,
                    log_modulus: ev.value.log_modulus,
                    argument: ev.value.argument,
                    truncation_radius: ev.truncation_radius,
                    tail_bound: ev.tail_bound,
                    log_regularized_modulus: reg.log_value,
                }),
            )
        }
        Command::HFactors(a) => {
            let seq = build(&a.seq)?;
            let h = h_factors(&seq, a.z, a.eps)?;
            #[derive(Serialize)]
            struct Out {
                z: Complex64,
                #[serde(flatten)]
                h: crate::sigma_gamma::HFactorDiagnostic,
                log_h: f64,
            }
            emit_json(
                a.out.as_deref(),
                stdout,
                &envelope(Out {
                    z: a.z,
                    h,
                    log_h: h.log_h(),
                }),
            )
        }
        Command::ScanBounds(a) => {
            check_tol(a.tol)?;
            match &a.seq {
                None => {
                    let scan = weierstrass_bound_scan(a.step, a.tol)?;
                    #[derive(Serialize)]
                    struct Out {
                        grid_step: f64,
                        c1_hat: f64,
                        c2_hat: f64,
                        argmax: Complex64,
                    }
                    match &a.out {
                        Some(p) => {
                            emit(Some(p), stdout, |w| write_bound_scan_csv(&scan, w))?;
                            emit_json(
                                None,
                                stdout,
                                &envelope(Out {
                                    grid_step: scan.grid_step,
                                    c1_hat: scan.c1_hat,
                                    c2_hat: scan.c2_hat,
                                    argmax: scan.argmax,
                                }),
                            )
                        }
                        None => emit(None, stdout, |w| write_bound_scan_csv(&scan, w)),
                    }
                }
                Some(path) => {
                    check_radii(&a.radii)?;
                    let seq = build(path)?;
                    let scan = growth_exponent_scan(&seq, &a.radii, a.tol)?;
                    match &a.out {
                        Some(p) => {
                            emit(Some(p), stdout, |w| write_growth_scan_csv(&scan, w))?;
                            emit_json(None, stdout, &envelope(RowsOut { rows: &scan.rows }))
                        }
                        None => emit(None, stdout, |w| write_growth_scan_csv(&scan, w)),
                    }
                }
            }
        }
        Command::FockNorm(a) => {
            check_tol(a.tol)?;
            let radii = match &a.radii {
                Some(r) => r.clone(),
                None => vec![0.25 * a.radius, 0.5 * a.radius, a.radius],
            };
            check_radii(&radii)?;
            let r_max = *radii.last().unwrap();
            let quad = PolarQuadrature::default();
            let norm = match a.target {
                NormTarget::SigmaGamma => {
                    let path = a
                        .seq
                        .as_deref()
                        .ok_or_else(|| Error::InvalidArgument("target sigma-gamma needs --seq".into()))?;
                    let seq = build(path)?;
                    if seq.gamma_coverage() < r_max {
                        return Err(Error::InsufficientRadius {
                            stored: seq.radius(),
                            required: recommended_sequence_radius(seq.d(), r_max),
                        }
                        .into());
                    }
                    let eval = SigmaGamma::new(&seq, r_max, a.tol)?;
                    fock_norm_on_grid(|z| eval.log_modulus(z), &radii, &quad)?
                }
                NormTarget::SigmaLattice => {
                    let s = SigmaLattice::new(a.tol);
                    fock_norm_on_grid(|z| s.log_modulus(z), &radii, &quad)?
                }
                NormTarget::One => fock_norm_on_grid(|_| 0.0, &radii, &quad)?,
                NormTarget::Monomial => {
                    if a.kmax > MAX_DEGREE {
                        return Err(Error::DegreeOutOfRange(a.kmax).into());
                    }
                    let k = a.kmax;
                    fock_norm_on_grid(
                        |z| onb_monomial_log(k, z).map(|v| v.log_modulus).unwrap_or(f64::NAN),
                        &radii,
                        &quad,
                    )?
                }
            };
            emit_json(a.out.as_deref(), stdout, &envelope(norm))
        }
        Command::BargmannCheck(a) => {
            if a.kmax > MAX_DEGREE {
                return Err(Error::DegreeOutOfRange(a.kmax).into());
            }
            let check = bargmann_check(a.kmax, a.tol, a.seed, &LineQuadrature::default())?;
            emit_json(a.out.as_deref(), stdout, &check)?;
            if !check.passed {
                let worst = check.rows.iter().map(|r| r.max_error).fold(0.0, f64::max);
                return Err(Failure::Contract(format!(
                    "bargmann error {worst:e} exceeds tolerance {:e}",
                    a.tol
                )));
            }
            Ok(())
        }
        Command::Uniqueness(a) => {
            check_radii(&a.radii)?;
            let spec = load(&a.seq)?;
            let r_max = *a.radii.last().unwrap();
            let stored = spec.radius.max(recommended_sequence_radius(spec.d, r_max));
            let seq = spec.with_radius(stored).build()?;
            let quad = PolarQuadrature::default();
            let mut verdict = match a.mode {
                UniquenessMode::Auto => classify(&seq, &a.radii, &quad)?,
                UniquenessMode::Certificate => non_uniqueness_certificate(&seq, &a.radii, &quad)?,
                UniquenessMode::Evidence => uniqueness_evidence(&seq, &a.radii)?,
            };
            verdict
                .notes
                .push_str(&format!("; sequence generated to index radius {stored}"));
            if let Some(p) = &a.matrix {
                let m = evaluation_matrix(
                    &seq,
                    crate::experiments::evidence_row_radius(r_max),
                    degree_budget(r_max),
                )?;
                emit(Some(p), stdout, |w| write_matrix_csv(&m, w))?;
            }
            match &a.out {
                Some(p) => {
                    emit(Some(p), stdout, |w| write_verdict_json(&verdict, w))?;
                    emit(Some(&p.with_extension("csv")), stdout, |w| {
                        write_verdict_csv(&verdict, w)
                    })
                }
                None => emit(None, stdout, |w| write_verdict_json(&verdict, w)),
            }
        }
        Command::RemovePoints(a) => match (a.disc, &a.seq) {
            (Some(r), Some(path)) => {
                let seq = build(path)?;
                let check = disc_removal_check(&seq, r)?;
                emit_json(a.out.as_deref(), stdout, &envelope(check))
            }
            _ => {
                check_radii(&a.radii)?;
                let report = point_removal_study(a.k, &a.radii, &PolarQuadrature::default())?;
                emit_json(a.out.as_deref(), stdout, &report)
            }
        },
    }
}

#[derive(Serialize)]
struct RowsOut<'a> {
    rows: &'a [crate::sigma_gamma::GrowthRow],
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")).into());
    }
    Ok(())
}

fn check_radii(radii: &[f64]) -> Result<(), Failure> {
    if radii.is_empty() || !(radii[0] > 0.0) || radii.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidArgument("radii must be positive and strictly increasing".into()).into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_flag() {
        assert_eq!(parse_complex("-1.5,2").unwrap(), Complex64::new(-1.5, 2.0));
        assert_eq!(parse_complex("0.25").unwrap(), Complex64::new(0.25, 0.0));
        assert!(parse_complex("1,2,3").is_err());
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(main_with_args(["sigmafock", "sigma", "--z", "0.3,0.1", "--bogus"]), 1);
        assert_eq!(
            main_with_args(["sigmafock", "gen", "--seq", "x.json", "--eps", "0.1"]),
            1
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Lib(Error::Io("x".into())).exit_code(), 3);
        assert_eq!(
            Failure::Lib(Error::InsufficientRadius {
                stored: 1.0,
                required: 2.0
            })
            .exit_code(),
            2
        );
        assert_eq!(Failure::Lib(Error::Parse("x".into())).exit_code(), 1);
        assert_eq!(
            main_with_args(["sigmafock", "validate", "--seq", "/nonexistent/spec.json"]),
            3
        );
    }
}
