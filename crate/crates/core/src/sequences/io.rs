use std::io::{BufRead, BufReader, Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    default_separation, make_perturbed_lattice_separated, make_scaled_lattice, DRegularSequence, LatticeIndex,
    PhiProfile, SeqPoint,
};
use crate::error::{Error, Result};
use crate::SCHEMA_VERSION;

/// JSON description of a sequence to generate.
///
/// ```json
/// {"d": 0.8, "c_hint": 0.3, "phi": {"kind": "power", "amplitude": 0.5, "exponent": 0.4},
///  "fill": 1.0, "seed": 7, "radius": 20}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpec {
    pub d: f64,
    #[serde(default)]
    pub c_hint: Option<f64>,
    pub phi: PhiProfile,
    #[serde(default)]
    pub fill: f64,
    #[serde(default)]
    pub seed: u64,
    pub radius: f64,
}

impl SequenceSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SequenceSpec = serde_json::from_str(text)?;
        if !(spec.d > 0.0) {
            return Err(Error::Parse(format!("d must be positive, got {}", spec.d)));
        }
        if !(spec.radius >= 0.0) {
            return Err(Error::Parse(format!(
                "radius must be non-negative, got {}",
                spec.radius
            )));
        }
        Ok(spec)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Generates the sequence. A zero profile or zero fill gives the scaled
    /// lattice exactly.
    pub fn build(&self) -> Result<DRegularSequence> {
        if self.phi.is_zero() || self.fill == 0.0 {
            return make_scaled_lattice(self.d, self.radius);
        }
        let c = self.c_hint.unwrap_or_else(|| default_separation(self.d));
        make_perturbed_lattice_separated(self.d, &self.phi, self.fill, self.seed, self.radius, c)
    }

    /// Same spec with a different index radius.
    pub fn with_radius(&self, radius: f64) -> Self {
        SequenceSpec { radius, ..self.clone() }
    }
}

/// Writes `m,n,re_gamma,im_gamma` rows in canonical order, preceded by a
/// `# schema_version` comment line.
pub fn write_points_csv<W: Write>(seq: &DRegularSequence, mut out: W) -> Result<()> {
    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["m", "n", "re_gamma", "im_gamma"])?;
    for p in seq.points() {
        w.write_record([
            p.index.m.to_string(),
            p.index.n.to_string(),
            p.gamma.re.to_string(),
            p.gamma.im.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the format written by [`write_points_csv`].
pub fn read_points_csv<R: Read>(input: R) -> Result<Vec<SeqPoint>> {
    let mut text = String::new();
    for line in BufReader::new(input).lines() {
        let line = line?;
        if line.starts_with('#') {
            continue;
        }
        text.push_str(&line);
        text.push('\n');
    }
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let field =
            |k: usize| -> Result<&str> { rec.get(k).ok_or_else(|| Error::Parse(format!("missing column {k}"))) };
        let m: i64 = field(0)?.parse().map_err(|e| Error::Parse(format!("m: {e}")))?;
        let n: i64 = field(1)?.parse().map_err(|e| Error::Parse(format!("n: {e}")))?;
        let re: f64 = field(2)?.parse().map_err(|e| Error::Parse(format!("re_gamma: {e}")))?;
        let im: f64 = field(3)?.parse().map_err(|e| Error::Parse(format!("im_gamma: {e}")))?;
        out.push(SeqPoint {
            index: LatticeIndex::new(m, n),
            gamma: Complex64::new(re, im),
        });
    }
    Ok(out)
}
