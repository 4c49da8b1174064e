use std::io::Write;

use super::UniquenessVerdict;
use crate::error::Result;
use crate::SCHEMA_VERSION;

/// Pretty-printed JSON followed by a newline.
pub fn write_verdict_json<W: Write>(v: &UniquenessVerdict, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

/// `series,R,value` rows: `trace`, then `contrast` when present.
pub fn write_verdict_csv<W: Write>(v: &UniquenessVerdict, mut out: W) -> Result<()> {
    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["series", "R", "value"])?;
    for t in &v.trace {
        w.serialize(("trace", t.r, t.value))?;
    }
    for t in v.contrast_trace.iter().flatten() {
        w.serialize(("contrast", t.r, t.value))?;
    }
    w.flush()?;
    Ok(())
}
