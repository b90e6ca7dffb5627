//! Deterministic JSON and CSV encoding. Every float is written with 17
//! significant digits, which round-trips exactly.

use std::io;

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// `x` in scientific notation with 17 significant digits.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// Compact JSON formatter writing floats through [`number`]; non-finite
/// values become `null`.
struct Digits17;

impl serde_json::ser::Formatter for Digits17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            w.write_all(number(value).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

/// `value` as one line of JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17);
    value.serialize(&mut ser).map_err(|e| CliError::Numeric(format!("serialization failed: {e}")))?;
    buf.push(b'\n');
    Ok(buf)
}

/// CSV with a header row, comma separators and `\n` line endings.
pub fn to_csv(header: &[String], rows: &[Vec<String>]) -> CliResult<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Numeric(format!("csv encoding failed: {e}"));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(r).map_err(fail)?;
    }
    w.into_inner().map_err(|e| CliError::Numeric(format!("csv encoding failed: {e}")))
}
