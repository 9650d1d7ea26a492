//! CSV rows for the laboratory's outputs.
//!
//! Every output has a mandatory header row, `.` as decimal separator and
//! numbers printed with 15 significant digits in their shortest form, so
//! identical inputs give byte-identical files.

use std::io::Write;

use crate::error::{Error, Result};
use crate::restriction::{JReport, NormReport, Sample, SignChange};

/// A type that serialises to one CSV row under a fixed header.
pub trait CsvRecord {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// `x` rounded to 15 significant digits, printed in shortest form
/// (scientific notation outside `[1e-4, 1e15)`).
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    let mag = rounded.abs();
    if mag != 0.0 && !(1e-4..1e15).contains(&mag) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

/// Write the header and all rows.
pub fn write_csv<W: Write, R: CsvRecord>(out: W, rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(R::HEADER).map_err(err)?;
    for r in rows {
        w.write_record(r.fields()).map_err(err)?;
    }
    w.flush()?;
    Ok(())
}

impl CsvRecord for Sample {
    const HEADER: &'static [&'static str] = &["y", "value", "abs_error"];

    fn fields(&self) -> Vec<String> {
        vec![fmt_num(self.y), fmt_num(self.value), fmt_num(self.abs_error)]
    }
}

impl CsvRecord for SignChange {
    const HEADER: &'static [&'static str] = &["y_lo", "y_hi", "sign_lo", "sign_hi"];

    fn fields(&self) -> Vec<String> {
        vec![fmt_num(self.y_lo), fmt_num(self.y_hi), self.sign_lo.to_string(), self.sign_hi.to_string()]
    }
}

impl CsvRecord for NormReport {
    const HEADER: &'static [&'static str] = &["p", "value", "quad_error", "measure"];

    fn fields(&self) -> Vec<String> {
        vec![fmt_num(self.p), fmt_num(self.value), fmt_num(self.quad_error), self.measure.name().to_string()]
    }
}

impl CsvRecord for JReport {
    const HEADER: &'static [&'static str] = &["eta", "value", "quad_error"];

    fn fields(&self) -> Vec<String> {
        vec![fmt_num(self.eta), fmt_num(self.value), fmt_num(self.quad_error)]
    }
}
