//! CSV output.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::CliError;

/// Shortest decimal that parses back to the same `f64`; `nan` for NaN.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v == 0.0 || (1e-5..1e16).contains(&v.abs()) || v.is_infinite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// A header plus numeric rows.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, sink: W) -> Result<(), csv::Error> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| format_number(v)))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes to `path`, or stdout when `path` is `None`.
    pub fn emit(&self, path: Option<&Path>) -> Result<(), CliError> {
        let result = match path {
            Some(p) => {
                let file = File::create(p).map_err(|e| CliError::Config(format!("cannot create {}: {e}", p.display())))?;
                self.write_to(io::BufWriter::new(file))
            }
            None => self.write_to(io::stdout().lock()),
        };
        result.map_err(|e| CliError::Config(format!("cannot write CSV: {e}")))
    }
}
