use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;

use crate::config::Format;

/// A command result in both output shapes.
pub struct Output {
    pub structured: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(structured: Value, header: Vec<&'static str>) -> Self {
        Output { structured, header, rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_vec_pretty(&self.structured)?;
                s.push(b'\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.into_inner().map_err(|e| io::Error::other(e.to_string()))
            }
        }
    }

    /// Writes to `out`, or to standard output.
    pub fn emit(&self, format: Format, out: Option<&Path>) -> io::Result<()> {
        let bytes = self.render(format)?;
        match out {
            Some(p) => fs::write(p, bytes),
            None => io::stdout().write_all(&bytes),
        }
    }
}
