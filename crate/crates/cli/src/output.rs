//! Rendering of records as JSON, CSV or aligned text.

use std::io::{self, Write};

use clap::ValueEnum;
use relmod::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A flat table plus the structured value used for JSON output.
pub struct Report<'a, T: Serialize> {
    pub json: &'a T,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Lines printed above the table in text mode.
    pub preamble: Vec<String>,
}

impl<T: Serialize> Report<'_, T> {
    pub fn emit(&self, format: Format) -> Result<()> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        match format {
            Format::Json => {
                let s = serde_json::to_string_pretty(self.json).map_err(|e| Error::Internal(e.to_string()))?;
                writeln!(out, "{s}")?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header).map_err(csv_error)?;
                for row in &self.rows {
                    w.write_record(row).map_err(csv_error)?;
                }
                w.flush()?;
            }
            Format::Text => {
                for line in &self.preamble {
                    writeln!(out, "{line}")?;
                }
                if !self.header.is_empty() {
                    write_aligned(&mut out, &self.header, &self.rows)?;
                }
            }
        }
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Internal(format!("csv output: {e}"))
}

fn write_aligned(out: &mut impl Write, header: &[String], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.iter().map(String::as_str).collect()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
