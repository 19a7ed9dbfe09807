use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Output value with nine significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.8e}")
}

/// Optional output value; `None` becomes an empty field.
pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Input value, printed so that it parses back to the identical float.
pub fn exact(x: f64) -> String {
    format!("{x:e}")
}

/// '#' lines written ahead of the CSV header.
#[derive(Debug, Clone)]
pub struct Metadata {
    lines: Vec<String>,
}

impl Metadata {
    pub fn new(command_line: &str) -> Self {
        Self {
            lines: vec![
                format!("gcp {}", env!("CARGO_PKG_VERSION")),
                format!("command: {command_line}"),
                "constants: CODATA 2018, alpha = 1/137.035999".into(),
            ],
        }
    }
}

/// A CSV document: metadata comments, header, rows.
#[derive(Debug, Clone)]
pub struct CsvTable {
    meta: Metadata,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: AsRef<str>>(meta: Metadata, header: &[S]) -> Self {
        Self {
            meta,
            header: header.iter().map(|s| s.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_meta(&mut self, line: impl Into<String>) {
        self.meta.lines.push(line.into());
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        for line in &self.meta.lines {
            buf.extend_from_slice(b"# ");
            buf.extend_from_slice(line.as_bytes());
            buf.push(b'\n');
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(buf);
        w.write_record(&self.header).expect("write to memory");
        for r in &self.rows {
            w.write_record(r).expect("write to memory");
        }
        w.into_inner().expect("flush to memory")
    }

    /// Write to `path`, or to standard output when `None`. A file that
    /// cannot be written completely is removed.
    pub fn emit(&self, path: Option<&Path>) -> Result<()> {
        let bytes = self.to_bytes();
        match path {
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(&bytes)
                    .and_then(|_| out.flush())
                    .map_err(|source| Error::Io {
                        path: "<stdout>".into(),
                        source,
                    })
            }
            Some(p) => std::fs::write(p, &bytes).map_err(|source| {
                let _ = std::fs::remove_file(p);
                Error::Io {
                    path: p.to_path_buf(),
                    source,
                }
            }),
        }
    }
}
