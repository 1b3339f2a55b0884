use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::CliError;

/// Ten significant digits, `inf` for +∞.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.9e}")
    }
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// `#` comment block echoing the resolved configuration, then the tables
/// separated by blank lines.
pub struct Report {
    command: &'static str,
    config: Vec<(String, String)>,
    tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            config: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn config(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.to_string(), value.to_string()));
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn render(&self) -> Result<Vec<u8>, CliError> {
        let mut buf = Vec::new();
        writeln!(buf, "# ecred {}", self.command)?;
        for (k, v) in &self.config {
            writeln!(buf, "# {k}={v}")?;
        }
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                buf.push(b'\n');
            }
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut buf);
            w.write_record(&t.header)?;
            for r in &t.rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        Ok(buf)
    }

    pub fn emit(&self, out: Option<&Path>) -> Result<(), CliError> {
        let bytes = self.render()?;
        match out {
            Some(p) => fs::write(p, bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    }
}
