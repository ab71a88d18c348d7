//! CSV tables: `#` metadata lines, one header row, then data rows.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::error::CliError;

/// `%.12g`-style decimal rendering with 12 significant digits.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let m = trim_fraction(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_fraction(&format!("{v:.decimals$}")).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Ordered rows of a sweep with their metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Comment lines, written with a `# ` prefix.
    pub metadata: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepResult {
    pub fn new(metadata: Vec<String>, columns: Vec<String>) -> Self {
        Self {
            metadata,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Rows strictly increasing in the first column, all values finite.
    pub fn validate(&self) -> Result<(), String> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                return Err(format!(
                    "row {i} has {} values for {} columns",
                    row.len(),
                    self.columns.len()
                ));
            }
            if let Some(v) = row.iter().find(|v| !v.is_finite()) {
                return Err(format!("row {i} holds non-finite value {v}"));
            }
            if i > 0 && row[0] <= self.rows[i - 1][0] {
                return Err(format!("row {i} does not advance the abscissa"));
            }
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.metadata {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Writes to `path`, or to stdout when `path` is `None`.
    pub fn write(&self, path: Option<&Path>) -> Result<(), CliError> {
        let text = self.render();
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
            None => write_stdout(&text),
        }
    }
}

/// Writes to stdout; a reader that closed the pipe early is not an error.
pub(crate) fn write_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io("<stdout>", e)),
        _ => Ok(()),
    }
}
