//! Deterministic table and report rendering.
//!
//! Every float is rendered as `{:.16e}` (17 significant digits), which
//! round-trips f64 exactly, so identical runs produce byte-identical
//! files and diffs between runs are meaningful. JSON carries the same
//! renderings as strings; native JSON numbers would be at the mercy of
//! the serializer's shortest-representation logic.

use crate::config::{CliError, CliResult, OutputFormat};
use std::io::Write;
use std::path::{Path, PathBuf};

/// 17 significant digits, scientific notation.
pub fn sci17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A cell is preformatted text; empty means "no value" (flagged rows).
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header row, comma separator, LF endings, UTF-8. Cells never need
    /// quoting: they are numbers, short flag words, or empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"columns": [...], "rows": [[...], ...]}` with all cells as
    /// strings, in column order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"columns\": [");
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push('"');
            out.push_str(c);
            out.push('"');
        }
        out.push_str("],\n  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str("    [");
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                out.push('"');
                out.push_str(cell);
                out.push('"');
            }
            out.push(']');
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Where a command's primary output goes: --out file or stdout.
pub struct Sink {
    path: Option<PathBuf>,
}

impl Sink {
    pub fn new(path: Option<&Path>) -> Self {
        Sink { path: path.map(Path::to_path_buf) }
    }

    pub fn write(&self, text: &str) -> CliResult<()> {
        match &self.path {
            Some(p) => std::fs::write(p, text).map_err(|e| {
                CliError::Usage(format!("cannot write {}: {e}", p.display()))
            }),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|()| stdout.flush())
                    .map_err(|e| CliError::Usage(format!("cannot write stdout: {e}")))
            }
        }
    }

    /// Secondary one-line summaries go to stdout when the table went to a
    /// file, and to stderr when the table occupies stdout.
    pub fn summary(&self, line: &str) {
        if self.path.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci17_round_trips_doubles() {
        for x in [1.0, -0.3333333333333333, 2.718281828459045e-8, 1e300] {
            let s = sci17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_uses_lf_and_header() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec!["1".into(), String::new()]);
        assert_eq!(t.to_csv(), "a,b\n1,\n");
    }

    #[test]
    fn json_table_quotes_every_cell() {
        let mut t = Table::new(vec!["a"]);
        t.push(vec![sci17(0.5)]);
        let s = t.to_json();
        assert!(s.contains("\"5.0000000000000000e-1\""));
    }
}
