//! Deterministic CSV and JSON emission.
//!
//! Floats are rendered with Rust's shortest round-trip formatting, so a
//! value parsed back from any emitted file is bit-identical to the value
//! that was written, and identical inputs produce byte-identical files.

use std::fs;
use std::path::{Path, PathBuf};

use cvacomplete_core::{Error, Result};

/// An all-numeric CSV table with a fixed header.
///
/// Keeping every column numeric means each emitted table can be read back
/// with the library's strict CSV reader; categorical columns (such as the
/// swap side) are therefore encoded as numbers (0 = payer, 1 = receiver).
pub struct Table {
    header: &'static [&'static str],
    rows: Vec<Vec<f64>>,
}

impl Table {
    /// Starts an empty table with the given column names.
    pub fn new(header: &'static [&'static str]) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    /// Appends one row; the width must match the header.
    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "table row width must match its header"
        );
        self.rows.push(row);
    }

    /// Number of data rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Renders the table, header first, one line per row, `\n` terminated.
    pub fn render(&self) -> String {
        let mut text = self.header.join(",");
        text.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            text.push_str(&fields.join(","));
            text.push('\n');
        }
        text
    }
}

/// Writes `content` to `dir/name`, creating the directory if needed.
///
/// # Errors
/// [`Error::Input`] wrapping the underlying IO failure.
pub fn write_file(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| {
        Error::Input(format!(
            "cannot create output directory {}: {e}",
            dir.display()
        ))
    })?;
    let path = dir.join(name);
    fs::write(&path, content)
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// Prints a serializable summary as pretty JSON on stdout.
///
/// # Errors
/// [`Error::Input`] if serialization fails (non-finite floats serialize as
/// `null`, so this is effectively unreachable for the summary types used).
pub fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Input(format!("cannot serialize summary: {e}")))?;
    println!("{text}");
    Ok(())
}

/// Renders a serializable summary as pretty JSON.
///
/// # Errors
/// As [`print_json`].
pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Error::Input(format!("cannot serialize summary: {e}")))
}
