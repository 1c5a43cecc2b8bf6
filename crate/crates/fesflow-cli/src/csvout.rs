//! CSV emission with reproducible formatting.
//!
//! Floats are printed with 12 significant digits in scientific notation
//! and a `.` decimal separator, so reruns with identical inputs produce
//! byte-identical files.

use std::fmt::Write as _;

/// One CSV cell.
pub enum Cell {
    /// Verbatim text (labels, big integers).
    Text(String),
    /// Float, 12 significant digits.
    Num(f64),
    /// Integer.
    Int(u64),
    /// Boolean, `true`/`false`.
    Flag(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Cell {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Cell {
        Cell::Flag(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Cell {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.to_owned())
    }
}

/// Formats a float with 12 significant digits.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_owned();
    }
    if v.is_infinite() {
        return if v > 0.0 {
            "inf".to_owned()
        } else {
            "-inf".to_owned()
        };
    }
    format!("{v:.11e}")
}

/// An in-memory CSV document.
pub struct Csv {
    buffer: String,
    columns: usize,
}

impl Csv {
    /// Starts a document with the given header row.
    pub fn new(header: &[&str]) -> Csv {
        let mut buffer = String::new();
        buffer.push_str(&header.join(","));
        buffer.push('\n');
        Csv {
            buffer,
            columns: header.len(),
        }
    }

    /// Appends one row; the cell count must match the header.
    pub fn row(&mut self, cells: Vec<Cell>) {
        assert_eq!(cells.len(), self.columns, "row width does not match header");
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                self.buffer.push(',');
            }
            match cell {
                Cell::Text(s) => self.buffer.push_str(s),
                Cell::Num(v) => {
                    let s = format_float(*v);
                    let _ = write!(self.buffer, "{s}");
                }
                Cell::Int(v) => {
                    let _ = write!(self.buffer, "{v}");
                }
                Cell::Flag(v) => {
                    let _ = write!(self.buffer, "{v}");
                }
            }
        }
        self.buffer.push('\n');
    }

    /// The document contents.
    pub fn contents(&self) -> &str {
        &self.buffer
    }
}
