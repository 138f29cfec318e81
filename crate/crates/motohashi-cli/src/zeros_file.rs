//! Plain-text zero tables: one positive decimal ordinate per line,
//! ascending, `#` comment lines ignored.

use std::fmt;
use std::path::Path;

use motohashi_core::zeta::ZeroTable;

#[derive(Debug)]
pub enum ZerosFileError {
    Io(std::io::Error),
    Parse { line: usize, content: String },
    Ordering { line: usize },
    Table(motohashi_core::Error),
}

impl fmt::Display for ZerosFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZerosFileError::Io(e) => write!(f, "cannot read zeros file: {e}"),
            ZerosFileError::Parse { line, content } => {
                write!(f, "line {line}: not a decimal ordinate: {content:?}")
            }
            ZerosFileError::Ordering { line } => {
                write!(f, "line {line}: ordinates must be strictly ascending")
            }
            ZerosFileError::Table(e) => write!(f, "invalid zero table: {e}"),
        }
    }
}

impl std::error::Error for ZerosFileError {}

/// Reads and validates a zeros file. Duplicates within 1e-9 collapse to the
/// first occurrence; descending pairs are an error with the line number.
pub fn ingest_zeros(path: &Path) -> Result<ZeroTable, ZerosFileError> {
    let text = std::fs::read_to_string(path).map_err(ZerosFileError::Io)?;
    let mut ordinates: Vec<f64> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let value: f64 = trimmed.parse().map_err(|_| ZerosFileError::Parse {
            line,
            content: trimmed.to_string(),
        })?;
        if let Some(&last) = ordinates.last() {
            if value <= last - 1e-9 {
                return Err(ZerosFileError::Ordering { line });
            }
            if (value - last).abs() <= 1e-9 {
                continue; // duplicate within tolerance
            }
        }
        ordinates.push(value);
    }
    ZeroTable::new(ordinates, path.display().to_string()).map_err(ZerosFileError::Table)
}
