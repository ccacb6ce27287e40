//! Observation files: one value per line, or a single-column CSV with an
//! optional header. Blank lines and `#` comments are ignored.

use std::path::Path;

use crate::error::{NtleError, Result};
use crate::estimation::Sample;

pub fn parse_dataset(text: &str) -> Result<Sample> {
    let mut values = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split(',');
        let field = fields.next().unwrap_or("").trim().trim_matches('"');
        if fields.any(|f| !f.trim().is_empty()) {
            return Err(NtleError::Parse {
                line,
                message: format!("expected a single column, found '{trimmed}'"),
            });
        }
        let first = !seen_content;
        seen_content = true;
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => values.push(v),
            Ok(v) => {
                return Err(NtleError::Parse {
                    line,
                    message: format!("observation {v} is not positive and finite"),
                })
            }
            // a non-numeric first line is a header
            Err(_) if first => {}
            Err(_) => {
                return Err(NtleError::Parse {
                    line,
                    message: format!("'{field}' is not a number"),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(NtleError::Empty("dataset contains no observations".into()));
    }
    if values.len() < Sample::MIN_SIZE {
        return Err(NtleError::Precondition(format!(
            "dataset has {} observations; at least {} are needed",
            values.len(),
            Sample::MIN_SIZE
        )));
    }
    Sample::new(values)
}

pub fn read_dataset(path: &Path) -> Result<Sample> {
    let text = std::fs::read_to_string(path).map_err(|e| NtleError::Io(format!("{}: {e}", path.display())))?;
    parse_dataset(&text)
}

/// One observation per line with shortest round-trip formatting.
pub fn format_dataset(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 20);
    for v in values {
        out.push_str(&format!("{v:?}\n"));
    }
    out
}
