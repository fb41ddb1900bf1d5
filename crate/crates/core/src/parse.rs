//! Line-oriented parsing shared by the file loaders.
//!
//! All input formats are UTF-8 text where blank lines and lines starting
//! with `#` are ignored.

use std::io::BufRead;

use crate::{Error, Result};

/// Yields `(1-based line number, content)` for every data line.
pub(crate) fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(idx, line)| match line {
            Ok(text) => {
                let trimmed = text.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    None
                } else {
                    Some(Ok((idx + 1, trimmed.to_string())))
                }
            }
            Err(err) => Some(Err(Error::Io(err))),
        })
}

/// Splits a data line into exactly `n` tab-separated fields.
pub(crate) fn tab_fields(line: &str, lineno: usize, n: usize) -> Result<Vec<&str>> {
    let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
    if fields.len() != n {
        return Err(Error::Parse {
            line: lineno,
            message: format!("expected {n} tab-separated fields, found {}", fields.len()),
        });
    }
    if fields.iter().any(|f| f.is_empty()) {
        return Err(Error::Parse {
            line: lineno,
            message: "empty field".to_string(),
        });
    }
    Ok(fields)
}

/// Parses a finite floating-point field.
pub(crate) fn float_field(text: &str, lineno: usize, what: &str) -> Result<f64> {
    let value: f64 = text.parse().map_err(|_| Error::Parse {
        line: lineno,
        message: format!("cannot parse {what} {text:?} as a number"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line: lineno,
            message: format!("{what} {text:?} is not finite"),
        });
    }
    Ok(value)
}
