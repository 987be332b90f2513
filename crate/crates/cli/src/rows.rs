//! Long-format result rows and their CSV/JSON renderings.
//!
//! CSV schema (fixed): header `variant,gamma_mode,alpha,lambda,c,d,t,N`,
//! LF line endings, N at full round-trip precision (17 significant digits).
//! Singular cells (t = 0 with lambda > 0) carry a configurable placeholder
//! in CSV and `null` in JSON. Row order is alpha-major, then t ascending,
//! independent of how the cells were computed.

use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CSV_HEADER: &str = "variant,gamma_mode,alpha,lambda,c,d,t,N";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub variant: String,
    pub gamma_mode: String,
    pub alpha: f64,
    pub lambda: f64,
    pub c: f64,
    pub d: Option<f64>,
    pub t: f64,
    #[serde(rename = "N")]
    pub n: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub fn emit_csv(rows: &[Row], placeholder: &str) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let d = row.d.map(|v| v.to_string()).unwrap_or_default();
        let n = match row.n {
            Some(v) => format!("{v:.16e}"),
            None => placeholder.to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.variant, row.gamma_mode, row.alpha, row.lambda, row.c, d, row.t, n
        ));
    }
    out
}

/// Inverse of [`emit_csv`]: any unparseable or non-finite N cell is treated
/// as the singular placeholder.
#[cfg(test)]
pub fn parse_csv(text: &str) -> Result<Vec<Row>, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == CSV_HEADER => {}
        other => {
            return Err(CliError::Validation(format!(
                "bad CSV header: expected {CSV_HEADER:?}, got {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(CliError::Validation(format!(
                "line {}: expected 8 fields, got {}",
                i + 2,
                fields.len()
            )));
        }
        let num = |s: &str, name: &str| -> Result<f64, CliError> {
            s.parse().map_err(|_| {
                CliError::Validation(format!("line {}: bad {name} value {s:?}", i + 2))
            })
        };
        rows.push(Row {
            variant: fields[0].to_string(),
            gamma_mode: fields[1].to_string(),
            alpha: num(fields[2], "alpha")?,
            lambda: num(fields[3], "lambda")?,
            c: num(fields[4], "c")?,
            d: if fields[5].is_empty() {
                None
            } else {
                Some(num(fields[5], "d")?)
            },
            t: num(fields[6], "t")?,
            n: fields[7].parse().ok().filter(|v: &f64| v.is_finite()),
        });
    }
    Ok(rows)
}

pub fn emit_json(rows: &[Row]) -> Result<String, CliError> {
    let mut out = serde_json::to_string_pretty(rows)
        .map_err(|e| CliError::Validation(format!("JSON serialization failed: {e}")))?;
    out.push('\n');
    Ok(out)
}
