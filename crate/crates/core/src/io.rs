//! File formats: moment files (JSON), density and characteristic-function
//! tables (CSV or JSON), and the long-format comparison table. Every file is
//! written atomically through a temporary file in the target directory.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::domain::rational_from_f64;
use crate::error::{Error, Result};
use crate::estimator::DensityEstimate;
use crate::moments::{format_decimal, parse_decimal, MomentVector, Precision};
use crate::warning::Warning;

/// Output flavour of tabular results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

impl TableFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
        }
    }
}

/// Writes `bytes` to `path` via a temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn format_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MomentFileRepr {
    domain: [f64; 2],
    moments: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    precision_digits: Option<u32>,
}

/// Serializes moments as decimal strings with `digits` significant digits
/// (all digits are written for exact values that terminate earlier).
pub fn moment_file_json(m: &MomentVector, digits: u32) -> Result<String> {
    let repr = MomentFileRepr {
        domain: [m.domain().0, m.domain().1],
        moments: m
            .values()
            .iter()
            .map(|v| Value::String(format_decimal(v, digits)))
            .collect(),
        precision_digits: Some(match m.precision() {
            Precision::Exact => digits,
            Precision::Digits(d) => d.min(digits),
        }),
    };
    Ok(serde_json::to_string_pretty(&repr)? + "\n")
}

/// Parses a moment file. Decimal strings are read exactly; JSON numbers are
/// accepted as binary floats and flagged.
pub fn parse_moment_file(text: &str, path: &Path) -> Result<MomentVector> {
    let repr: MomentFileRepr = serde_json::from_str(text).map_err(|e| {
        format_error(path, format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    if repr.moments.is_empty() {
        return Err(format_error(path, "field `moments` is empty"));
    }
    let mut binary = 0;
    let mut values = Vec::with_capacity(repr.moments.len());
    for (i, v) in repr.moments.iter().enumerate() {
        let r = match v {
            Value::String(s) => parse_decimal(s).ok_or_else(|| {
                format_error(path, format!("moments[{i}]: `{s}` is not a decimal number"))
            })?,
            Value::Number(n) => {
                binary += 1;
                let f = n
                    .as_f64()
                    .ok_or_else(|| format_error(path, format!("moments[{i}]: unrepresentable number")))?;
                rational_from_f64(f)
            }
            other => {
                return Err(format_error(
                    path,
                    format!("moments[{i}]: expected a decimal string, got {other}"),
                ))
            }
        };
        values.push(r);
    }
    let precision = match repr.precision_digits {
        Some(0) => return Err(format_error(path, "field `precision_digits` must be positive")),
        Some(d) if binary == 0 => Precision::Digits(d),
        Some(d) => Precision::Digits(d.min(15)),
        None if binary == 0 => Precision::Exact,
        None => Precision::Digits(15),
    };
    let [a, b] = repr.domain;
    let m = MomentVector::new(values, (a, b), precision)
        .map_err(|e| format_error(path, format!("field `domain`: {e}")))?;
    Ok(m.with_binary_inputs(binary))
}

pub fn read_moment_file(path: &Path) -> Result<MomentVector> {
    let text = std::fs::read_to_string(path)?;
    parse_moment_file(&text, path)
}

pub fn write_moment_file(path: &Path, m: &MomentVector, digits: u32) -> Result<()> {
    write_atomic(path, moment_file_json(m, digits)?.as_bytes())
}

/// Seventeen significant digits, enough to round-trip any double.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn warning_header(warnings: &[Warning]) -> String {
    warnings.iter().map(|w| format!("# warning: {w}\n")).collect()
}

#[derive(Serialize)]
struct DensityJson<'a> {
    x: &'a [f64],
    density: &'a [f64],
    warnings: &'a [Warning],
}

/// A density in physical units as `x,density` rows, preceded by
/// `# warning:` comment lines.
pub fn density_table(estimate: &DensityEstimate, format: TableFormat) -> Result<String> {
    let (x, f) = estimate.physical();
    Ok(match format {
        TableFormat::Csv => {
            let mut out = warning_header(&estimate.warnings);
            out.push_str("x,density\n");
            for (x, f) in x.iter().zip(&f) {
                out.push_str(&format!("{},{}\n", num(*x), num(*f)));
            }
            out
        }
        TableFormat::Json => {
            serde_json::to_string_pretty(&DensityJson {
                x: &x,
                density: &f,
                warnings: &estimate.warnings,
            })? + "\n"
        }
    })
}

pub fn write_density(path: &Path, estimate: &DensityEstimate, format: TableFormat) -> Result<()> {
    write_atomic(path, density_table(estimate, format)?.as_bytes())
}

/// Reads an `x,density` CSV, skipping comment lines.
pub fn read_density_csv(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["x", "density"] {
        return Err(format_error(path, format!("expected header `x,density`, got `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut xs = Vec::new();
    let mut fs = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let parse = |field: usize, name: &str| -> Result<f64> {
            row.get(field)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| format_error(path, format!("record {}: field `{name}` is not a number", i + 1)))
        };
        xs.push(parse(0, "x")?);
        fs.push(parse(1, "density")?);
    }
    Ok((xs, fs))
}

#[derive(Serialize)]
struct CharacteristicJson {
    t: Vec<f64>,
    re: Vec<f64>,
    im: Vec<f64>,
}

pub fn characteristic_table(samples: &[(f64, Complex64)], format: TableFormat) -> Result<String> {
    Ok(match format {
        TableFormat::Csv => {
            let mut out = String::from("t,re,im\n");
            for (t, z) in samples {
                out.push_str(&format!("{},{},{}\n", num(*t), num(z.re), num(z.im)));
            }
            out
        }
        TableFormat::Json => {
            serde_json::to_string_pretty(&CharacteristicJson {
                t: samples.iter().map(|s| s.0).collect(),
                re: samples.iter().map(|s| s.1.re).collect(),
                im: samples.iter().map(|s| s.1.im).collect(),
            })? + "\n"
        }
    })
}

/// Long-format table `x,method,value` over several estimates sharing a grid,
/// in physical units.
pub fn comparison_table(estimates: &[(String, &DensityEstimate)], format: TableFormat) -> Result<String> {
    #[derive(Serialize)]
    struct Row<'a> {
        x: f64,
        method: &'a str,
        value: f64,
    }
    let mut rows = Vec::new();
    let physical: Vec<_> = estimates.iter().map(|(label, e)| (label, e.physical())).collect();
    for (label, (x, f)) in &physical {
        for (x, f) in x.iter().zip(f) {
            rows.push(Row {
                x: *x,
                method: label,
                value: *f,
            });
        }
    }
    Ok(match format {
        TableFormat::Csv => {
            let mut out = String::from("x,method,value\n");
            for r in &rows {
                out.push_str(&format!("{},{},{}\n", num(r.x), r.method, num(r.value)));
            }
            out
        }
        TableFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
    })
}
