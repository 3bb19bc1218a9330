//! Reading inputs and writing reports.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use geodesy::scalar::parse_rational;
use geodesy::Scalar;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Inline JSON if the argument starts with `{` or `[`, otherwise a path.
pub fn read_source(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))
}

pub fn read_json(arg: &str) -> Result<Value> {
    let text = read_source(arg)?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", describe(arg)))
}

fn describe(arg: &str) -> String {
    if arg.len() > 40 {
        format!("{}…", &arg[..arg.char_indices().nth(40).map_or(arg.len(), |(i, _)| i)])
    } else {
        arg.to_string()
    }
}

/// Decimal rendering for CSV: 15 significant digits.
pub fn decimal(x: f64) -> String {
    format!("{x:.14e}")
}

/// CSV cell for a JSON value: integers verbatim, fractions and floats as
/// decimals, anything structured as compact JSON.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::Number(n) => decimal(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) if s.contains('/') => match parse_rational(s) {
            Ok(q) => decimal(Scalar::Exact(q).to_f64()),
            Err(_) => s.clone(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), cell(v))),
    }
}

/// One header row and one value row, nested objects flattened with dotted
/// keys.
pub fn report_csv(report: &Value) -> Result<String> {
    let mut pairs = Vec::new();
    flatten("", report, &mut pairs);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(pairs.iter().map(|(k, _)| k))?;
    w.write_record(pairs.iter().map(|(_, v)| v))?;
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn table_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn render(report: &Value, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        Format::Csv => report_csv(report)?,
    })
}

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Writes pretty JSON files named `{stem}_{i:04}.json` into `dir` and
/// returns the file names.
pub fn write_numbered(dir: &Path, stem: &str, docs: &[Value]) -> Result<Vec<String>> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    docs.iter()
        .enumerate()
        .map(|(i, d)| {
            let name = format!("{stem}_{i:04}.json");
            write_file(&dir.join(&name), &(serde_json::to_string_pretty(d)? + "\n"))?;
            Ok(name)
        })
        .collect()
}

/// Report skeleton shared by every command.
pub fn envelope(command: &str, seed: u64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), command.into());
    m.insert("seed".into(), seed.into());
    m
}

/// Inserts every field of a serialisable object into `map`.
pub fn merge(map: &mut Map<String, Value>, value: impl serde::Serialize) -> Result<()> {
    match serde_json::to_value(value)? {
        Value::Object(fields) => map.extend(fields),
        other => anyhow::bail!("expected an object, got {other}"),
    }
    Ok(())
}
