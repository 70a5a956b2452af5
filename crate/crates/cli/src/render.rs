//! Table, CSV and JSON output for flat records.

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Metadata for the JSON envelope. Only this part carries a timestamp.
pub fn meta(command: &str, params: &impl Serialize) -> Result<Value> {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    Ok(json!({
        "tool": "beck",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "params": serde_json::to_value(params)?,
        "generated_unix": secs,
    }))
}

pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner().context("flushing csv")?)?)
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(String::len).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// Renders records through the CSV serializer so every format shows the
/// same fields.
pub fn records<T: Serialize>(format: Format, meta: Value, rows: &[T]) -> Result<String> {
    match format {
        Format::Csv => csv_string(rows),
        Format::Json => {
            let doc = json!({ "meta": meta, "records": serde_json::to_value(rows)? });
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Table => {
            if rows.is_empty() {
                return Ok("(no records)\n".into());
            }
            let text = csv_string(rows)?;
            let mut reader = csv::Reader::from_reader(text.as_bytes());
            let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
            let body = reader
                .records()
                .map(|r| Ok(r?.iter().map(str::to_string).collect()))
                .collect::<Result<Vec<Vec<String>>>>()?;
            Ok(table(&header, &body))
        }
    }
}

pub fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        name: &'static str,
        value: Option<i64>,
    }

    #[test]
    fn table_aligns_serialized_fields() {
        let rows = [Row { name: "alpha", value: Some(-3) }, Row { name: "b", value: None }];
        let text = records(Format::Table, Value::Null, &rows).unwrap();
        assert_eq!(text, "name   value\nalpha  -3\nb\n");
        assert_eq!(csv_string(&rows).unwrap(), "name,value\nalpha,-3\nb,\n");
    }
}
