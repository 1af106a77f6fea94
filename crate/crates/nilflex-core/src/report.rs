//! Deterministic serialization of analysis reports: a markdown table in the
//! classification layout, a flat CSV, and a schema-versioned JSON document.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog::EntryReport;
use crate::error::{Error, Result};

/// Version tag carried by every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub entries: Vec<EntryReport>,
}

impl Report {
    pub fn new(entries: Vec<EntryReport>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            entries,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub fn emit(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Markdown => Ok(emit_markdown(report)),
        Format::Csv => Ok(emit_csv(report)),
        Format::Json => {
            serde_json::to_string_pretty(report).map_err(|e| Error::ShapeMismatch(e.to_string()))
        }
    }
}

fn set_cell(values: &[usize], symplectic: bool) -> String {
    if !symplectic {
        return "-".to_string();
    }
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn emit_markdown(report: &Report) -> String {
    let mut out = String::new();
    out.push_str("| b1 | b2 | n-s | structure | sum | h4 | h5 | dim S |\n");
    out.push_str("|---:|---:|----:|:----------|:----|:---|:---|------:|\n");
    let mut notes = Vec::new();
    for entry in &report.entries {
        let moduli = entry
            .moduli_dim
            .map(|d| d.to_string())
            .unwrap_or_else(|| "-".to_string());
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            entry.betti.get(1).copied().unwrap_or(0),
            entry.betti.get(2).copied().unwrap_or(0),
            entry.six_minus_s,
            entry.structure,
            entry.reducible.as_deref().unwrap_or(""),
            set_cell(&entry.h4_values, entry.symplectic),
            set_cell(&entry.h5_values, entry.symplectic),
            moduli,
        );
        for note in &entry.table_notes {
            notes.push(format!("{}: {}", entry.structure, note));
        }
    }
    let flexible: Vec<&str> = report
        .entries
        .iter()
        .filter(|e| e.flexible)
        .map(|e| e.structure.as_str())
        .collect();
    if !flexible.is_empty() {
        let _ = writeln!(out, "\nFlexible: {}", flexible.join(", "));
    }
    for note in notes {
        let _ = writeln!(out, "\nNote: {note}");
    }
    out
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn emit_csv(report: &Report) -> String {
    let mut out = String::from("structure,b1,b2,s,h4,h5,moduli,flexible\n");
    for entry in &report.entries {
        let moduli = entry
            .moduli_dim
            .map(|d| d.to_string())
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            csv_quote(&entry.structure),
            entry.betti.get(1).copied().unwrap_or(0),
            entry.betti.get(2).copied().unwrap_or(0),
            entry.step_length,
            csv_quote(&set_cell(&entry.h4_values, entry.symplectic)),
            csv_quote(&set_cell(&entry.h5_values, entry.symplectic)),
            moduli,
            entry.flexible,
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{run_entry, catalog6, RunConfig};

    fn small_report() -> Report {
        let entries = catalog6();
        let config = RunConfig::default();
        Report::new(vec![
            run_entry(&entries[0], &config).unwrap(), // a dash row
            run_entry(&entries[6], &config).unwrap(), // the first flexible row
        ])
    }

    #[test]
    fn csv_header_is_stable() {
        let text = emit(&small_report(), Format::Csv).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(header, "structure,b1,b2,s,h4,h5,moduli,flexible");
        // dash rows leave the value columns empty
        assert!(text.lines().nth(1).unwrap().contains(",-,-,,"));
        assert!(text.lines().nth(2).unwrap().contains("\"2,3,4\""));
    }

    #[test]
    fn markdown_contains_table_rows() {
        let text = emit(&small_report(), Format::Markdown).unwrap();
        assert!(text.starts_with("| b1 | b2 |"));
        assert!(text.contains("(0,0,12,13,23,14-25)"));
        assert!(text.contains("| 2,3,4 | 0 |"));
        assert!(text.contains("Flexible: (0,0,12,13,23,14-25)"));
    }

    #[test]
    fn json_is_schema_versioned_and_deterministic() {
        let report = small_report();
        let a = emit(&report, Format::Json).unwrap();
        let b = emit(&report, Format::Json).unwrap();
        assert_eq!(a, b);
        let value: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(value["schema_version"], 1);
        assert!(value["entries"].as_array().unwrap().len() == 2);
    }

    #[test]
    fn unknown_format_is_rejected() {
        assert!(Format::from_str("yaml").is_err());
        assert_eq!(Format::from_str("MD").unwrap(), Format::Markdown);
    }
}
