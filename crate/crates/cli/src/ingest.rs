//! Readers for column-wise CSV and UCR-style row-wise TSV files.
//!
//! Row and column numbers in error messages are 1-based and count the
//! header line.

use std::fs::File;
use std::io::{self, Read};

use clap::ValueEnum;
use csv::{ReaderBuilder, StringRecord, Trim};
use dsw_core::Series;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// One series per column, optional header row with names.
    #[default]
    Csv,
    /// One series per row, tab separated, class label first.
    UcrTsv,
}

/// Reads all series from `path`; `-` reads standard input.
pub fn ingest(path: &str, format: Format) -> Result<Vec<Series>, CliError> {
    let reader: Box<dyn Read> = if path == "-" {
        Box::new(io::stdin())
    } else {
        Box::new(File::open(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?)
    };
    match format {
        Format::Csv => parse_csv(reader),
        Format::UcrTsv => parse_ucr(reader),
    }
}

fn cell_error(row: u64, col: usize, text: &str) -> CliError {
    CliError::Input(format!("non-numeric or non-finite cell {text:?} at ({row},{col})"))
}

fn number(text: &str) -> Option<f64> {
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn records(reader: impl Read, delimiter: u8) -> Result<Vec<(u64, StringRecord)>, CliError> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .delimiter(delimiter)
        .from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CliError::Input(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push((line, rec));
    }
    Ok(out)
}

pub fn parse_csv(reader: impl Read) -> Result<Vec<Series>, CliError> {
    let rows = records(reader, b',')?;
    let Some((_, first)) = rows.first() else {
        return Err(CliError::Input("no data rows".into()));
    };
    let width = first.len();
    let header: Option<Vec<String>> = if first.iter().all(|c| number(c).is_none()) {
        Some(first.iter().map(str::to_string).collect())
    } else {
        None
    };
    let data = &rows[usize::from(header.is_some())..];
    if data.is_empty() {
        return Err(CliError::Input("no data rows".into()));
    }
    let mut columns = vec![Vec::with_capacity(data.len()); width];
    for (line, rec) in data {
        if rec.len() != width {
            return Err(CliError::Input(format!(
                "ragged row {line}: {} fields, expected {width}",
                rec.len()
            )));
        }
        for (k, text) in rec.iter().enumerate() {
            columns[k].push(number(text).ok_or_else(|| cell_error(*line, k + 1, text))?);
        }
    }
    columns
        .into_iter()
        .enumerate()
        .map(|(k, values)| {
            let name = header
                .as_ref()
                .map_or_else(|| format!("column {}", k + 1), |h| h[k].clone());
            Ok(Series::new(values)?.with_name(name))
        })
        .collect()
}

pub fn parse_ucr(reader: impl Read) -> Result<Vec<Series>, CliError> {
    let rows = records(reader, b'\t')?;
    if rows.is_empty() {
        return Err(CliError::Input("no data rows".into()));
    }
    rows.iter()
        .map(|(line, rec)| {
            if rec.len() < 2 {
                return Err(CliError::Input(format!("row {line} has a label but no values")));
            }
            let values = rec
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, text)| number(text).ok_or_else(|| cell_error(*line, k + 1, text)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Series::new(values)?.with_name(&rec[0]))
        })
        .collect()
}
