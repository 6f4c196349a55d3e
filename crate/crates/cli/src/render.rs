//! Output formats. Every format prints integers in full decimal; JSON keeps
//! them as exact numbers through `serde_json`'s arbitrary precision mode.

use clap::ValueEnum;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;
use typeb_core::riordan::{Provenance, TriangleTable};

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    #[default]
    Pretty,
}

/// JSON shape of an emitted triangle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub family: String,
    pub m: u32,
    pub r: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub rows: Vec<Vec<Number>>,
    pub provenance: String,
}

/// JSON shape of an emitted sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub family: String,
    pub m: u32,
    pub r: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub terms: Vec<Number>,
    pub provenance: String,
}

pub fn to_number(v: &BigInt) -> Number {
    v.to_string()
        .parse()
        .expect("a decimal integer is a valid JSON number")
}

pub fn from_number(n: &Number) -> CliResult<BigInt> {
    n.to_string()
        .parse()
        .map_err(|_| CliError::Usage(format!("{n} is not an integer")))
}

impl TableDocument {
    pub fn new(family: &str, m: u32, r: u32, mode: Option<&str>, table: &TriangleTable) -> Self {
        Self {
            family: family.to_string(),
            m,
            r,
            mode: mode.map(str::to_string),
            rows: table
                .rows()
                .iter()
                .map(|row| row.iter().map(to_number).collect())
                .collect(),
            provenance: table.provenance().to_string(),
        }
    }

    pub fn to_table(&self) -> CliResult<TriangleTable> {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(from_number).collect::<CliResult<Vec<_>>>())
            .collect::<CliResult<Vec<_>>>()?;
        let provenance: Provenance = self.provenance.parse()?;
        Ok(TriangleTable::new(rows, provenance)?)
    }
}

pub fn parse_table(json: &str) -> CliResult<TriangleTable> {
    let doc: TableDocument =
        serde_json::from_str(json).map_err(|e| CliError::Usage(format!("invalid table JSON: {e}")))?;
    doc.to_table()
}

fn json_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn csv_string(rows: &[Vec<BigInt>]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(row.iter().map(ToString::to_string))
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("decimal digits are UTF-8"))
}

/// Columns right-aligned to their widest entry.
fn pretty_triangle(rows: &[Vec<BigInt>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    let text: Vec<Vec<String>> = rows
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    for row in &text {
        for (k, cell) in row.iter().enumerate() {
            widths[k] = widths[k].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &text {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{c:>w$}", w = widths[k]))
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn render_table(doc: &TableDocument, table: &TriangleTable, format: Format) -> CliResult<String> {
    match format {
        Format::Json => Ok(json_string(doc)),
        Format::Csv => csv_string(table.rows()),
        Format::Pretty => Ok(pretty_triangle(table.rows())),
    }
}

pub fn render_sequence(doc: &SequenceDocument, terms: &[BigInt], format: Format) -> CliResult<String> {
    match format {
        Format::Json => Ok(json_string(doc)),
        Format::Csv => csv_string(std::slice::from_ref(&terms.to_vec())),
        Format::Pretty => {
            let line: Vec<String> = terms.iter().map(ToString::to_string).collect();
            Ok(format!("{}\n", line.join(" ")))
        }
    }
}
