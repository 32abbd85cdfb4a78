//! Result tables and their CSV form.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::dac::Resolution;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 10] = [
    "sweep_value",
    "bits",
    "user_rate_mc",
    "user_rate_bound",
    "eve_rate_mc",
    "eve_rate_bound",
    "secrecy_mc",
    "secrecy_bound",
    "std_err",
    "seed",
];

/// A numeric result or the error that prevented it.
#[derive(Debug, Clone)]
pub enum Cell {
    Value(f64),
    /// Stable error tag, see [`Error::kind`](crate::error::Error::kind).
    Failed(String),
}

impl Cell {
    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            Cell::Failed(_) => None,
        }
    }

    pub(crate) fn from_result(r: &Result<f64>) -> Self {
        match r {
            Ok(v) => Cell::Value(*v),
            Err(e) => Cell::Failed(e.kind().to_string()),
        }
    }
}

/// NaN compares equal to NaN so that parsed tables equal their source.
impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Cell::Value(a), Cell::Value(b)) => a == b || (a.is_nan() && b.is_nan()),
            (Cell::Failed(a), Cell::Failed(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Value(v) => write!(f, "{v}"),
            Cell::Failed(kind) => write!(f, "ERR:{kind}"),
        }
    }
}

impl FromStr for Cell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(kind) = s.strip_prefix("ERR:") {
            return Ok(Cell::Failed(kind.to_string()));
        }
        s.parse::<f64>()
            .map(Cell::Value)
            .map_err(|_| Error::Config(format!("bad CSV value `{s}`")))
    }
}

/// One `(sweep value, DAC model)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub sweep_value: f64,
    pub bits: Resolution,
    pub user_rate_mc: Cell,
    pub user_rate_bound: Cell,
    pub eve_rate_mc: Cell,
    pub eve_rate_bound: Cell,
    pub secrecy_mc: Cell,
    pub secrecy_bound: Cell,
    pub std_err: Cell,
    pub seed: u64,
}

impl ResultRow {
    fn cells(&self) -> [&Cell; 7] {
        [
            &self.user_rate_mc,
            &self.user_rate_bound,
            &self.eve_rate_mc,
            &self.eve_rate_bound,
            &self.secrecy_mc,
            &self.secrecy_bound,
            &self.std_err,
        ]
    }

    pub fn is_complete(&self) -> bool {
        self.cells().iter().all(|c| matches!(c, Cell::Value(_)))
    }
}

/// All rows of one series.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub scenario: String,
    pub series: String,
    pub axis: String,
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    /// Rows for one DAC model, in sweep order.
    pub fn rows_for(&self, bits: Resolution) -> impl Iterator<Item = &ResultRow> {
        self.rows.iter().filter(move |r| r.bits == bits)
    }

    /// Distinct DAC models in first-appearance order.
    pub fn dac_models(&self) -> Vec<Resolution> {
        let mut out: Vec<Resolution> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.bits) {
                out.push(r.bits);
            }
        }
        out
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::Config("refusing to write an empty result table".into()));
        }
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(CSV_HEADER)?;
        for row in &self.rows {
            let mut record = vec![row.sweep_value.to_string(), row.bits.to_string()];
            record.extend(row.cells().iter().map(|c| c.to_string()));
            record.push(row.seed.to_string());
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Parses a table written by [`write_csv`](Self::write_csv).
    pub fn read_csv<R: Read>(reader: R, scenario: &str, series: &str, axis: &str) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let header = rdr.headers()?;
        if header.iter().ne(CSV_HEADER) {
            return Err(Error::Config(format!("unexpected CSV header `{}`", header.iter().collect::<Vec<_>>().join(","))));
        }
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let cell = |i: usize| record[i].parse::<Cell>();
            let sweep_value = record[0]
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad sweep value `{}`", &record[0])))?;
            let seed = record[9]
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("bad seed `{}`", &record[9])))?;
            rows.push(ResultRow {
                sweep_value,
                bits: record[1].parse()?,
                user_rate_mc: cell(2)?,
                user_rate_bound: cell(3)?,
                eve_rate_mc: cell(4)?,
                eve_rate_bound: cell(5)?,
                secrecy_mc: cell(6)?,
                secrecy_bound: cell(7)?,
                std_err: cell(8)?,
                seed,
            });
        }
        Ok(Self {
            scenario: scenario.to_string(),
            series: series.to_string(),
            axis: axis.to_string(),
            rows,
        })
    }
}

/// Writes `table` as CSV to `path`.
pub fn emit_csv(table: &ResultTable, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    table.write_csv(&mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}
