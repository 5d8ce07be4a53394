use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::InvariantReport;
use crate::rational::{format_dec, format_frac, parse_frac, Q};

pub const CSV_HEADER: [&str; 12] = [
    "name",
    "order",
    "ad_frac",
    "ad_dec",
    "cp_frac",
    "f_frac",
    "cd_set",
    "derived_order",
    "center_index",
    "solvable",
    "perfect",
    "gap_n",
];

/// One exported row. `cd_set` is semicolon separated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub name: String,
    pub order: u64,
    pub ad_frac: String,
    pub ad_dec: String,
    pub cp_frac: String,
    pub f_frac: String,
    pub cd_set: String,
    pub derived_order: u64,
    pub center_index: u64,
    pub solvable: bool,
    pub perfect: bool,
    pub gap_n: Option<u64>,
}

impl From<&InvariantReport> for CsvRow {
    fn from(r: &InvariantReport) -> Self {
        CsvRow {
            name: r.name.clone(),
            order: r.order,
            ad_frac: format_frac(&r.ad),
            ad_dec: format_dec(&r.ad, 6),
            cp_frac: format_frac(&r.cp),
            f_frac: format_frac(&r.f),
            cd_set: r.cd_set.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
            derived_order: r.derived_order,
            center_index: r.center_index,
            solvable: r.is_solvable,
            perfect: r.is_perfect,
            gap_n: r.gap_n,
        }
    }
}

impl CsvRow {
    pub fn ad(&self) -> Option<Q> {
        parse_frac(&self.ad_frac)
    }

    pub fn cp(&self) -> Option<Q> {
        parse_frac(&self.cp_frac)
    }

    pub fn cd(&self) -> Option<Vec<u64>> {
        self.cd_set.split(';').map(|s| s.parse().ok()).collect()
    }
}

fn csv_error(e: csv::Error) -> Error {
    match e.position() {
        Some(p) => Error::Parse {
            line: p.line() as usize,
            column: 0,
            message: e.to_string(),
        },
        None => Error::Io(e.to_string()),
    }
}

pub fn write_csv<'a, W: Write>(out: W, reports: impl IntoIterator<Item = &'a InvariantReport>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(CsvRow::from(r)).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn parse_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse {
            line: 1,
            column: 0,
            message: format!("unexpected header {:?}", header.iter().collect::<Vec<_>>()),
        });
    }
    rd.deserialize().map(|r| r.map_err(csv_error)).collect()
}
