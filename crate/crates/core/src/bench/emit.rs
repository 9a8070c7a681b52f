use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use super::sweep::SummaryRow;

pub const CSV_HEADER: &str =
    "algorithm,K,success_frequency,mean_iterations,mean_modeled_flops,mean_wall_seconds";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::invalid(format!("unknown output format {other:?}"))),
        }
    }
}

/// Header line plus one line per row; every real printed with 6 decimals.
pub fn write_csv<W: Write>(mut w: W, rows: &[SummaryRow]) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{:.6},{:.6},{:.6},{:.6}",
            r.algorithm, r.k, r.success_frequency, r.mean_iterations, r.mean_modeled_flops,
            r.mean_wall_seconds
        )?;
    }
    Ok(())
}

/// Pretty-printed JSON array of row objects keyed like the CSV header.
pub fn write_json<W: Write>(mut w: W, rows: &[SummaryRow]) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, rows)?;
    writeln!(w)?;
    Ok(())
}

pub fn parse_csv<R: Read>(reader: R) -> Result<Vec<SummaryRow>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected header {:?}", header.join(","))));
    }
    rdr.deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn emit(rows: &[SummaryRow], format: OutputFormat, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    match format {
        OutputFormat::Csv => write_csv(&mut w, rows)?,
        OutputFormat::Json => write_json(&mut w, rows)?,
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::Algorithm;

    fn row() -> SummaryRow {
        SummaryRow {
            algorithm: Algorithm::Gomp,
            k: 25,
            success_frequency: 0.975,
            mean_iterations: 6.5,
            mean_modeled_flops: 1_234_567.25,
            mean_wall_seconds: 0.000125,
        }
    }

    #[test]
    fn empty_outputs() {
        let mut csv = Vec::new();
        write_csv(&mut csv, &[]).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap(), format!("{CSV_HEADER}\n"));
        let mut json = Vec::new();
        write_json(&mut json, &[]).unwrap();
        assert_eq!(String::from_utf8(json).unwrap().trim(), "[]");
    }

    #[test]
    fn csv_round_trip() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[row()]).unwrap();
        assert_eq!(parse_csv(buf.as_slice()).unwrap(), vec![row()]);
    }

    #[test]
    fn json_keys() {
        let mut buf = Vec::new();
        write_json(&mut buf, &[row()]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let obj = v[0].as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        let mut expected: Vec<&str> = CSV_HEADER.split(',').collect();
        expected.sort_unstable();
        assert_eq!(keys, expected);
        assert_eq!(obj["algorithm"], "gomp");
        let back: Vec<SummaryRow> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, vec![row()]);
    }

    #[test]
    fn header_mismatch_rejected() {
        assert!(parse_csv("a,b\n1,2\n".as_bytes()).is_err());
    }
}
