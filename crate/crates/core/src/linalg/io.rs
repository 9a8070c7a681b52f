//! Plain CSV matrices: one matrix row per line, no header, `.` decimal point.

use std::io::{Read, Write};

use crate::{Error, Result};

use super::matrix::DenseMatrix;
use super::vector::DenseVector;

fn parse_records<R: Read>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field.parse::<f64>().map_err(|_| {
                    Error::Parse(format!("row {line}, column {col}: {field:?} is not a number"))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_matrix_csv<R: Read>(reader: R) -> Result<DenseMatrix> {
    let rows = parse_records(reader)?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix file".into()));
    }
    DenseMatrix::from_rows(&rows)
}

/// Reads a vector stored either as a single row or as a single column.
pub fn read_vector_csv<R: Read>(reader: R) -> Result<DenseVector> {
    let rows = parse_records(reader)?;
    let entries = match rows.as_slice() {
        [] => return Err(Error::Parse("empty vector file".into())),
        [single] => single.clone(),
        many if many.iter().all(|r| r.len() == 1) => many.iter().map(|r| r[0]).collect(),
        _ => {
            return Err(Error::dims(
                "vector file must be a single row or a single column",
            ))
        }
    };
    DenseVector::new(entries)
}

fn write_row<W: Write>(w: &mut W, row: impl Iterator<Item = f64>) -> std::io::Result<()> {
    let line: Vec<String> = row.map(|v| format!("{v:e}")).collect();
    writeln!(w, "{}", line.join(","))
}

/// Values are written in shortest round-trip scientific notation.
pub fn write_matrix_csv<W: Write>(mut w: W, a: &DenseMatrix) -> Result<()> {
    for i in 0..a.rows() {
        write_row(&mut w, (0..a.cols()).map(|j| a.get(i, j)))?;
    }
    Ok(())
}

/// One entry per line.
pub fn write_vector_csv<W: Write>(mut w: W, v: &[f64]) -> Result<()> {
    for &x in v {
        write_row(&mut w, std::iter::once(x))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gaussian_sensing_matrix;

    #[test]
    fn matrix_round_trip_is_exact() {
        let a = gaussian_sensing_matrix(5, 3, 9);
        let mut buf = Vec::new();
        write_matrix_csv(&mut buf, &a).unwrap();
        assert_eq!(read_matrix_csv(buf.as_slice()).unwrap(), a);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = read_matrix_csv("1,2\n3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn bad_number_rejected() {
        assert!(matches!(
            read_matrix_csv("1,2\n3,4,5x\n".as_bytes()),
            Err(Error::Parse(_))
        ));
        // comma decimal separators are not accepted as numbers
        assert!(read_matrix_csv("\"1,5\"\n".as_bytes()).is_err());
        assert!(read_matrix_csv("".as_bytes()).is_err());
    }

    #[test]
    fn vector_layouts() {
        let col = read_vector_csv("1\n2.5\n-3e0\n".as_bytes()).unwrap();
        let row = read_vector_csv(" 1, 2.5 ,-3\n".as_bytes()).unwrap();
        assert_eq!(col, row);
        assert_eq!(col.as_slice(), &[1.0, 2.5, -3.0]);
        assert!(read_vector_csv("1,2\n3,4\n".as_bytes()).is_err());
        let mut buf = Vec::new();
        write_vector_csv(&mut buf, &col).unwrap();
        assert_eq!(read_vector_csv(buf.as_slice()).unwrap(), col);
    }
}
