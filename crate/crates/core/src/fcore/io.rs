//! Dataset CSV: header `t,curve_1,...,curve_n`, one row per grid point.

use super::dataset::FunctionalDataset;
use crate::error::{Error, Result};
use ndarray::Array2;
use std::io::{Read, Write};
use std::path::Path;

pub fn read_dataset_csv<R: Read>(reader: R) -> Result<FunctionalDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.len() < 2 {
        return Err(Error::InvalidDataset(
            "expected header `t,curve_1,...,curve_n` with at least one curve".into(),
        ));
    }
    let labels: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let n = labels.len();
    let mut points = Vec::new();
    let mut columns: Vec<f64> = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != n + 1 {
            return Err(Error::InvalidDataset(format!(
                "row {} has {} fields, expected {}",
                line + 2,
                rec.len(),
                n + 1
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| Error::InvalidDataset(format!("row {}: cannot parse `{s}`", line + 2)))
        };
        points.push(parse(&rec[0])?);
        for field in rec.iter().skip(1) {
            columns.push(parse(field)?);
        }
    }
    let m = points.len();
    // columns is m x n row-major; dataset wants n x m
    let by_point = Array2::from_shape_vec((m, n), columns)
        .map_err(|e| Error::InvalidDataset(e.to_string()))?;
    let values = by_point.t().as_standard_layout().into_owned();
    FunctionalDataset::from_domain(&points, values, Some(labels))
}

pub fn read_dataset_file<P: AsRef<Path>>(path: P) -> Result<FunctionalDataset> {
    read_dataset_csv(std::fs::File::open(path)?)
}

/// Writes the dataset on its original domain coordinates.
pub fn write_dataset_csv<W: Write>(ds: &FunctionalDataset, writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let n = ds.n_curves();
    let mut header = vec!["t".to_string()];
    match ds.labels() {
        Some(l) => header.extend(l.iter().cloned()),
        None => header.extend((1..=n).map(|i| format!("curve_{i}"))),
    }
    wtr.write_record(&header)?;
    let pts = ds.domain_points();
    let mut row = Vec::with_capacity(n + 1);
    for (j, t) in pts.iter().enumerate() {
        row.clear();
        row.push(t.to_string());
        for i in 0..n {
            row.push(ds.values()[[i, j]].to_string());
        }
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_dataset_file<P: AsRef<Path>>(ds: &FunctionalDataset, path: P) -> Result<()> {
    write_dataset_csv(ds, std::fs::File::create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcore::Grid;

    #[test]
    fn round_trip_preserves_values() {
        let grid = Grid::uniform(5).unwrap();
        let values = ndarray::array![[0.1, 0.2, 0.3, 0.4, 0.5], [1.0, -1.0, 2.5, 0.0, 1e-9]];
        let ds = FunctionalDataset::new(grid, values.clone()).unwrap();
        let mut buf = Vec::new();
        write_dataset_csv(&ds, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t,curve_1,curve_2\n"));
        let back = read_dataset_csv(&buf[..]).unwrap();
        assert_eq!(back.values(), &values);
        assert_eq!(back.grid(), ds.grid());
    }

    #[test]
    fn foreign_domain_is_rescaled() {
        let csv = "t,a\n-7,1\n4,2\n15,3\n26,4\n";
        let ds = read_dataset_csv(csv.as_bytes()).unwrap();
        assert_eq!(ds.grid().points(), &[0.0, 0.25, 0.5, 0.75]);
        assert_eq!(ds.domain().from_unit(0.75), 26.0);
    }

    #[test]
    fn ragged_rows_rejected() {
        let csv = "t,a,b\n0,1,2\n0.5,1\n";
        assert!(read_dataset_csv(csv.as_bytes()).is_err());
    }
}
