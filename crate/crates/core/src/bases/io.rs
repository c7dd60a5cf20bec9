use super::knots::KnotSet;
use super::ortho::OrthoBasis;
use crate::error::{Error, Result};
use crate::fcore::DomainMap;
use std::io::{BufRead, BufReader, Read, Write};

/// Writes `t,f_1,...,f_I` sampled at `resolution` equally spaced points
/// covering `[0, 1]` including both ends.
pub fn write_basis_csv<W: Write>(basis: &OrthoBasis, resolution: usize, writer: W) -> Result<()> {
    if resolution < 2 {
        return Err(Error::Range(format!("resolution {resolution} is below 2")));
    }
    let points: Vec<f64> = (0..resolution)
        .map(|i| i as f64 / (resolution - 1) as f64)
        .collect();
    let values = basis.sample_points(&points);
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["t".to_string()];
    header.extend((1..=basis.size()).map(|j| format!("f_{j}")));
    w.write_record(&header)?;
    for (t, row) in points.iter().zip(values.rows()) {
        let mut rec = vec![t.to_string()];
        rec.extend(row.iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_knots<W: Write>(knots: &KnotSet, writer: W) -> Result<()> {
    write_knots_in(knots, &DomainMap::identity(), writer)
}

/// Writes the knots mapped back to the data's own coordinates.
pub fn write_knots_in<W: Write>(knots: &KnotSet, domain: &DomainMap, mut writer: W) -> Result<()> {
    for &k in knots.as_slice() {
        writeln!(writer, "{}", domain.from_unit(k))?;
    }
    Ok(())
}

/// One knot per line; blank lines and `#` comments are ignored.
pub fn read_knots<R: Read>(reader: R) -> Result<KnotSet> {
    read_knots_in(reader, &DomainMap::identity())
}

/// Reads knots given in the data's own coordinates and maps them to `[0, 1]`.
pub fn read_knots_in<R: Read>(reader: R, domain: &DomainMap) -> Result<KnotSet> {
    let mut out = Vec::new();
    for (n, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let s = line.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::InvalidKnots(format!("line {}: cannot parse {s:?}", n + 1)))?;
        out.push(domain.to_unit(v));
    }
    KnotSet::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::build_fourier;

    #[test]
    fn knot_round_trip() {
        let k = KnotSet::new(vec![0.125, 0.5, 0.75]).unwrap();
        let mut buf = Vec::new();
        write_knots(&k, &mut buf).unwrap();
        assert_eq!(read_knots(&buf[..]).unwrap(), k);
        assert!(read_knots("0.5\nabc\n".as_bytes()).is_err());
    }

    #[test]
    fn basis_export_shape() {
        let mut buf = Vec::new();
        write_basis_csv(&build_fourier(3).unwrap(), 11, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,f_1,f_2,f_3");
        assert_eq!(lines.len(), 12);
        assert!(lines[11].starts_with("1,1,"));
    }
}
