use super::config::ExperimentConfig;
use crate::error::Result;
use sha2::{Digest, Sha256};
use std::io::Write;

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub cell: String,
    /// Replicate index, or `all` for aggregates.
    pub replicate: String,
    pub metric: String,
    pub value: f64,
}

/// Tidy result rows plus the provenance needed to regenerate them.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
    pub config_json: String,
    pub config_hash: String,
    pub seed: u64,
    pub version: String,
}

impl ResultTable {
    pub fn new(config: &ExperimentConfig) -> Self {
        let config_json = config.to_json();
        let config_hash = Sha256::digest(config_json.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        Self {
            rows: Vec::new(),
            config_json,
            config_hash,
            seed: config.root_seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn push(&mut self, cell: &str, replicate: impl ToString, metric: &str, value: f64) {
        self.rows.push(ResultRow {
            cell: cell.to_string(),
            replicate: replicate.to_string(),
            metric: metric.to_string(),
            value,
        });
    }

    /// Values of `metric` in `cell` for individual replicates, in replicate order.
    pub fn replicate_values(&self, cell: &str, metric: &str) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.cell == cell && r.metric == metric && r.replicate != "all")
            .map(|r| r.value)
            .collect()
    }

    /// The aggregate row for `metric` in `cell`.
    pub fn aggregate(&self, cell: &str, metric: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.cell == cell && r.metric == metric && r.replicate == "all")
            .map(|r| r.value)
    }

    /// CSV with `#` metadata lines, then `cell,replicate,metric,value`.
    pub fn write_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        writeln!(writer, "# config_sha256={}", self.config_hash)?;
        writeln!(writer, "# root_seed={}", self.seed)?;
        writeln!(writer, "# version={}", self.version)?;
        writeln!(writer, "# config={}", self.config_json)?;
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["cell", "replicate", "metric", "value"])?;
        for r in &self.rows {
            w.write_record([
                r.cell.as_str(),
                r.replicate.as_str(),
                r.metric.as_str(),
                &r.value.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8")
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::ExperimentKind;

    #[test]
    fn csv_layout() {
        let cfg = ExperimentConfig::new(ExperimentKind::EigenMse);
        let mut t = ResultTable::new(&cfg);
        t.push("n=25/basis=true", 0, "lambda_1", 0.5);
        t.push("n=25/basis=true", "all", "mse_lambda_1", 0.25);
        let s = t.to_csv_string();
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# config_sha256="));
        assert_eq!(lines[4], "cell,replicate,metric,value");
        assert_eq!(lines[5], "n=25/basis=true,0,lambda_1,0.5");
        assert_eq!(t.aggregate("n=25/basis=true", "mse_lambda_1"), Some(0.25));
        assert_eq!(t.replicate_values("n=25/basis=true", "lambda_1"), vec![0.5]);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
