use std::io::Write;

use serde::Serialize;

use crate::analog::grover_time;
use crate::error::{Error, Result};

/// One measured-versus-predicted comparison.
///
/// `passed` is always `|measured - predicted| <= tolerance`; it is computed
/// in the constructor and never set independently.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    check_name: String,
    n: u32,
    #[serde(rename = "N")]
    dim: usize,
    x: f64,
    t0: f64,
    measured: f64,
    predicted: f64,
    tolerance: f64,
    passed: bool,
}

impl CheckReport {
    /// Report for the uniform start on n qubits (x = 2^{-n/2}).
    pub fn new(check_name: impl Into<String>, n: u32, measured: f64, predicted: f64, tolerance: f64) -> Self {
        let dim = 1usize << n;
        let x = (dim as f64).sqrt().recip();
        let t0 = grover_time(x).unwrap_or(f64::NAN);
        let passed = (measured - predicted).abs() <= tolerance;
        Self { check_name: check_name.into(), n, dim, x, t0, measured, predicted, tolerance, passed }
    }

    pub fn check_name(&self) -> &str {
        &self.check_name
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn t0(&self) -> f64 {
        self.t0
    }
    pub fn measured(&self) -> f64 {
        self.measured
    }
    pub fn predicted(&self) -> f64 {
        self.predicted
    }
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
    pub fn passed(&self) -> bool {
        self.passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMetadata {
    pub seed: u64,
    pub timestamp: String,
    pub version: String,
}

impl SweepMetadata {
    pub fn now(seed: u64) -> Self {
        Self {
            seed,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Rows of a sweep, sorted by (check_name, n).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub metadata: SweepMetadata,
    rows: Vec<CheckReport>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    metadata: &'a SweepMetadata,
    all_passed: bool,
    rows: &'a [CheckReport],
}

impl SweepResult {
    pub fn new(metadata: SweepMetadata, mut rows: Vec<CheckReport>) -> Self {
        rows.sort_by(|a, b| a.check_name.cmp(&b.check_name).then(a.n.cmp(&b.n)));
        Self { metadata, rows }
    }

    pub fn rows(&self) -> &[CheckReport] {
        &self.rows
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(CheckReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.rows.iter().filter(|r| !r.passed)
    }

    /// A `# seed=.. timestamp=.. version=..` line, then the header and one
    /// line per row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let m = &self.metadata;
        writeln!(out, "# seed={} timestamp={} version={}", m.seed, m.timestamp, m.version).map_err(io_err)?;
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Backend(e.to_string()))?;
        }
        if self.rows.is_empty() {
            w.write_record(HEADER).map_err(|e| Error::Backend(e.to_string()))?;
        }
        w.flush().map_err(io_err)
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        let report = JsonReport { metadata: &self.metadata, all_passed: self.all_passed(), rows: &self.rows };
        serde_json::to_writer_pretty(&mut out, &report).map_err(|e| Error::Backend(e.to_string()))?;
        writeln!(out).map_err(io_err)
    }
}

pub const HEADER: [&str; 9] = ["check_name", "n", "N", "x", "t0", "measured", "predicted", "tolerance", "passed"];

fn io_err(e: std::io::Error) -> Error {
    Error::Backend(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> SweepMetadata {
        SweepMetadata { seed: 3, timestamp: "2026-01-01T00:00:00Z".into(), version: "0.1.0".into() }
    }

    #[test]
    fn passed_follows_tolerance() {
        assert!(CheckReport::new("a", 2, 1.0, 1.0 + 1e-10, 1e-9).passed());
        assert!(!CheckReport::new("a", 2, 1.0, 1.1, 1e-9).passed());
        let r = CheckReport::new("a", 4, 0.0, 0.0, 0.0);
        assert_eq!(r.dim(), 16);
        assert_eq!(r.x(), 0.25);
    }

    #[test]
    fn rows_are_sorted() {
        let rows = vec![
            CheckReport::new("b", 3, 0.0, 0.0, 1.0),
            CheckReport::new("a", 4, 0.0, 0.0, 1.0),
            CheckReport::new("a", 2, 0.0, 0.0, 1.0),
        ];
        let s = SweepResult::new(meta(), rows);
        let keys: Vec<_> = s.rows().iter().map(|r| (r.check_name().to_string(), r.n())).collect();
        assert_eq!(keys, vec![("a".into(), 2), ("a".into(), 4), ("b".into(), 3)]);
    }

    #[test]
    fn csv_layout() {
        let s = SweepResult::new(meta(), vec![CheckReport::new("theorem_main.g_plus_2p", 2, 0.0, 0.0, 1e-9)]);
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "# seed=3 timestamp=2026-01-01T00:00:00Z version=0.1.0");
        assert_eq!(lines[1], HEADER.join(","));
        assert!(lines[2].starts_with("theorem_main.g_plus_2p,2,4,0.5,1.20919957615614"));
        assert!(lines[2].ends_with(",true"));
    }

    #[test]
    fn empty_csv_still_has_header() {
        let mut buf = Vec::new();
        SweepResult::new(meta(), vec![]).write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().nth(1), Some(HEADER.join(",").as_str()));
    }

    #[test]
    fn json_layout() {
        let s = SweepResult::new(meta(), vec![CheckReport::new("x", 2, 1.0, 0.0, 0.5)]);
        let mut buf = Vec::new();
        s.write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["all_passed"], false);
        assert_eq!(v["metadata"]["seed"], 3);
        assert_eq!(v["rows"][0]["N"], 4);
        assert_eq!(v["rows"][0]["passed"], false);
    }
}
