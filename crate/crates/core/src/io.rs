//! JSON and CSV emission for spectra, sampled wave functions, Green-function
//! scans and verification reports. Every CSV output starts with a header row.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::Spectrum;
use crate::verify::VerifyReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Invalid(format!("unknown output format {s:?} (expected json or csv)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSample {
    pub x: f64,
    pub psi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenScanRow {
    #[serde(rename = "E")]
    pub energy: f64,
    pub re_inv_g: f64,
    pub im_inv_g: f64,
}

#[derive(Serialize)]
struct GreenScanCsv {
    #[serde(rename = "E")]
    energy: f64,
    #[serde(rename = "re_invG")]
    re: f64,
    #[serde(rename = "im_invG")]
    im: f64,
}

#[derive(Serialize)]
struct LevelCsv {
    n: u32,
    energy: f64,
}

#[derive(Serialize)]
struct VerifyCsv {
    n: u32,
    analytic: f64,
    oracle: f64,
    extrapolated: f64,
    delta: f64,
    pass: bool,
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Writes `rows` as CSV, emitting `header` even when there are no rows.
fn to_csv<T: Serialize>(header: &[&str], rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn spectrum_csv(s: &Spectrum) -> Result<String> {
    to_csv(&["n", "energy"], s.levels.iter().map(|l| LevelCsv { n: l.n, energy: l.energy }))
}

pub fn wavefunction_csv(samples: &[WavefunctionSample]) -> Result<String> {
    to_csv(&["x", "psi"], samples.iter().copied())
}

pub fn green_scan_csv(rows: &[GreenScanRow]) -> Result<String> {
    to_csv(
        &["E", "re_invG", "im_invG"],
        rows.iter().map(|r| GreenScanCsv { energy: r.energy, re: r.re_inv_g, im: r.im_inv_g }),
    )
}

pub fn verify_csv(r: &VerifyReport) -> Result<String> {
    to_csv(
        &["n", "analytic", "oracle", "extrapolated", "delta", "pass"],
        r.rows.iter().map(|v| VerifyCsv {
            n: v.n,
            analytic: v.analytic,
            oracle: v.oracle,
            extrapolated: v.extrapolated,
            delta: v.delta,
            pass: v.pass,
        }),
    )
}

/// Human-readable verification table.
pub fn verify_table(r: &VerifyReport) -> String {
    let mut out = format!(
        "{}  window [{}, {}]  {} points  tol {:e}\n{:>3} {:>22} {:>22} {:>10} {:>6}\n",
        r.spectrum.spec.kind(),
        r.window.0,
        r.window.1,
        r.grid_points,
        r.tol,
        "n",
        "analytic E",
        "oracle E",
        "|delta|",
        ""
    );
    for row in &r.rows {
        let verdict = match (row.near_threshold, row.pass) {
            (true, _) => "skip",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        out += &format!("{:>3} {:>22.15} {:>22.15} {:>10.3e} {:>6}\n", row.n, row.analytic, row.oracle, row.delta, verdict);
    }
    out += &format!(
        "levels {}  oracle count {}  {}\n",
        r.rows.len(),
        r.oracle_count,
        if r.pass { "PASS" } else { "FAIL" }
    );
    out
}
