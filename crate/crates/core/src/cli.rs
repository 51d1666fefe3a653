//! Command-line front end. `main` only parses arguments and calls [`run`].

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::green::{default_scan_window, inverse_green, pole_scan, probe_points};
use crate::io::{self, Format, GreenScanRow, WavefunctionSample};
use crate::potentials::{FlatSpec, PotentialSpec};
use crate::spectra::spectrum;
use crate::verify::{verify_spec, VerifyOptions};
use crate::wavefun::BoundState;

#[derive(Debug, Parser)]
#[command(name = "qspectra", version, about = "Bound states, wave functions and Green functions of q-deformed hyperbolic potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bound-state energies.
    Spectrum(SpecArgs),
    /// Samples a normalized bound state.
    Wavefunction(WaveArgs),
    /// Samples 1/G(x0, x0; E) over an energy window and locates its poles.
    GreenScan(GreenArgs),
    /// Compares the analytic levels with the finite-difference oracle.
    Verify(SpecArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct SpecArgs {
    /// JSON file with the potential and options; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long = "V0", allow_hyphen_values = true)]
    pub v0: Option<f64>,
    #[arg(long = "V1", allow_hyphen_values = true)]
    pub v1: Option<f64>,
    #[arg(long = "V2", allow_hyphen_values = true)]
    pub v2: Option<f64>,
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long = "C", allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub h1: Option<f64>,
    /// json or csv (verify prints a table unless this is given).
    #[arg(long)]
    pub format: Option<String>,
    /// Output file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// verify: pass tolerance on |E_analytic - E_oracle|.
    #[arg(long)]
    pub tol: Option<f64>,
    /// verify: grid points of the oracle.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Window `lo:hi`: sampling range (wavefunction), energy range
    /// (green-scan) or shifted-frame oracle grid (verify).
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct WaveArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Level index [default: 0].
    #[arg(long)]
    pub n: Option<u32>,
    /// Number of samples [default: 2001].
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct GreenArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Number of energies in the window [default: 2000].
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Probe point (raw frame) for the sampled 1/G; defaults to mid-domain.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Spectrum,
    Wavefunction,
    GreenScan,
    Verify,
}

/// Fully validated invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub spec: PotentialSpec,
    pub command: CommandKind,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub grid_points: Option<usize>,
    pub window: Option<(f64, f64)>,
    pub n: u32,
    pub points: usize,
    pub resolution: usize,
    pub x0: Option<f64>,
}

/// Result of a run: the artifact and the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

/// Option keys a config file may carry next to the potential fields.
const OPTION_KEYS: [&str; 9] = ["format", "out", "tol", "grid_points", "window", "n", "points", "resolution", "x0"];

pub fn parse_window(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s.split_once(':').ok_or_else(|| Error::Invalid(format!("window {s:?} is not lo:hi")))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("window bound {t:?} is not a number")));
    let (lo, hi) = (parse(a)?, parse(b)?);
    if !(lo < hi) {
        return Err(Error::Invalid(format!("window needs lo < hi, got {lo}:{hi}")));
    }
    Ok((lo, hi))
}

fn load_config(path: &PathBuf) -> Result<Map<String, Value>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(Error::Invalid("config must be a JSON object".into())),
        Err(e) => Err(Error::Invalid(format!("config is not valid JSON: {e}"))),
    }
}

fn take<T: for<'de> Deserialize<'de>>(map: &mut Map<String, Value>, key: &str) -> Result<Option<T>> {
    match map.remove(key) {
        None => Ok(None),
        Some(v) => serde_json::from_value(v).map(Some).map_err(|e| Error::Invalid(format!("config field {key:?}: {e}"))),
    }
}

impl RunConfig {
    /// Merges the config file (if any) with the flags, flags winning.
    pub fn from_args(
        command: CommandKind,
        a: &SpecArgs,
        n: Option<u32>,
        points: Option<usize>,
        resolution: Option<usize>,
        x0: Option<f64>,
    ) -> Result<Self> {
        let mut map = match &a.config {
            Some(p) => load_config(p)?,
            None => Map::new(),
        };
        // options travel next to the potential fields in the config file
        let mut opts = Map::new();
        for key in OPTION_KEYS {
            if let Some(v) = map.remove(key) {
                opts.insert(key.to_string(), v);
            }
        }
        let mut set = |key: &str, v: Option<f64>| {
            if let Some(v) = v {
                map.insert(key.to_string(), Value::from(v));
            }
        };
        set("q", a.q);
        set("hbar", a.hbar);
        set("mass", a.mass);
        let params = [
            ("nu", a.nu),
            ("eta", a.eta),
            ("lambda", a.lambda),
            ("alpha", a.alpha),
            ("beta", a.beta),
            ("V0", a.v0),
            ("V1", a.v1),
            ("V2", a.v2),
            ("A", a.a),
            ("B", a.b),
            ("C", a.c),
            ("f", a.f),
            ("h1", a.h1),
        ];
        for (k, v) in params {
            set(k, v);
        }
        if let Some(kind) = &a.kind {
            map.insert("kind".into(), Value::from(kind.clone()));
        }
        if !map.contains_key("kind") {
            return Err(Error::Invalid("no potential kind given (--kind or \"kind\" in the config)".into()));
        }
        let flat: FlatSpec =
            serde_json::from_value(Value::Object(map)).map_err(|e| Error::Invalid(format!("potential specification: {e}")))?;
        let spec = PotentialSpec::try_from(flat)?;

        let format = match &a.format {
            Some(f) => Some(f.parse()?),
            None => take::<String>(&mut opts, "format")?.map(|f| f.parse()).transpose()?,
        };
        let window = match &a.window {
            Some(w) => Some(parse_window(w)?),
            None => take::<String>(&mut opts, "window")?.map(|w| parse_window(&w)).transpose()?,
        };
        let tol = a.tol.or(take(&mut opts, "tol")?);
        if let Some(t) = tol {
            if !(t > 0.0) {
                return Err(Error::Invalid(format!("tolerance must be positive, got {t}")));
            }
        }
        let grid_points = a.grid_points.or(take(&mut opts, "grid_points")?);
        if let Some(g) = grid_points {
            if g < 3 {
                return Err(Error::Invalid(format!("grid needs at least 3 points, got {g}")));
            }
        }
        let out = a.out.clone().or(take(&mut opts, "out")?);
        let n = n.or(take(&mut opts, "n")?).unwrap_or(0);
        let points = points.or(take(&mut opts, "points")?).unwrap_or(2001);
        let resolution = resolution.or(take(&mut opts, "resolution")?).unwrap_or(2000);
        let x0 = x0.or(take(&mut opts, "x0")?);
        if points < 2 {
            return Err(Error::Invalid(format!("need at least 2 sample points, got {points}")));
        }
        if resolution < 2 {
            return Err(Error::Invalid(format!("need at least 2 energies, got {resolution}")));
        }
        Ok(RunConfig { spec, command, format, out, tol, grid_points, window, n, points, resolution, x0 })
    }

    pub fn from_cli(cli: &Cli) -> Result<Self> {
        match &cli.command {
            Command::Spectrum(a) => Self::from_args(CommandKind::Spectrum, a, None, None, None, None),
            Command::Verify(a) => Self::from_args(CommandKind::Verify, a, None, None, None, None),
            Command::Wavefunction(w) => Self::from_args(CommandKind::Wavefunction, &w.spec, w.n, w.points, None, None),
            Command::GreenScan(g) => Self::from_args(CommandKind::GreenScan, &g.spec, None, None, g.resolution, g.x0),
        }
    }
}

#[derive(Serialize)]
struct WavefunctionJson<'a> {
    #[serde(flatten)]
    spec: &'a PotentialSpec,
    n: u32,
    #[serde(rename = "E")]
    energy: f64,
    nodes: usize,
    samples: &'a [WavefunctionSample],
}

#[derive(Serialize)]
struct GreenScanJson<'a> {
    #[serde(flatten)]
    spec: &'a PotentialSpec,
    x0: f64,
    window: (f64, f64),
    poles: Vec<f64>,
    samples: &'a [GreenScanRow],
}

/// Executes a validated configuration. Writes to `out` when set and returns
/// the artifact either way.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let spec = &cfg.spec;
    let format = cfg.format;
    let (output, exit_code) = match cfg.command {
        CommandKind::Spectrum => {
            let s = spectrum(spec)?;
            let text = match format.unwrap_or_default() {
                Format::Json => io::to_json(&s)?,
                Format::Csv => io::spectrum_csv(&s)?,
            };
            (text, 0)
        }
        CommandKind::Wavefunction => {
            let state = BoundState::new(spec, cfg.n)?;
            let (lo, hi) = cfg.window.unwrap_or(state.window);
            let samples: Vec<WavefunctionSample> =
                state.sample(lo, hi, cfg.points)?.into_iter().map(|(x, psi)| WavefunctionSample { x, psi }).collect();
            let text = match format.unwrap_or_default() {
                Format::Json => io::to_json(&WavefunctionJson {
                    spec,
                    n: cfg.n,
                    energy: state.energy,
                    nodes: state.nodes,
                    samples: &samples,
                })?,
                Format::Csv => io::wavefunction_csv(&samples)?,
            };
            (text, 0)
        }
        CommandKind::GreenScan => {
            let window = match cfg.window {
                Some(w) => w,
                None => default_scan_window(spec)?,
            };
            let x0 = cfg.x0.unwrap_or(probe_points(spec)[0]);
            let mut rows = Vec::with_capacity(cfg.resolution);
            for i in 0..cfg.resolution {
                let e = window.0 + (window.1 - window.0) * i as f64 / (cfg.resolution - 1) as f64;
                // energies on the cut or exactly on a level are skipped
                if let Ok(v) = inverse_green(spec, x0, x0, C64::new(e, 0.0)) {
                    rows.push(GreenScanRow { energy: e, re_inv_g: v.re, im_inv_g: v.im });
                }
            }
            let text = match format.unwrap_or_default() {
                Format::Json => io::to_json(&GreenScanJson {
                    spec,
                    x0,
                    window,
                    poles: pole_scan(spec, window, cfg.resolution)?,
                    samples: &rows,
                })?,
                Format::Csv => io::green_scan_csv(&rows)?,
            };
            (text, 0)
        }
        CommandKind::Verify => {
            let report =
                verify_spec(spec, &VerifyOptions { tol: cfg.tol, grid_points: cfg.grid_points, window: cfg.window })?;
            let text = match format {
                None => io::verify_table(&report),
                Some(Format::Json) => io::to_json(&report)?,
                Some(Format::Csv) => io::verify_csv(&report)?,
            };
            (text, if report.pass { 0 } else { 1 })
        }
    };
    if let Some(path) = &cfg.out {
        fs::write(path, &output).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome { output, exit_code })
}

/// Machine-readable error report for standard error.
pub fn error_json(err: &Error) -> String {
    serde_json::json!({ "error": { "kind": err.kind_name(), "message": err.to_string(), "exit_code": err.exit_code() } })
        .to_string()
}

/// Parses `args`, runs, and returns `(stdout, stderr, exit code)`.
pub fn main_with_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                (rendered, String::new(), 0)
            } else {
                (String::new(), error_json(&Error::Invalid(rendered.trim().to_string())), 2)
            };
        }
    };
    match RunConfig::from_cli(&cli).and_then(|cfg| run(&cfg).map(|o| (cfg, o))) {
        Ok((cfg, o)) => {
            let stdout = if cfg.out.is_some() { String::new() } else { o.output };
            (stdout, String::new(), o.exit_code)
        }
        Err(e) => (String::new(), error_json(&e), e.exit_code()),
    }
}
