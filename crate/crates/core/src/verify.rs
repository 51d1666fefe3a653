//! Analytic-versus-oracle comparison used by the CLI `verify` command and
//! the acceptance suite.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::oracle::{default_window, GridMap, GridProblem};
use crate::potentials::{Kind, PotentialSpec};
use crate::spectra::{spectrum, Spectrum};

/// Levels closer than this to the threshold are reported but not judged.
pub const NEAR_THRESHOLD: f64 = 1e-3;
/// Target grid spacing of the automatically sized grid.
pub const AUTO_SPACING: f64 = 1e-3;
/// Tail length in units of the slowest decay length `1/k`.
const TAIL_DECAY_LENGTHS: f64 = 14.0;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub tol: Option<f64>,
    pub grid_points: Option<usize>,
    /// Shifted-frame window.
    pub window: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub n: u32,
    pub analytic: f64,
    pub oracle: f64,
    pub extrapolated: f64,
    pub delta: f64,
    pub delta_extrapolated: f64,
    /// Within [`NEAR_THRESHOLD`] of the continuum: not judged.
    pub near_threshold: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spectrum: Spectrum,
    pub window: (f64, f64),
    pub grid_points: usize,
    pub tol: f64,
    pub rows: Vec<VerifyRow>,
    /// Oracle eigenvalues strictly below the threshold on the raw grid.
    pub oracle_count: usize,
    pub pass: bool,
}

/// Grid wide enough for the slowest-decaying level to be resolved and fine
/// enough for [`AUTO_SPACING`], unless overridden.
pub fn oracle_grid(spec: &PotentialSpec, levels: &[f64], opts: &VerifyOptions) -> Result<GridProblem> {
    let thr = spec.threshold();
    let (mut lo, mut hi) = default_window(spec.kind());
    let gap = levels.iter().map(|e| thr - e).filter(|g| *g >= NEAR_THRESHOLD).fold(f64::INFINITY, f64::min);
    if gap.is_finite() {
        let tail = TAIL_DECAY_LENGTHS / (gap / spec.kappa()).sqrt();
        hi = hi.max(tail + 5.0);
        if !spec.kind().is_half_line() {
            lo = lo.min(-tail - 5.0);
        }
    }
    if let Some(w) = opts.window {
        (lo, hi) = w;
    }
    let span = match spec.kind() {
        Kind::V8 | Kind::V8p => hi.sqrt() - lo.max(0.0).sqrt(),
        _ => hi - lo,
    };
    let points = opts.grid_points.unwrap_or(((span / AUTO_SPACING).ceil() as usize + 1).max(3));
    GridProblem::for_spec_window(spec, lo, hi, points)
}

/// Compares every analytic level with the grid oracle.
pub fn verify_spec(spec: &PotentialSpec, opts: &VerifyOptions) -> Result<VerifyReport> {
    let tol = opts.tol.unwrap_or(1e-4);
    let spectrum = spectrum(spec)?;
    let levels = spectrum.energies();
    let grid = oracle_grid(spec, &levels, opts)?;
    let thr = spectrum.threshold;
    let oracle_count = grid.count_below(thr)?;
    let mut rows = Vec::with_capacity(levels.len());
    if !levels.is_empty() {
        let refined = grid.refine(levels.len())?;
        for (i, level) in spectrum.levels.iter().enumerate() {
            let oracle = refined.coarse[i];
            let extrapolated = refined.extrapolated[i];
            let delta = (oracle - level.energy).abs();
            let near_threshold = thr - level.energy < NEAR_THRESHOLD;
            rows.push(VerifyRow {
                n: level.n,
                analytic: level.energy,
                oracle,
                extrapolated,
                delta,
                delta_extrapolated: (extrapolated - level.energy).abs(),
                near_threshold,
                pass: near_threshold || delta < tol,
            });
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(VerifyReport {
        window: match grid.map {
            GridMap::Square => (grid.x_min.powi(2), grid.x_max.powi(2)),
            GridMap::Identity => (grid.x_min, grid.x_max),
        },
        grid_points: grid.n_points,
        spectrum,
        tol,
        rows,
        oracle_count,
        pass,
    })
}
