//! Bound-state spectra: closed forms for V1-V6, the cubic quantization
//! condition for V7, a root search for V8, and the grid oracle for the
//! primed kinds.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{GridProblem, DEFAULT_POINTS};
use crate::potentials::{tilde_sq, Kind, Params, PotentialSpec};
use crate::scarf::Scarf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Cardano,
    Transcendental,
    NumericOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub n: u32,
    #[serde(rename = "E")]
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    #[serde(flatten)]
    pub spec: PotentialSpec,
    pub levels: Vec<Level>,
    /// Largest admissible level index; `None` when there are no levels.
    pub n_max: Option<u32>,
    pub method: Method,
    pub threshold: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl Spectrum {
    fn new(spec: &PotentialSpec, energies: Vec<f64>, method: Method, mut diagnostics: Vec<String>) -> Self {
        let levels: Vec<Level> = energies.into_iter().enumerate().map(|(n, energy)| Level { n: n as u32, energy }).collect();
        let mut d = spec.diagnostics();
        d.append(&mut diagnostics);
        Spectrum {
            spec: *spec,
            n_max: levels.len().checked_sub(1).map(|n| n as u32),
            levels,
            method,
            threshold: spec.threshold(),
            diagnostics: d,
        }
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// Spectrum of any kind with default options.
pub fn spectrum(spec: &PotentialSpec) -> Result<Spectrum> {
    match spec.kind() {
        Kind::V1 => spectrum_v1(spec),
        Kind::V2 => spectrum_v2(spec),
        Kind::V3 => spectrum_v3(spec),
        Kind::V4 => spectrum_v4(spec),
        Kind::V5 => spectrum_v5(spec),
        Kind::V6 => spectrum_v6(spec),
        Kind::V7 => spectrum_v7(spec),
        Kind::V8 => spectrum_v8(spec, None, V8_SCAN_POINTS),
        Kind::V7p | Kind::V8p => spectrum_oracle(spec, DEFAULT_POINTS),
    }
}

fn expect(spec: &PotentialSpec, kind: Kind) -> Result<()> {
    if spec.kind() == kind {
        Ok(())
    } else {
        Err(Error::Contract(format!("expected a {kind} spec, got {}", spec.kind())))
    }
}

/// Real deformed parameter for a wall coupling; below `-1/4` the
/// Hamiltonian is not bounded below.
fn wall_tilde(p: f64, q: f64, what: &str) -> Result<f64> {
    let t2 = tilde_sq(p, q);
    if t2 < 0.0 {
        return Err(Error::Domain(format!(
            "{what}: deformed wall coupling {} is below -1/4 (no ground state)",
            t2 - 0.25
        )));
    }
    Ok(t2.sqrt())
}

/// `E_n = -k (l~ - 1/2 - n)^2`, `n < l~ - 1/2`.
pub fn spectrum_v1(spec: &PotentialSpec) -> Result<Spectrum> {
    expect(spec, Kind::V1)?;
    let Params::V1 { nu } = spec.params() else { unreachable!() };
    let k = spec.kappa();
    let t2 = tilde_sq(nu, spec.q());
    let mut diag = Vec::new();
    let mut out = Vec::new();
    if t2 <= 0.25 {
        diag.push("deformed lambda <= 1/2: the well binds no states".to_string());
    } else {
        let l = t2.sqrt() - 0.5;
        let mut n = 0.0;
        while n < l {
            out.push(-k * (l - n).powi(2));
            n += 1.0;
        }
    }
    Ok(Spectrum::new(spec, out, Method::ClosedForm, diag))
}

/// `E_n = -k (nu~ - eta~ - 1 - 2n)^2`, `2n < nu~ - eta~ - 1`.
pub fn spectrum_v2(spec: &PotentialSpec) -> Result<Spectrum> {
    expect(spec, Kind::V2)?;
    let Params::V2 { eta, nu } = spec.params() else { unreachable!() };
    let k = spec.kappa();
    let et = wall_tilde(eta, spec.q(), "V2")?;
    let nt2 = tilde_sq(nu, spec.q());
    let d = if nt2 > 0.0 { nt2.sqrt() - et - 1.0 } else { -1.0 };
    let mut out = Vec::new();
    let mut n = 0.0;
    while d - 2.0 * n > 0.0 {
        out.push(-k * (d - 2.0 * n).powi(2));
        n += 1.0;
    }
    let diag = if out.is_empty() { vec!["nu~ - eta~ <= 1: no bound states".to_string()] } else { vec![] };
    Ok(Spectrum::new(spec, out, Method::ClosedForm, diag))
}

/// With `N = l~ + 1/2 + n`: `E_n = -k N^2 - alpha^2 / (4 k N^2)` while
/// `N^2 < alpha / 2k`.
pub fn spectrum_v3(spec: &PotentialSpec) -> Result<Spectrum> {
    expect(spec, Kind::V3)?;
    let Params::V3 { alpha, lambda } = spec.params() else { unreachable!() };
    let k = spec.kappa();
    let lt = wall_tilde(lambda, spec.q(), "V3")?;
    let mut out = Vec::new();
    let mut diag = Vec::new();
    if alpha <= 0.0 {
        diag.push("alpha <= 0: no attractive tail, no bound states".to_string());
    } else {
        let mut big_n = lt + 0.5;
        while big_n * big_n < alpha / (2.0 * k) {
            out.push(-k * big_n * big_n - alpha * alpha / (4.0 * k * big_n * big_n));
            big_n += 1.0;
        }
        if out.is_empty() {
            diag.push("(l~ + 1/2)^2 >= m alpha / hbar^2: no bound states".to_string());
        }
    }
    Ok(Spectrum::new(spec, out, Method::ClosedForm, diag))
}

/// With `K = l~ - 1/2 - n`: `E_n = -k K^2 - beta^2 / (4 k K^2)` while
/// `K^2 > |beta| / 2k`.
pub fn spectrum_v4(spec: &PotentialSpec) -> Result<Spectrum> {
    expect(spec, Kind::V4)?;
    let Params::V4 { beta, lambda } = spec.params() else { unreachable!() };
    let k = spec.kappa();
    let t2 = tilde_sq(lambda, spec.q());
    let mut out = Vec::new();
    if t2 > 0.25 {
        let mut big_k = t2.sqrt() - 0.5;
        while big_k > 0.0 && big_k * big_k > beta.abs() / (2.0 * k) {
            out.push(-k * big_k * big_k - beta * beta / (4.0 * k * big_k * big_k));
            big_k -= 1.0;
        }
    }
    let diag = if out.is_empty() { vec!["no level satisfies (l~ - 1/2 - n)^2 > m|beta|/hbar^2".to_string()] } else { vec![] };
    Ok(Spectrum::new(spec, out, Method::ClosedForm, diag))
}

/// `E_n = k (V0 + V1) - (k/4)(nu - eta - 1 - 2n)^2` with
/// `eta^2 = V1 + V2/sqrt(q) + 1/4`, `nu^2 = V1 - V2/sqrt(q) + 1/4`.
pub fn spectrum_v5(spec: &PotentialSpec) -> Result<Spectrum> {
    expect(spec, Kind::V5)?;
    let Params::V5 { v0, v1, v2 } = spec.params() else { unreachable!() };
    let k = spec.kappa();
    let w = v2 / spec.deformation().sqrt_q();
    let mut out = Vec::new();
    let mut diag = Vec::new();
    let eta2 = v1 + w + 0.25;
    if eta2 < 0.0 {
        return Err(Error::Domain(format!("V5: wall coupling V1 + V2/sqrt(q) = {} is below -1/4", v1 + w)));
    }
    if v2 >= 0.0 {
        diag.push("V2 >= 0: no bound states".to_string());
    } else {
        let nu2 = v1 - w + 0.25;
        let d = nu2.max(0.0).sqrt() - eta2.sqrt() - 1.0;
        let mut n = 0.0;
        while d - 2.0 * n > 0.0 {
            out.push(k * (v0 + v1) - 0.25 * k * (d - 2.0 * n).powi(2));
            n += 1.0;
        }
        if out.is_empty() {
            diag.push("nu - eta <= 1: no bound states".to_string());
        }
    }
    Ok(Spectrum::new(spec, out, Method::ClosedForm, diag))
}

/// Real part of `sqrt(1/4 + V2 + i V1/sqrt(q))`.
pub fn v6_lambda_r(spec: &PotentialSpec) -> Result<f64> {
    let Params::V6 { v1, v2, .. } = spec.params() else {
        return Err(Error::Contract("v6_lambda_r needs a V6 spec".into()));
    };
    let w = v1 / spec.deformation().sqrt_q();
    let p = 0.25 + v2;
    Ok((0.5 * ((p * p + w * w).sqrt() + p)).sqrt())
}

/// `E_n = k (V0 + V2) - k (n + 1/2 - l_R)^2`, `n < l_R - 1/2`.
pub fn spectrum_v6(spec: &PotentialSpec) -> Result<Spectrum> {
    expect(spec, Kind::V6)?;
    let Params::V6 { v0, v2, .. } = spec.params() else { unreachable!() };
    let k = spec.kappa();
    let lr = v6_lambda_r(spec)?;
    let mut out = Vec::new();
    let mut n = 0.0;
    while n < lr - 0.5 {
        out.push(k * (v0 + v2) - k * (n + 0.5 - lr).powi(2));
        n += 1.0;
    }
    let diag = if out.is_empty() { vec!["Re lambda <= 1/2: no bound states".to_string()] } else { vec![] };
    Ok(Spectrum::new(spec, out, Method::ClosedForm, diag))
}

/// Auxiliaries of `u^3 + R u^2 + S u + T = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub p: f64,
    pub q: f64,
    pub d: f64,
}

impl CubicCoefficients {
    pub fn new(r: f64, s: f64, t: f64) -> Self {
        let p = (3.0 * s - r * r) / 3.0;
        let q = 2.0 * r.powi(3) / 27.0 - r * s / 3.0 + t;
        let d = (p / 3.0).powi(3) + (q / 2.0).powi(2);
        Self { r, s, t, p, q, d }
    }

    /// Recovers `(S, T)` from `R, P, Q`, and recomputes `D`; a consistency
    /// check of the stored auxiliaries.
    pub fn reconstruct(&self) -> (f64, f64, f64) {
        let s = (3.0 * self.p + self.r * self.r) / 3.0;
        let t = self.q - 2.0 * self.r.powi(3) / 27.0 + self.r * s / 3.0;
        let d = (self.p / 3.0).powi(3) + (self.q / 2.0).powi(2);
        (s, t, d)
    }

    pub fn eval(&self, u: f64) -> f64 {
        ((u + self.r) * u + self.s) * u + self.t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubicRoots {
    pub coefficients: CubicCoefficients,
    /// Real roots, ascending.
    pub roots: Vec<f64>,
    /// A complex-conjugate pair was discarded.
    pub complex_pair: bool,
}

/// Real roots of `u^3 + R u^2 + S u + T` by Cardano's reduction
/// `u = t - R/3`, `t^3 + P t + Q = 0`.
pub fn cardano_cubic(r: f64, s: f64, t: f64) -> CubicRoots {
    let c = CubicCoefficients::new(r, s, t);
    let shift = -r / 3.0;
    let scale = 1.0f64.max(r.abs()).max(s.abs().sqrt()).max(t.abs().cbrt());
    let tiny = 1e-14 * scale.powi(6);
    let mut roots = if c.d > tiny {
        let sd = c.d.sqrt();
        vec![(-c.q / 2.0 + sd).cbrt() + (-c.q / 2.0 - sd).cbrt() + shift]
    } else if c.d.abs() <= tiny {
        if c.p.abs() < 1e-14 * scale * scale {
            vec![shift]
        } else {
            vec![3.0 * c.q / c.p + shift, -1.5 * c.q / c.p + shift]
        }
    } else {
        let m = 2.0 * (-c.p / 3.0).sqrt();
        let arg = (3.0 * c.q / (2.0 * c.p) * (-3.0 / c.p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        (0..3).map(|j| m * (phi - 2.0 * std::f64::consts::PI * j as f64 / 3.0).cos() + shift).collect()
    };
    // one Newton step each to clean up cancellation
    for u in roots.iter_mut() {
        let dp = (3.0 * *u + 2.0 * r) * *u + s;
        if dp.abs() > 1e-300 {
            let next = *u - c.eval(*u) / dp;
            if next.is_finite() && c.eval(next).abs() <= c.eval(*u).abs() {
                *u = next;
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * scale);
    CubicRoots { coefficients: c, complex_pair: c.d > tiny, roots }
}

/// Couplings of V7 in the form used by the quantization condition:
/// `a` is the `e^{-y}` coupling (`A/sqrt(q)`), `bc = B + C`.
fn v7_couplings(spec: &PotentialSpec) -> Result<(f64, f64)> {
    match (spec.kind(), spec.params()) {
        (Kind::V7, Params::V7 { a, b, c }) => Ok((a / spec.deformation().sqrt_q(), b + c)),
        _ => Err(Error::Contract("V7 quantization needs a V7 spec".into())),
    }
}

/// Cubic in `X = -E/k` whose roots contain the level-`n` solution of the V7
/// quantization condition.
pub fn v7_cubic(spec: &PotentialSpec, n: u32) -> Result<CubicCoefficients> {
    let (a, bc) = v7_couplings(spec)?;
    let nt = n as f64 + 0.5;
    let n2 = nt * nt;
    let lam = bc + n2;
    let kk = lam * lam + a * a / 4.0 + 4.0 * n2 * bc;
    let c3 = 4.0 * n2;
    let c2 = 12.0 * n2 * lam - 20.0 * n2 * n2 - lam * lam;
    let c1 = 16.0 * n2 * lam * (lam + bc) - 2.0 * kk * (lam + 4.0 * n2);
    let c0 = 16.0 * n2 * lam * lam * bc - kk * kk;
    Ok(CubicCoefficients::new(c2 / c3, c1 / c3, c0 / c3))
}

/// Signed residual of the V7 quantization condition at `eps = E/k`:
/// `sqrt(B + C - eps) - [ (sqrt(a - eps) - sqrt(-a - eps))/2 - (n + 1/2) ]`.
/// `None` when a radicand is negative.
pub fn v7_condition(spec: &PotentialSpec, eps: f64, n: u32) -> Result<Option<f64>> {
    let (a, bc) = v7_couplings(spec)?;
    let (r1, r2, r3) = (bc - eps, a - eps, -a - eps);
    if r1 < 0.0 || r2 < 0.0 || r3 < 0.0 {
        return Ok(None);
    }
    Ok(Some(r1.sqrt() - (0.5 * (r2.sqrt() - r3.sqrt()) - (n as f64 + 0.5))))
}

/// One V7 level together with the cubic it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct V7Level {
    pub n: u32,
    pub energy: f64,
    pub cubic: CubicRoots,
    /// Number of cubic roots passing the quantization filter.
    pub passing: usize,
    pub residual: f64,
}

/// Residual tolerance of the V7 root filter.
pub const V7_FILTER_TOL: f64 = 1e-10;
const V7_MAX_LEVELS: u32 = 200;

/// Levels of V7 with their cubic data.
pub fn v7_levels(spec: &PotentialSpec) -> Result<Vec<V7Level>> {
    let (a, bc) = v7_couplings(spec)?;
    let k = spec.kappa();
    let eps_max = (-a.abs()).min(bc);
    let mut out = Vec::new();
    for n in 0..V7_MAX_LEVELS {
        let cubic = v7_cubic(spec, n)?;
        let roots = cardano_cubic(cubic.r, cubic.s, cubic.t);
        let mut passing = Vec::new();
        for &x in &roots.roots {
            let eps = -x;
            if eps >= eps_max {
                continue;
            }
            if let Some(res) = v7_condition(spec, eps, n)? {
                let scale = 1.0 + eps.abs().sqrt();
                if res.abs() < V7_FILTER_TOL * scale {
                    passing.push((eps, res));
                }
            }
        }
        let Some(&(eps, residual)) = passing.first() else { break };
        out.push(V7Level { n, energy: k * eps, passing: passing.len(), residual, cubic: roots });
    }
    Ok(out)
}

pub fn spectrum_v7(spec: &PotentialSpec) -> Result<Spectrum> {
    expect(spec, Kind::V7)?;
    let levels = v7_levels(spec)?;
    let mut diag = Vec::new();
    let (a, _) = v7_couplings(spec)?;
    if a <= 0.0 {
        diag.push("A <= 0: the e^{-x} term is not attractive; the closed form assumes A > 0".to_string());
    }
    if levels.is_empty() {
        diag.push("no cubic root satisfies the quantization condition at n = 0".to_string());
    }
    if levels.iter().any(|l| l.passing != 1) {
        diag.push("more than one cubic root passed the quantization filter".to_string());
    }
    Ok(Spectrum::new(spec, levels.into_iter().map(|l| l.energy).collect(), Method::Cardano, diag))
}

/// Scarf problem whose decaying solution's wall value fixes the V8 levels.
pub(crate) fn v8_auxiliary(spec: &PotentialSpec, e: C64) -> Result<Scarf> {
    let Params::V8 { f, h1, .. } = spec.params() else {
        return Err(Error::Contract("V8 auxiliary problem needs a V8 spec".into()));
    };
    if spec.kind() != Kind::V8 {
        return Err(Error::Contract("V8 auxiliary problem needs a V8 spec".into()));
    }
    let eps = e / spec.kappa();
    let h = h1 / spec.deformation().sqrt_q();
    Ok(Scarf::new(f + 0.75 - eps, C64::new(h, 0.0), (1.0 - eps).sqrt()))
}

/// Wall value of the solution decaying at infinity, scaled by its wall
/// derivative so that it is dimensionless; zero exactly at a V8 level.
pub fn v8_condition(spec: &PotentialSpec, e: f64) -> Result<f64> {
    let (p, dp) = v8_auxiliary(spec, C64::new(e, 0.0))?.decaying_plus(0.0)?;
    Ok(p.re / (p.norm() + dp.norm()))
}

pub const V8_SCAN_POINTS: usize = 2000;

/// Default V8 search window `(-10 k |f + 1|, threshold - 1e-6)`.
pub fn v8_default_window(spec: &PotentialSpec) -> (f64, f64) {
    let thr = spec.threshold();
    let f = match spec.params() {
        Params::V8 { f, .. } => f,
        _ => 0.0,
    };
    let lo = (-10.0 * spec.kappa() * (f + 1.0).abs()).min(thr - 1.0);
    (lo, thr - 1e-6)
}

/// V8 levels from sign changes of [`v8_condition`] on a uniform scan,
/// refined by bisection to working precision.
pub fn spectrum_v8(spec: &PotentialSpec, window: Option<(f64, f64)>, scan_points: usize) -> Result<Spectrum> {
    expect(spec, Kind::V8)?;
    let (lo, hi) = window.unwrap_or_else(|| v8_default_window(spec));
    if !(lo < hi) || scan_points < 2 {
        return Err(Error::Invalid(format!("bad V8 search window [{lo}, {hi}] / {scan_points} points")));
    }
    let thr = spec.threshold();
    let mut diag = Vec::new();
    let hi = if hi >= thr {
        diag.push(format!("window clipped to the continuum threshold {thr}"));
        thr - 1e-9 * thr.abs().max(1.0)
    } else {
        hi
    };
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..scan_points {
        let e = lo + (hi - lo) * i as f64 / (scan_points - 1) as f64;
        let g = match v8_condition(spec, e) {
            Ok(g) => g,
            Err(err) => {
                diag.push(format!("condition failed at E = {e}: {err}; interval skipped"));
                prev = None;
                continue;
            }
        };
        if let Some((e0, g0)) = prev {
            if g0 == 0.0 {
                roots.push(e0);
            } else if g0.signum() != g.signum() && g != 0.0 {
                roots.push(bisect(|x| v8_condition(spec, x), e0, e, g0)?);
            }
        }
        prev = Some((e, g));
    }
    Ok(Spectrum::new(spec, roots, Method::Transcendental, diag))
}

/// Bisection to working precision on a bracket with `f(lo) = f_lo`.
pub(crate) fn bisect(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Grid-oracle spectrum (Richardson-extrapolated) below the threshold.
pub fn spectrum_oracle(spec: &PotentialSpec, n_points: usize) -> Result<Spectrum> {
    let grid = GridProblem::for_spec(spec, n_points)?;
    let thr = spec.threshold();
    let count = grid.count_below(thr)?;
    let energies = if count == 0 { vec![] } else { grid.refine(count)?.extrapolated };
    let energies: Vec<f64> = energies.into_iter().filter(|e| *e < thr).collect();
    Ok(Spectrum::new(spec, energies, Method::NumericOracle, vec![]))
}

/// Per-level comparison of a deformed spectrum with its undeformed
/// equivalent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QReductionReport {
    pub spec: PotentialSpec,
    pub equivalent: Option<PotentialSpec>,
    pub deformed: Vec<f64>,
    pub undeformed: Vec<f64>,
    pub max_abs_diff: f64,
    pub passed: bool,
    pub detail: String,
}

/// Compares `spectrum(spec)` with the spectrum of the q = 1 spec carrying the
/// deformed parameters.
pub fn q_reduction_check(spec: &PotentialSpec, tol: f64) -> Result<QReductionReport> {
    if matches!(spec.kind(), Kind::V7 | Kind::V7p | Kind::V8 | Kind::V8p) {
        return Err(Error::Contract(format!("q-reduction check covers V1-V6, got {}", spec.kind())));
    }
    let deformed = spectrum(spec)?.energies();
    let equivalent = spec.equivalent_undeformed();
    let undeformed = match &equivalent {
        Some(eq) => spectrum(eq)?.energies(),
        None => vec![],
    };
    let mut max_abs_diff = 0.0f64;
    let mut detail = String::new();
    if equivalent.is_none() {
        detail = "no real undeformed equivalent; compared against an empty spectrum".into();
    }
    if deformed.len() != undeformed.len() {
        detail = format!("level counts differ: {} vs {}", deformed.len(), undeformed.len());
        max_abs_diff = f64::INFINITY;
    } else {
        for (i, (a, b)) in deformed.iter().zip(&undeformed).enumerate() {
            let d = (a - b).abs();
            if d > tol * a.abs().max(1.0) {
                detail.push_str(&format!("n={i}: {a} vs {b} (|diff| = {d:e}); "));
            }
            max_abs_diff = max_abs_diff.max(d);
        }
    }
    let passed = deformed.len() == undeformed.len()
        && deformed.iter().zip(&undeformed).all(|(a, b)| (a - b).abs() <= tol * a.abs().max(1.0));
    Ok(QReductionReport { spec: *spec, equivalent, deformed, undeformed, max_abs_diff, passed, detail })
}
