//! Energy-domain Green functions `G(x1, x2; E) = <x1|(H - E)^{-1}|x2>` and
//! pole scanning.
//!
//! For V1-V5 the kernel is the product of the solution regular at the left
//! end (at `x<`) and the one decaying at the right end (at `x>`), with the
//! Gamma-ratio prefactor that is the inverse Wronskian. V6 uses the
//! hyperbolic barrier solutions directly; V8 maps onto a half-line barrier
//! problem and subtracts the image term so that `G` vanishes at the wall.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potentials::{decay_rate, tilde, Kind, Params, PotentialSpec};
use crate::scarf::Scarf;
use crate::specfun::{gamma, hyp2f1, legendre_p_tanh, rgamma};
use crate::spectra::{self, v8_auxiliary};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenEval {
    pub x1: f64,
    pub x2: f64,
    #[serde(rename = "E")]
    pub energy: C64,
    pub value: C64,
    pub x_lower: f64,
    pub x_upper: f64,
}

/// Distance in energy below which a real `E` counts as sitting on a level.
pub const POLE_GUARD: f64 = 1e-9;

/// Evaluates `G(x1, x2; E)` (raw frame), refusing points on a pole.
pub fn green(spec: &PotentialSpec, x1: f64, x2: f64, e: C64) -> Result<C64> {
    if e.im == 0.0 && matches!(spec.kind(), Kind::V1 | Kind::V2 | Kind::V3 | Kind::V4 | Kind::V5 | Kind::V6) {
        let levels = spectra::spectrum(spec)?.energies();
        if let Some(level) = levels.iter().copied().min_by(|a, b| (a - e.re).abs().partial_cmp(&(b - e.re).abs()).unwrap())
        {
            if (level - e.re).abs() < POLE_GUARD {
                return Err(Error::Pole { what: format!("{} Green function at a bound state", spec.kind()), location: level });
            }
        }
    }
    let inv = inverse_green(spec, x1, x2, e)?;
    if inv == C64::new(0.0, 0.0) {
        return Err(Error::Pole { what: format!("{} Green function", spec.kind()), location: e.re });
    }
    Ok(1.0 / inv)
}

/// [`green`] with the ordering recorded.
pub fn green_eval(spec: &PotentialSpec, x1: f64, x2: f64, e: C64) -> Result<GreenEval> {
    Ok(GreenEval { x1, x2, energy: e, value: green(spec, x1, x2, e)?, x_lower: x1.min(x2), x_upper: x1.max(x2) })
}

/// `1/G(x1, x2; E)`, finite (zero) at the poles of `G`.
pub fn inverse_green(spec: &PotentialSpec, x1: f64, x2: f64, e: C64) -> Result<C64> {
    for x in [x1, x2] {
        if !spec.admits(x, 0.0) {
            return Err(Error::Domain(format!("x = {x} outside the {} domain", spec.kind())));
        }
    }
    if !(e.re.is_finite() && e.im.is_finite()) {
        return Err(Error::Invalid(format!("energy {e} is not finite")));
    }
    if e.im == 0.0 && e.re >= spec.threshold() {
        return Err(Error::Domain(format!(
            "E = {} lies on the continuum cut (threshold {})",
            e.re,
            spec.threshold()
        )));
    }
    let shift = spec.deformation().shift();
    let (lo, hi) = (x1.min(x2) - shift, x1.max(x2) - shift);
    let kap = spec.kappa();
    let q = spec.q();
    match spec.params() {
        Params::V1 { nu } => {
            let l = tilde(nu, q) - 0.5;
            let k = decay_rate(e, kap);
            let uu = legendre_p_tanh(l, -k, -lo)? * legendre_p_tanh(l, -k, hi)?;
            Ok(2.0 * kap * rgamma(k - l) * rgamma(k + l + 1.0) / uu)
        }
        Params::V2 { eta, nu } => {
            let (et, nt) = (tilde(eta, q), tilde(nu, q));
            if et.re == 0.0 && et.im != 0.0 {
                return Err(Error::Domain("V2 wall coupling below -1/4".into()));
            }
            let k = decay_rate(e, kap);
            let uu = v2_pair(et, nt, k, lo, hi)?;
            Ok(2.0 * kap * gamma(et + 1.0)? * gamma(k + 1.0)? * v2_rgammas(et, nt, k) / uu)
        }
        Params::V3 { alpha, lambda } => {
            let lt = tilde(lambda, q);
            if lt.re == 0.0 && lt.im != 0.0 {
                return Err(Error::Domain("V3 wall coupling below -1/4".into()));
            }
            let k1 = ((-e - alpha) / kap).sqrt();
            let k2 = ((-e + alpha) / kap).sqrt();
            let a = k1 / 2.0 + lt + 0.5 + k2 / 2.0;
            let b = k1 / 2.0 + lt + 0.5 - k2 / 2.0;
            // t = e^{-2y}; gauge t^{k1/2} (1-t)^{lt+1/2}
            let gauge = |y: f64| (-k1 * y).exp() * C64::new(-(-2.0 * y).exp_m1(), 0.0).powc(lt + 0.5);
            let u_reg = gauge(lo) * hyp2f1(a, b, 1.0 + 2.0 * lt, C64::new(-(-2.0 * lo).exp_m1(), 0.0))?;
            let u_dec = gauge(hi) * hyp2f1(a, b, 1.0 + k1, C64::new((-2.0 * hi).exp(), 0.0))?;
            Ok(2.0 * kap * gamma(1.0 + k1)? * gamma(1.0 + 2.0 * lt)? * rgamma(a) * rgamma(b) / (u_reg * u_dec))
        }
        Params::V4 { beta, lambda } => {
            let l = tilde(lambda, q) - 0.5;
            let kp = ((-e + beta) / kap).sqrt();
            let km = ((-e - beta) / kap).sqrt();
            let big_k = (kp + km) / 2.0;
            let (a, b) = (big_k - l, big_k + l + 1.0);
            // xi = (1 - tanh y)/2 = 1/(1 + e^{2y})
            let xi = |y: f64| 1.0 / (1.0 + (2.0 * y).exp());
            let gauge = |y: f64| {
                let (s, c) = (xi(y), 1.0 / (1.0 + (-2.0 * y).exp()));
                C64::new(s, 0.0).powc(kp / 2.0) * C64::new(c, 0.0).powc(km / 2.0)
            };
            let u_reg = gauge(lo) * hyp2f1(a, b, 1.0 + km, C64::new(1.0 / (1.0 + (-2.0 * lo).exp()), 0.0))?;
            let u_dec = gauge(hi) * hyp2f1(a, b, 1.0 + kp, C64::new(xi(hi), 0.0))?;
            Ok(2.0 * kap * gamma(1.0 + kp)? * gamma(1.0 + km)? * rgamma(a) * rgamma(b) / (u_reg * u_dec))
        }
        Params::V5 { v0, v1, v2 } => {
            let w = v2 / spec.deformation().sqrt_q();
            let et = C64::new(v1 + w + 0.25, 0.0).sqrt();
            let nt = C64::new(v1 - w + 0.25, 0.0).sqrt();
            if et.re == 0.0 && et.im != 0.0 {
                return Err(Error::Domain("V5 wall coupling below -1/4".into()));
            }
            let kr = 2.0 * (-e / kap + v0 + v1).sqrt();
            let uu = v2_pair(et, nt, kr, lo / 2.0, hi / 2.0)?;
            Ok(kap * gamma(et + 1.0)? * gamma(kr + 1.0)? * v2_rgammas(et, nt, kr) / uu)
        }
        Params::V6 { v0, v1, v2 } => {
            let s = Scarf::new(C64::new(v2, 0.0), C64::new(v1 / spec.deformation().sqrt_q(), 0.0), (v0 + v2 - e / kap).sqrt());
            Ok(kap / s.resolvent(lo, hi)?)
        }
        Params::V8 { .. } if spec.kind() == Kind::V8 => {
            let aux = v8_auxiliary(spec, e)?;
            let (t1, t2) = (v8_t(lo), v8_t(hi));
            let jac = (t1.tanh() * t2.tanh()).sqrt();
            Ok(kap * aux.dirichlet_inverse(t1, t2)? / jac)
        }
        _ => Err(Error::Contract(format!("no closed-form Green function for {}", spec.kind()))),
    }
}

/// `t` with `e^z = cosh t`.
fn v8_t(z: f64) -> f64 {
    (z * 2.0).exp_m1().sqrt().asinh()
}

fn v2_rgammas(et: C64, nt: C64, k: C64) -> C64 {
    let m1 = (et + k) / 2.0;
    let l = (nt - 1.0) / 2.0;
    rgamma(m1 - l) * rgamma(m1 + l + 1.0)
}

/// `u_reg(lo) u_dec(hi)` for the `sinh^-2 / cosh^-2` problem.
fn v2_pair(et: C64, nt: C64, k: C64, lo: f64, hi: f64) -> Result<C64> {
    let m1 = (et + k) / 2.0;
    let l = (nt - 1.0) / 2.0;
    let (a, b) = (m1 - l, m1 + l + 1.0);
    let gauge = |y: f64| {
        let sech = 2.0 * (-y).exp() / (1.0 + (-2.0 * y).exp());
        C64::new(y.tanh(), 0.0).powc(et + 0.5) * C64::new(sech, 0.0).powc(k)
    };
    let t = lo.tanh();
    let u_reg = gauge(lo) * hyp2f1(a, b, et + 1.0, C64::new(t * t, 0.0))?;
    let sech = 2.0 * (-hi).exp() / (1.0 + (-2.0 * hi).exp());
    let u_dec = gauge(hi) * hyp2f1(a, b, k + 1.0, C64::new(sech * sech, 0.0))?;
    Ok(u_reg * u_dec)
}

/// Argument of the Gamma factor in the Green-function prefactor whose
/// poles are the bound states: equals `-n` at the `n`-th level.
pub fn pole_argument(spec: &PotentialSpec, e: f64) -> Result<C64> {
    let p = spec.effective_params(C64::new(e, 0.0), None);
    let get = |v: Option<C64>| v.ok_or_else(|| Error::Contract("missing effective parameter".into()));
    match spec.kind() {
        Kind::V1 | Kind::V6 => Ok(get(p.k1)? - get(p.l)?),
        Kind::V2 | Kind::V4 | Kind::V5 => Ok(get(p.m1)? - get(p.l)?),
        Kind::V3 => Ok((get(p.k1)? - get(p.k2)?) / 2.0 + get(p.lambda_t)? + 0.5),
        k => Err(Error::Contract(format!("no Gamma-prefactor quantization for {k}"))),
    }
}

/// Default scan window: from a little below the potential minimum up to the
/// continuum threshold.
pub fn default_scan_window(spec: &PotentialSpec) -> Result<(f64, f64)> {
    let shifted = spec.reduce_to_shifted().0;
    let (lo, hi) = crate::oracle::default_window(spec.kind());
    let mut vmin = f64::INFINITY;
    for i in 1..4000 {
        let y = lo + (hi - lo) * i as f64 / 4000.0;
        if let Ok(v) = shifted.evaluate(y) {
            vmin = vmin.min(v);
        }
    }
    let thr = spec.threshold();
    if !vmin.is_finite() || vmin >= thr {
        vmin = thr - 1.0;
    }
    let span = thr - vmin;
    Ok((vmin - 0.01 * span.max(1.0), thr - 1e-9 * thr.abs().max(1.0)))
}

/// Probe points for pole scanning (raw frame): the middle of the domain
/// and half a unit either side.
pub fn probe_points(spec: &PotentialSpec) -> Vec<f64> {
    let shift = spec.deformation().shift();
    let mid = if spec.kind().is_half_line() { 1.0 } else { 0.0 };
    vec![shift + mid, shift + mid - 0.5, shift + mid + 0.5]
}

pub const MERGE_TOL: f64 = 1e-7;

/// Real poles of `G(x0, x0; E)` in `window`, from sign changes of
/// `Re 1/G` at `resolution` energies per probe point, refined by
/// bisection. Sign changes through a zero of `G` are discarded.
pub fn pole_scan(spec: &PotentialSpec, window: (f64, f64), resolution: usize) -> Result<Vec<f64>> {
    let (lo, hi) = window;
    if !(lo < hi) || resolution < 2 {
        return Err(Error::Invalid(format!("bad scan window [{lo}, {hi}] / resolution {resolution}")));
    }
    if !matches!(spec.kind(), Kind::V1 | Kind::V2 | Kind::V3 | Kind::V4 | Kind::V5 | Kind::V6 | Kind::V8) {
        return Err(Error::Contract(format!("pole scanning is not available for {}", spec.kind())));
    }
    let thr = spec.threshold();
    let hi = hi.min(thr - 1e-12 * thr.abs().max(1.0));
    let mut poles = Vec::new();
    for x0 in probe_points(spec) {
        if !spec.admits(x0, 0.0) {
            continue;
        }
        let g = |e: f64| -> Result<f64> { Ok(inverse_green(spec, x0, x0, C64::new(e, 0.0))?.re) };
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..resolution {
            let e = lo + (hi - lo) * i as f64 / (resolution - 1) as f64;
            let Ok(v) = g(e) else {
                prev = None;
                continue;
            };
            if !v.is_finite() {
                prev = None;
                continue;
            }
            if v == 0.0 {
                poles.push(e);
            } else if let Some((e0, v0)) = prev {
                if v0 != 0.0 && v0.signum() != v.signum() {
                    let root = spectra::bisect(g, e0, e, v0)?;
                    // beside the root rather than on it: some closed forms are 0 * inf there
                    let d = 1e-3 * (e - e0);
                    let beside = |x: f64| g(x).map(f64::abs).unwrap_or(f64::INFINITY);
                    let at = beside(root - d).max(beside(root + d));
                    if at <= v0.abs().min(v.abs()) {
                        poles.push(root);
                    }
                }
            }
            prev = Some((e, v));
        }
    }
    poles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut merged: Vec<f64> = Vec::new();
    for p in poles {
        match merged.last() {
            Some(&last) if (p - last).abs() <= MERGE_TOL * p.abs().max(1.0) => {}
            _ => merged.push(p),
        }
    }
    Ok(merged)
}
