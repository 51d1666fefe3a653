//! Bound-state wave functions for V1-V6.
//!
//! `psi_v*` evaluate the closed forms without normalization; a
//! [`BoundState`] carries the numerically determined normalization and
//! phase, so `BoundState::psi` is normalized on the raw-frame line.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potentials::{tilde_sq, Kind, Params, PotentialSpec};
use crate::specfun::{hyp2f1, jacobi_p, legendre_p_tanh, JacobiArgs};
use crate::spectra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    ClosedForm,
    Numeric,
}

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn level_energy(spec: &PotentialSpec, n: u32) -> Result<f64> {
    let s = spectra::spectrum(spec)?;
    s.levels.get(n as usize).map(|l| l.energy).ok_or_else(|| {
        Error::Contract(format!("{} has {} bound states; level {n} requested", spec.kind(), s.levels.len()))
    })
}

fn expect(spec: &PotentialSpec, kind: Kind) -> Result<()> {
    if spec.kind() == kind {
        Ok(())
    } else {
        Err(Error::Contract(format!("expected a {kind} spec, got {}", spec.kind())))
    }
}

fn shifted(spec: &PotentialSpec, x: f64) -> Result<f64> {
    if !spec.admits(x, 0.0) {
        return Err(Error::Domain(format!("x = {x} outside the {} domain", spec.kind())));
    }
    Ok(x - spec.deformation().shift())
}

/// `P^{-k}_{l~-1/2}(tanh y)` with `k = l~ - 1/2 - n`.
pub fn psi_v1(spec: &PotentialSpec, n: u32, x: f64) -> Result<f64> {
    expect(spec, Kind::V1)?;
    level_energy(spec, n)?;
    let y = shifted(spec, x)?;
    let Params::V1 { nu } = spec.params() else { unreachable!() };
    let l = tilde_sq(nu, spec.q()).sqrt() - 0.5;
    let k = l - n as f64;
    Ok(legendre_p_tanh(r(l), r(-k), y)?.re)
}

/// `tanh^{eta~+1/2} y cosh^{-k} y F(-n, nu~ - n; 1 + eta~; tanh^2 y)`.
pub fn psi_v2(spec: &PotentialSpec, n: u32, x: f64) -> Result<f64> {
    expect(spec, Kind::V2)?;
    level_energy(spec, n)?;
    let y = shifted(spec, x)?;
    let Params::V2 { eta, nu } = spec.params() else { unreachable!() };
    let (et, nt) = (tilde_sq(eta, spec.q()).sqrt(), tilde_sq(nu, spec.q()).sqrt());
    v2_form(et, nt, n, y)
}

fn v2_form(et: f64, nt: f64, n: u32, y: f64) -> Result<f64> {
    let nf = n as f64;
    let k = nt - et - 1.0 - 2.0 * nf;
    let t = y.tanh();
    let f = hyp2f1(r(-nf), r(nt - nf), r(1.0 + et), r(t * t))?.re;
    // cosh^{-k} = (2 e^{-y} / (1 + e^{-2y}))^k, safe for large y
    let sech = 2.0 * (-y).exp() / (1.0 + (-2.0 * y).exp());
    Ok(t.powf(et + 0.5) * sech.powf(k) * f)
}

/// `t^{k/2} (1-t)^{l~+1/2} P_n^{(k, 2 l~)}(1 - 2t)` with `t = e^{-2y}`.
pub fn psi_v3(spec: &PotentialSpec, n: u32, x: f64) -> Result<f64> {
    expect(spec, Kind::V3)?;
    level_energy(spec, n)?;
    let y = shifted(spec, x)?;
    let Params::V3 { alpha, lambda } = spec.params() else { unreachable!() };
    let kap = spec.kappa();
    let lt = tilde_sq(lambda, spec.q()).sqrt();
    let big_n = lt + 0.5 + n as f64;
    let k = alpha / (2.0 * kap * big_n) - big_n;
    let t = (-2.0 * y).exp();
    let p = jacobi_p(&JacobiArgs { n, alpha: r(k), beta: r(2.0 * lt), x: r(1.0 - 2.0 * t) })?.re;
    // (1 - t)^{l~+1/2}, accurate near the wall
    let one_minus_t = -(-2.0 * y).exp_m1();
    Ok((-k * y).exp() * one_minus_t.powf(lt + 0.5) * p)
}

/// `(1 - tanh y)^{k+/2} (1 + tanh y)^{k-/2} P_n^{(k+, k-)}(tanh y)`.
pub fn psi_v4(spec: &PotentialSpec, n: u32, x: f64) -> Result<f64> {
    expect(spec, Kind::V4)?;
    level_energy(spec, n)?;
    let y = shifted(spec, x)?;
    let Params::V4 { beta, lambda } = spec.params() else { unreachable!() };
    let kap = spec.kappa();
    let big_k = tilde_sq(lambda, spec.q()).sqrt() - 0.5 - n as f64;
    let d = beta / (2.0 * kap * big_k);
    let (kp, km) = (big_k + d, big_k - d);
    let t = y.tanh();
    // 1 -+ tanh y = 2 e^{-+y} / (e^y + e^{-y}), in log form
    let lse = y.abs() + (-2.0 * y.abs()).exp().ln_1p();
    let log_gauge = 0.5 * kp * (2f64.ln() - y - lse) + 0.5 * km * (2f64.ln() + y - lse);
    let p = jacobi_p(&JacobiArgs { n, alpha: r(kp), beta: r(km), x: r(t) })?.re;
    Ok(log_gauge.exp() * p)
}

/// The V2 form in `r = y/2` with `eta^2 = V1 + V2/sqrt(q) + 1/4`,
/// `nu^2 = V1 - V2/sqrt(q) + 1/4`.
pub fn psi_v5(spec: &PotentialSpec, n: u32, x: f64) -> Result<f64> {
    expect(spec, Kind::V5)?;
    level_energy(spec, n)?;
    let y = shifted(spec, x)?;
    let Params::V5 { v1, v2, .. } = spec.params() else { unreachable!() };
    let w = v2 / spec.deformation().sqrt_q();
    let (eta, nu) = ((v1 + w + 0.25).sqrt(), (v1 - w + 0.25).sqrt());
    v2_form(eta, nu, n, y / 2.0)
}

/// `(1 - z)^{(1/2 - L)/2} (1 + z)^{(1/2 - L*)/2} P_n^{(-L, -L*)}(z)` with
/// `z = i sinh y` and `L = sqrt(1/4 + V2 + i V1/sqrt(q))`. Complex; the
/// phase is fixed by [`BoundState`].
pub fn psi_v6(spec: &PotentialSpec, n: u32, x: f64) -> Result<C64> {
    expect(spec, Kind::V6)?;
    level_energy(spec, n)?;
    let y = shifted(spec, x)?;
    let Params::V6 { v1, v2, .. } = spec.params() else { unreachable!() };
    let w = v1 / spec.deformation().sqrt_q();
    let lam = C64::new(0.25 + v2, w).sqrt();
    let lc = lam.conj();
    let z = C64::new(0.0, y.sinh());
    let gauge = ((0.5 - lam) / 2.0 * (1.0 - z).ln() + (0.5 - lc) / 2.0 * (1.0 + z).ln()).exp();
    Ok(gauge * jacobi_p(&JacobiArgs { n, alpha: -lam, beta: -lc, x: z })?)
}

/// Unnormalized closed form at a raw-frame point.
pub fn psi_raw(spec: &PotentialSpec, n: u32, x: f64) -> Result<C64> {
    Ok(match spec.kind() {
        Kind::V1 => r(psi_v1(spec, n, x)?),
        Kind::V2 => r(psi_v2(spec, n, x)?),
        Kind::V3 => r(psi_v3(spec, n, x)?),
        Kind::V4 => r(psi_v4(spec, n, x)?),
        Kind::V5 => r(psi_v5(spec, n, x)?),
        Kind::V6 => psi_v6(spec, n, x)?,
        other => return Err(Error::Contract(format!("no closed-form wave functions for {other}"))),
    })
}

/// Trapezoidal norm and interior node count of sampled data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormCount {
    /// `int |psi|^2 dx`.
    pub norm: f64,
    pub nodes: usize,
}

/// Samples smaller than this fraction of the peak are ignored for nodes.
const NODE_FLOOR: f64 = 1e-8;

pub fn normalize_and_count(samples: &[(f64, f64)]) -> Result<NormCount> {
    if let Some((x, _)) = samples.iter().find(|(x, v)| !x.is_finite() || !v.is_finite()) {
        return Err(Error::Numeric(format!("non-finite wave function sample at x = {x}")));
    }
    let norm = samples.windows(2).map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1.powi(2) + w[1].1.powi(2))).sum();
    Ok(NormCount { norm, nodes: count_nodes(samples.iter().map(|s| s.1)) })
}

fn count_nodes(values: impl Iterator<Item = f64> + Clone) -> usize {
    let peak = values.clone().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut last = 0.0;
    let mut nodes = 0;
    for v in values {
        if v.abs() <= NODE_FLOOR * peak {
            continue;
        }
        if last != 0.0 && v.signum() != last {
            nodes += 1;
        }
        last = v.signum();
    }
    nodes
}

/// A normalized bound state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub spec: PotentialSpec,
    pub n: u32,
    pub energy: f64,
    pub nodes: usize,
    pub norm_method: NormMethod,
    /// Raw-frame window used for normalization.
    pub window: (f64, f64),
    /// Multiplies the closed form to give the normalized real function.
    scale: C64,
}

const MIN_SPAN: f64 = 40.0;
const TAIL: f64 = 1e-16;
const NORM_STEP: f64 = 2e-3;

impl BoundState {
    pub fn new(spec: &PotentialSpec, n: u32) -> Result<Self> {
        let energy = level_energy(spec, n)?;
        let raw = |y: f64| psi_raw(spec, n, y + spec.deformation().shift());
        let (lo, hi) = support(spec, &raw)?;
        let m = (((hi - lo) / NORM_STEP).ceil() as usize).max(100);
        let h = (hi - lo) / m as f64;
        let mut samples = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let y = lo + i as f64 * h;
            let v = if spec.kind().is_half_line() && i == 0 { C64::new(0.0, 0.0) } else { raw(y)? };
            samples.push((y, v));
        }
        // V6: rotate by the phase at the largest sample
        let peak = samples.iter().max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap()).unwrap().1;
        let phase = if peak.norm() > 0.0 { peak.conj() / peak.norm() } else { C64::new(1.0, 0.0) };
        let mut max_im = 0.0f64;
        let real: Vec<(f64, f64)> = samples
            .iter()
            .map(|(y, v)| {
                let w = v * phase;
                max_im = max_im.max(w.im.abs());
                (*y, w.re)
            })
            .collect();
        if max_im > 1e-8 * peak.norm() {
            return Err(Error::Numeric(format!(
                "wave function is not real after phase fixing (|Im| / peak = {:e})",
                max_im / peak.norm()
            )));
        }
        let nc = normalize_and_count(&real)?;
        let shift = spec.deformation().shift();
        Ok(BoundState {
            spec: *spec,
            n,
            energy,
            nodes: nc.nodes,
            norm_method: NormMethod::Numeric,
            window: (lo + shift, hi + shift),
            scale: phase / nc.norm.sqrt(),
        })
    }

    /// Normalized wave function at a raw-frame point.
    pub fn psi(&self, x: f64) -> Result<f64> {
        if self.spec.kind().is_half_line() && x == self.spec.domain_start() {
            return Ok(0.0);
        }
        Ok((psi_raw(&self.spec, self.n, x)? * self.scale).re)
    }

    /// Imaginary part left after phase fixing (zero for V1-V5).
    pub fn imag_residue(&self, x: f64) -> Result<f64> {
        Ok((psi_raw(&self.spec, self.n, x)? * self.scale).im)
    }

    /// Samples `(x, psi)` on `points` uniform nodes of `[lo, hi]`.
    pub fn sample(&self, lo: f64, hi: f64, points: usize) -> Result<Vec<(f64, f64)>> {
        if points < 2 || !(lo < hi) {
            return Err(Error::Invalid(format!("bad sampling range [{lo}, {hi}] with {points} points")));
        }
        (0..points)
            .map(|i| {
                let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
                Ok((x, self.psi(x)?))
            })
            .collect()
    }

    /// `||(H - E) psi|| / ||psi||` by central differences with step `h` over
    /// `[lo, hi]` (raw frame).
    pub fn hamiltonian_residual(&self, lo: f64, hi: f64, h: f64) -> Result<f64> {
        let k = self.spec.kappa();
        let m = ((hi - lo) / h).round() as usize;
        let mut num = 0.0;
        let mut den = 0.0;
        let mut prev = self.psi(lo)?;
        let mut cur = self.psi(lo + h)?;
        for i in 1..m {
            let x = lo + i as f64 * h;
            let next = self.psi(x + h)?;
            let lap = (next - 2.0 * cur + prev) / (h * h);
            let res = -k * lap + (self.spec.evaluate(x)? - self.energy) * cur;
            num += res * res;
            den += cur * cur;
            prev = cur;
            cur = next;
        }
        Ok((num / den).sqrt() / self.energy.abs().max(1.0))
    }
}

/// Shifted-frame window outside of which `|psi|^2 < TAIL * peak`.
fn support(spec: &PotentialSpec, raw: &dyn Fn(f64) -> Result<C64>) -> Result<(f64, f64)> {
    let half = spec.kind().is_half_line();
    let (mut lo, mut hi) = if half { (0.0, MIN_SPAN) } else { (-MIN_SPAN / 2.0, MIN_SPAN / 2.0) };
    let mut peak = 0.0f64;
    let probe = |a: f64, b: f64, peak: &mut f64| -> Result<()> {
        for i in 0..=400 {
            let y = a + (b - a) * i as f64 / 400.0;
            if half && y <= 0.0 {
                continue;
            }
            *peak = peak.max(raw(y)?.norm_sqr());
        }
        Ok(())
    };
    probe(lo, hi, &mut peak)?;
    for _ in 0..40 {
        if raw(hi)?.norm_sqr() < TAIL * peak {
            break;
        }
        hi += 10.0;
        probe(hi - 10.0, hi, &mut peak)?;
    }
    if !half {
        for _ in 0..40 {
            if raw(lo)?.norm_sqr() < TAIL * peak {
                break;
            }
            lo -= 10.0;
            probe(lo, lo + 10.0, &mut peak)?;
        }
    }
    Ok((lo, hi))
}

/// Overlap matrix `int psi_i psi_j dx` of a set of states of one spec.
pub fn gram_matrix(states: &[BoundState]) -> Result<Vec<Vec<f64>>> {
    let Some(first) = states.first() else { return Ok(vec![]) };
    let lo = states.iter().map(|s| s.window.0).fold(f64::INFINITY, f64::min);
    let hi = states.iter().map(|s| s.window.1).fold(f64::NEG_INFINITY, f64::max);
    let m = ((hi - lo) / NORM_STEP).ceil() as usize;
    let h = (hi - lo) / m as f64;
    let mut values = vec![Vec::with_capacity(m + 1); states.len()];
    for i in 0..=m {
        let x = lo + i as f64 * h;
        for (s, col) in states.iter().zip(values.iter_mut()) {
            let v = if first.spec.kind().is_half_line() && i == 0 { 0.0 } else { s.psi(x)? };
            col.push(v);
        }
    }
    let n = states.len();
    let mut g = vec![vec![0.0; n]; n];
    for a in 0..n {
        for b in a..n {
            let mut sum = 0.0;
            for i in 0..=m {
                let wgt = if i == 0 || i == m { 0.5 } else { 1.0 };
                sum += wgt * values[a][i] * values[b][i];
            }
            g[a][b] = sum * h;
            g[b][a] = g[a][b];
        }
    }
    Ok(g)
}

/// All bound states of a V1-V6 spec.
pub fn bound_states(spec: &PotentialSpec) -> Result<Vec<BoundState>> {
    let count = spectra::spectrum(spec)?.len() as u32;
    (0..count).map(|n| BoundState::new(spec, n)).collect()
}
