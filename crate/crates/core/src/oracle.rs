//! Finite-difference eigenvalue oracle.
//!
//! `-k psi'' + V psi = E w psi` is discretized on a uniform grid with
//! Dirichlet conditions at both ends, giving a symmetric tridiagonal pencil
//! `A - E W`. Eigenvalues come from bisection on the Sylvester inertia of the
//! pencil's LDL^T factorization, so eigenvalue counts are exact for the
//! discrete problem. `w = 1` except for the square-root map used by V8.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potentials::{Kind, PotentialSpec};

pub type SampleFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;
pub type WeightFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Default number of grid points.
pub const DEFAULT_POINTS: usize = 6000;
const BISECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    DirichletBoth,
}

/// How grid coordinates relate to the potential's shifted coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridMap {
    /// Grid coordinate is `y` itself.
    Identity,
    /// Grid coordinate is `s` with `y = s^2`.
    Square,
}

#[derive(Clone)]
pub struct GridProblem {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub boundary: Boundary,
    pub hbar: f64,
    pub mass: f64,
    pub map: GridMap,
    potential: SampleFn,
    weight: Option<WeightFn>,
}

impl std::fmt::Debug for GridProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GridProblem")
            .field("x_min", &self.x_min)
            .field("x_max", &self.x_max)
            .field("n_points", &self.n_points)
            .field("map", &self.map)
            .finish_non_exhaustive()
    }
}

/// Assembled pencil on the interior nodes.
struct Pencil {
    x: Vec<f64>,
    d: Vec<f64>,
    e2: Vec<f64>,
    off: f64,
    w: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenvector {
    pub energy: f64,
    /// All grid nodes including the Dirichlet ends.
    pub x: Vec<f64>,
    pub psi: Vec<f64>,
}

impl Eigenvector {
    /// Number of sign changes strictly inside the grid.
    pub fn nodes(&self) -> usize {
        let peak = self.psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut last = 0.0;
        let mut count = 0;
        for &v in &self.psi {
            if v.abs() < 1e-9 * peak {
                continue;
            }
            if last != 0.0 && v.signum() != last {
                count += 1;
            }
            last = v.signum();
        }
        count
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refined {
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub extrapolated: Vec<f64>,
}

impl GridProblem {
    pub fn new(x_min: f64, x_max: f64, n_points: usize, hbar: f64, mass: f64, potential: SampleFn) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::Invalid(format!("grid needs x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n_points < 3 {
            return Err(Error::Invalid(format!("grid needs at least 3 points, got {n_points}")));
        }
        if !(hbar > 0.0 && mass > 0.0) {
            return Err(Error::Invalid("hbar and mass must be positive".into()));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
            boundary: Boundary::DirichletBoth,
            hbar,
            mass,
            map: GridMap::Identity,
            potential,
            weight: None,
        })
    }

    /// Generalized problem with weight `w(x) > 0` on the right-hand side.
    pub fn with_weight(mut self, weight: WeightFn) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        if n_points < 3 {
            return Err(Error::Invalid(format!("grid needs at least 3 points, got {n_points}")));
        }
        let mut p = self.clone();
        p.n_points = n_points;
        Ok(p)
    }

    pub fn with_range(&self, x_min: f64, x_max: f64) -> Result<Self> {
        let mut p = Self::new(x_min, x_max, self.n_points, self.hbar, self.mass, self.potential.clone())?;
        p.weight = self.weight.clone();
        p.map = self.map;
        Ok(p)
    }

    /// Grid for a potential in its shifted frame with the default window.
    /// Half-line kinds put the left Dirichlet node on the wall `y = 0`; V8 and
    /// V8p use `y = s^2` to resolve the inverse-square wall singularity.
    pub fn for_spec(spec: &PotentialSpec, n_points: usize) -> Result<Self> {
        let (lo, hi) = default_window(spec.kind());
        Self::for_spec_window(spec, lo, hi, n_points)
    }

    /// As [`Self::for_spec`] with an explicit window in the shifted frame.
    pub fn for_spec_window(spec: &PotentialSpec, lo: f64, hi: f64, n_points: usize) -> Result<Self> {
        let shifted = spec.reduce_to_shifted().0;
        let kappa = spec.kappa();
        match spec.kind() {
            Kind::V8 | Kind::V8p => {
                let f: SampleFn = Arc::new(move |s: f64| {
                    let z = s * s;
                    Ok(4.0 * z * shifted.evaluate(z)? + 0.75 * kappa / z)
                });
                let mut p = Self::new(lo.max(0.0).sqrt(), hi.sqrt(), n_points, spec.hbar(), spec.mass(), f)?
                    .with_weight(Arc::new(|s: f64| 4.0 * s * s));
                p.map = GridMap::Square;
                Ok(p)
            }
            _ => {
                let f: SampleFn = Arc::new(move |y: f64| shifted.evaluate(y));
                Self::new(lo, hi, n_points, spec.hbar(), spec.mass(), f)
            }
        }
    }

    fn kappa(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    fn assemble(&self) -> Result<Pencil> {
        let h = self.spacing();
        let k = self.kappa();
        let m = self.n_points - 2;
        let mut x = Vec::with_capacity(m);
        let mut d = Vec::with_capacity(m);
        let mut w = Vec::with_capacity(m);
        for i in 1..=m {
            let xi = self.x_min + i as f64 * h;
            let v = (self.potential)(xi).map_err(|err| match err {
                Error::Numeric(_) | Error::Range(_) | Error::Pole { .. } | Error::Domain(_) => {
                    Error::Numeric(format!("potential not finite at grid node x = {xi}: {err}"))
                }
                other => other,
            })?;
            if !v.is_finite() {
                return Err(Error::Numeric(format!("potential not finite at grid node x = {xi}")));
            }
            x.push(xi);
            d.push(2.0 * k / (h * h) + v);
            w.push(self.weight.as_ref().map_or(1.0, |f| f(xi)));
        }
        if w.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::Numeric("weight must be positive on interior nodes".into()));
        }
        let off = -k / (h * h);
        Ok(Pencil { x, d, e2: vec![off * off; m.saturating_sub(1)], off, w })
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> Result<usize> {
        Ok(self.assemble()?.count(lambda))
    }

    /// The `k` smallest eigenvalues, ascending.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        if k == 0 {
            return Err(Error::Invalid("requested zero eigenvalues".into()));
        }
        let p = self.assemble()?;
        if k > p.d.len() {
            return Err(Error::Invalid(format!("grid has only {} interior nodes", p.d.len())));
        }
        let lower = p.lower_bound();
        (0..k).map(|i| Ok(p.bisect(i, lower))).collect()
    }

    /// Eigenvalues strictly below `limit` (at most `max` of them).
    pub fn eigenvalues_below(&self, limit: f64, max: usize) -> Result<Vec<f64>> {
        let p = self.assemble()?;
        let n = p.count(limit).min(max);
        let lower = p.lower_bound();
        Ok((0..n).map(|i| p.bisect(i, lower)).collect())
    }

    /// Column of the discrete resolvent `(H - e)^{-1}` for a source at the
    /// interior node nearest `source`, as `(nodes, values)`. Identity grids
    /// only.
    pub fn resolvent(&self, e: f64, source: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        if self.map != GridMap::Identity || self.weight.is_some() {
            return Err(Error::Contract("resolvent needs an unweighted identity grid".into()));
        }
        let p = self.assemble()?;
        let h = self.spacing();
        let j = (((source - self.x_min) / h).round() as usize).clamp(1, p.d.len()) - 1;
        let diag: Vec<f64> = p.d.iter().map(|d| d - e).collect();
        let mut rhs = vec![0.0; diag.len()];
        rhs[j] = 1.0 / h;
        Ok((p.x, solve_tridiagonal(&diag, p.off, &rhs)?))
    }

    /// Eigenvector of the `index`-th eigenvalue by inverse iteration,
    /// normalized to `sum w psi^2 h = 1` and positive at its first antinode.
    pub fn eigenvector(&self, index: usize) -> Result<Eigenvector> {
        let p = self.assemble()?;
        if index >= p.d.len() {
            return Err(Error::Invalid(format!("index {index} beyond grid size")));
        }
        let energy = p.bisect(index, p.lower_bound());
        let m = p.d.len();
        let shift = energy + 1e-10 * energy.abs().max(1.0);
        let diag: Vec<f64> = (0..m).map(|i| p.d[i] - shift * p.w[i]).collect();
        let mut v = vec![1.0; m];
        for (i, vi) in v.iter_mut().enumerate() {
            // generic start vector, not orthogonal to any low state
            *vi = 1.0 + 0.1 * ((i as f64) * 0.37).sin();
        }
        let h = self.spacing();
        let mut converged = false;
        for _ in 0..50 {
            let rhs: Vec<f64> = v.iter().zip(&p.w).map(|(a, b)| a * b).collect();
            let mut next = solve_tridiagonal(&diag, p.off, &rhs)?;
            let norm = next.iter().zip(&p.w).map(|(a, b)| a * a * b).sum::<f64>().sqrt() * h.sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                return Err(Error::Numeric("inverse iteration broke down".into()));
            }
            next.iter_mut().for_each(|a| *a /= norm);
            let dot: f64 = next.iter().zip(&v).zip(&p.w).map(|((a, b), c)| a * b * c).sum::<f64>() * h;
            let vnorm = v.iter().zip(&p.w).map(|(a, b)| a * a * b).sum::<f64>() * h;
            v = next;
            if (dot.abs() / vnorm.sqrt() - 1.0).abs() < 1e-14 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numeric(format!("inverse iteration for index {index} did not converge in 50 iterations")));
        }
        let peak = v.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        let first = (0..m)
            .find(|&i| v[i].abs() > 1e-3 * peak && (i + 1 == m || v[i].abs() >= v[i + 1].abs()))
            .unwrap_or(0);
        if v[first] < 0.0 {
            v.iter_mut().for_each(|a| *a = -*a);
        }
        let mut x = Vec::with_capacity(m + 2);
        x.push(self.x_min);
        x.extend_from_slice(&p.x);
        x.push(self.x_max);
        let mut psi = Vec::with_capacity(m + 2);
        psi.push(0.0);
        psi.extend(v);
        psi.push(0.0);
        Ok(Eigenvector { energy, x, psi })
    }

    /// Solves on this grid and on one with half the spacing and combines the
    /// two assuming an `O(h^2)` leading error.
    pub fn refine(&self, k: usize) -> Result<Refined> {
        let coarse = self.lowest_eigenvalues(k)?;
        let fine = self.with_points(2 * self.n_points - 1)?.lowest_eigenvalues(k)?;
        let extrapolated = coarse.iter().zip(&fine).map(|(c, f)| f + (f - c) / 3.0).collect();
        Ok(Refined { coarse, fine, extrapolated })
    }
}

/// Default shifted-frame window per kind.
pub fn default_window(kind: Kind) -> (f64, f64) {
    match kind {
        k if k.is_half_line() => (0.0, 30.0),
        Kind::V7 | Kind::V7p => (-40.0, 25.0),
        _ => (-25.0, 25.0),
    }
}

impl Pencil {
    /// Negative pivots of `LDL^T = A - lambda W`.
    fn count(&self, lambda: f64) -> usize {
        let mut c = 0;
        let mut q = self.d[0] - lambda * self.w[0];
        if q < 0.0 {
            c += 1;
        }
        for i in 1..self.d.len() {
            if q == 0.0 {
                q = f64::MIN_POSITIVE;
            }
            q = self.d[i] - lambda * self.w[i] - self.e2[i - 1] / q;
            if q < 0.0 {
                c += 1;
            }
        }
        c
    }

    /// Gershgorin bound for `W^{-1/2} A W^{-1/2}`.
    fn lower_bound(&self) -> f64 {
        let m = self.d.len();
        let a = self.off.abs();
        let mut lo = f64::INFINITY;
        for i in 0..m {
            let mut r = 0.0;
            if i > 0 {
                r += a / (self.w[i] * self.w[i - 1]).sqrt();
            }
            if i + 1 < m {
                r += a / (self.w[i] * self.w[i + 1]).sqrt();
            }
            lo = lo.min(self.d[i] / self.w[i] - r);
        }
        lo
    }

    fn bisect(&self, index: usize, lower: f64) -> f64 {
        let mut lo = lower - 1.0;
        let mut step = 1.0f64.max(lower.abs() * 1e-3);
        let mut hi = lo + step;
        while self.count(hi) <= index {
            lo = hi;
            step *= 2.0;
            hi += step;
        }
        while hi - lo > BISECTION_TOL * hi.abs().max(1.0) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Solves a symmetric tridiagonal system with constant off-diagonal using
/// Gaussian elimination with partial pivoting.
fn solve_tridiagonal(diag: &[f64], off: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    // rows stored as (a0, a1, a2) for columns (i, i+1, i+2) after pivoting
    let mut u0 = vec![0.0; n];
    let mut u1 = vec![0.0; n];
    let mut u2 = vec![0.0; n];
    let mut b = rhs.to_vec();
    let mut cur = (diag[0], if n > 1 { off } else { 0.0 }, 0.0);
    for i in 0..n {
        if i + 1 < n {
            let below = (off, diag[i + 1], if i + 2 < n { off } else { 0.0 });
            if below.0.abs() > cur.0.abs() {
                // swap rows i and i+1
                let top = below;
                let bot = cur;
                b.swap(i, i + 1);
                let f = bot.0 / top.0;
                u0[i] = top.0;
                u1[i] = top.1;
                u2[i] = top.2;
                b[i + 1] -= f * b[i];
                cur = (bot.1 - f * top.1, bot.2 - f * top.2, 0.0);
            } else {
                let mut piv = cur.0;
                if piv == 0.0 {
                    piv = f64::EPSILON * off.abs().max(1.0);
                }
                let f = below.0 / piv;
                u0[i] = piv;
                u1[i] = cur.1;
                u2[i] = cur.2;
                b[i + 1] -= f * b[i];
                cur = (below.1 - f * cur.1, below.2 - f * cur.2, 0.0);
            }
        } else {
            u0[i] = if cur.0 == 0.0 { f64::EPSILON * off.abs().max(1.0) } else { cur.0 };
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= u1[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= u2[i] * x[i + 2];
        }
        x[i] = s / u0[i];
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("tridiagonal solve produced non-finite values".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn problem(lo: f64, hi: f64, n: usize, v: impl Fn(f64) -> f64 + Send + Sync + 'static) -> GridProblem {
        GridProblem::new(lo, hi, n, 1.0, 0.5, Arc::new(move |x| Ok(v(x)))).unwrap()
    }

    #[test]
    fn particle_in_box() {
        let p = problem(0.0, PI, 2001, |_| 0.0);
        let e = p.lowest_eigenvalues(3).unwrap();
        for (i, v) in e.iter().enumerate() {
            let exact = ((i + 1) * (i + 1)) as f64;
            assert!((v - exact).abs() < 1e-5 * exact.max(1.0) * 10.0, "{v} vs {exact}");
        }
        let r = p.refine(1).unwrap();
        assert!((r.extrapolated[0] - 1.0).abs() * 10.0 < (r.coarse[0] - 1.0).abs());
        let ev = p.eigenvector(0).unwrap();
        assert_eq!(ev.nodes(), 0);
        assert!(ev.psi[1000] > 0.0);
    }

    #[test]
    fn sech_well() {
        let p = problem(-20.0, 20.0, 4000, |x: f64| -6.0 / x.cosh().powi(2));
        let e = p.lowest_eigenvalues(2).unwrap();
        assert!((e[0] + 4.0).abs() < 1e-4 && (e[1] + 1.0).abs() < 1e-4);
        assert_eq!(p.count_below(0.0).unwrap(), 2);
        let r = p.with_points(6000).unwrap().refine(1).unwrap();
        assert!((r.extrapolated[0] + 4.0).abs() < 1e-7);
        assert_eq!(p.eigenvector(1).unwrap().nodes(), 1);
    }

    #[test]
    fn oscillator() {
        let p = problem(-12.0, 12.0, 6000, |x| x * x);
        let e = p.refine(3).unwrap().extrapolated;
        for (i, v) in e.iter().enumerate() {
            assert!((v - (2 * i + 1) as f64).abs() < 1e-5);
        }
    }

    #[test]
    fn eigenvectors_orthogonal() {
        let p = problem(-10.0, 10.0, 1500, |x| x * x);
        let h = p.spacing();
        let v: Vec<_> = (0..3).map(|i| p.eigenvector(i).unwrap()).collect();
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = v[i].psi.iter().zip(&v[j].psi).map(|(a, b)| a * b).sum::<f64>() * h;
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((dot - target).abs() < 1e-10, "{i},{j}: {dot}");
            }
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridProblem::new(1.0, 0.0, 10, 1.0, 0.5, Arc::new(|_| Ok(0.0))).is_err());
        assert!(GridProblem::new(0.0, 1.0, 2, 1.0, 0.5, Arc::new(|_| Ok(0.0))).is_err());
        let p = problem(-1.0, 1.0, 11, |x| if x.abs() < 1e-9 { f64::NAN } else { 0.0 });
        assert!(matches!(p.lowest_eigenvalues(1), Err(Error::Numeric(_))));
    }
}
