//! Solutions of the hyperbolic barrier equation
//! `-phi'' + (w tanh t / cosh t + v2 tanh^2 t) phi = (v2 - k^2) phi`
//! for complex couplings, used by the V6 and V8 solvers.
//!
//! With `v = (1 - i sinh t)/2` the equation becomes hypergeometric. The
//! solution decaying at `t -> +inf` is
//! `v^r1 (1-v)^r2 (-v)^(-a) F(a, a-c+1; a-b+1; 1/v)`; as `t` runs over the
//! real line, `1/v` runs over the circle `|z - 1| = 1`, which keeps the
//! continuation path a fixed distance from the singular point `z = 1`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::specfun::{continue_segment, series_with_deriv};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Scarf {
    pub v2: C64,
    pub w: C64,
    pub k: C64,
}

/// Below this `sinh t` the circle path is needed; above it the series in
/// `1/v` converges (`|1/v| <= 1/2`).
const SERIES_SINH: f64 = 4.0;
const ARC_STEP: f64 = 0.15;

impl Scarf {
    pub fn new(v2: C64, w: C64, k: C64) -> Self {
        Self { v2, w, k }
    }

    fn exponents(&self) -> (C64, C64, C64, C64, C64) {
        let l1 = (0.25 + self.v2 + C64::i() * self.w).sqrt();
        let l2 = (0.25 + self.v2 - C64::i() * self.w).sqrt();
        let r1 = 0.25 - l1 / 2.0;
        let r2 = 0.25 - l2 / 2.0;
        let c = 1.0 - l1;
        let a = r1 + r2 + self.k;
        let b = r1 + r2 - self.k;
        (r1, r2, a, b, c)
    }

    /// Value and `t`-derivative of the solution decaying at `+inf`,
    /// normalized so that it is real for real parameters and behaves as a
    /// positive multiple of `e^{-k t}` far out.
    pub fn decaying_plus(&self, t: f64) -> Result<(C64, C64)> {
        let (r1, r2, a, b, c) = self.exponents();
        let (pa, pb, pc) = (a, a - c + 1.0, a - b + 1.0);
        let s = t.sinh();
        let v = C64::new(0.5, -0.5 * s);
        let z = 1.0 / v;
        let (f, df) = if s >= SERIES_SINH {
            series_with_deriv(pa, pb, pc, z)?
        } else {
            // walk the circle z = 1 + e^{i theta}, theta = 2 atan(sinh t)
            let theta0 = 2.0 * SERIES_SINH.atan();
            let theta1 = 2.0 * s.atan();
            let mut zc = C64::new(1.0, 0.0) + C64::from_polar(1.0, theta0);
            let (mut f, mut df) = series_with_deriv(pa, pb, pc, zc)?;
            let n = ((theta0 - theta1) / ARC_STEP).ceil().max(1.0) as usize;
            for i in 1..=n {
                let th = theta0 + (theta1 - theta0) * i as f64 / n as f64;
                let zn = if i == n { z } else { C64::new(1.0, 0.0) + C64::from_polar(1.0, th) };
                let (nf, ndf) = continue_segment(pa, pb, pc, zc, f, df, zn)?;
                f = nf;
                df = ndf;
                zc = zn;
            }
            (f, df)
        };
        // arg(-v) = pi - atan(sinh t), continuous in t
        let ln_mv = C64::new(v.norm().ln(), PI - s.atan());
        let gauge = (r1 * v.ln() + r2 * (1.0 - v).ln() - a * ln_mv + C64::i() * PI * a / 2.0).exp();
        let phi = gauge * f;
        let dlog = r1 / v - r2 / (1.0 - v) - a / v;
        let dphi_dv = phi * dlog - gauge * df / (v * v);
        let dv_dt = C64::new(0.0, -0.5 * t.cosh());
        Ok((phi, dphi_dv * dv_dt))
    }

    /// Solution decaying at `-inf`: the `+inf` solution of the mirrored
    /// problem (`w -> -w`) evaluated at `-t`.
    pub fn decaying_minus(&self, t: f64) -> Result<(C64, C64)> {
        let mirrored = Scarf { w: -self.w, ..*self };
        let (phi, dphi) = mirrored.decaying_plus(-t)?;
        Ok((phi, -dphi))
    }

    /// `W[u+, u-] = u+ u-' - u+' u-`, evaluated at `t = 0`.
    pub fn wronskian(&self) -> Result<C64> {
        let (p, dp) = self.decaying_plus(0.0)?;
        let (m, dm) = self.decaying_minus(0.0)?;
        Ok(p * dm - dp * m)
    }

    /// Full-line resolvent kernel of the dimensionless operator,
    /// `(H - E)^{-1}(t1, t2) = u-(t<) u+(t>) / W[u+, u-]`.
    pub fn resolvent(&self, t1: f64, t2: f64) -> Result<C64> {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let w = self.wronskian()?;
        Ok(self.decaying_minus(lo)?.0 * self.decaying_plus(hi)?.0 / w)
    }

    /// Inverse of the resolvent with a Dirichlet wall at `t = 0`, for
    /// `t1, t2 >= 0`. Built from the solution vanishing at the wall, so it
    /// stays finite where the full-line Wronskian vanishes.
    pub fn dirichlet_inverse(&self, t1: f64, t2: f64) -> Result<C64> {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let p0 = self.decaying_plus(0.0)?.0;
        let m0 = self.decaying_minus(0.0)?.0;
        let wall = p0 * self.decaying_minus(lo)?.0 - m0 * self.decaying_plus(lo)?.0;
        Ok(p0 * self.wronskian()? / (wall * self.decaying_plus(hi)?.0))
    }
}
