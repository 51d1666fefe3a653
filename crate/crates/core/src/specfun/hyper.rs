//! Gauss hypergeometric function `2F1(a, b; c; z)` for complex parameters.
//!
//! Strategy, in order:
//! - terminating series when `a` or `b` is a non-positive integer (any `z`);
//! - Euler's transformation when `c - a` or `c - b` is, which turns the
//!   series into a polynomial times `(1 - z)^(c - a - b)`;
//! - the Maclaurin series for `|z| <= 1/2`;
//! - Pfaff's transformation when it maps `z` into `|w| <= 1/2`;
//! - the `z -> 1 - z` connection when `|1 - z| <= 1/2` and `c - a - b` is
//!   safely non-integer;
//! - otherwise analytic continuation by Taylor stepping of the
//!   hypergeometric ODE along the ray from the origin.
//!
//! The branch cut is `[1, inf)`; points on it are rejected.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::gamma::rgamma;
use super::nonpositive_integer;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 20_000;
const SERIES_RADIUS: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricArgs {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub z: C64,
}

impl HypergeometricArgs {
    pub fn new(a: C64, b: C64, c: C64, z: C64) -> Self {
        Self { a, b, c, z }
    }

    pub fn real(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), z.into())
    }

    pub fn eval(&self) -> Result<C64> {
        hyp2f1(self.a, self.b, self.c, self.z)
    }
}

fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Plain Maclaurin sum; `limit` caps the number of terms (a terminating
/// series passes its degree + 1).
fn maclaurin(a: C64, b: C64, c: C64, z: C64, limit: usize) -> Result<C64> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for n in 0..limit {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        if !is_finite(sum) {
            return Err(Error::Numeric(format!("2F1 series overflow at z = {z}")));
        }
    }
    if limit < MAX_TERMS {
        return Ok(sum);
    }
    Err(Error::Numeric(format!("2F1 series did not converge at z = {z}")))
}

fn near_integer(z: C64) -> bool {
    z.im.abs() < 1e-9 && (z.re - z.re.round()).abs() < 1e-6
}

/// `2F1(a, b; c; z)`.
pub fn hyp2f1(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    if z == C64::new(0.0, 0.0) {
        return Ok(C64::new(1.0, 0.0));
    }
    if !is_finite(z) {
        return Err(Error::Domain(format!("2F1 argument {z} is not finite")));
    }
    let term_a = nonpositive_integer(a);
    let term_b = nonpositive_integer(b);
    let degree = match (term_a, term_b) {
        (Some(m), Some(n)) => Some((-m).min(-n)),
        (Some(m), None) | (None, Some(m)) => Some(-m),
        _ => None,
    };
    if let Some(cn) = nonpositive_integer(c) {
        if !matches!(degree, Some(d) if d < -cn) {
            return Err(Error::Domain(format!("2F1 with c = {cn} a non-positive integer")));
        }
    }
    if let Some(d) = degree {
        return maclaurin(a, b, c, z, d as usize);
    }
    // Euler: 2F1(a,b;c;z) = (1-z)^(c-a-b) 2F1(c-a, c-b; c; z)
    let euler_deg = [nonpositive_integer(c - a), nonpositive_integer(c - b)]
        .into_iter()
        .flatten()
        .map(|m| -m)
        .min();
    if let Some(d) = euler_deg {
        if z == C64::new(1.0, 0.0) {
            if (c - a - b).re > 0.0 {
                return Ok(C64::new(0.0, 0.0) * maclaurin(c - a, c - b, c, z, d as usize)?);
            }
            return Err(Error::Domain("2F1 at z = 1 with divergent Euler factor".into()));
        }
        check_cut(z)?;
        let p = maclaurin(c - a, c - b, c, z, d as usize)?;
        return Ok((1.0 - z).powc(c - a - b) * p);
    }
    if z == C64::new(1.0, 0.0) {
        // Gauss summation
        let s = c - a - b;
        if s.re <= 0.0 {
            return Err(Error::Domain("2F1 at z = 1 requires Re(c - a - b) > 0".into()));
        }
        return gamma_ratio(c, s, c - a, c - b);
    }
    check_cut(z)?;
    if z.norm() <= SERIES_RADIUS {
        return maclaurin(a, b, c, z, MAX_TERMS);
    }
    let w = z / (z - 1.0);
    if w.norm() <= SERIES_RADIUS {
        return Ok((1.0 - z).powc(-a) * maclaurin(a, c - b, c, w, MAX_TERMS)?);
    }
    let s = c - a - b;
    if (1.0 - z).norm() <= SERIES_RADIUS && !near_integer(s) {
        return one_minus_z(a, b, c, z);
    }
    taylor_continue(a, b, c, z).map(|(f, _)| f)
}

fn check_cut(z: C64) -> Result<()> {
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Domain(format!("2F1 argument {z} lies on the branch cut [1, inf)")));
    }
    Ok(())
}

// Gamma(p) Gamma(q) / (Gamma(r) Gamma(s))
fn gamma_ratio(p: C64, q: C64, r: C64, s: C64) -> Result<C64> {
    let num = super::gamma::gamma(p)? * super::gamma::gamma(q)?;
    Ok(num * rgamma(r) * rgamma(s))
}

fn one_minus_z(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    let s = c - a - b;
    let w = 1.0 - z;
    let t1 = gamma_ratio(c, s, c - a, c - b)? * maclaurin(a, b, 1.0 - s, w, MAX_TERMS)?;
    let t2 = gamma_ratio(c, -s, a, b)? * w.powc(s) * maclaurin(c - a, c - b, s + 1.0, w, MAX_TERMS)?;
    Ok(t1 + t2)
}

/// Value and first derivative of 2F1 by Taylor stepping of
/// `z(1-z) F'' + [c - (a+b+1) z] F' - ab F = 0` along the ray from 0.
fn taylor_continue(a: C64, b: C64, c: C64, z: C64) -> Result<(C64, C64)> {
    let z0 = z / z.norm() * 0.4;
    let (f, df) = series_with_deriv(a, b, c, z0)?;
    continue_segment(a, b, c, z0, f, df, z)
}

/// Maclaurin value and derivative, for `|z| <= 1/2`.
pub(crate) fn series_with_deriv(a: C64, b: C64, c: C64, z: C64) -> Result<(C64, C64)> {
    let f = maclaurin(a, b, c, z, MAX_TERMS)?;
    let df = a * b / c * maclaurin(a + 1.0, b + 1.0, c + 1.0, z, MAX_TERMS)?;
    Ok((f, df))
}

/// Continues a solution of the hypergeometric equation, given by its value
/// `f` and derivative `df` at `z0`, along the straight segment to `z1`.
/// The segment must avoid the singular points 0 and 1.
pub(crate) fn continue_segment(a: C64, b: C64, c: C64, z0: C64, f: C64, df: C64, z1: C64) -> Result<(C64, C64)> {
    let (mut z0, mut f, mut df) = (z0, f, df);
    let mut steps = 0;
    while (z1 - z0).norm() > 1e-15 * z1.norm().max(1e-300) {
        let rho = z0.norm().min((1.0 - z0).norm());
        if rho < 1e-12 {
            return Err(Error::Domain(format!("2F1 continuation path touches a singular point near {z0}")));
        }
        let remaining = z1 - z0;
        let h = if remaining.norm() <= 0.5 * rho { remaining } else { remaining / remaining.norm() * (0.5 * rho) };
        let (nf, ndf) = taylor_step(a, b, c, z0, f, df, h)?;
        f = nf;
        df = ndf;
        z0 += h;
        steps += 1;
        if steps > 10_000 {
            return Err(Error::Numeric(format!("2F1 continuation to {z1} did not terminate")));
        }
    }
    Ok((f, df))
}

fn taylor_step(a: C64, b: C64, c: C64, z0: C64, f: C64, df: C64, h: C64) -> Result<(C64, C64)> {
    let p0 = z0 * (1.0 - z0);
    let p1 = 1.0 - 2.0 * z0;
    let q0 = c - (a + b + 1.0) * z0;
    // coefficients of F(z0 + t) = sum c_n t^n, evaluated at t = h
    let mut cm1 = f; // c_n
    let mut c0 = df; // c_{n+1}
    let mut val = f + df * h;
    let mut der = df;
    let mut hp = h; // h^(n+1)
    let mut small = 0;
    for n in 0..2000usize {
        let nf = n as f64;
        let next = ((a + nf) * (b + nf) * cm1 - (nf + 1.0) * (p1 * nf + q0) * c0) / (p0 * (nf + 1.0) * (nf + 2.0));
        // next = c_{n+2}
        der += (nf + 2.0) * next * hp;
        hp *= h;
        let term = next * hp;
        val += term;
        cm1 = c0;
        c0 = next;
        if term.norm() <= 1e-17 * val.norm() && (next * hp).norm() * (nf + 2.0) <= 1e-16 * der.norm().max(val.norm()) {
            small += 1;
            if small >= 3 {
                return Ok((val, der));
            }
        } else {
            small = 0;
        }
        if !is_finite(val) {
            break;
        }
    }
    Err(Error::Numeric("2F1 Taylor step did not converge".into()))
}

/// `d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1, b+1; c+1; z)`.
pub fn hyp2f1_deriv(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    if nonpositive_integer(a).is_some_and(|m| m == 0) || nonpositive_integer(b).is_some_and(|m| m == 0) {
        return Ok(C64::new(0.0, 0.0));
    }
    Ok(a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z)?)
}

/// `2F1(a,b;c;z) / Gamma(c)`, finite for every `c`.
pub fn hyp2f1_regularized(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    match nonpositive_integer(c) {
        Some(cn) => {
            let k = (-cn) as usize; // c = -k
            // lim F/Gamma(c) = (a)_{k+1} (b)_{k+1} / (k+1)! z^{k+1} F(a+k+1, b+k+1; k+2; z)
            let mut coef = C64::new(1.0, 0.0);
            for j in 0..=k {
                let jf = j as f64;
                coef *= (a + jf) * (b + jf) / (jf + 1.0);
            }
            let kf = k as f64 + 1.0;
            if coef == C64::new(0.0, 0.0) {
                return Ok(coef);
            }
            Ok(coef * z.powf(kf) * hyp2f1(a + kf, b + kf, C64::new(kf + 1.0, 0.0), z)?)
        }
        None => Ok(hyp2f1(a, b, c, z)? * rgamma(c)),
    }
}
