//! q-deformed hyperbolic functions.
//!
//! `sinh_q x = (e^x - q e^-x)/2`, `cosh_q x = (e^x + q e^-x)/2`, with the
//! ratios `tanh_q` and `coth_q`. For `q > 0` every function is the ordinary
//! one shifted by `ln sqrt(q)` and (for sinh/cosh) scaled by `sqrt(q)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this magnitude `sinh_q` is treated as zero and `coth_q` reports a pole.
pub const POLE_EPS: f64 = 1e-300;

/// Deformation parameter `q > 0` together with its cached `ln sqrt(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Deformation {
    q: f64,
    ln_sqrt_q: f64,
}

impl Deformation {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::Invalid(format!("deformation q must be positive and finite, got {q}")));
        }
        Ok(Self { q, ln_sqrt_q: 0.5 * q.ln() })
    }

    pub const fn undeformed() -> Self {
        Self { q: 1.0, ln_sqrt_q: 0.0 }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn sqrt_q(&self) -> f64 {
        self.q.sqrt()
    }

    /// `ln sqrt(q)`, the location of the zero of `sinh_q`.
    pub fn shift(&self) -> f64 {
        self.ln_sqrt_q
    }

    pub fn is_undeformed(&self) -> bool {
        self.q == 1.0
    }

    pub fn to_shifted(&self, x: f64) -> Coordinate {
        Coordinate::raw(x).into_shifted(self)
    }
}

impl Default for Deformation {
    fn default() -> Self {
        Self::undeformed()
    }
}

impl TryFrom<f64> for Deformation {
    type Error = Error;
    fn try_from(q: f64) -> Result<Self> {
        Self::new(q)
    }
}

impl From<Deformation> for f64 {
    fn from(d: Deformation) -> f64 {
        d.q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    Raw,
    Shifted,
}

/// A position tagged with the frame it is expressed in (`x` or `y = x - ln sqrt q`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coordinate {
    pub value: f64,
    pub frame: Frame,
}

impl Coordinate {
    pub fn raw(x: f64) -> Self {
        Self { value: x, frame: Frame::Raw }
    }

    pub fn shifted(y: f64) -> Self {
        Self { value: y, frame: Frame::Shifted }
    }

    pub fn into_shifted(self, d: &Deformation) -> Self {
        match self.frame {
            Frame::Raw => Self::shifted(self.value - d.shift()),
            Frame::Shifted => self,
        }
    }

    pub fn into_raw(self, d: &Deformation) -> Self {
        match self.frame {
            Frame::Shifted => Self::raw(self.value + d.shift()),
            Frame::Raw => self,
        }
    }
}

fn exp_checked(x: f64) -> Result<f64> {
    let e = x.exp();
    if e.is_finite() {
        Ok(e)
    } else {
        Err(Error::Range(format!("exp({x}) overflows")))
    }
}

/// `(e^x - q e^-x)/2`, written as `-(e^x/2) expm1(ln q - 2x)` so the zero at
/// `x = ln sqrt q` keeps full relative accuracy.
pub fn sinh_q(x: f64, d: &Deformation) -> Result<f64> {
    if d.is_undeformed() {
        return finite(x.sinh(), x);
    }
    let t = 2.0 * (d.shift() - x);
    if t > 0.0 {
        // e^-x dominates; mirror the expression so exp(x) cannot underflow the result.
        let e = exp_checked(-x)?;
        finite(0.5 * d.q() * e * (-t).exp_m1(), x)
    } else {
        let e = exp_checked(x)?;
        finite(-0.5 * e * t.exp_m1(), x)
    }
}

pub fn cosh_q(x: f64, d: &Deformation) -> Result<f64> {
    if d.is_undeformed() {
        return finite(x.cosh(), x);
    }
    let ep = exp_checked(x)?;
    let em = exp_checked(-x)?;
    finite(0.5 * (ep + d.q() * em), x)
}

pub fn tanh_q(x: f64, d: &Deformation) -> Result<f64> {
    if d.is_undeformed() {
        return Ok(x.tanh());
    }
    // tanh_q x == tanh(x - ln sqrt q) exactly; large |x| would overflow the ratio.
    let y = x - d.shift();
    if y.abs() > 20.0 {
        return Ok(y.tanh());
    }
    Ok(sinh_q(x, d)? / cosh_q(x, d)?)
}

pub fn coth_q(x: f64, d: &Deformation) -> Result<f64> {
    let s = sinh_q(x, d)?;
    if s.abs() < POLE_EPS {
        return Err(Error::Pole { what: "coth_q at x = ln sqrt(q)".into(), location: x });
    }
    if d.is_undeformed() {
        return Ok(1.0 / x.tanh());
    }
    let y = x - d.shift();
    if y.abs() > 20.0 {
        return Ok(1.0 / y.tanh());
    }
    Ok(cosh_q(x, d)? / s)
}

fn finite(v: f64, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range(format!("deformed hyperbolic function overflows at x = {x}")))
    }
}
