//! Potential definitions, validation and pointwise evaluation.
//!
//! Every kind can be evaluated in the raw frame `x` (through the deformed
//! functions of [`crate::qhyp`]) and in the shifted frame `y = x - ln sqrt(q)`,
//! where the deformation only rescales coupling strengths.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qhyp::{self, Deformation};

/// Default minimum distance from the wall for half-line probes.
pub const DEFAULT_GUARD: f64 = 1e-8;

/// The coupling that makes V7 and V8 exactly solvable, in units of hbar^2/2m.
pub const SOLVABLE_C: f64 = -0.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    V1,
    V2,
    V3,
    V4,
    V5,
    V6,
    V7,
    V7p,
    V8,
    V8p,
}

impl Kind {
    pub const ALL: [Kind; 10] = [
        Kind::V1,
        Kind::V2,
        Kind::V3,
        Kind::V4,
        Kind::V5,
        Kind::V6,
        Kind::V7,
        Kind::V7p,
        Kind::V8,
        Kind::V8p,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::V1 => "V1",
            Kind::V2 => "V2",
            Kind::V3 => "V3",
            Kind::V4 => "V4",
            Kind::V5 => "V5",
            Kind::V6 => "V6",
            Kind::V7 => "V7",
            Kind::V7p => "V7p",
            Kind::V8 => "V8",
            Kind::V8p => "V8p",
        }
    }

    /// Half-line kinds live on `x > ln sqrt(q)`.
    pub fn is_half_line(self) -> bool {
        matches!(self, Kind::V2 | Kind::V3 | Kind::V5 | Kind::V8 | Kind::V8p)
    }

    /// Names of the parameters this kind takes, in canonical order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Kind::V1 => &["nu"],
            Kind::V2 => &["eta", "nu"],
            Kind::V3 => &["alpha", "lambda"],
            Kind::V4 => &["beta", "lambda"],
            Kind::V5 | Kind::V6 => &["V0", "V1", "V2"],
            Kind::V7 | Kind::V7p => &["A", "B", "C"],
            Kind::V8 | Kind::V8p => &["f", "h1", "C"],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k = match s.trim() {
            "V1" | "v1" => Kind::V1,
            "V2" | "v2" => Kind::V2,
            "V3" | "v3" => Kind::V3,
            "V4" | "v4" => Kind::V4,
            "V5" | "v5" => Kind::V5,
            "V6" | "v6" => Kind::V6,
            "V7" | "v7" => Kind::V7,
            "V7p" | "v7p" | "V7'" => Kind::V7p,
            "V8" | "v8" => Kind::V8,
            "V8p" | "v8p" | "V8'" => Kind::V8p,
            other => return Err(Error::Invalid(format!("unknown potential kind {other:?}"))),
        };
        Ok(k)
    }
}

/// Per-kind raw parameters. Couplings named `V0`, `V1`, `V2`, `A`, `B`, `C`,
/// `f`, `h1` are in units of hbar^2/2m; `alpha` and `beta` are energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Params {
    V1 { nu: f64 },
    V2 { eta: f64, nu: f64 },
    V3 { alpha: f64, lambda: f64 },
    V4 { beta: f64, lambda: f64 },
    V5 { v0: f64, v1: f64, v2: f64 },
    V6 { v0: f64, v1: f64, v2: f64 },
    /// Shared by `V7` and `V7p`.
    V7 { a: f64, b: f64, c: f64 },
    /// Shared by `V8` and `V8p`.
    V8 { f: f64, h1: f64, c: f64 },
}

impl Params {
    fn values(&self) -> Vec<f64> {
        match *self {
            Params::V1 { nu } => vec![nu],
            Params::V2 { eta, nu } => vec![eta, nu],
            Params::V3 { alpha, lambda } => vec![alpha, lambda],
            Params::V4 { beta, lambda } => vec![beta, lambda],
            Params::V5 { v0, v1, v2 } | Params::V6 { v0, v1, v2 } => vec![v0, v1, v2],
            Params::V7 { a, b, c } => vec![a, b, c],
            Params::V8 { f, h1, c } => vec![f, h1, c],
        }
    }

    fn fits(&self, kind: Kind) -> bool {
        matches!(
            (self, kind),
            (Params::V1 { .. }, Kind::V1)
                | (Params::V2 { .. }, Kind::V2)
                | (Params::V3 { .. }, Kind::V3)
                | (Params::V4 { .. }, Kind::V4)
                | (Params::V5 { .. }, Kind::V5)
                | (Params::V6 { .. }, Kind::V6)
                | (Params::V7 { .. }, Kind::V7 | Kind::V7p)
                | (Params::V8 { .. }, Kind::V8 | Kind::V8p)
        )
    }
}

/// A fully specified potential: kind, parameters, deformation and units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FlatSpec", into = "FlatSpec")]
pub struct PotentialSpec {
    kind: Kind,
    params: Params,
    deformation: Deformation,
    hbar: f64,
    mass: f64,
}

impl PotentialSpec {
    pub fn new(kind: Kind, params: Params, q: f64, hbar: f64, mass: f64) -> Result<Self> {
        if !params.fits(kind) {
            return Err(Error::Invalid(format!("parameters {params:?} do not belong to {kind}")));
        }
        if params.values().iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid(format!("non-finite parameter in {params:?}")));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::Invalid(format!("hbar must be positive, got {hbar}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Invalid(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { kind, params, deformation: Deformation::new(q)?, hbar, mass })
    }

    /// Same potential in the default units hbar = 1, m = 1/2.
    pub fn natural(kind: Kind, params: Params, q: f64) -> Result<Self> {
        Self::new(kind, params, q, 1.0, 0.5)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }
    pub fn params(&self) -> Params {
        self.params
    }
    pub fn deformation(&self) -> Deformation {
        self.deformation
    }
    pub fn q(&self) -> f64 {
        self.deformation.q()
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `hbar^2 / 2m`.
    pub fn kappa(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }

    pub fn with_q(&self, q: f64) -> Result<Self> {
        Self::new(self.kind, self.params, q, self.hbar, self.mass)
    }

    pub fn with_params(&self, params: Params) -> Result<Self> {
        Self::new(self.kind, params, self.q(), self.hbar, self.mass)
    }

    /// Left end of the domain in the raw frame (`-inf` for full-line kinds).
    pub fn domain_start(&self) -> f64 {
        if self.kind.is_half_line() {
            self.deformation.shift()
        } else {
            f64::NEG_INFINITY
        }
    }

    /// Whether `x` (raw frame) is admissible, keeping `guard` off the wall.
    pub fn admits(&self, x: f64, guard: f64) -> bool {
        x.is_finite() && (!self.kind.is_half_line() || x > self.deformation.shift() + guard)
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        if self.admits(x, 0.0) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} is defined for x > {}, got x = {x}",
                self.kind,
                self.deformation.shift()
            )))
        }
    }

    /// Continuum threshold, the limit of `V` at the open end(s) of the domain.
    /// For full-line kinds with different limits this is the lower one.
    pub fn threshold(&self) -> f64 {
        let k = self.kappa();
        match self.params {
            Params::V1 { .. } | Params::V2 { .. } => 0.0,
            Params::V3 { alpha, .. } => -alpha,
            Params::V4 { beta, .. } => -beta.abs(),
            Params::V5 { v0, v1, .. } => k * (v0 + v1),
            Params::V6 { v0, v2, .. } => k * (v0 + v2),
            Params::V7 { a, b, c } => match self.kind {
                Kind::V7 => k * (-a / self.deformation.sqrt_q()).min(b + c),
                _ => k * (-a + b + c).min(0.0),
            },
            Params::V8 { h1, c, .. } => match self.kind {
                Kind::V8 => k * (1.75 + c),
                _ => k * (1.75 + c + h1),
            },
        }
    }

    /// Warnings about parameter choices outside the exactly solvable family.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Params::V7 { c, .. } | Params::V8 { c, .. } = self.params {
            if (c - SOLVABLE_C).abs() > 1e-12 {
                out.push(format!(
                    "C = {c} differs from the solvable value {SOLVABLE_C}; closed-form results assume C = {SOLVABLE_C}"
                ));
            }
        }
        out
    }

    /// `V(x)` in the raw frame.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        match self.evaluate_raw(x) {
            // far tails overflow the deformed functions; the shifted form is exact there
            Err(Error::Range(_)) => self.evaluate_shifted(x - self.deformation.shift()),
            other => other,
        }
    }

    fn evaluate_raw(&self, x: f64) -> Result<f64> {
        let d = &self.deformation;
        let k = self.kappa();
        let q = d.q();
        let v = match self.params {
            Params::V1 { nu } => -k * (nu * nu - 0.25) / qhyp::cosh_q(x, d)?.powi(2),
            Params::V2 { eta, nu } => {
                k * ((eta * eta - 0.25) / qhyp::sinh_q(x, d)?.powi(2) - (nu * nu - 0.25) / qhyp::cosh_q(x, d)?.powi(2))
            }
            Params::V3 { alpha, lambda } => {
                -alpha * qhyp::coth_q(x, d)? + k * (lambda * lambda - 0.25) / qhyp::sinh_q(x, d)?.powi(2)
            }
            Params::V4 { beta, lambda } => {
                beta * qhyp::tanh_q(x, d)? - k * (lambda * lambda - 0.25) / qhyp::cosh_q(x, d)?.powi(2)
            }
            Params::V5 { v0, v1, v2 } => {
                let c = qhyp::coth_q(x, d)?;
                k * (v0 + v1 * c * c + v2 * c / qhyp::sinh_q(x, d)?)
            }
            Params::V6 { v0, v1, v2 } => {
                let t = qhyp::tanh_q(x, d)?;
                k * (v0 + v1 * t / qhyp::cosh_q(x, d)? + v2 * t * t)
            }
            Params::V7 { a, b, c } => {
                // 1/(1 + q e^{-2x}) = e^{2x}/(e^{2x} + q)
                let w = 1.0 / (1.0 + q * (-2.0 * x).exp());
                let a_term = match self.kind {
                    Kind::V7 => a / ((2.0 * x).exp() + q).sqrt(),
                    _ => a * w.sqrt(),
                };
                k * (-a_term + b * w + c * w * w)
            }
            Params::V8 { f, h1, c } => {
                // 1 - q e^{-2r}, accurate near the wall
                let u = -(q.ln() - 2.0 * x).exp_m1();
                let w = 1.0 / u;
                let h_term = match self.kind {
                    Kind::V8 => h1 * (-x).exp() / u.sqrt(),
                    _ => h1 / u.sqrt(),
                };
                k * (f + 1.0 - (f - 0.75) * w + h_term + c * w * w)
            }
        };
        finite(v, x)
    }

    /// `V` at the shifted coordinate `y = x - ln sqrt(q)`, using standard
    /// hyperbolic functions and rescaled strengths.
    pub fn evaluate_shifted(&self, y: f64) -> Result<f64> {
        self.reduce_to_shifted().0.evaluate(y)
    }

    /// The shifted-frame form of this potential and the shift `ln sqrt(q)`.
    pub fn reduce_to_shifted(&self) -> (ShiftedPotential, f64) {
        let sq = self.deformation.sqrt_q();
        let q = self.q();
        let coef = match self.params {
            Params::V1 { nu } => [deformed_strength(nu, q), 0.0, 0.0],
            Params::V2 { eta, nu } => [deformed_strength(eta, q), deformed_strength(nu, q), 0.0],
            Params::V3 { alpha, lambda } => [alpha, deformed_strength(lambda, q), 0.0],
            Params::V4 { beta, lambda } => [beta, deformed_strength(lambda, q), 0.0],
            Params::V5 { v0, v1, v2 } => [v0, v1, v2 / sq],
            Params::V6 { v0, v1, v2 } => [v0, v1 / sq, v2],
            Params::V7 { a, b, c } => [if self.kind == Kind::V7 { a / sq } else { a }, b, c],
            Params::V8 { f, h1, c } => [f, if self.kind == Kind::V8 { h1 / sq } else { h1 }, c],
        };
        (ShiftedPotential { kind: self.kind, kappa: self.kappa(), coef }, self.deformation.shift())
    }

    /// The q = 1 spec with deformed parameters, when one exists with real
    /// parameters (a tilded parameter can become imaginary for q < 1).
    pub fn equivalent_undeformed(&self) -> Option<PotentialSpec> {
        let q = self.q();
        let sq = self.deformation.sqrt_q();
        let t = |p: f64| tilde_sq(p, q);
        let params = match self.params {
            Params::V1 { nu } => Params::V1 { nu: real_sqrt(t(nu))? },
            Params::V2 { eta, nu } => Params::V2 { eta: real_sqrt(t(eta))?, nu: real_sqrt(t(nu))? },
            Params::V3 { alpha, lambda } => Params::V3 { alpha, lambda: real_sqrt(t(lambda))? },
            Params::V4 { beta, lambda } => Params::V4 { beta, lambda: real_sqrt(t(lambda))? },
            Params::V5 { v0, v1, v2 } => Params::V5 { v0, v1, v2: v2 / sq },
            Params::V6 { v0, v1, v2 } => Params::V6 { v0, v1: v1 / sq, v2 },
            Params::V7 { a, b, c } => Params::V7 { a: if self.kind == Kind::V7 { a / sq } else { a }, b, c },
            Params::V8 { f, h1, c } => Params::V8 { f, h1: if self.kind == Kind::V8 { h1 / sq } else { h1 }, c },
        };
        PotentialSpec::new(self.kind, params, 1.0, self.hbar, self.mass).ok()
    }

    /// Derived symbols at energy `e`, optionally for level `n`.
    pub fn effective_params(&self, e: C64, n: Option<u32>) -> EffectiveParams {
        EffectiveParams::compute(self, e, n)
    }
}

fn finite(v: f64, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric(format!("potential is not finite at x = {x}")))
    }
}

fn real_sqrt(v: f64) -> Option<f64> {
    (v >= 0.0).then(|| v.sqrt())
}

/// `(p^2 - 1/4)/q + 1/4`, the square of the deformed parameter.
pub fn tilde_sq(p: f64, q: f64) -> f64 {
    (p * p - 0.25) / q + 0.25
}

/// Deformed parameter `sqrt((p^2 - 1/4)/q + 1/4)`, principal branch
/// (imaginary when the radicand is negative).
pub fn tilde(p: f64, q: f64) -> C64 {
    C64::new(tilde_sq(p, q), 0.0).sqrt()
}

fn deformed_strength(p: f64, q: f64) -> f64 {
    (p * p - 0.25) / q
}

/// Shifted-frame potential. The meaning of `coef` depends on the kind:
///
/// | kind | `V(y)` |
/// |------|--------|
/// | V1 | `-k c0 / cosh^2 y` |
/// | V2 | `k (c0 / sinh^2 y - c1 / cosh^2 y)` |
/// | V3 | `-c0 coth y + k c1 / sinh^2 y` |
/// | V4 | `c0 tanh y - k c1 / cosh^2 y` |
/// | V5 | `k (c0 + c1 coth^2 y + c2 coth y / sinh y)` |
/// | V6 | `k (c0 + c1 tanh y / cosh y + c2 tanh^2 y)` |
/// | V7, V7p | `k (-c0 g(y) + c1 / u + c2 / u^2)`, `u = 1 + e^{-2y}` |
/// | V8, V8p | `k (c0 + 1 - (c0 - 3/4) / u + c1 g(y) + c2 / u^2)`, `u = 1 - e^{-2y}` |
///
/// with `g = e^{-y}/sqrt(u)` for the unprimed and `1/sqrt(u)` for the primed kinds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftedPotential {
    pub kind: Kind,
    pub kappa: f64,
    pub coef: [f64; 3],
}

impl ShiftedPotential {
    pub fn evaluate(&self, y: f64) -> Result<f64> {
        if !y.is_finite() || (self.kind.is_half_line() && y <= 0.0) {
            return Err(Error::Domain(format!("{} shifted coordinate must be admissible, got y = {y}", self.kind)));
        }
        let k = self.kappa;
        let [c0, c1, c2] = self.coef;
        let v = match self.kind {
            Kind::V1 => -k * c0 / y.cosh().powi(2),
            Kind::V2 => k * (c0 / y.sinh().powi(2) - c1 / y.cosh().powi(2)),
            Kind::V3 => -c0 / y.tanh() + k * c1 / y.sinh().powi(2),
            Kind::V4 => c0 * y.tanh() - k * c1 / y.cosh().powi(2),
            Kind::V5 => {
                let c = 1.0 / y.tanh();
                k * (c0 + c1 * c * c + c2 * c / y.sinh())
            }
            Kind::V6 => {
                let t = y.tanh();
                k * (c0 + c1 * t / y.cosh() + c2 * t * t)
            }
            Kind::V7 | Kind::V7p => {
                let w = 1.0 / (1.0 + (-2.0 * y).exp());
                let g = if self.kind == Kind::V7 { 1.0 / ((2.0 * y).exp() + 1.0).sqrt() } else { w.sqrt() };
                k * (-c0 * g + c1 * w + c2 * w * w)
            }
            Kind::V8 | Kind::V8p => {
                let u = -(-2.0 * y).exp_m1();
                let w = 1.0 / u;
                let g = if self.kind == Kind::V8 { (-y).exp() / u.sqrt() } else { 1.0 / u.sqrt() };
                k * (c0 + 1.0 - (c0 - 0.75) * w + c1 * g + c2 * w * w)
            }
        };
        finite(v, y)
    }
}

/// Derived symbols of a spec at a given energy. Fields that do not apply to
/// the kind are `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams {
    pub lambda_t: Option<C64>,
    pub eta_t: Option<C64>,
    pub nu_t: Option<C64>,
    /// `2 lambda~`.
    pub s: Option<C64>,
    /// `B / sqrt(q)`; for V7 this is the rescaled `e^{-x}` coupling.
    pub b_t: Option<f64>,
    pub m1: Option<C64>,
    pub m2: Option<C64>,
    pub l: Option<C64>,
    pub k1: Option<C64>,
    pub k2: Option<C64>,
    /// `n + 1/2` (in units where hbar^2/2m = 1).
    pub n_t: Option<f64>,
    pub cubic_lambda: Option<f64>,
}

/// `sqrt(-E/k)`, principal branch (positive real part for E below 0).
pub fn decay_rate(e: C64, kappa: f64) -> C64 {
    (-e / kappa).sqrt()
}

impl EffectiveParams {
    fn compute(spec: &PotentialSpec, e: C64, n: Option<u32>) -> Self {
        let q = spec.q();
        let kap = spec.kappa();
        let sq = spec.deformation.sqrt_q();
        let mut p = EffectiveParams::default();
        let half = C64::new(0.5, 0.0);
        match spec.params {
            Params::V1 { nu } => {
                let lt = tilde(nu, q);
                let k = decay_rate(e, kap);
                p.lambda_t = Some(lt);
                p.s = Some(2.0 * lt);
                p.k1 = Some(k);
                p.l = Some(lt - half);
            }
            Params::V2 { eta, nu } => {
                let (et, nt) = (tilde(eta, q), tilde(nu, q));
                let k = decay_rate(e, kap);
                p.eta_t = Some(et);
                p.nu_t = Some(nt);
                p.m1 = Some((et + k) / 2.0);
                p.m2 = Some((et - k) / 2.0);
                p.l = Some((nt - 1.0) / 2.0);
                p.k1 = Some(k);
            }
            Params::V3 { alpha, lambda } => {
                let lt = tilde(lambda, q);
                // decay rates at infinity and the wall-side exponents
                let kp = ((-e - alpha) / kap).sqrt();
                let km = ((-e + alpha) / kap).sqrt();
                p.lambda_t = Some(lt);
                p.s = Some(2.0 * lt);
                p.k1 = Some(kp);
                p.k2 = Some(km);
                p.m1 = Some((kp + km) / 2.0);
                p.m2 = Some((km - kp) / 2.0);
                p.l = Some(lt - half);
            }
            Params::V4 { beta, lambda } => {
                let lt = tilde(lambda, q);
                let kp = ((-e + beta) / kap).sqrt();
                let km = ((-e - beta) / kap).sqrt();
                p.lambda_t = Some(lt);
                p.s = Some(2.0 * lt);
                p.k1 = Some(kp);
                p.k2 = Some(km);
                p.m1 = Some((km + kp) / 2.0);
                p.m2 = Some((km - kp) / 2.0);
                p.l = Some(lt - half);
            }
            Params::V5 { v0, v1, v2 } => {
                let w = v2 / sq;
                let et = C64::new(v1 + w + 0.25, 0.0).sqrt();
                let nt = C64::new(v1 - w + 0.25, 0.0).sqrt();
                let k = 2.0 * ((-e / kap) + v0 + v1).sqrt();
                p.eta_t = Some(et);
                p.nu_t = Some(nt);
                p.k1 = Some(k);
                p.m1 = Some((et + k) / 2.0);
                p.m2 = Some((et - k) / 2.0);
                p.l = Some((nt - 1.0) / 2.0);
            }
            Params::V6 { v0, v1, v2 } => {
                let w = v1 / sq;
                let lam = C64::new(0.25 + v2, w).sqrt();
                p.lambda_t = Some(lam);
                p.k1 = Some(((-e / kap) + v0 + v2).sqrt());
                p.l = Some(C64::new(lam.re, 0.0) - half);
            }
            Params::V7 { a, b, c } => {
                p.b_t = Some(if spec.kind == Kind::V7 { a / sq } else { a });
                p.k1 = Some(decay_rate(e, kap));
                if let Some(n) = n {
                    let nt = n as f64 + 0.5;
                    p.n_t = Some(nt);
                    p.cubic_lambda = Some(b + c + nt * nt);
                }
            }
            Params::V8 { f, h1, .. } => {
                p.b_t = Some(if spec.kind == Kind::V8 { h1 / sq } else { h1 });
                // decay rate of the auxiliary problem at infinity
                p.k1 = Some((1.0 - e / kap).sqrt());
                let lam = C64::new(0.25 + f + 0.75, 0.0) - e / kap;
                p.lambda_t = Some((lam + C64::new(0.0, p.b_t.unwrap_or(0.0))).sqrt());
            }
        }
        p
    }
}

/// Canonical flat JSON form: `{"kind": "V1", "q": 1, "hbar": 1, "mass": 0.5, "nu": 2.5}`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatSpec {
    pub kind: String,
    #[serde(default = "one", skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default = "one", skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    #[serde(default = "half", skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, rename = "V0", skip_serializing_if = "Option::is_none")]
    pub v0: Option<f64>,
    #[serde(default, rename = "V1", skip_serializing_if = "Option::is_none")]
    pub v1: Option<f64>,
    #[serde(default, rename = "V2", skip_serializing_if = "Option::is_none")]
    pub v2: Option<f64>,
    #[serde(default, rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, rename = "B", skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<f64>,
}

fn one() -> Option<f64> {
    Some(1.0)
}
fn half() -> Option<f64> {
    Some(0.5)
}

impl FlatSpec {
    fn slot(&mut self, name: &str) -> &mut Option<f64> {
        match name {
            "nu" => &mut self.nu,
            "eta" => &mut self.eta,
            "lambda" => &mut self.lambda,
            "alpha" => &mut self.alpha,
            "beta" => &mut self.beta,
            "V0" => &mut self.v0,
            "V1" => &mut self.v1,
            "V2" => &mut self.v2,
            "A" => &mut self.a,
            "B" => &mut self.b,
            "C" => &mut self.c,
            "f" => &mut self.f,
            _ => &mut self.h1,
        }
    }

    pub const PARAM_NAMES: [&'static str; 13] =
        ["nu", "eta", "lambda", "alpha", "beta", "V0", "V1", "V2", "A", "B", "C", "f", "h1"];

    pub fn get(&self, name: &str) -> Option<f64> {
        self.clone().slot(name).take()
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !Self::PARAM_NAMES.contains(&name) {
            return Err(Error::Invalid(format!("unknown parameter {name:?}")));
        }
        *self.slot(name) = Some(value);
        Ok(())
    }
}

impl TryFrom<FlatSpec> for PotentialSpec {
    type Error = Error;
    fn try_from(flat: FlatSpec) -> Result<Self> {
        let kind: Kind = flat.kind.parse()?;
        let allowed = kind.param_names();
        for name in FlatSpec::PARAM_NAMES {
            if flat.get(name).is_some() && !allowed.contains(&name) {
                return Err(Error::Invalid(format!("parameter {name:?} does not apply to {kind}")));
            }
        }
        let need = |name: &str| -> Result<f64> {
            match flat.get(name) {
                Some(v) => Ok(v),
                None if name == "C" => Ok(SOLVABLE_C),
                None => Err(Error::Invalid(format!("{kind} requires parameter {name:?}"))),
            }
        };
        let params = match kind {
            Kind::V1 => Params::V1 { nu: need("nu")? },
            Kind::V2 => Params::V2 { eta: need("eta")?, nu: need("nu")? },
            Kind::V3 => Params::V3 { alpha: need("alpha")?, lambda: need("lambda")? },
            Kind::V4 => Params::V4 { beta: need("beta")?, lambda: need("lambda")? },
            Kind::V5 => Params::V5 { v0: need("V0")?, v1: need("V1")?, v2: need("V2")? },
            Kind::V6 => Params::V6 { v0: need("V0")?, v1: need("V1")?, v2: need("V2")? },
            Kind::V7 | Kind::V7p => Params::V7 { a: need("A")?, b: need("B")?, c: need("C")? },
            Kind::V8 | Kind::V8p => Params::V8 { f: need("f")?, h1: need("h1")?, c: need("C")? },
        };
        PotentialSpec::new(kind, params, flat.q.unwrap_or(1.0), flat.hbar.unwrap_or(1.0), flat.mass.unwrap_or(0.5))
    }
}

impl From<PotentialSpec> for FlatSpec {
    fn from(spec: PotentialSpec) -> Self {
        let mut flat = FlatSpec {
            kind: spec.kind.as_str().to_string(),
            q: Some(spec.q()),
            hbar: Some(spec.hbar),
            mass: Some(spec.mass),
            ..Default::default()
        };
        for (name, v) in spec.kind.param_names().iter().zip(spec.params.values()) {
            *flat.slot(name) = Some(v);
        }
        flat
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        for (i, (name, v)) in self.kind.param_names().iter().zip(self.params.values()).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, "; q={})", self.q())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: Kind, params: Params, q: f64) -> PotentialSpec {
        PotentialSpec::natural(kind, params, q).unwrap()
    }

    #[test]
    fn textbook_values() {
        let v1 = spec(Kind::V1, Params::V1 { nu: 1.5 }, 1.0);
        assert!((v1.evaluate(0.0).unwrap() + 2.0).abs() < 1e-15);
        let v4 = spec(Kind::V4, Params::V4 { beta: 0.0, lambda: 1.5 }, 1.0);
        assert!((v4.evaluate(0.0).unwrap() + 2.0).abs() < 1e-15);
    }

    #[test]
    fn v3_frames_agree() {
        let s = spec(Kind::V3, Params::V3 { alpha: 1.0, lambda: 1.5 }, 2.0);
        let x = 2f64.sqrt().ln() + 1.0;
        let e = -1f64 / 1f64.tanh() + 2.0 / (2.0 * 1f64.sinh().powi(2));
        assert!((s.evaluate(x).unwrap() - e).abs() < 1e-13);
        assert!((s.evaluate_shifted(1.0).unwrap() - e).abs() < 1e-13);
    }

    #[test]
    fn half_line_domain() {
        let s = spec(Kind::V2, Params::V2 { eta: 1.5, nu: 3.5 }, 4.0);
        assert!(matches!(s.evaluate(2f64.ln()), Err(Error::Domain(_))));
        assert!(s.evaluate(2f64.ln() + 1e-3).is_ok());
        assert!(s.admits(1.0, DEFAULT_GUARD));
    }

    #[test]
    fn effective_params_examples() {
        let e = C64::new(-1.0, 0.0);
        let p = spec(Kind::V1, Params::V1 { nu: 1.5 }, 1.0).effective_params(e, None);
        assert!((p.lambda_t.unwrap() - 1.5).norm() < 1e-15);
        let p = spec(Kind::V1, Params::V1 { nu: 2.5 }, 4.0).effective_params(e, None);
        assert!((p.lambda_t.unwrap().re - 1.75f64.sqrt()).abs() < 1e-15);
        let p = spec(Kind::V7, Params::V7 { a: 2.0, b: 1.0, c: -0.75 }, 4.0).effective_params(e, Some(0));
        assert!((p.b_t.unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(p.n_t, Some(0.5));
    }

    #[test]
    fn reduction_examples() {
        let s = spec(Kind::V1, Params::V1 { nu: 2.5 }, 4.0);
        let (sh, shift) = s.reduce_to_shifted();
        assert!((shift - 2f64.ln()).abs() < 1e-15);
        assert!((sh.coef[0] - 6.0 / 4.0).abs() < 1e-15);
        let u = s.equivalent_undeformed().unwrap();
        assert!((u.evaluate(0.3).unwrap() - s.evaluate(0.3 + shift).unwrap()).abs() < 1e-14);
        let s = spec(Kind::V6, Params::V6 { v0: 0.0, v1: 2.0, v2: 6.0 }, 1.0);
        assert_eq!(s.reduce_to_shifted().1, 0.0);
        // lambda~^2 < 0 has no real undeformed counterpart
        assert!(spec(Kind::V1, Params::V1 { nu: 0.0 }, 0.1).equivalent_undeformed().is_none());
    }

    #[test]
    fn json_round_trip() {
        let s = spec(Kind::V8, Params::V8 { f: 5.0, h1: -1.0, c: -0.75 }, 2.0);
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.contains("\"kind\":\"V8\"") && j.contains("\"h1\":-1.0"));
        let back: PotentialSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::from_str::<PotentialSpec>(r#"{"kind":"V1","nu":1,"eta":2}"#);
        assert!(bad.is_err());
        let bad = serde_json::from_str::<PotentialSpec>(r#"{"kind":"V9","nu":1}"#);
        assert!(bad.is_err());
        let d: PotentialSpec = serde_json::from_str(r#"{"kind":"V7","A":50,"B":-44}"#).unwrap();
        assert_eq!(d.params(), Params::V7 { a: 50.0, b: -44.0, c: -0.75 });
        assert!(d.diagnostics().is_empty());
    }
}
