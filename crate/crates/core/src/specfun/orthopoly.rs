//! Ferrers associated Legendre functions on the cut and Jacobi polynomials.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegendreArgs {
    pub nu: C64,
    pub mu: C64,
    pub x: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiArgs {
    pub n: u32,
    pub alpha: C64,
    pub beta: C64,
    pub x: C64,
}

/// Ferrers function `P_nu^mu(x)` for `-1 < x < 1`:
/// `((1+x)/(1-x))^(mu/2) F(-nu, nu+1; 1-mu; (1-x)/2) / Gamma(1-mu)`.
pub fn legendre_p(args: &LegendreArgs) -> Result<C64> {
    let LegendreArgs { nu, mu, x } = *args;
    if x == 1.0 || x == -1.0 {
        // the prefactor vanishes at the endpoint only for Re mu < 0
        if mu.re < 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        return Err(Error::Domain(format!("Ferrers P_nu^mu at x = {x} needs Re mu < 0")));
    }
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("Ferrers P requires -1 < x < 1, got {x}")));
    }
    let ratio = C64::new((1.0 + x) / (1.0 - x), 0.0);
    let pre = ratio.powc(mu / 2.0);
    let one = C64::new(1.0, 0.0);
    let f = super::hyper::hyp2f1_regularized(-nu, nu + 1.0, one - mu, C64::new((1.0 - x) / 2.0, 0.0))?;
    Ok(pre * f)
}

/// `P_nu^mu(tanh y)`, with `1 -/+ tanh y` formed from exponentials so that
/// the result keeps its relative accuracy for large `|y|`.
pub fn legendre_p_tanh(nu: C64, mu: C64, y: f64) -> Result<C64> {
    if !y.is_finite() {
        return Err(Error::Domain(format!("legendre_p_tanh needs finite y, got {y}")));
    }
    // 1 - tanh y = 2/(1 + e^{2y}), 1 + tanh y = 2/(1 + e^{-2y})
    let one_minus = 2.0 / (1.0 + (2.0 * y).exp());
    if one_minus == 0.0 {
        return legendre_p(&LegendreArgs { nu, mu, x: 1.0 });
    }
    // ((1 + x)/(1 - x))^{mu/2} = e^{mu y}
    let pre = (mu * y).exp();
    let c = C64::new(1.0, 0.0) - mu;
    let z = C64::new(one_minus / 2.0, 0.0);
    if y >= 0.0 {
        return Ok(pre * super::hyper::hyp2f1_regularized(-nu, nu + 1.0, c, z)?);
    }
    // near x = -1 the series cancels down to (1 + x)^{-mu}; Euler's
    // transformation makes that factor explicit
    let half_one_plus = C64::new(1.0 / (1.0 + (-2.0 * y).exp()), 0.0);
    let (a, b) = (c + nu, c - nu - 1.0);
    if one_minus == 2.0
        && super::nonpositive_integer(a).is_none()
        && super::nonpositive_integer(b).is_none()
    {
        // 1 - z below machine epsilon: only the leading singular term survives
        let g = super::gamma::gamma(-mu)?;
        return Ok(pre * g * super::gamma::rgamma(a) * super::gamma::rgamma(b));
    }
    Ok(pre * half_one_plus.powc(-mu) * super::hyper::hyp2f1_regularized(c + nu, c - nu - 1.0, c, z)?)
}

/// Jacobi polynomial `P_n^(alpha, beta)(x)` for complex parameters and argument.
pub fn jacobi_p(args: &JacobiArgs) -> Result<C64> {
    let JacobiArgs { n, alpha: a, beta: b, x } = *args;
    let one = C64::new(1.0, 0.0);
    if n == 0 {
        return Ok(one);
    }
    let p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    let mut prev = one;
    let mut cur = p1;
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let den = 2.0 * kf * (kf + a + b) * (s - 2.0);
        if den.norm() < 1e-10 {
            return jacobi_sum(n, a, b, x);
        }
        let next = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * cur
            - 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s * prev)
            / den;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

// sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
fn jacobi_sum(n: u32, a: C64, b: C64, x: C64) -> Result<C64> {
    let binom = |top: C64, k: u32| {
        // C(top, k) = prod_{j=1..k} (top - k + j) / j
        let mut c = C64::new(1.0, 0.0);
        for j in 1..=k {
            c *= (top - k as f64 + j as f64) / j as f64;
        }
        c
    };
    let nf = n as f64;
    let (xm, xp) = ((x - 1.0) / 2.0, (x + 1.0) / 2.0);
    let mut sum = C64::new(0.0, 0.0);
    for s in 0..=n {
        sum += binom(a + nf, n - s) * binom(b + nf, s) * xm.powu(s) * xp.powu(n - s);
    }
    Ok(sum)
}

/// Hypergeometric form `(a+1)_n / n! F(-n, n+a+b+1; a+1; (1-x)/2)`, used to
/// cross-check the recurrence.
#[cfg(test)]
fn jacobi_hyp(n: u32, a: C64, b: C64, x: C64) -> Result<C64> {
    let nf = n as f64;
    let mut poch = C64::new(1.0, 0.0);
    for j in 0..n {
        poch *= (a + 1.0 + j as f64) / (j as f64 + 1.0);
    }
    Ok(poch * super::hyp2f1(C64::new(-nf, 0.0), nf + a + b + 1.0, a + 1.0, (1.0 - x) / 2.0)?)
}
