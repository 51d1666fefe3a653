use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::nonpositive_integer;
use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9. Coefficients as published by
// Godfrey / Numerical Recipes 3rd ed. (also used by the GSL sample code).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `sin(pi z)` with the real part reduced first, exactly zero at integers.
pub fn sin_pi(z: C64) -> C64 {
    let k = z.re.round();
    let r = C64::new(z.re - k, z.im) * PI;
    let s = r.sin();
    if (k as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

// ln Gamma(z) for Re z >= 1/2 (no reflection).
fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + x.ln() + LN_SQRT_2PI
}

/// Complex Gamma function.
pub fn gamma(z: C64) -> Result<C64> {
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::Pole { what: format!("Gamma at non-positive integer {n}"), location: n as f64 });
    }
    if z.re < 0.5 {
        let s = sin_pi(z);
        return Ok(PI / (s * ln_gamma_right(1.0 - z).exp()));
    }
    if z.im == 0.0 && z.re <= 171.0 && z.re == z.re.round() {
        // exact factorials for small integer arguments
        let mut f = 1.0;
        let mut k = 2.0;
        while k < z.re {
            f *= k;
            k += 1.0;
        }
        return Ok(C64::new(f, 0.0));
    }
    let g = ln_gamma_right(z).exp();
    if !(g.re.is_finite() && g.im.is_finite()) {
        return Err(Error::Range(format!("Gamma({z}) overflows")));
    }
    Ok(g)
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(C64::new(x, 0.0)).map(|g| g.re)
}

/// Reciprocal Gamma, entire: exactly zero at the poles of Gamma.
pub fn rgamma(z: C64) -> C64 {
    if z.re < 0.5 {
        sin_pi(z) * ln_gamma_right(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}

/// A branch of ln Gamma(z) (principal for Re z >= 1/2, via reflection otherwise).
pub fn ln_gamma(z: C64) -> Result<C64> {
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::Pole { what: format!("ln Gamma at non-positive integer {n}"), location: n as f64 });
    }
    if z.re < 0.5 {
        Ok(C64::new(PI.ln(), 0.0) - sin_pi(z).ln() - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn factorials_and_half() {
        assert_eq!(gamma(c(5.0, 0.0)).unwrap().re, 24.0);
        assert_eq!(gamma(c(1.0, 0.0)).unwrap().re, 1.0);
        let h = gamma(c(0.5, 0.0)).unwrap();
        assert!((h.re - PI.sqrt()).abs() < 1e-14);
        let g = gamma(c(10.3, 0.0)).unwrap().re;
        // Gamma(10.3) = 9.3 * 8.3 * ... * 1.3 * Gamma(1.3)
        let mut p = 0.897_470_696_306_277_2; // Gamma(1.3)
        let mut x = 1.3;
        while x < 10.0 {
            p *= x;
            x += 1.0;
        }
        assert!((g - p).abs() < 1e-13 * p);
    }

    #[test]
    fn reflection_identity() {
        let z = c(0.3, 0.2);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = PI / (z * PI).sin();
        assert!((lhs - rhs).norm() < 1e-13 * rhs.norm());
    }

    #[test]
    fn recurrence_complex() {
        for z in [c(2.5, 3.0), c(-3.7, 1.1), c(0.1, -7.0), c(20.0, 5.0)] {
            let a = gamma(z + 1.0).unwrap();
            let b = z * gamma(z).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm(), "{z}");
        }
    }

    #[test]
    fn poles() {
        assert!(matches!(gamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma(c(-3.0, 0.0)), Err(Error::Pole { location, .. }) if location == -3.0));
        assert_eq!(rgamma(c(-3.0, 0.0)), c(0.0, 0.0));
        assert_eq!(rgamma(c(0.0, 0.0)).norm(), 0.0);
        let r = rgamma(c(4.0, 0.0));
        assert!((r.re - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn ln_gamma_matches() {
        for z in [c(3.3, 0.0), c(1.5, 2.0), c(-2.5, 0.5)] {
            let a = ln_gamma(z).unwrap().exp();
            let b = gamma(z).unwrap();
            assert!((a - b).norm() < 1e-12 * b.norm());
        }
    }
}
