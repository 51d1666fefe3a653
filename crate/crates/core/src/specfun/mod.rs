//! Special-function kernel: complex Gamma, Gauss hypergeometric 2F1,
//! Ferrers (on-cut) associated Legendre functions and Jacobi polynomials.

mod gamma;
mod hyper;
mod orthopoly;

pub use gamma::{gamma, gamma_real, ln_gamma, rgamma, sin_pi};
pub use hyper::{hyp2f1, hyp2f1_deriv, hyp2f1_regularized, HypergeometricArgs};
pub(crate) use hyper::{continue_segment, series_with_deriv};
pub use orthopoly::{jacobi_p, legendre_p, legendre_p_tanh, JacobiArgs, LegendreArgs};

pub use num_complex::Complex64 as C64;

/// Nearest integer if `z` is (to rounding) a real non-positive integer.
pub(crate) fn nonpositive_integer(z: C64) -> Option<i64> {
    if z.im != 0.0 || z.re > 0.0 {
        return None;
    }
    let r = z.re.round();
    if (z.re - r).abs() <= 1e-14 * r.abs().max(1.0) {
        Some(r as i64)
    } else {
        None
    }
}
