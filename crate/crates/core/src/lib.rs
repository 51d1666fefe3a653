//! Spectral solvers for q-deformed hyperbolic potentials.
//!
//! The crate covers the eight deformed Pöschl–Teller-like and conditionally
//! solvable potentials `V1`..`V8` (plus the primed variants `V7'`, `V8'`):
//! closed-form bound-state energies, evaluable wave functions, energy-domain
//! Green functions with pole scanning, and an independent finite-difference
//! eigenvalue oracle used to cross-check all of them.
//!
//! Units are explicit: every [`potentials::PotentialSpec`] carries `hbar` and
//! `mass`. The defaults (`hbar = 1`, `mass = 1/2`) make `hbar^2/2m = 1`.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod green;
pub mod io;
pub mod oracle;
pub mod potentials;
pub mod qhyp;
mod scarf;
pub mod specfun;
pub mod spectra;
pub mod verify;
pub mod wavefun;

pub use error::{Error, Result};
pub use potentials::{Kind, Params, PotentialSpec};
pub use spectra::{Level, Method, Spectrum};
pub use num_complex;
