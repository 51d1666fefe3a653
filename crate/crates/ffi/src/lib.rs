//! C ABI over `qspectra`.
//!
//! Objects are opaque handles created by `qs_*_new` / `qs_*_from_json` and
//! released with the matching `qs_*_free`. Every fallible function returns a
//! [`QsStatus`]; on failure a message is available from
//! [`qs_last_error_message`] on the same thread. Output arrays are written
//! into caller buffers: the required length is always stored in `*len`, and
//! `QS_STATUS_BUFFER_TOO_SMALL` is returned when `cap` is smaller.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qspectra::num_complex::Complex64;
use qspectra::potentials::{FlatSpec, Kind};
use qspectra::wavefun::BoundState;
use qspectra::{green, spectra, Error, PotentialSpec, Spectrum};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsStatus {
    Ok = 0,
    Invalid = 1,
    Domain = 2,
    Range = 3,
    Pole = 4,
    Contract = 5,
    Numeric = 6,
    Io = 7,
    NullPointer = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// Potential specification handle.
pub struct QsSpec(PotentialSpec);

/// Computed spectrum handle.
pub struct QsSpectrum(Spectrum);

/// Normalized bound-state handle.
pub struct QsBoundState(BoundState);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> QsStatus {
    match err {
        Error::Invalid(_) => QsStatus::Invalid,
        Error::Domain(_) => QsStatus::Domain,
        Error::Range(_) => QsStatus::Range,
        Error::Pole { .. } => QsStatus::Pole,
        Error::Contract(_) => QsStatus::Contract,
        Error::Numeric(_) => QsStatus::Numeric,
        Error::Io(_) => QsStatus::Io,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), QsStatus>) -> QsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            QsStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            QsStatus::Panic
        }
    }
}

fn fail(err: Error) -> QsStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn null(what: &str) -> QsStatus {
    set_error(format!("null pointer: {what}"));
    QsStatus::NullPointer
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, QsStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, QsStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(Error::Invalid(format!("{what} is not UTF-8"))))
}

unsafe fn write_slice(values: &[f64], buf: *mut f64, cap: usize, len: *mut usize) -> Result<(), QsStatus> {
    if len.is_null() {
        return Err(null("len"));
    }
    *len = values.len();
    if values.len() > cap {
        set_error(format!("buffer holds {cap} values, {} needed", values.len()));
        return Err(QsStatus::BufferTooSmall);
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `cap`). Returns the full message length without the NUL.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn qs_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Creates a specification from a kind name (`"V1"`..`"V8p"`) and its
/// parameters in the kind's canonical order (V1: nu; V2: eta, nu; V3:
/// alpha, lambda; V4: beta, lambda; V5/V6: V0, V1, V2; V7/V7p: A, B, C;
/// V8/V8p: f, h1, C).
///
/// # Safety
/// `kind` must be a NUL-terminated string, `params` valid for `n_params`
/// values, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_spec_new(
    kind: *const c_char,
    params: *const f64,
    n_params: usize,
    q: f64,
    hbar: f64,
    mass: f64,
    out: *mut *mut QsSpec,
) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let kind: Kind = c_str(kind, "kind")?.parse().map_err(fail)?;
        let names = kind.param_names();
        if n_params != names.len() {
            return Err(fail(Error::Invalid(format!("{kind} takes {} parameters, got {n_params}", names.len()))));
        }
        if n_params > 0 && params.is_null() {
            return Err(null("params"));
        }
        let values = if n_params == 0 { &[][..] } else { std::slice::from_raw_parts(params, n_params) };
        let mut flat = FlatSpec { kind: kind.to_string(), q: Some(q), hbar: Some(hbar), mass: Some(mass), ..Default::default() };
        for (name, v) in names.iter().zip(values) {
            flat.set(name, *v).map_err(fail)?;
        }
        let spec = PotentialSpec::try_from(flat).map_err(fail)?;
        *out = Box::into_raw(Box::new(QsSpec(spec)));
        Ok(())
    })
}

/// Creates a specification from its JSON form, e.g.
/// `{"kind": "V1", "q": 1, "nu": 2.5}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_spec_from_json(json: *const c_char, out: *mut *mut QsSpec) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = c_str(json, "json")?;
        let spec: PotentialSpec =
            serde_json::from_str(text).map_err(|e| fail(Error::Invalid(format!("specification JSON: {e}"))))?;
        *out = Box::into_raw(Box::new(QsSpec(spec)));
        Ok(())
    })
}

/// Writes the continuum threshold.
///
/// # Safety
/// `spec` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_spec_threshold(spec: *const QsSpec, out: *mut f64) -> QsStatus {
    guard(|| {
        let spec = as_ref(spec, "spec")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = spec.0.threshold();
        Ok(())
    })
}

/// # Safety
/// `spec` must be null or a handle from `qs_spec_new` / `qs_spec_from_json`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qs_spec_free(spec: *mut QsSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Computes the bound-state spectrum.
///
/// # Safety
/// `spec` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_spectrum_new(spec: *const QsSpec, out: *mut *mut QsSpectrum) -> QsStatus {
    guard(|| {
        let spec = as_ref(spec, "spec")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = spectra::spectrum(&spec.0).map_err(fail)?;
        *out = Box::into_raw(Box::new(QsSpectrum(s)));
        Ok(())
    })
}

/// Number of levels; 0 for a null handle.
///
/// # Safety
/// `spectrum` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_spectrum_len(spectrum: *const QsSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the level energies, ascending.
///
/// # Safety
/// `spectrum` must be a live handle, `buf` valid for `cap` values and `len`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_spectrum_energies(
    spectrum: *const QsSpectrum,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> QsStatus {
    guard(|| {
        let s = as_ref(spectrum, "spectrum")?;
        write_slice(&s.0.energies(), buf, cap, len)
    })
}

/// # Safety
/// `spectrum` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_spectrum_free(spectrum: *mut QsSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Builds the normalized `n`-th bound state (V1-V6).
///
/// # Safety
/// `spec` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_bound_state_new(spec: *const QsSpec, n: u32, out: *mut *mut QsBoundState) -> QsStatus {
    guard(|| {
        let spec = as_ref(spec, "spec")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let state = BoundState::new(&spec.0, n).map_err(fail)?;
        *out = Box::into_raw(Box::new(QsBoundState(state)));
        Ok(())
    })
}

/// Energy of a bound state.
///
/// # Safety
/// `state` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_bound_state_energy(state: *const QsBoundState, out: *mut f64) -> QsStatus {
    guard(|| {
        let state = as_ref(state, "state")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = state.0.energy;
        Ok(())
    })
}

/// Evaluates the normalized wave function at a raw-frame point.
///
/// # Safety
/// `state` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_bound_state_psi(state: *const QsBoundState, x: f64, out: *mut f64) -> QsStatus {
    guard(|| {
        let state = as_ref(state, "state")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = state.0.psi(x).map_err(fail)?;
        Ok(())
    })
}

/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_bound_state_free(state: *mut QsBoundState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Evaluates `G(x1, x2; E)` at complex `E = e_re + i e_im`.
///
/// # Safety
/// `spec`, `out_re` and `out_im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_green(
    spec: *const QsSpec,
    x1: f64,
    x2: f64,
    e_re: f64,
    e_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QsStatus {
    guard(|| {
        let spec = as_ref(spec, "spec")?;
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let g = green::green(&spec.0, x1, x2, Complex64::new(e_re, e_im)).map_err(fail)?;
        *out_re = g.re;
        *out_im = g.im;
        Ok(())
    })
}

/// Poles of the Green function in `[lo, hi]`, scanned at `resolution`
/// energies.
///
/// # Safety
/// `spec` must be a live handle, `buf` valid for `cap` values and `len` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_pole_scan(
    spec: *const QsSpec,
    lo: f64,
    hi: f64,
    resolution: usize,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> QsStatus {
    guard(|| {
        let spec = as_ref(spec, "spec")?;
        let poles = green::pole_scan(&spec.0, (lo, hi), resolution).map_err(fail)?;
        write_slice(&poles, buf, cap, len)
    })
}
