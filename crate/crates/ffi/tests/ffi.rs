use std::ffi::{c_char, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qspectra_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 512];
    let n = unsafe { qs_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(511)].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

fn spec(kind: &str, params: &[f64], q: f64) -> *mut QsSpec {
    let kind = CString::new(kind).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { qs_spec_new(kind.as_ptr(), params.as_ptr(), params.len(), q, 1.0, 0.5, &mut out) };
    assert_eq!(st, QsStatus::Ok, "{}", last_error());
    out
}

#[test]
fn spectrum_round_trip() {
    let s = spec("V1", &[2.5], 1.0);
    let mut sp = ptr::null_mut();
    assert_eq!(unsafe { qs_spectrum_new(s, &mut sp) }, QsStatus::Ok);
    assert_eq!(unsafe { qs_spectrum_len(sp) }, 2);
    let mut buf = [0.0; 4];
    let mut len = 0;
    assert_eq!(unsafe { qs_spectrum_energies(sp, buf.as_mut_ptr(), buf.len(), &mut len) }, QsStatus::Ok);
    assert_eq!(&buf[..len], &[-4.0, -1.0]);
    let mut thr = f64::NAN;
    assert_eq!(unsafe { qs_spec_threshold(s, &mut thr) }, QsStatus::Ok);
    assert_eq!(thr, 0.0);
    unsafe {
        qs_spectrum_free(sp);
        qs_spec_free(s);
    }
}

#[test]
fn errors_are_reported() {
    let kind = CString::new("V9").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { qs_spec_new(kind.as_ptr(), ptr::null(), 0, 1.0, 1.0, 0.5, &mut out) };
    assert_eq!(st, QsStatus::Invalid);
    assert!(out.is_null());
    assert!(last_error().contains("V9"));

    let kind = CString::new("V2").unwrap();
    let st = unsafe { qs_spec_new(kind.as_ptr(), [1.0].as_ptr(), 1, 1.0, 1.0, 0.5, &mut out) };
    assert_eq!(st, QsStatus::Invalid);

    assert_eq!(unsafe { qs_spectrum_new(ptr::null(), &mut ptr::null_mut()) }, QsStatus::NullPointer);

    let s = spec("V1", &[2.5], 1.0);
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { qs_green(s, 0.0, 0.0, -1.0, 0.0, &mut re, &mut im) }, QsStatus::Pole);
    assert_eq!(unsafe { qs_green(s, 0.0, 0.0, 1.0, 0.0, &mut re, &mut im) }, QsStatus::Domain);
    unsafe { qs_spec_free(s) };
}

#[test]
fn json_spec_green_and_poles() {
    let json = CString::new(r#"{"kind": "V2", "eta": 1.5, "nu": 5.5}"#).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qs_spec_from_json(json.as_ptr(), &mut s) }, QsStatus::Ok);
    let (mut a, mut b, mut im) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(qs_green(s, 0.7, 1.9, -3.0, 0.0, &mut a, &mut im), QsStatus::Ok);
        assert_eq!(qs_green(s, 1.9, 0.7, -3.0, 0.0, &mut b, &mut im), QsStatus::Ok);
    }
    assert!((a - b).abs() < 1e-12 * a.abs());
    let mut buf = [0.0; 1];
    let mut len = 0;
    let st = unsafe { qs_pole_scan(s, -12.0, -1e-6, 1500, buf.as_mut_ptr(), buf.len(), &mut len) };
    assert_eq!(st, QsStatus::BufferTooSmall);
    assert_eq!(len, 2);
    let mut buf = [0.0; 2];
    assert_eq!(unsafe { qs_pole_scan(s, -12.0, -1e-6, 1500, buf.as_mut_ptr(), buf.len(), &mut len) }, QsStatus::Ok);
    assert!((buf[0] + 9.0).abs() < 1e-8 && (buf[1] + 1.0).abs() < 1e-8, "{buf:?}");
    unsafe { qs_spec_free(s) };
}

#[test]
fn bound_state_handle() {
    let s = spec("V1", &[2.5], 1.0);
    let mut st = ptr::null_mut();
    assert_eq!(unsafe { qs_bound_state_new(s, 1, &mut st) }, QsStatus::Ok);
    let (mut e, mut p0, mut p1) = (0.0, 1.0, 0.0);
    unsafe {
        assert_eq!(qs_bound_state_energy(st, &mut e), QsStatus::Ok);
        assert_eq!(qs_bound_state_psi(st, 0.0, &mut p0), QsStatus::Ok);
        assert_eq!(qs_bound_state_psi(st, 0.5, &mut p1), QsStatus::Ok);
    }
    assert!((e + 1.0).abs() < 1e-12);
    // odd state
    assert!(p0.abs() < 1e-12 && p1.abs() > 1e-3);
    assert_eq!(unsafe { qs_bound_state_new(s, 5, &mut ptr::null_mut()) }, QsStatus::Contract);
    unsafe {
        qs_bound_state_free(st);
        qs_spec_free(s);
        qs_spec_free(ptr::null_mut());
    }
}

#[test]
fn header_lists_the_api() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/qspectra.h")).unwrap();
    for name in [
        "qs_spec_new",
        "qs_spec_from_json",
        "qs_spec_free",
        "qs_spectrum_new",
        "qs_spectrum_energies",
        "qs_green",
        "qs_pole_scan",
        "qs_bound_state_psi",
        "qs_last_error_message",
        "QS_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a C program against the static library.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests/ffi-<hash> lives in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libqspectra_ffi.a");
    if !lib.exists() {
        eprintln!("static library not built at {}, skipping", lib.display());
        return;
    }
    let out = std::env::temp_dir().join(format!("qspectra_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&out)
        .status();
    let Ok(status) = status else {
        eprintln!("no C compiler, skipping");
        return;
    };
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
