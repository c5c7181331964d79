use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use umbral_special_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    unsafe {
        umbral_last_error(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn blank() -> UmbralSeriesResult {
    UmbralSeriesResult {
        value: f64::NAN,
        terms_used: 0,
        tail_estimate: 0.0,
        path: UmbralPath::Series,
    }
}

#[test]
fn evaluates_with_default_policy() {
    let mut out = blank();
    let st = unsafe { umbral_sph_j(ptr::null(), 0, 1.0, &mut out) };
    assert_eq!(st, UmbralStatus::Ok);
    assert!((out.value - 1f64.sin()).abs() < 1e-14);
    assert!(out.terms_used > 0);

    let st = unsafe { umbral_struve_h(ptr::null(), 0.5, std::f64::consts::PI, &mut out) };
    assert_eq!(st, UmbralStatus::Ok);
    assert!((out.value - 0.9003163161571061).abs() < 1e-13);

    let mut g = 0.0;
    assert_eq!(unsafe { umbral_gamma(5.0, &mut g) }, UmbralStatus::Ok);
    assert!((g - 24.0).abs() < 1e-12);
}

#[test]
fn policy_handle_round_trip() {
    let p = umbral_policy_new();
    unsafe {
        assert_eq!(umbral_policy_set_tolerances(p, 1e-10, 0.0), UmbralStatus::Ok);
        assert_eq!(umbral_policy_set_tolerances(p, 2.0, 0.0), UmbralStatus::Domain);
        assert!(last_error().contains("rel_tol"));
        assert_eq!(umbral_policy_set_max_terms(p, 0), UmbralStatus::Domain);
        assert_eq!(umbral_policy_force_path(p, UmbralPath::ExtendedSeries, true), UmbralStatus::Ok);
        let mut out = blank();
        assert_eq!(umbral_cyl_j(p, 0.0, 10.0, &mut out), UmbralStatus::Ok);
        assert_eq!(out.path, UmbralPath::ExtendedSeries);
        assert!((out.value - (-0.2459357644513483)).abs() < 1e-13);
        umbral_policy_free(p);
        umbral_policy_free(ptr::null_mut());
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut out = blank();
    unsafe {
        assert_eq!(umbral_sph_j(ptr::null(), -1, 0.0, &mut out), UmbralStatus::Domain);
        assert!(!last_error().is_empty());
        assert_eq!(umbral_sph_j(ptr::null(), 0, 1.0, ptr::null_mut()), UmbralStatus::NullPointer);
        let mut g = 0.0;
        assert_eq!(umbral_gamma(-2.0, &mut g), UmbralStatus::Pole);
        assert_eq!(umbral_gamma(1.5, &mut g), UmbralStatus::Ok);
        assert!(last_error().is_empty());
    }
}

#[test]
fn verify_single_point() {
    let id = CString::new("I03").unwrap();
    let names = [CString::new("n").unwrap(), CString::new("x").unwrap()];
    let name_ptrs: Vec<*const c_char> = names.iter().map(|s| s.as_ptr()).collect();
    let values = [2.0, 3.0];
    let mut report = std::mem::MaybeUninit::<UmbralReport>::uninit();
    unsafe {
        let st = umbral_verify(ptr::null(), id.as_ptr(), name_ptrs.as_ptr(), values.as_ptr(), 2, report.as_mut_ptr());
        assert_eq!(st, UmbralStatus::Ok, "{}", last_error());
        let r = report.assume_init();
        assert_eq!(CStr::from_ptr(r.id.as_ptr()).to_str().unwrap(), "I03");
        assert_eq!(r.status, UmbralReportStatus::Pass);
        assert!(r.abs_err <= 1e-10);

        let bogus = CString::new("I99").unwrap();
        let st = umbral_verify(ptr::null(), bogus.as_ptr(), ptr::null(), ptr::null(), 0, report.as_mut_ptr());
        assert_eq!(st, UmbralStatus::UnknownIdentity);
        let st = umbral_verify(ptr::null(), id.as_ptr(), name_ptrs.as_ptr(), values.as_ptr(), 1, report.as_mut_ptr());
        assert_eq!(st, UmbralStatus::InvalidArgument);
    }
}

#[test]
fn report_list_accessors() {
    unsafe {
        assert_eq!(umbral_report_list_len(ptr::null()), 0);
        let mut r = std::mem::MaybeUninit::<UmbralReport>::uninit();
        assert_eq!(umbral_report_list_get(ptr::null(), 0, r.as_mut_ptr()), UmbralStatus::NullPointer);
        assert_eq!(umbral_verify_all(ptr::null(), 1, ptr::null_mut()), UmbralStatus::NullPointer);
    }
    assert_eq!(umbral_identity_count(), 24);
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/umbral_special.h")
}

#[test]
fn header_declares_entry_points() {
    let text = std::fs::read_to_string(header()).unwrap();
    for f in [
        "umbral_sph_j", "umbral_cyl_j", "umbral_struve_h", "umbral_humbert2", "umbral_humbert3", "umbral_hyp1f2",
        "umbral_delta", "umbral_s1", "umbral_s2", "umbral_anger", "umbral_weber", "umbral_gamma", "umbral_rgamma",
        "umbral_policy_new", "umbral_policy_free", "umbral_verify", "umbral_verify_all", "umbral_report_list_free",
        "umbral_last_error",
    ] {
        assert!(text.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(text.contains("typedef struct UmbralPolicy UmbralPolicy;"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; header compile check skipped");
        return;
    };
    let dir = tempdir();
    let main = dir.join("use_header.c");
    std::fs::write(
        &main,
        r#"#include "umbral_special.h"
int main(void) {
    UmbralPolicy *p = umbral_policy_new();
    UmbralSeriesResult r;
    UmbralStatus st = umbral_sph_j(p, 2, 1.5, &r);
    umbral_policy_free(p);
    return st == UMBRAL_STATUS_OK ? 0 : 1;
}
"#,
    )
    .unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header().parent().unwrap())
        .arg(&main)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("umbral-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
