use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use seshadri_ffi::*;

fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ses_string_free(s) };
    out
}

fn last_error() -> String {
    let p = ses_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn epsilon_min_exact() {
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { ses_epsilon_min(7, 4, 9, &mut e) }, SesStatus::Ok);
    unsafe {
        assert_eq!(ses_estimate_kind(e), SesEstimateKind::Exact);
        let (mut n, mut d) = (0, 0);
        assert_eq!(ses_estimate_value(e, &mut n, &mut d), SesStatus::Ok);
        assert_eq!((n, d), (4, 1));
        assert_eq!(take_string(ses_estimate_provenance(e)), "odd types");
        ses_estimate_free(e);
    }
}

#[test]
fn epsilon_one_bounded() {
    let mut e = ptr::null_mut();
    assert_eq!(
        unsafe { ses_epsilon_one(6, 5, 11, 0, 0, &mut e) },
        SesStatus::Ok
    );
    unsafe {
        assert_eq!(ses_estimate_kind(e), SesEstimateKind::BoundedBelow);
        let (mut n, mut d) = (0, 0);
        assert_eq!(
            ses_estimate_value(e, &mut n, &mut d),
            SesStatus::InvalidArgument
        );
        let json = take_string(ses_estimate_json(e));
        assert!(
            json.contains("\"lower\":{\"d\":110,\"q\":\"0\",\"r\":\"93/100\"}"),
            "{json}"
        );
        ses_estimate_free(e);
    }
    assert_eq!(
        unsafe { ses_epsilon_one(6, 5, 11, 94, 100, &mut e) },
        SesStatus::InvalidArgument
    );
    assert!(e.is_null());
    assert!(last_error().contains("not feasible"));
}

#[test]
fn error_codes() {
    let mut e = ptr::null_mut();
    assert_eq!(
        unsafe { ses_epsilon_min(6, -1, 3, &mut e) },
        SesStatus::NotAmple
    );
    assert!(last_error().contains("not ample"));
    assert_eq!(
        unsafe { ses_epsilon_min(9, 1, 1, &mut e) },
        SesStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { ses_epsilon_at_point(3, 1, 1, SesPointKind::OnSingularFibre, 5, &mut e) },
        SesStatus::InvalidPoint
    );
    assert_eq!(
        unsafe { ses_epsilon_min(1, 1, 1, ptr::null_mut()) },
        SesStatus::NullPointer
    );
    let mut l2 = 0;
    assert_eq!(
        unsafe { ses_self_intersection(5, 11, &mut l2) },
        SesStatus::Ok
    );
    assert_eq!(l2, 110);
    assert_eq!(
        unsafe { ses_self_intersection(i64::MAX, 2, &mut l2) },
        SesStatus::Overflow
    );
}

#[test]
fn oracle_report() {
    let mut r = ptr::null_mut();
    let status =
        unsafe { ses_certify_point(7, 4, 9, SesPointKind::OnSingularFibre, 6, 100, &mut r) };
    assert_eq!(status, SesStatus::Ok);
    unsafe {
        assert!(ses_report_is_tight(r));
        let json = take_string(ses_report_json(r));
        assert!(json.contains("\"scan_limit\":100"), "{json}");
        ses_report_free(r);
    }
    let status = unsafe { ses_certify_point(7, 4, 9, SesPointKind::Arbitrary, 0, 1, &mut r) };
    assert_eq!(status, SesStatus::InvalidArgument);
}

#[test]
fn pell() {
    let (mut p, mut q) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(
        unsafe { ses_pell_fundamental(110, &mut p, &mut q) },
        SesStatus::Ok
    );
    let (ps, qs) = (take_string(p), take_string(q));
    assert_eq!((ps.as_str(), qs.as_str()), ("2", "21"));
    assert_eq!(
        unsafe { ses_pell_fundamental(61, &mut p, &mut q) },
        SesStatus::Ok
    );
    unsafe {
        assert!(ses_pell_check(61, p, q));
        assert!(!ses_pell_check(62, p, q));
    }
    let (ps, qs) = (take_string(p), take_string(q));
    assert_eq!((ps.as_str(), qs.as_str()), ("226153980", "1766319049"));
    assert_eq!(
        unsafe { ses_pell_fundamental(49, &mut p, &mut q) },
        SesStatus::InvalidArgument
    );
    let bad = CString::new("x").unwrap();
    assert!(!unsafe { ses_pell_check(2, bad.as_ptr(), bad.as_ptr()) });
}

#[test]
fn version_and_free_null() {
    let v = unsafe { CStr::from_ptr(ses_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    unsafe {
        ses_string_free(ptr::null_mut());
        ses_estimate_free(ptr::null_mut());
        ses_report_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_abi_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/seshadri.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "typedef struct SesEstimate SesEstimate;",
        "typedef struct SesReport SesReport;",
        "SES_STATUS_NOT_AMPLE = 3",
        "ses_epsilon_min(uint8_t type_id, int64_t a, int64_t b, struct SesEstimate **out)",
        "ses_certify_point(",
        "ses_pell_fundamental(",
        "const char *ses_last_error(void);",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&header)
        .output()
        .expect("a C compiler on PATH");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
