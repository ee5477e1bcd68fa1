use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use jackpoly_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = jp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { jp_string_free(p) };
    s
}

unsafe fn build(family: &str, label: &str, n: usize, alpha: Option<&str>, qt: Option<&str>) -> (JpStatus, *mut JpPoly) {
    let (f, l) = (c(family), c(label));
    let alpha = alpha.map(c);
    let qt = qt.map(c);
    let mut out = ptr::null_mut();
    let st = jp_compute(
        f.as_ptr(),
        l.as_ptr(),
        n,
        alpha.as_ref().map_or(ptr::null(), |s| s.as_ptr()),
        ptr::null(),
        qt.as_ref().map_or(ptr::null(), |s| s.as_ptr()),
        &mut out,
    );
    (st, out)
}

#[test]
fn compute_and_round_trip() {
    unsafe {
        let (st, p) = build("jack-p", "2,0", 0, Some("1"), None);
        assert_eq!(st, JpStatus::Ok);
        let mut nvars = 0;
        let mut nterms = 0;
        assert_eq!(jp_poly_nvars(p, &mut nvars), JpStatus::Ok);
        assert_eq!(jp_poly_nterms(p, &mut nterms), JpStatus::Ok);
        assert_eq!((nvars, nterms), (2, 3));
        let mut text = ptr::null_mut();
        assert_eq!(jp_poly_to_text(p, &mut text), JpStatus::Ok);
        let text = take_string(text);
        assert!(text.contains("1 1 : 1"), "{text}");
        let mut back = ptr::null_mut();
        assert_eq!(jp_poly_from_text(c(&text).as_ptr(), &mut back), JpStatus::Ok);
        let mut eq = false;
        assert_eq!(jp_poly_equal(p, back, &mut eq), JpStatus::Ok);
        assert!(eq);
        jp_poly_free(back);
        jp_poly_free(p);

        let (st, m) = build("mac-p", "[0,1]", 2, None, Some("p^2,p^-1"));
        assert_eq!(st, JpStatus::Ok);
        jp_poly_free(m);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let (st, p) = build("jack-p", "2,0", 0, Some("-1"), None);
        assert_eq!(st, JpStatus::Pole);
        assert!(p.is_null());
        assert!(last_error().contains("pole"), "{}", last_error());

        let (st, _) = build("nope", "1", 0, None, None);
        assert_eq!(st, JpStatus::InvalidArgument);
        let (st, _) = build("jack-p", "1,2", 0, None, None);
        assert_eq!(st, JpStatus::InvalidArgument);
        let (st, _) = build("jack-p", "1", 0, None, Some("p^2,p"));
        assert_eq!(st, JpStatus::InvalidArgument);

        let mut out = ptr::null_mut();
        assert_eq!(jp_compute(ptr::null(), ptr::null(), 0, ptr::null(), ptr::null(), ptr::null(), &mut out), JpStatus::NullPointer);
        assert_eq!(jp_poly_to_text(ptr::null(), ptr::null_mut()), JpStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(jp_poly_from_text(bad.as_ptr() as *const c_char, &mut out), JpStatus::InvalidUtf8);

        let (st, p) = build("jack-e", "1,0", 0, None, None);
        assert_eq!(st, JpStatus::Ok);
        assert!(jp_last_error_message().is_null());
        jp_poly_free(p);
        jp_poly_free(ptr::null_mut());
        jp_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_reports() {
    unsafe {
        let id = c("PROP1");
        let params = c(r#"{"r": 2, "n": 3, "kappa": [1]}"#);
        let mut rep = ptr::null_mut();
        assert_eq!(jp_verify(id.as_ptr(), params.as_ptr(), false, &mut rep), JpStatus::Ok);
        let mut v = JpVerdict::Fails;
        assert_eq!(jp_report_verdict(rep, &mut v), JpStatus::Ok);
        assert_eq!(v, JpVerdict::Holds);
        let mut json = ptr::null_mut();
        assert_eq!(jp_report_to_json(rep, &mut json), JpStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(json["verdict"], "holds");
        jp_report_free(rep);

        assert_eq!(jp_verify(id.as_ptr(), params.as_ptr(), true, &mut rep), JpStatus::Ok);
        assert_eq!(jp_report_verdict(rep, &mut v), JpStatus::Ok);
        assert_eq!(v, JpVerdict::Fails);
        jp_report_free(rep);

        assert_eq!(jp_verify(c("NOPE").as_ptr(), ptr::null(), false, &mut rep), JpStatus::InvalidArgument);
        assert!(rep.is_null());
        assert_eq!(jp_verify(id.as_ptr(), c("{").as_ptr(), false, &mut rep), JpStatus::InvalidArgument);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/jackpoly.h")).unwrap();
    for name in [
        "jp_compute",
        "jp_poly_from_text",
        "jp_poly_to_text",
        "jp_poly_free",
        "jp_verify",
        "jp_report_verdict",
        "jp_report_to_json",
        "jp_report_free",
        "jp_string_free",
        "jp_last_error_message",
        "JP_STATUS_POLE",
        "typedef struct JpPoly JpPoly",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a C program against the header and the shared library.
#[test]
fn c_program_links() {
    let Some(cc) = ["cc", "gcc", "clang"].into_iter().find(|cc| Command::new(cc).arg("--version").output().is_ok()) else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libjackpoly_ffi.so");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "jackpoly.h"
int main(void) {
    JpPoly *p = NULL;
    if (jp_compute("jack-p", "1,1", 0, "2", NULL, NULL, &p) != JP_STATUS_OK) return 1;
    char *text = NULL;
    if (jp_poly_to_text(p, &text) != JP_STATUS_OK) return 2;
    int ok = strstr(text, "1 1 : 1") != NULL;
    jp_string_free(text);
    jp_poly_free(p);
    if (jp_compute("jack-p", "2,0", 0, "-1", NULL, NULL, &p) != JP_STATUS_POLE) return 3;
    if (jp_last_error_message() == NULL) return 4;
    JpReport *r = NULL;
    JpVerdict v;
    if (jp_verify("PROP2", "{\"l\":1,\"n\":3}", false, &r) != JP_STATUS_OK) return 5;
    if (jp_report_verdict(r, &v) != JP_STATUS_OK || v != JP_VERDICT_HOLDS) return 6;
    jp_report_free(r);
    return ok ? 0 : 7;
}
"#,
    )
    .unwrap();
    let bin = dir.join("smoke");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(profile_dir)
        .arg("-ljackpoly_ffi")
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&bin).env("LD_LIBRARY_PATH", profile_dir).status().unwrap();
    assert_eq!(run.code(), Some(0));
}

