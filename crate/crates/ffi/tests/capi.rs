use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use diskladder_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = dl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn zernike_round_trip() {
    unsafe {
        let mut p: *mut DlPoly = ptr::null_mut();
        assert_eq!(dl_poly_zernike(1, 1, c("0/1").as_ptr(), &mut p), DlStatus::Ok);
        assert_eq!(dl_poly_num_terms(p), 2);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(dl_poly_eval(p, 0.0, 0.0, &mut re, &mut im), DlStatus::Ok);
        assert_eq!((re, im), (-1.0, 0.0));

        let mut json = ptr::null_mut();
        assert_eq!(dl_poly_to_json(p, &mut json), DlStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        assert!(text.contains("\"rational\""));
        let mut back: *mut DlPoly = ptr::null_mut();
        assert_eq!(dl_poly_from_json(json, &mut back), DlStatus::Ok);
        assert_eq!(dl_poly_num_terms(back), 2);
        dl_string_free(json);
        dl_poly_free(back);
        dl_poly_free(p);

        let mut f: *mut DlPoly = ptr::null_mut();
        assert_eq!(dl_poly_zernike(3, 2, c("0.5").as_ptr(), &mut f), DlStatus::Ok);
        assert_eq!(dl_poly_eval(f, 1.0, 0.0, &mut re, &mut im), DlStatus::Ok);
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        dl_poly_free(f);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut p: *mut DlPoly = ptr::null_mut();
        assert_eq!(dl_poly_zernike(1, 1, c("abc").as_ptr(), &mut p), DlStatus::Parse);
        assert!(last_error().contains("abc"));
        assert_eq!(dl_poly_zernike(1, 1, ptr::null(), &mut p), DlStatus::NullPointer);
        assert_eq!(
            dl_poly_zernike(1, 1, c("0").as_ptr(), ptr::null_mut()),
            DlStatus::NullPointer
        );
        let mut h = 0.0;
        assert_eq!(dl_norm_h(1, 1, -1.0, &mut h), DlStatus::Domain);
        assert_eq!(dl_norm_h(1, 1, 0.0, &mut h), DlStatus::Ok);
        assert!((h - 1.0 / 3.0).abs() < 1e-15);
        let mut r: *mut DlDiskRule = ptr::null_mut();
        assert_eq!(dl_disk_rule_new(-2.0, 2, 2, &mut r), DlStatus::Domain);
        assert!(r.is_null());
        dl_poly_free(ptr::null_mut());
        dl_disk_rule_free(ptr::null_mut());
        dl_string_free(ptr::null_mut());
    }
}

#[test]
fn disk_rule_and_inner_product() {
    unsafe {
        let mut rule: *mut DlDiskRule = ptr::null_mut();
        assert_eq!(dl_disk_rule_new(0.0, 1, 1, &mut rule), DlStatus::Ok);
        assert_eq!(dl_disk_rule_len(rule), 1);
        let (mut x, mut y, mut w) = (0.0, 0.0, 0.0);
        assert_eq!(dl_disk_rule_node(rule, 0, &mut x, &mut y, &mut w), DlStatus::Ok);
        assert!((w - std::f64::consts::PI).abs() < 1e-14);
        assert_eq!(dl_disk_rule_node(rule, 1, &mut x, &mut y, &mut w), DlStatus::Domain);
        dl_disk_rule_free(rule);

        assert_eq!(dl_disk_rule_new(0.0, 4, 9, &mut rule), DlStatus::Ok);
        let mut p: *mut DlPoly = ptr::null_mut();
        assert_eq!(dl_poly_zernike(1, 1, c("0").as_ptr(), &mut p), DlStatus::Ok);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(dl_disk_inner(rule, p, p, &mut re, &mut im), DlStatus::Ok);
        assert!((re - 1.0 / 3.0).abs() < 1e-12 && im.abs() < 1e-12);
        dl_poly_free(p);
        dl_disk_rule_free(rule);
    }
}

#[test]
fn verify_family() {
    unsafe {
        let (mut passed, mut failed) = (0usize, 0usize);
        assert_eq!(
            dl_verify(c("Z7").as_ptr(), 3, 3, &mut passed, &mut failed),
            DlStatus::Ok
        );
        assert!(passed > 0);
        assert_eq!(failed, 0);
        assert_eq!(
            dl_verify(c("Z12").as_ptr(), 3, 3, &mut passed, &mut failed),
            DlStatus::Parse
        );
    }
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("diskladder.h")
}

fn compiler_check(compiler: &str, lang: &str) {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_header.c");
    std::fs::write(
        &src,
        r#"#include "diskladder.h"
int main(void) {
    DlPoly *p = NULL;
    double re = 0.0, im = 0.0;
    if (dl_poly_zernike(2, 1, "1/2", &p) != DL_STATUS_OK) return 1;
    dl_poly_eval(p, 0.5, 0.25, &re, &im);
    dl_poly_free(p);
    return re > 1.0 ? 1 : 0;
}
"#,
    )
    .unwrap();
    let inc = header().parent().unwrap().to_path_buf();
    let status = match Command::new(compiler)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
        .arg("-I")
        .arg(&inc)
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{compiler} unavailable: {e}");
            return;
        }
    };
    assert!(status.success(), "{compiler} rejected the header");
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let text = std::fs::read_to_string(header()).unwrap();
    for sym in [
        "dl_poly_zernike",
        "dl_disk_rule_new",
        "dl_last_error",
        "DL_STATUS_PANIC",
        "dl_verify",
    ] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    compiler_check("cc", "c");
    compiler_check("c++", "c++");
}
