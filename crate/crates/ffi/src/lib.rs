//! C interface to `diskladder`.
//!
//! Every fallible call returns a [`DlStatus`]; on failure the message is
//! available from [`dl_last_error`] on the same thread. Handles are opaque
//! and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use diskladder::polyrep::AnyBiPoly;
use diskladder::quadrature::{disk_rule, DiskRule};
use diskladder::scalar::Param;
use diskladder::verify::{run_verification, Family, VerifyConfig};
use diskladder::zernike::{build_q, norm_h};
use diskladder::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullPointer = -1,
    Parse = -2,
    Domain = -3,
    Underdetermined = -4,
    Io = -5,
    Panic = -99,
}

/// A polynomial in `z`, `z̄` with exact or floating coefficients.
pub struct DlPoly(AnyBiPoly);

/// A product quadrature rule on the unit disk.
pub struct DlDiskRule(DiskRule);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DlStatus {
    match e {
        Error::Parse(_) => DlStatus::Parse,
        Error::Underdetermined { .. } => DlStatus::Underdetermined,
        Error::Io(_) => DlStatus::Io,
        _ => DlStatus::Domain,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (DlStatus, String)>) -> DlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DlStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (DlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (DlStatus, String) {
    (DlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (DlStatus, String)> {
    if s.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (DlStatus::Parse, format!("{what} is not valid UTF-8")))
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds `Q^μ_{k,j}`. `mu` is `"p/q"` for exact coefficients, otherwise a
/// decimal for floating ones.
///
/// # Safety
/// `mu` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_zernike(k: u32, j: u32, mu: *const c_char, out: *mut *mut DlPoly) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let mu: Param = read_str(mu, "mu")?.parse().map_err(lib_err)?;
        let poly = match mu {
            Param::Exact(r) => AnyBiPoly::Rational(build_q(k, j, &r).map_err(lib_err)?),
            Param::Float(v) => AnyBiPoly::Float(build_q(k, j, &v).map_err(lib_err)?),
        };
        *out = Box::into_raw(Box::new(DlPoly(poly)));
        Ok(())
    })
}

/// Parses a polynomial from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_from_json(json: *const c_char, out: *mut *mut DlPoly) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let p = AnyBiPoly::from_json(read_str(json, "json")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DlPoly(p)));
        Ok(())
    })
}

/// # Safety
/// `poly` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_free(poly: *mut DlPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Number of stored (non-zero) terms.
///
/// # Safety
/// `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_num_terms(poly: *const DlPoly) -> usize {
    match poly.as_ref() {
        Some(DlPoly(AnyBiPoly::Rational(p))) => p.len(),
        Some(DlPoly(AnyBiPoly::Float(p))) => p.len(),
        None => 0,
    }
}

/// Evaluates at `x + iy`.
///
/// # Safety
/// `poly` must be a live handle; `re` and `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_eval(poly: *const DlPoly, x: f64, y: f64, re: *mut f64, im: *mut f64) -> DlStatus {
    guard(|| {
        let p = poly.as_ref().ok_or_else(|| null_err("poly"))?;
        if re.is_null() || im.is_null() {
            return Err(null_err("output"));
        }
        let v = p.0.to_float().eval(Complex64::new(x, y));
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// JSON form of the polynomial; release with [`dl_string_free`].
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_to_json(poly: *const DlPoly, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let p = poly.as_ref().ok_or_else(|| null_err("poly"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = CString::new(p.0.to_json())
            .map_err(|_| (DlStatus::Domain, "interior NUL".to_string()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `h^μ_{k,j}`, the squared norm of `Q^μ_{k,j}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_norm_h(k: u32, j: u32, mu: f64, out: *mut f64) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = norm_h(k, j, &mu).map_err(lib_err)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_disk_rule_new(
    mu: f64,
    n_radial: usize,
    n_angular: usize,
    out: *mut *mut DlDiskRule,
) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let rule = disk_rule(mu, n_radial, n_angular).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DlDiskRule(rule)));
        Ok(())
    })
}

/// # Safety
/// `rule` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_disk_rule_free(rule: *mut DlDiskRule) {
    if !rule.is_null() {
        drop(Box::from_raw(rule));
    }
}

/// # Safety
/// `rule` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dl_disk_rule_len(rule: *const DlDiskRule) -> usize {
    rule.as_ref().map_or(0, |r| r.0.len())
}

/// Node `index` as `(x, y, weight)`.
///
/// # Safety
/// `rule` must be a live handle; `x`, `y`, `weight` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dl_disk_rule_node(
    rule: *const DlDiskRule,
    index: usize,
    x: *mut f64,
    y: *mut f64,
    weight: *mut f64,
) -> DlStatus {
    guard(|| {
        let r = rule.as_ref().ok_or_else(|| null_err("rule"))?;
        if x.is_null() || y.is_null() || weight.is_null() {
            return Err(null_err("output"));
        }
        let n = r.0.nodes.get(index).ok_or_else(|| {
            (
                DlStatus::Domain,
                format!("node {index} out of range ({} nodes)", r.0.len()),
            )
        })?;
        *x = n.x;
        *y = n.y;
        *weight = n.weight;
        Ok(())
    })
}

/// `b_μ ∫ p conj(q) w_μ` with the given rule, both polynomials in float form.
///
/// # Safety
/// All handles must be live; `re` and `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dl_disk_inner(
    rule: *const DlDiskRule,
    p: *const DlPoly,
    q: *const DlPoly,
    re: *mut f64,
    im: *mut f64,
) -> DlStatus {
    guard(|| {
        let r = rule.as_ref().ok_or_else(|| null_err("rule"))?;
        let p = p.as_ref().ok_or_else(|| null_err("p"))?;
        let q = q.as_ref().ok_or_else(|| null_err("q"))?;
        if re.is_null() || im.is_null() {
            return Err(null_err("output"));
        }
        let v = r.0.inner(&p.0.to_float(), &q.0.to_float());
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// Runs the exact verification suite for one family (`"ladder1"`, `"Z5"`,
/// `"all"`, ...) on the default parameter grid with the given index bounds.
///
/// # Safety
/// `family` must be a NUL-terminated string; `passed` and `failed` valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn dl_verify(
    family: *const c_char,
    kmax: u32,
    jmax: u32,
    passed: *mut usize,
    failed: *mut usize,
) -> DlStatus {
    guard(|| {
        if passed.is_null() || failed.is_null() {
            return Err(null_err("output"));
        }
        let fam: Family = read_str(family, "family")?.parse().map_err(lib_err)?;
        let cfg = VerifyConfig {
            kmax,
            jmax,
            ..VerifyConfig::for_family(fam)
        };
        let report = run_verification(&cfg);
        *passed = report.summary.passed;
        *failed = report.summary.failed;
        Ok(())
    })
}
