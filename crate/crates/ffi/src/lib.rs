//! C interface to jackpoly.
//!
//! Every function returns a `JpStatus`; results come back through out
//! pointers. Handles are opaque and owned by the caller, who releases them
//! with the matching `*_free` function. Strings returned by the library are
//! released with `jp_string_free`. After a non-OK status,
//! `jp_last_error_message` describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use jackpoly::clustercli::{
    compute, parse_a, parse_alpha, parse_qt, verify, CaseParams, ClusterError, Coefficients, ComputeRequest, Family,
    IdentityCase, IdentityId, IdentityReport, Verdict,
};
use jackpoly::exactnum::ExactError;
use jackpoly::hermlag::HermLagError;
use jackpoly::jackcore::JackError;
use jackpoly::macdonald::MacError;
use jackpoly::mpoly::MPoly;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    /// A specialization hit a pole of the construction.
    Pole = 4,
    Io = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JpVerdict {
    Holds = 0,
    Fails = 1,
    NotApplicable = 2,
    ConjectureConsistent = 3,
    ConjectureViolated = 4,
}

impl From<Verdict> for JpVerdict {
    fn from(v: Verdict) -> JpVerdict {
        match v {
            Verdict::Holds => JpVerdict::Holds,
            Verdict::Fails => JpVerdict::Fails,
            Verdict::NotApplicable => JpVerdict::NotApplicable,
            Verdict::ConjectureConsistent => JpVerdict::ConjectureConsistent,
            Verdict::ConjectureViolated => JpVerdict::ConjectureViolated,
        }
    }
}

/// Opaque polynomial handle.
pub struct JpPoly(MPoly);

/// Opaque identity report handle.
pub struct JpReport(IdentityReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(JpStatus, String);

impl From<ClusterError> for Failure {
    fn from(e: ClusterError) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

fn exact_status(e: &ExactError) -> JpStatus {
    match e {
        ExactError::Pole { .. } => JpStatus::Pole,
        ExactError::Parse(_) => JpStatus::InvalidArgument,
        _ => JpStatus::Internal,
    }
}

fn jack_status(e: &JackError) -> JpStatus {
    match e {
        JackError::Pole { .. } | JackError::PoleAt(_) => JpStatus::Pole,
        JackError::Partition(_) => JpStatus::InvalidArgument,
        JackError::Exact(x) => exact_status(x),
        _ => JpStatus::Internal,
    }
}

fn status_of(e: &ClusterError) -> JpStatus {
    match e {
        ClusterError::Jack(j) => jack_status(j),
        ClusterError::HermLag(HermLagError::Jack(j)) => jack_status(j),
        ClusterError::HermLag(HermLagError::Exact(x)) => exact_status(x),
        ClusterError::HermLag(_) => JpStatus::InvalidArgument,
        ClusterError::Mac(MacError::Pole { .. } | MacError::LimitPole(_)) => JpStatus::Pole,
        ClusterError::Mac(MacError::Exact(x)) => exact_status(x),
        ClusterError::Mac(_) => JpStatus::Internal,
        ClusterError::Exact(x) => exact_status(x),
        ClusterError::Partition(_) | ClusterError::UnknownId(_) | ClusterError::Config(_) | ClusterError::Json(_) => {
            JpStatus::InvalidArgument
        }
        ClusterError::Io(_) => JpStatus::Io,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> JpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            JpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            JpStatus::Internal
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(JpStatus::NullPointer, format!("{name} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(JpStatus::InvalidArgument, msg.into())
}

/// Borrowed UTF-8 string; `None` for a null pointer.
unsafe fn opt_str<'a>(p: *const c_char, name: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(Some).map_err(|_| Failure(JpStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn req_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    opt_str(p, name)?.ok_or_else(|| null(name))
}

unsafe fn write_out<T>(out: *mut T, v: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(v);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn jp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds one polynomial.
///
/// `family` is one of jack-p, jack-e, jack-s, hermite-p, hermite-e,
/// laguerre-p, laguerre-e, mac-p, mac-e, mac-s. `label` lists parts
/// ("4,2,0") or frequencies ("[f0,f1,...]"); `n` of 0 takes the length from
/// the label. `alpha` and `a` ("generic" or "p/q") apply to the Jack-type
/// families and `qt` ("generic" or "p^d,p^e") to Macdonald ones; null means
/// generic.
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings; `out`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jp_compute(
    family: *const c_char,
    label: *const c_char,
    n: usize,
    alpha: *const c_char,
    a: *const c_char,
    qt: *const c_char,
    out: *mut *mut JpPoly,
) -> JpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let family: Family = req_str(family, "family")?.parse()?;
        let label = req_str(label, "label")?.to_string();
        let alpha = opt_str(alpha, "alpha")?;
        let a = opt_str(a, "a")?;
        let qt = opt_str(qt, "qt")?;
        let coefficients = if family.is_macdonald() {
            if alpha.is_some() || a.is_some() {
                return Err(invalid(format!("{family} takes qt, not alpha")));
            }
            Coefficients::Qt(parse_qt(qt.unwrap_or("generic"))?)
        } else {
            if qt.is_some() {
                return Err(invalid(format!("{family} takes alpha, not qt")));
            }
            Coefficients::Jack { alpha: parse_alpha(alpha.unwrap_or("generic"))?, a: parse_a(a.unwrap_or("generic"))? }
        };
        let req = ComputeRequest { family, label, n: (n > 0).then_some(n), coefficients };
        let poly = compute(&req)?;
        out.write(Box::into_raw(Box::new(JpPoly(poly))));
        Ok(())
    })
}

/// Parses the canonical text form.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jp_poly_from_text(text: *const c_char, out: *mut *mut JpPoly) -> JpStatus {
    guard(|| {
        let text = req_str(text, "text")?;
        let poly = MPoly::from_text(text).map_err(|e| invalid(e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(JpPoly(poly))), "out")
    })
}

/// Canonical text form; release with `jp_string_free`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jp_poly_to_text(poly: *const JpPoly, out: *mut *mut c_char) -> JpStatus {
    guard(|| {
        let poly = poly.as_ref().ok_or_else(|| null("poly"))?;
        write_out(out, to_c_string(poly.0.to_text()), "out")
    })
}

/// # Safety
/// `poly` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jp_poly_nvars(poly: *const JpPoly, out: *mut usize) -> JpStatus {
    guard(|| {
        let poly = poly.as_ref().ok_or_else(|| null("poly"))?;
        write_out(out, poly.0.nvars(), "out")
    })
}

/// Number of nonzero terms.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jp_poly_nterms(poly: *const JpPoly, out: *mut usize) -> JpStatus {
    guard(|| {
        let poly = poly.as_ref().ok_or_else(|| null("poly"))?;
        write_out(out, poly.0.len(), "out")
    })
}

/// Exact equality of two polynomials.
///
/// # Safety
/// Both handles must be live; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jp_poly_equal(a: *const JpPoly, b: *const JpPoly, out: *mut bool) -> JpStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        let b = b.as_ref().ok_or_else(|| null("b"))?;
        write_out(out, a.0 == b.0, "out")
    })
}

/// # Safety
/// `poly` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jp_poly_free(poly: *mut JpPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Checks one identity case. `params_json` is an object with any of the
/// keys k, r, s, m, b, n, kappa (array), l, g; null means no parameters.
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings; `out`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jp_verify(
    id: *const c_char,
    params_json: *const c_char,
    perturb: bool,
    out: *mut *mut JpReport,
) -> JpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let id: IdentityId = req_str(id, "id")?.parse()?;
        let params: CaseParams = match opt_str(params_json, "params_json")? {
            Some(s) => serde_json::from_str(s).map_err(|e| invalid(format!("params_json: {e}")))?,
            None => CaseParams::default(),
        };
        let report = verify(&IdentityCase { id, params, perturb });
        out.write(Box::into_raw(Box::new(JpReport(report))));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jp_report_verdict(report: *const JpReport, out: *mut JpVerdict) -> JpStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        write_out(out, report.0.verdict.into(), "out")
    })
}

/// The report as JSON; release with `jp_string_free`.
///
/// # Safety
/// `report` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jp_report_to_json(report: *const JpReport, out: *mut *mut c_char) -> JpStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        let json = serde_json::to_string(&report.0).map_err(|e| Failure(JpStatus::Internal, e.to_string()))?;
        write_out(out, to_c_string(json), "out")
    })
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jp_report_free(report: *mut JpReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
