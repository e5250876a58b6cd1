//! C ABI over the rssw toolkit: opaque handles, integer status codes, and
//! JSON strings for structured results.
//!
//! Every function returns an `RsswStatus`; outputs are written through
//! pointers only on `RSSW_STATUS_OK`.  Strings returned through `char**`
//! are owned by the library and must be released with `rssw_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rssw_core::error::Error;
use rssw_core::index::{index_dirac, index_rs, ManifoldInvariants};
use rssw_core::kuranishi::run_demo;
use rssw_core::pin2::equivariance_suite;
use rssw_core::report::{analyze, parse_manifold};
use rssw_core::repring::{char_at_i, char_at_j, char_on_circle, circle_poly_to_string, parse_expr};
use rssw_core::topology::{kdegree_feasibility, Feasibility, ManifoldData, RepCounts};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RsswStatus {
    Ok = 0,
    /// malformed argument or unexpected internal state
    InvalidArgument = 1,
    /// expression failed to parse
    ParseError = 2,
    /// a mathematical hypothesis was violated (definite form,
    /// signature not divisible by 16)
    HypothesisViolation = 3,
    /// numerical failure in the sandbox (cutoff collision,
    /// non-convergent iteration)
    Numeric = 4,
    /// a required pointer was null or a string was not valid UTF-8
    NullPointer = 5,
    /// unexpected panic inside the library
    Internal = 6,
}

fn status_of(e: &Error) -> RsswStatus {
    match e {
        Error::Parse { .. } => RsswStatus::ParseError,
        Error::DefiniteForm | Error::NotSpinSignature(_) => RsswStatus::HypothesisViolation,
        Error::CutoffNearEigenvalue { .. } | Error::NonConvergence { .. } => RsswStatus::Numeric,
        _ => RsswStatus::InvalidArgument,
    }
}

/// Opaque handle to a parsed and expanded manifold expression.
pub struct RsswManifold {
    data: ManifoldData,
    text: String,
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, RsswStatus> {
    if ptr.is_null() {
        return Err(RsswStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| RsswStatus::NullPointer)
}

fn write_string(out: *mut *mut c_char, s: String) -> RsswStatus {
    if out.is_null() {
        return RsswStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            RsswStatus::Ok
        }
        Err(_) => RsswStatus::Internal,
    }
}

fn guarded(body: impl FnOnce() -> RsswStatus) -> RsswStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(RsswStatus::Internal)
}

/// Frees a string previously returned by this library.  NULL is ignored.
///
/// # Safety
/// `s` must have been produced by an rssw function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn rssw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn rssw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a connected-sum expression into an opaque handle.
///
/// # Safety
/// `expr` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_manifold_parse(
    expr: *const c_char,
    out: *mut *mut RsswManifold,
) -> RsswStatus {
    guarded(|| {
        let text = match read_str(expr) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            return RsswStatus::NullPointer;
        }
        match parse_manifold(text) {
            Ok(parsed) => {
                let handle = Box::new(RsswManifold {
                    data: parsed.expand(),
                    text: text.to_string(),
                });
                *out = Box::into_raw(handle);
                RsswStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a manifold handle.  NULL is ignored.
///
/// # Safety
/// `m` must come from `rssw_manifold_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rssw_manifold_free(m: *mut RsswManifold) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Reads the derived intersection-form invariants from a handle.
///
/// # Safety
/// `m` must be a live handle; the out pointers, when non-null, must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_manifold_invariants(
    m: *const RsswManifold,
    b2: *mut i64,
    sigma: *mut i64,
    b2_plus: *mut i64,
    b2_minus: *mut i64,
) -> RsswStatus {
    guarded(|| {
        let Some(handle) = m.as_ref() else {
            return RsswStatus::NullPointer;
        };
        if !b2.is_null() {
            *b2 = handle.data.b2();
        }
        if !sigma.is_null() {
            *sigma = handle.data.sigma();
        }
        if !b2_plus.is_null() {
            *b2_plus = handle.data.b2_plus();
        }
        if !b2_minus.is_null() {
            *b2_minus = handle.data.b2_minus();
        }
        RsswStatus::Ok
    })
}

/// Runs the full analysis on a handle and returns the report as JSON.
///
/// # Safety
/// `m` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_manifold_analyze_json(
    m: *const RsswManifold,
    out_json: *mut *mut c_char,
) -> RsswStatus {
    guarded(|| {
        let Some(handle) = m.as_ref() else {
            return RsswStatus::NullPointer;
        };
        match analyze_expanded(&handle.data, &handle.text) {
            Ok(json) => write_string(out_json, json),
            Err(e) => status_of(&e),
        }
    })
}

fn analyze_expanded(data: &ManifoldData, text: &str) -> Result<String, Error> {
    use rssw_core::report::{Atom, ManifoldExpr};
    let mut terms = Vec::new();
    if data.e8_count > 0 {
        terms.push((data.e8_count as u64, Atom::E8));
    } else if data.e8_count < 0 {
        terms.push(((-data.e8_count) as u64, Atom::MinusE8));
    }
    if data.h_count > 0 {
        terms.push((data.h_count, Atom::H));
    }
    let expr = ManifoldExpr { terms };
    debug_assert_eq!(expr.expand(), *data);
    let report = analyze(&expr, text)?;
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

/// One-shot analysis of a connected-sum expression; returns JSON.
///
/// # Safety
/// `expr` must be a valid NUL-terminated string; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_analyze_json(
    expr: *const c_char,
    out_json: *mut *mut c_char,
) -> RsswStatus {
    guarded(|| {
        let text = match read_str(expr) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_manifold(text).and_then(|p| analyze(&p, text)) {
            Ok(report) => write_string(
                out_json,
                serde_json::to_string(&report).expect("report serializes"),
            ),
            Err(e) => status_of(&e),
        }
    })
}

/// Index of the twisted operator, as the exact rational num/den.
/// The value is 19 sigma/8 + 5 c1sq/2 and does not depend on the Euler
/// characteristic; the full characteristic-class pipeline runs internally.
///
/// # Safety
/// `out_num` and `out_den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_index_rs(
    sigma: i64,
    c1sq: i64,
    out_num: *mut i64,
    out_den: *mut i64,
) -> RsswStatus {
    guarded(|| {
        if out_num.is_null() || out_den.is_null() {
            return RsswStatus::NullPointer;
        }
        let inv = ManifoldInvariants { sigma, chi: 2, c1sq };
        let v = index_rs(&inv);
        let (Ok(n), Ok(d)) = (i64::try_from(v.numer().clone()), i64::try_from(v.denom().clone()))
        else {
            return RsswStatus::InvalidArgument;
        };
        *out_num = n;
        *out_den = d;
        RsswStatus::Ok
    })
}

/// Index of the twisted Dirac operator, as the exact rational num/den.
///
/// # Safety
/// `out_num` and `out_den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_index_dirac(
    sigma: i64,
    c1sq: i64,
    out_num: *mut i64,
    out_den: *mut i64,
) -> RsswStatus {
    guarded(|| {
        if out_num.is_null() || out_den.is_null() {
            return RsswStatus::NullPointer;
        }
        let inv = ManifoldInvariants { sigma, chi: 2, c1sq };
        let v = index_dirac(&inv);
        let (Ok(n), Ok(d)) = (i64::try_from(v.numer().clone()), i64::try_from(v.denom().clone()))
        else {
            return RsswStatus::InvalidArgument;
        };
        *out_num = n;
        *out_den = d;
        RsswStatus::Ok
    })
}

/// Feasibility verdict for the equivariant-degree obstruction.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RsswVerdict {
    NotExcludedKZero = 0,
    NotExcludedMLarge = 1,
    ExcludedTraceFraction = 2,
    ExcludedParity = 3,
}

/// Verdict of the exclusion logic for counts (k, m) with free parameters
/// (r, s).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_feasibility(
    k: i64,
    m: u64,
    r: u64,
    s: u64,
    out: *mut RsswVerdict,
) -> RsswStatus {
    guarded(|| {
        if out.is_null() {
            return RsswStatus::NullPointer;
        }
        use rssw_core::topology::{ExclusionReason, NotExcludedReason};
        let verdict = match kdegree_feasibility(&RepCounts { r, s, k, m }) {
            Feasibility::NotExcluded(NotExcludedReason::KZero) => RsswVerdict::NotExcludedKZero,
            Feasibility::NotExcluded(NotExcludedReason::MAtLeast2kPlus1) => {
                RsswVerdict::NotExcludedMLarge
            }
            Feasibility::Excluded(ExclusionReason::TraceFraction) => {
                RsswVerdict::ExcludedTraceFraction
            }
            Feasibility::Excluded(ExclusionReason::Parity) => RsswVerdict::ExcludedParity,
        };
        *out = verdict;
        RsswStatus::Ok
    })
}

/// Evaluates a representation-ring expression; returns the normal form and
/// the three characters as JSON.
///
/// # Safety
/// `expr` must be a valid NUL-terminated string; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_repring_eval_json(
    expr: *const c_char,
    out_json: *mut *mut c_char,
) -> RsswStatus {
    guarded(|| {
        let text = match read_str(expr) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_expr(text) {
            Ok(v) => {
                let json = serde_json::json!({
                    "input": text,
                    "normal_form": v.to_string(),
                    "char_at_j": char_at_j(&v).to_string(),
                    "char_at_i": char_at_i(&v).to_string(),
                    "char_on_circle": circle_poly_to_string(&char_on_circle(&v)),
                });
                write_string(out_json, json.to_string())
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Runs the equivariance identity suite; returns the per-lemma table as
/// JSON.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_equivariance_suite_json(
    samples: usize,
    seed: u64,
    out_json: *mut *mut c_char,
) -> RsswStatus {
    guarded(|| {
        let rows = equivariance_suite(samples, seed);
        write_string(
            out_json,
            serde_json::to_string(&rows).expect("rows serialize"),
        )
    })
}

/// Runs the Kuranishi sandbox battery; returns the report as JSON.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rssw_kuranishi_demo_json(
    seed: u64,
    dim_c: usize,
    dim_r: usize,
    gamma: f64,
    cutoff: f64,
    out_json: *mut *mut c_char,
) -> RsswStatus {
    guarded(|| match run_demo(seed, dim_c, dim_r, gamma, cutoff, None) {
        Ok(report) => write_string(
            out_json,
            serde_json::to_string(&report).expect("report serializes"),
        ),
        Err(e) => status_of(&e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        rssw_string_free(p);
        s
    }

    #[test]
    fn analyze_round_trip() {
        unsafe {
            let expr = CString::new("2E8 # 3H").unwrap();
            let mut out: *mut c_char = ptr::null_mut();
            let st = rssw_analyze_json(expr.as_ptr(), &mut out);
            assert_eq!(st, RsswStatus::Ok);
            let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(json["b2"], 22);
            assert_eq!(json["index_rs"], "38");
        }
    }

    #[test]
    fn handle_lifecycle() {
        unsafe {
            let expr = CString::new("K3bar # S2xS2").unwrap();
            let mut handle: *mut RsswManifold = ptr::null_mut();
            assert_eq!(
                rssw_manifold_parse(expr.as_ptr(), &mut handle),
                RsswStatus::Ok
            );
            let (mut b2, mut sigma, mut p, mut m) = (0i64, 0i64, 0i64, 0i64);
            assert_eq!(
                rssw_manifold_invariants(handle, &mut b2, &mut sigma, &mut p, &mut m),
                RsswStatus::Ok
            );
            assert_eq!((b2, sigma, p, m), (24, 16, 20, 4));

            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                rssw_manifold_analyze_json(handle, &mut out),
                RsswStatus::Ok
            );
            let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(json["sigma"], 16);
            rssw_manifold_free(handle);
        }
    }

    #[test]
    fn status_codes() {
        unsafe {
            let bad = CString::new("2Q8").unwrap();
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                rssw_analyze_json(bad.as_ptr(), &mut out),
                RsswStatus::ParseError
            );
            let definite = CString::new("2E8").unwrap();
            assert_eq!(
                rssw_analyze_json(definite.as_ptr(), &mut out),
                RsswStatus::HypothesisViolation
            );
            assert_eq!(
                rssw_analyze_json(ptr::null(), &mut out),
                RsswStatus::NullPointer
            );
        }
    }

    #[test]
    fn exact_index_parts() {
        unsafe {
            let (mut n, mut d) = (0i64, 0i64);
            assert_eq!(rssw_index_rs(16, 0, &mut n, &mut d), RsswStatus::Ok);
            assert_eq!((n, d), (38, 1));
            assert_eq!(rssw_index_rs(8, 1, &mut n, &mut d), RsswStatus::Ok);
            assert_eq!((n, d), (43, 2));
            assert_eq!(rssw_index_dirac(-16, 0, &mut n, &mut d), RsswStatus::Ok);
            assert_eq!((n, d), (2, 1));
        }
    }

    #[test]
    fn feasibility_verdicts() {
        unsafe {
            let mut v = RsswVerdict::NotExcludedKZero;
            assert_eq!(rssw_feasibility(19, 19, 0, 0, &mut v), RsswStatus::Ok);
            assert_eq!(v, RsswVerdict::ExcludedTraceFraction);
            assert_eq!(rssw_feasibility(1, 2, 1, 1, &mut v), RsswStatus::Ok);
            assert_eq!(v, RsswVerdict::ExcludedParity);
            assert_eq!(rssw_feasibility(0, 5, 0, 0, &mut v), RsswStatus::Ok);
            assert_eq!(v, RsswVerdict::NotExcludedKZero);
        }
    }

    #[test]
    fn repring_eval() {
        unsafe {
            let expr = CString::new("(2-h)^3(1-d)").unwrap();
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                rssw_repring_eval_json(expr.as_ptr(), &mut out),
                RsswStatus::Ok
            );
            let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(json["normal_form"], "8 - 8d");
        }
    }

    #[test]
    fn kuranishi_demo() {
        unsafe {
            let mut out: *mut c_char = ptr::null_mut();
            let st = rssw_kuranishi_demo_json(3, 12, 10, 0.5, 1.2, &mut out);
            assert_eq!(st, RsswStatus::Ok);
            let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(json["high_dq_monotone"], true);
        }
    }

    #[test]
    fn version_string() {
        unsafe {
            let v = CStr::from_ptr(rssw_version()).to_str().unwrap();
            assert_eq!(v, env!("CARGO_PKG_VERSION"));
        }
    }
}
