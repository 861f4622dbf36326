//! C ABI over the seshadri library.
//!
//! Results come back through opaque handles (`SesEstimate`, `SesReport`) that
//! the caller releases with the matching `*_free`. Every fallible call returns
//! a [`SesStatus`]; on failure `ses_last_error` describes the problem for the
//! calling thread. Strings returned as `char *` are owned by the caller and
//! released with [`ses_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num::{BigInt, BigRational, ToPrimitive};
use seshadri::{
    certify_point, epsilon_at_point, epsilon_min, epsilon_one, epsilon_one_with_delta,
    pell_fundamental, surface_params, DivisorClass, Error, EstimateKind, OracleReport, PointClass,
    SeshadriEstimate,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SesStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotAmple = 3,
    InvalidPoint = 4,
    /// The value does not fit the requested C type.
    Overflow = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SesEstimateKind {
    Exact = 0,
    CertifiedRational = 1,
    BoundedBelow = 2,
    UnknownWithBound = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SesPointKind {
    VeryGeneral = 0,
    /// On a singular fibre; pass its multiplicity alongside.
    OnSingularFibre = 1,
    Arbitrary = 2,
}

/// Opaque closed-form estimate.
pub struct SesEstimate(SeshadriEstimate);

/// Opaque oracle report.
pub struct SesReport(OracleReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: SesStatus, msg: impl Into<String>) -> SesStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> SesStatus {
    let status = match e {
        Error::NotAmple { .. } => SesStatus::NotAmple,
        Error::InvalidPoint(_) => SesStatus::InvalidPoint,
        _ => SesStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into [`SesStatus::Panic`].
fn guard(f: impl FnOnce() -> SesStatus) -> SesStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(SesStatus::Panic, "internal panic"),
    }
}

fn point(kind: SesPointKind, fibre_mult: u32) -> PointClass {
    match kind {
        SesPointKind::VeryGeneral => PointClass::VeryGeneral,
        SesPointKind::OnSingularFibre => PointClass::OnSingularFibre(fibre_mult),
        SesPointKind::Arbitrary => PointClass::Arbitrary,
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Stores a boxed handle in `out`, or reports a null `out`.
fn emit<T>(out: *mut *mut T, value: Result<T, Error>) -> SesStatus {
    if out.is_null() {
        return fail(SesStatus::NullPointer, "output pointer is null");
    }
    match value {
        Ok(v) => {
            // SAFETY: checked non-null; the caller provides writable storage.
            unsafe { *out = Box::into_raw(Box::new(v)) };
            SesStatus::Ok
        }
        Err(e) => {
            unsafe { *out = ptr::null_mut() };
            from_error(e)
        }
    }
}

/// Message for the last failure on this thread, or NULL. Valid until the next
/// failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn ses_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ses_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ses_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `L² = 2ab`, or [`SesStatus::Overflow`] past 64 bits.
///
/// # Safety
/// `out` must be NULL or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ses_self_intersection(a: i64, b: i64, out: *mut i64) -> SesStatus {
    if out.is_null() {
        return fail(SesStatus::NullPointer, "output pointer is null");
    }
    match i64::try_from(DivisorClass::new(a, b).self_intersection()) {
        Ok(v) => {
            *out = v;
            SesStatus::Ok
        }
        Err(_) => fail(SesStatus::Overflow, "L² exceeds 64 bits"),
    }
}

/// `ε(L)` for surface type `type_id` and `L = (a,b)`.
///
/// # Safety
/// `out` must be NULL or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ses_epsilon_min(
    type_id: u8,
    a: i64,
    b: i64,
    out: *mut *mut SesEstimate,
) -> SesStatus {
    guard(|| {
        let r = surface_params(type_id).and_then(|s| epsilon_min(&s, DivisorClass::new(a, b)));
        emit(out, r.map(SesEstimate))
    })
}

/// `ε(L,1)` with `δ = delta_num/delta_den`; a zero denominator selects the
/// default `δ = 93/100`.
///
/// # Safety
/// `out` must be NULL or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ses_epsilon_one(
    type_id: u8,
    a: i64,
    b: i64,
    delta_num: i64,
    delta_den: i64,
    out: *mut *mut SesEstimate,
) -> SesStatus {
    guard(|| {
        let l = DivisorClass::new(a, b);
        let r = surface_params(type_id).and_then(|s| {
            if delta_den == 0 {
                epsilon_one(&s, l)
            } else {
                let delta = BigRational::new(delta_num.into(), delta_den.into());
                epsilon_one_with_delta(&s, l, &delta)
            }
        });
        emit(out, r.map(SesEstimate))
    })
}

/// `ε(L,x)`; `fibre_mult` is read only for [`SesPointKind::OnSingularFibre`].
///
/// # Safety
/// `out` must be NULL or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ses_epsilon_at_point(
    type_id: u8,
    a: i64,
    b: i64,
    kind: SesPointKind,
    fibre_mult: u32,
    out: *mut *mut SesEstimate,
) -> SesStatus {
    guard(|| {
        let r = surface_params(type_id)
            .and_then(|s| epsilon_at_point(&s, DivisorClass::new(a, b), point(kind, fibre_mult)));
        emit(out, r.map(SesEstimate))
    })
}

/// # Safety
/// `e` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ses_estimate_kind(e: *const SesEstimate) -> SesEstimateKind {
    match (*e).0.kind {
        EstimateKind::Exact => SesEstimateKind::Exact,
        EstimateKind::CertifiedRational => SesEstimateKind::CertifiedRational,
        EstimateKind::BoundedBelow => SesEstimateKind::BoundedBelow,
        EstimateKind::UnknownWithBound => SesEstimateKind::UnknownWithBound,
    }
}

/// Exact value as `num/den`. Fails with [`SesStatus::InvalidArgument`] when
/// the estimate is not exact.
///
/// # Safety
/// `e` must be NULL or a live handle; `num`, `den` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn ses_estimate_value(
    e: *const SesEstimate,
    num: *mut i64,
    den: *mut i64,
) -> SesStatus {
    if e.is_null() || num.is_null() || den.is_null() {
        return fail(SesStatus::NullPointer, "null argument");
    }
    let Some(v) = &(*e).0.value else {
        return fail(SesStatus::InvalidArgument, "estimate has no exact value");
    };
    match (v.numer().to_i64(), v.denom().to_i64()) {
        (Some(n), Some(d)) => {
            *num = n;
            *den = d;
            SesStatus::Ok
        }
        _ => fail(SesStatus::Overflow, "value exceeds 64 bits"),
    }
}

/// Provenance label; free with [`ses_string_free`].
///
/// # Safety
/// `e` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ses_estimate_provenance(e: *const SesEstimate) -> *mut c_char {
    into_c_string((*e).0.provenance.clone())
}

/// The estimate as one line of JSON; free with [`ses_string_free`].
///
/// # Safety
/// `e` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ses_estimate_json(e: *const SesEstimate) -> *mut c_char {
    into_c_string(
        serde_json::to_value(&(*e).0)
            .map(|v| v.to_string())
            .unwrap_or_default(),
    )
}

/// # Safety
/// `e` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ses_estimate_free(e: *mut SesEstimate) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Oracle bounds on the Seshadri constant at the given point class.
///
/// # Safety
/// `out` must be NULL or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ses_certify_point(
    type_id: u8,
    a: i64,
    b: i64,
    kind: SesPointKind,
    fibre_mult: u32,
    scan_limit: u32,
    out: *mut *mut SesReport,
) -> SesStatus {
    guard(|| {
        let r = surface_params(type_id).and_then(|s| {
            certify_point(
                &s,
                DivisorClass::new(a, b),
                point(kind, fibre_mult),
                scan_limit,
            )
        });
        emit(out, r.map(SesReport))
    })
}

/// Whether the oracle's lower and upper bounds coincide.
///
/// # Safety
/// `r` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ses_report_is_tight(r: *const SesReport) -> bool {
    (*r).0.is_tight()
}

/// The report as one line of JSON; free with [`ses_string_free`].
///
/// # Safety
/// `r` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ses_report_json(r: *const SesReport) -> *mut c_char {
    into_c_string(
        serde_json::to_value(&(*r).0)
            .map(|v| v.to_string())
            .unwrap_or_default(),
    )
}

/// # Safety
/// `r` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ses_report_free(r: *mut SesReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Fundamental solution of `q² - d·p² = 1` as decimal strings, since they
/// overflow 64 bits quickly. Free both with [`ses_string_free`].
///
/// # Safety
/// `p`, `q` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn ses_pell_fundamental(
    d: u64,
    p: *mut *mut c_char,
    q: *mut *mut c_char,
) -> SesStatus {
    if p.is_null() || q.is_null() {
        return fail(SesStatus::NullPointer, "output pointer is null");
    }
    guard(|| match pell_fundamental(d) {
        Ok(sol) => {
            *p = into_c_string(sol.p.to_string());
            *q = into_c_string(sol.q.to_string());
            SesStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Checks `q² - d·p² = 1` for decimal strings such as those returned by
/// [`ses_pell_fundamental`].
///
/// # Safety
/// `p`, `q` must be NULL or NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ses_pell_check(d: u64, p: *const c_char, q: *const c_char) -> bool {
    if p.is_null() || q.is_null() {
        return false;
    }
    let parse = |s: *const c_char| CStr::from_ptr(s).to_str().ok()?.parse::<BigInt>().ok();
    match (parse(p), parse(q)) {
        (Some(p), Some(q)) => &q * &q - BigInt::from(d) * &p * &p == BigInt::from(1),
        _ => false,
    }
}
