//! C ABI over `clifford_roots`.
//!
//! Every function returns a [`CrStatus`]. On failure a message is kept per
//! thread and can be read with [`cr_last_error`]. Handles and strings handed
//! out by the library are released with [`cr_root_set_free`] and
//! [`cr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clifford_roots::catalog::{build, identify, Family};
use clifford_roots::error::Error;
use clifford_roots::json::{parse_root_set, root_set_to_json};
use clifford_roots::rootsys::{closure, is_admissible, RootSet};
use clifford_roots::verifier;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    NotASubsystem = 5,
    SizeExceeded = 6,
    Unrecognized = 7,
    UnknownClaim = 8,
    Internal = 99,
}

/// Opaque set of vectors with its bilinear form.
pub struct CrRootSet {
    inner: RootSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CrStatus {
    match e {
        Error::Parse(_) => CrStatus::Parse,
        Error::NotASubsystem(_) => CrStatus::NotASubsystem,
        Error::SizeExceeded { .. } => CrStatus::SizeExceeded,
        Error::Unrecognized { .. } => CrStatus::Unrecognized,
        _ => CrStatus::InvalidInput,
    }
}

fn fail(status: CrStatus, msg: impl Into<String>) -> CrStatus {
    set_error(msg.into());
    status
}

fn from_core(e: Error) -> CrStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning panics into [`CrStatus::Internal`].
fn guard(f: impl FnOnce() -> CrStatus) -> CrStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(CrStatus::Internal, "internal error"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CrStatus> {
    if s.is_null() {
        return Err(fail(CrStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(CrStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CrStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CrStatus::Ok
        }
        Err(_) => fail(CrStatus::Internal, "output contains a nul byte"),
    }
}

unsafe fn write_set(out: *mut *mut CrRootSet, s: RootSet) -> CrStatus {
    *out = Box::into_raw(Box::new(CrRootSet { inner: s }));
    CrStatus::Ok
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(CrStatus::NullPointer, concat!("null pointer: ", stringify!($p)));
        })+
    };
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn cr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `{"basis_gram": .., "vectors": ..}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_root_set_from_json(json: *const c_char, out: *mut *mut CrRootSet) -> CrStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(json));
        match parse_root_set(text) {
            Ok(s) => write_set(out, s),
            Err(e) => from_core(e),
        }
    })
}

/// Builds the catalog system of type `family` (a letter A-G) and `rank`.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_catalog_build(family: *const c_char, rank: usize, out: *mut *mut CrRootSet) -> CrStatus {
    guard(|| {
        non_null!(out);
        let family: Family = match try_status!(read_str(family)).parse() {
            Ok(f) => f,
            Err(e) => return from_core(e),
        };
        match build(family, rank) {
            Ok(s) => write_set(out, s),
            Err(e) => from_core(e),
        }
    })
}

/// # Safety
/// `set` must be a handle from this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn cr_root_set_free(set: *mut CrRootSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_root_set_len(set: *const CrRootSet, out: *mut usize) -> CrStatus {
    guard(|| {
        non_null!(set, out);
        *out = (*set).inner.len();
        CrStatus::Ok
    })
}

/// Rank of the span.
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_root_set_rank(set: *const CrRootSet, out: *mut usize) -> CrStatus {
    guard(|| {
        non_null!(set, out);
        *out = (*set).inner.rank();
        CrStatus::Ok
    })
}

/// JSON encoding of the set; free the string with [`cr_string_free`].
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_root_set_to_json(set: *const CrRootSet, out: *mut *mut c_char) -> CrStatus {
    guard(|| {
        non_null!(set, out);
        write_string(out, root_set_to_json(&(*set).inner).to_string())
    })
}

/// Smallest root system containing `set`. Fails with
/// [`CrStatus::NotASubsystem`] or [`CrStatus::SizeExceeded`].
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_closure(set: *const CrRootSet, max_size: usize, out: *mut *mut CrRootSet) -> CrStatus {
    guard(|| {
        non_null!(set, out);
        match closure(&(*set).inner, max_size) {
            Ok(c) => write_set(out, c),
            Err(e) => from_core(e),
        }
    })
}

/// Whether the closure minus `set` is a root system.
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_is_admissible(set: *const CrRootSet, max_size: usize, out: *mut bool) -> CrStatus {
    guard(|| {
        non_null!(set, out);
        match is_admissible(&(*set).inner, max_size) {
            Ok(a) => {
                *out = a.admissible;
                CrStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Identification as JSON, e.g. `{"components":[..],"total_roots":24}`.
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_identify(set: *const CrRootSet, out: *mut *mut c_char) -> CrStatus {
    guard(|| {
        non_null!(set, out);
        match identify(&(*set).inner) {
            Ok(id) => write_string(out, serde_json::to_value(&id).expect("serializable").to_string()),
            Err(e) => from_core(e),
        }
    })
}

/// Runs one claim (for example `"theorem-case-IV"` or `"r14-exclusion"`)
/// and writes its JSON report. `as_expected` receives whether the status
/// matched the expected one.
///
/// # Safety
/// `claim` must be a NUL-terminated string; `out` and `as_expected` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cr_verify(claim: *const c_char, out: *mut *mut c_char, as_expected: *mut bool) -> CrStatus {
    guard(|| {
        non_null!(out, as_expected);
        let id = try_status!(read_str(claim));
        match verifier::run_claim(id) {
            Some(r) => {
                *as_expected = r.as_expected();
                write_string(out, r.to_json().to_string())
            }
            None => fail(CrStatus::UnknownClaim, format!("unknown claim {id:?}")),
        }
    })
}

/// # Safety
/// `s` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn cr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
