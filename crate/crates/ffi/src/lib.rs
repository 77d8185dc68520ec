//! C interface to the sylsplit engine.
//!
//! Groups and reports are opaque handles owned by the caller and released
//! with the matching `*_free`. Every function returns a `SylStatus`; on
//! failure `syl_last_error` describes the error on the calling thread.
//! Strings returned through `out` pointers are freed with `syl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sylsplit::report::{emit_report, Format, ReportRecord};
use sylsplit::structure::{center, sylow};
use sylsplit::theorem::{analyze_entry, analyze_setup, build_a6_example, Mode, Verdict, A6_EXAMPLE_NAME};
use sylsplit::weak_closure::weakly_closed_subgroup;
use sylsplit::{Error, PermGroup, Permutation};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SylStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    DegreeMismatch = 5,
    NotSubgroup = 6,
    NotMember = 7,
    Resource = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SylVerdict {
    Verified = 0,
    Counterexample = 1,
    HypothesisNotSatisfied = 2,
    Error = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SylMode {
    Wgs = 0,
    Zf = 1,
    All = 2,
}

/// A permutation group.
pub struct SylGroup {
    inner: PermGroup,
}

/// The analysis of one group at one prime.
pub struct SylReport {
    inner: ReportRecord,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SylStatus {
    match e {
        Error::Parse { .. } | Error::Catalog { .. } => SylStatus::Parse,
        Error::DegreeMismatch { .. } => SylStatus::DegreeMismatch,
        Error::NotSubgroup(_) | Error::NotNormal(_) | Error::NotAbelian(_) => SylStatus::NotSubgroup,
        Error::NotMember(_) => SylStatus::NotMember,
        Error::Resource { .. } => SylStatus::Resource,
        Error::Internal(_) => SylStatus::Internal,
        Error::InvalidArgument(_) | Error::HypothesisNotSatisfied(_) | Error::Io { .. } => SylStatus::InvalidArgument,
    }
}

struct Failure(SylStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `body`, turning errors and panics into a status and `syl_last_error`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SylStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SylStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("panic: {message}"));
            SylStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SylStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SylStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn group_arg<'a>(g: *const SylGroup, what: &str) -> Result<&'a PermGroup, Failure> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn boxed_group(g: PermGroup) -> *mut SylGroup {
    Box::into_raw(Box::new(SylGroup { inner: g }))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn syl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the group on `degree` points generated by `count` cycle-notation strings.
///
/// # Safety
/// `generators` must point to `count` valid C strings (it may be null when
/// `count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_group_new(
    degree: usize,
    generators: *const *const c_char,
    count: usize,
    out: *mut *mut SylGroup,
) -> SylStatus {
    guard(|| {
        if generators.is_null() && count > 0 {
            return Err(null("generators"));
        }
        let mut gens = Vec::with_capacity(count);
        for i in 0..count {
            let text = str_arg(*generators.add(i), "generator")?;
            gens.push(Permutation::parse_cycles(text, degree)?);
        }
        let g = PermGroup::new(degree, gens)?;
        write_out(out, boxed_group(g))
    })
}

/// # Safety
/// `g` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn syl_group_free(g: *mut SylGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syl_group_order(g: *const SylGroup, out: *mut u64) -> SylStatus {
    guard(|| write_out(out, group_arg(g, "group")?.order()))
}

/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syl_group_degree(g: *const SylGroup, out: *mut usize) -> SylStatus {
    guard(|| write_out(out, group_arg(g, "group")?.degree()))
}

/// Membership of a permutation in cycle notation.
///
/// # Safety
/// `g` must be a live group handle, `perm` a C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syl_group_contains(g: *const SylGroup, perm: *const c_char, out: *mut bool) -> SylStatus {
    guard(|| {
        let g = group_arg(g, "group")?;
        let x = Permutation::parse_cycles(str_arg(perm, "perm")?, g.degree())?;
        write_out(out, g.contains(&x))
    })
}

/// A Sylow `p`-subgroup, as a new handle.
///
/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syl_group_sylow(g: *const SylGroup, p: u64, out: *mut *mut SylGroup) -> SylStatus {
    guard(|| {
        let s = sylow(group_arg(g, "group")?, p)?;
        write_out(out, boxed_group(s))
    })
}

/// The center, as a new handle.
///
/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syl_group_center(g: *const SylGroup, out: *mut *mut SylGroup) -> SylStatus {
    guard(|| write_out(out, boxed_group(center(group_arg(g, "group")?))))
}

/// `W_G(S)` for a Sylow subgroup `s` of `g`, as a new handle.
///
/// # Safety
/// `g` and `s` must be live group handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syl_weakly_closed_subgroup(
    g: *const SylGroup,
    s: *const SylGroup,
    out: *mut *mut SylGroup,
) -> SylStatus {
    guard(|| {
        let w = weakly_closed_subgroup(group_arg(g, "group")?, group_arg(s, "sylow")?)?;
        write_out(out, boxed_group(w))
    })
}

fn boxed_report(r: ReportRecord) -> *mut SylReport {
    Box::into_raw(Box::new(SylReport { inner: r }))
}

/// Analyzes `g` at the prime `p`. Analysis failures are reported inside
/// the record (verdict `error`), not through the status.
///
/// # Safety
/// `g` must be a live group handle, `name` a C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syl_analyze(
    g: *const SylGroup,
    name: *const c_char,
    p: u64,
    mode: SylMode,
    out: *mut *mut SylReport,
) -> SylStatus {
    guard(|| {
        let g = group_arg(g, "group")?;
        let name = str_arg(name, "name")?;
        let mode = match mode {
            SylMode::Wgs => Mode::Wgs,
            SylMode::Zf => Mode::Zf,
            SylMode::All => Mode::All,
        };
        write_out(out, boxed_report(analyze_entry(name, g, p, mode, false)))
    })
}

/// The built-in counterexample at `p = 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_example_a6(out: *mut *mut SylReport) -> SylStatus {
    guard(|| {
        let ex = build_a6_example()?;
        write_out(out, boxed_report(analyze_setup(A6_EXAMPLE_NAME, &ex.setup, Mode::All, false)))
    })
}

/// # Safety
/// `r` must be a live report handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syl_report_verdict(r: *const SylReport, out: *mut SylVerdict) -> SylStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        let v = match r.inner.verdict {
            Verdict::Verified => SylVerdict::Verified,
            Verdict::Counterexample => SylVerdict::Counterexample,
            Verdict::HypothesisNotSatisfied => SylVerdict::HypothesisNotSatisfied,
            Verdict::Error => SylVerdict::Error,
        };
        write_out(out, v)
    })
}

/// The record as a one-element JSON array, in the CLI's format.
///
/// # Safety
/// `r` must be a live report handle and `out` writable. Free the string
/// with `syl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn syl_report_to_json(r: *const SylReport, out: *mut *mut c_char) -> SylStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        let text = emit_report(std::slice::from_ref(&r.inner), Format::Json);
        let c = CString::new(text).map_err(|_| Failure(SylStatus::Internal, "nul in report".into()))?;
        write_out(out, c.into_raw())
    })
}

/// # Safety
/// `r` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn syl_report_free(r: *mut SylReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be a string returned by this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn syl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
