//! C interface to the correspondence engine.
//!
//! Every fallible function returns an [`SmlStatus`]; on anything other than
//! `SML_STATUS_OK` a description is available from
//! [`sml_last_error_message`] on the same thread. Objects are opaque handles
//! created by this library and released with the matching `*_free`
//! function. Strings returned through `char **` out-parameters are owned by
//! the caller and released with [`sml_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sml_corr::alba::AlbaError;
use sml_corr::cli::report::{classify, correspond, verify, Correspondence};
use sml_corr::fol::{emit_fo, FoFormat};
use sml_corr::sahlqvist::OrderType;
use sml_corr::semantics::{Ineq, HARD_FRAME_CAP};
use sml_corr::syntax::parse_inequality;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotSahlqvist = 4,
    AlbaFailure = 5,
    InvalidArgument = 6,
    OutOfRange = 7,
    Panic = 99,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmlFormat {
    Text = 0,
    Json = 1,
    Tptp = 2,
}

impl From<SmlFormat> for FoFormat {
    fn from(f: SmlFormat) -> FoFormat {
        match f {
            SmlFormat::Text => FoFormat::Text,
            SmlFormat::Json => FoFormat::Json,
            SmlFormat::Tptp => FoFormat::Tptp,
        }
    }
}

/// A parsed inequality `φ ≤ ψ`.
pub struct SmlInequality {
    ineq: Ineq,
}

/// The result of a successful correspondence run.
pub struct SmlCorrespondence {
    inner: Correspondence,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(SmlStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SmlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SmlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SmlStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SmlStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(SmlStatus::InvalidUtf8, format!("argument is not UTF-8: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(SmlStatus::NullPointer, format!("null {what} handle")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SmlStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(SmlStatus::InvalidArgument, "string contains NUL".into()))?;
    write_out(out, c.into_raw())
}

fn parse_order_type(spec: &str) -> Result<Option<OrderType>, Failure> {
    if spec.trim().is_empty() {
        return Ok(None);
    }
    OrderType::parse(spec)
        .map(Some)
        .map_err(|e| Failure(SmlStatus::InvalidArgument, format!("bad order-type: {e}")))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn sml_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sml_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sml_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `text` (`φ <= ψ`, `φ -> ψ` or a single formula).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sml_inequality_parse(text: *const c_char, out: *mut *mut SmlInequality) -> SmlStatus {
    guard(|| {
        let text = read_str(text)?;
        let (lhs, rhs) = parse_inequality(text).map_err(|e| Failure(SmlStatus::ParseError, e.to_string()))?;
        let handle = Box::new(SmlInequality { ineq: Ineq::plain(lhs, rhs) });
        write_out(out, Box::into_raw(handle))
    })
}

/// # Safety
/// `h` must be NULL or a handle from [`sml_inequality_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sml_inequality_free(h: *mut SmlInequality) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Canonical printed form of the inequality.
///
/// # Safety
/// `h` must be a live inequality handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sml_inequality_to_string(h: *const SmlInequality, out: *mut *mut c_char) -> SmlStatus {
    guard(|| {
        let h = deref(h, "inequality")?;
        write_string(out, h.ineq.to_string())
    })
}

/// Whether the inequality is ε-Sahlqvist. With a non-empty `order_type`
/// (e.g. `"p=1,q=d"`) only that order-type is tried, and NULL or `""`
/// searches all of them. The witnessing order-type is written to
/// `witness` when it is non-NULL and the answer is yes; otherwise NULL
/// is written there.
///
/// # Safety
/// `h` must be a live handle; `order_type` NULL or a NUL-terminated string;
/// `is_sahlqvist` writable; `witness` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sml_classify(
    h: *const SmlInequality,
    order_type: *const c_char,
    is_sahlqvist: *mut bool,
    witness: *mut *mut c_char,
) -> SmlStatus {
    guard(|| {
        let h = deref(h, "inequality")?;
        let forced = if order_type.is_null() { None } else { parse_order_type(read_str(order_type)?)? };
        let c = classify(&h.ineq, forced.as_ref());
        write_out(is_sahlqvist, c.is_sahlqvist())?;
        if !witness.is_null() {
            match &c.order_type {
                Some(e) => write_string(witness, e.to_string())?,
                None => witness.write(ptr::null_mut()),
            }
        }
        Ok(())
    })
}

/// Run the rewriting procedure and compute the first-order correspondent.
///
/// # Safety
/// As for [`sml_classify`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sml_correspond(
    h: *const SmlInequality,
    order_type: *const c_char,
    out: *mut *mut SmlCorrespondence,
) -> SmlStatus {
    guard(|| {
        let h = deref(h, "inequality")?;
        let forced = if order_type.is_null() { None } else { parse_order_type(read_str(order_type)?)? };
        let inner = correspond(&h.ineq, forced.as_ref()).map_err(|f| {
            let status = match f.error {
                AlbaError::NotSahlqvist { .. } => SmlStatus::NotSahlqvist,
                _ => SmlStatus::AlbaFailure,
            };
            Failure(status, f.error.to_string())
        })?;
        write_out(out, Box::into_raw(Box::new(SmlCorrespondence { inner })))
    })
}

/// # Safety
/// `h` must be NULL or a handle from [`sml_correspond`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sml_correspondence_free(h: *mut SmlCorrespondence) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// The first-order correspondent in the requested format.
///
/// # Safety
/// `h` must be a live correspondence handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sml_correspondence_first_order(
    h: *const SmlCorrespondence,
    format: SmlFormat,
    out: *mut *mut c_char,
) -> SmlStatus {
    guard(|| {
        let h = deref(h, "correspondence")?;
        write_string(out, emit_fo(&h.inner.first_order, format.into()))
    })
}

/// Number of pure quasi-inequalities produced.
///
/// # Safety
/// `h` must be a live correspondence handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sml_correspondence_output_count(h: *const SmlCorrespondence, out: *mut usize) -> SmlStatus {
    guard(|| {
        let h = deref(h, "correspondence")?;
        write_out(out, h.inner.run.printed_outputs().len())
    })
}

/// The `index`-th pure quasi-inequality, printed.
///
/// # Safety
/// `h` must be a live correspondence handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sml_correspondence_output(
    h: *const SmlCorrespondence,
    index: usize,
    out: *mut *mut c_char,
) -> SmlStatus {
    guard(|| {
        let h = deref(h, "correspondence")?;
        let outputs = h.inner.run.printed_outputs();
        let s = outputs
            .get(index)
            .ok_or_else(|| Failure(SmlStatus::OutOfRange, format!("index {index} of {}", outputs.len())))?;
        write_string(out, s.clone())
    })
}

/// Compare frame validity of the inequality with truth of the correspondent
/// on every frame of `1..=max_worlds` worlds. `frames` receives the number
/// of frames examined (up to the first disagreement, if any).
///
/// # Safety
/// Both handles must be live; `passed` and `frames` writable.
#[no_mangle]
pub unsafe extern "C" fn sml_verify(
    h: *const SmlInequality,
    c: *const SmlCorrespondence,
    max_worlds: u32,
    passed: *mut bool,
    frames: *mut usize,
) -> SmlStatus {
    guard(|| {
        let h = deref(h, "inequality")?;
        let c = deref(c, "correspondence")?;
        let n = max_worlds as usize;
        if n == 0 || n > HARD_FRAME_CAP {
            return Err(Failure(SmlStatus::InvalidArgument, format!("max_worlds must be in 1..={HARD_FRAME_CAP}")));
        }
        let v = verify(&h.ineq, &c.inner.first_order, n).map_err(|e| Failure(SmlStatus::InvalidArgument, e.to_string()))?;
        write_out(passed, v.passed())?;
        write_out(frames, v.total_frames())
    })
}
