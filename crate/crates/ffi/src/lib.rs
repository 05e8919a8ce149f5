//! C interface to the degeneration engine.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `_free` function. Strings returned through `char **`
//! out-parameters are NUL-terminated, owned by the caller, and released
//! with [`mustafin_string_free`]. Every function returns a
//! [`MustafinStatus`]; on failure a message is available from
//! [`mustafin_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mustafin::cli::{classification_outcome, config::parse_config, config::RunConfig};
use mustafin::components::{classify_decomposed, decompose, Classification, Options};
use mustafin::degeneration::{build_degeneration_with, Degeneration};
use mustafin::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MustafinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    ComputationFailed = 5,
    Panic = 6,
}

/// A configuration together with its degeneration.
pub struct MustafinDegeneration {
    config: RunConfig,
    deg: Degeneration,
}

/// A labeled decomposition of a special fiber.
pub struct MustafinClassification {
    inner: Classification,
}

/// Component counts by kind.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MustafinCounts {
    pub total: usize,
    pub primary: usize,
    pub secondary: usize,
    pub mixed: usize,
    pub unresolved: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MustafinStatus {
    match e {
        Error::Parse(_) => MustafinStatus::ParseError,
        Error::DimensionMismatch(_)
        | Error::InvalidFlagType(_)
        | Error::InvalidConfiguration(_)
        | Error::SingularMatrix
        | Error::NotApartment(_) => MustafinStatus::InvalidInput,
        _ => MustafinStatus::ComputationFailed,
    }
}

fn fail(e: Error) -> MustafinStatus {
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `f`, turning panics into [`MustafinStatus::Panic`].
fn guard(f: impl FnOnce() -> MustafinStatus) -> MustafinStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        set_error(msg);
        MustafinStatus::Panic
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, MustafinStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(MustafinStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        MustafinStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> MustafinStatus {
    if out.is_null() {
        set_error("null output pointer");
        return MustafinStatus::NullPointer;
    }
    *out = CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw();
    MustafinStatus::Ok
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mustafin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mustafin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a run configuration in the line format and builds its
/// degeneration.
///
/// # Safety
/// `config_text` must be a valid NUL-terminated string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn mustafin_degeneration_new(
    config_text: *const c_char,
    out: *mut *mut MustafinDegeneration,
) -> MustafinStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return MustafinStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(config_text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let built = parse_config(text).and_then(|config| {
            let deg = build_degeneration_with(&config.configuration()?, &config.flag()?, config.convention)?;
            Ok(MustafinDegeneration { config, deg })
        });
        match built {
            Ok(h) => {
                *out = Box::into_raw(Box::new(h));
                MustafinStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `h` must come from [`mustafin_degeneration_new`] and not have been
/// freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn mustafin_degeneration_free(h: *mut MustafinDegeneration) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Generators of the special fiber ideal, one per line.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mustafin_degeneration_fiber(
    h: *const MustafinDegeneration,
    out: *mut *mut c_char,
) -> MustafinStatus {
    guard(|| {
        let Some(h) = h.as_ref() else {
            set_error("null handle");
            return MustafinStatus::NullPointer;
        };
        write_string(out, h.deg.fiber_ideal().to_strings().join("\n"))
    })
}

/// Decomposes and labels the special fiber. `max_candidates` bounds the
/// secondary-vertex search; 0 selects the default.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mustafin_classify(
    h: *const MustafinDegeneration,
    max_candidates: usize,
    out: *mut *mut MustafinClassification,
) -> MustafinStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return MustafinStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Some(h) = h.as_ref() else {
            set_error("null handle");
            return MustafinStatus::NullPointer;
        };
        let mut opts = Options {
            seed: h.config.seed,
            radius: h.config.radius,
            convention: h.config.convention,
            ..Options::default()
        };
        if max_candidates > 0 {
            opts.max_candidates = max_candidates;
        }
        match decompose(&h.deg).and_then(|dec| classify_decomposed(dec, &opts)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MustafinClassification { inner }));
                MustafinStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `h` must come from [`mustafin_classify`] and not have been freed. NULL
/// is ignored.
#[no_mangle]
pub unsafe extern "C" fn mustafin_classification_free(h: *mut MustafinClassification) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mustafin_classification_counts(
    h: *const MustafinClassification,
    out: *mut MustafinCounts,
) -> MustafinStatus {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            set_error("null argument");
            return MustafinStatus::NullPointer;
        };
        let c = &h.inner;
        *out = MustafinCounts {
            total: c.components.len(),
            primary: c.primaries(),
            secondary: c.secondary_count(),
            mixed: c.mixed(),
            unresolved: c.unresolved(),
        };
        MustafinStatus::Ok
    })
}

/// One-line summary such as `8 components: 3 primary, ...`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mustafin_classification_summary(
    h: *const MustafinClassification,
    out: *mut *mut c_char,
) -> MustafinStatus {
    guard(|| match h.as_ref() {
        Some(h) => write_string(out, h.inner.summary()),
        None => {
            set_error("null handle");
            MustafinStatus::NullPointer
        }
    })
}

/// Full report as a JSON document.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mustafin_classification_json(
    h: *const MustafinClassification,
    out: *mut *mut c_char,
) -> MustafinStatus {
    guard(|| match h.as_ref() {
        Some(h) => write_string(out, classification_outcome(&h.inner).json.to_string()),
        None => {
            set_error("null handle");
            MustafinStatus::NullPointer
        }
    })
}
