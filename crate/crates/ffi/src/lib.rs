//! C interface. Every function returns a [`QfStatus`]; on failure the message
//! is available from [`qf_last_error`] until the next call on the same
//! thread. Handles and strings handed out must be released with
//! [`qf_rep_free`] and [`qf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quiverforge::catalog::{run_catalog, CatalogConfig};
use quiverforge::family::{construct, FamilyParams};
use quiverforge::functor::maximal_rank_report;
use quiverforge::io::{rep_from_json, rep_to_json};
use quiverforge::rep::{end_dim, ext_dim, hom_dim};
use quiverforge::tree::{coefficient_quiver, export_dot, is_tree};
use quiverforge::{DimVector, Error, Field, Representation};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfStatus {
    Ok = 0,
    /// Null pointer or non-UTF-8 string argument.
    InvalidArgument = 1,
    /// Malformed input data.
    InputError = 2,
    /// Input outside an operation's domain, e.g. a non-real root.
    DomainError = 3,
    /// A construction step failed its internal checks.
    ConstructionError = 4,
    /// A Rust panic was caught at the boundary.
    InternalError = 5,
}

/// Opaque representation handle.
pub struct QfRepresentation {
    inner: Representation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &Error) -> QfStatus {
    match err {
        Error::Input(_) | Error::Json(_) => QfStatus::InputError,
        Error::Domain(_) => QfStatus::DomainError,
        Error::Construction { .. } => QfStatus::ConstructionError,
    }
}

enum Fail {
    Arg(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> QfStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => QfStatus::Ok,
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg);
            QfStatus::InvalidArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            QfStatus::InternalError
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Arg("null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Arg("string argument is not UTF-8"))
}

unsafe fn rep<'a>(p: *const QfRepresentation) -> Result<&'a Representation, Fail> {
    p.as_ref().map(|h| &h.inner).ok_or(Fail::Arg("null representation handle"))
}

fn out_ptr<T>(p: *mut T) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail::Arg("null output pointer"))
    } else {
        Ok(())
    }
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Arg("output contains a NUL byte"))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn field_of(spec: *const c_char) -> Result<Field, Fail> {
    if spec.is_null() {
        return Ok(Field::Rational);
    }
    Ok(unsafe { text(spec) }?.parse::<Field>()?)
}

/// Message of the last failure on this thread; empty after a success. The
/// pointer stays valid until the next `qf_` call on this thread.
#[no_mangle]
pub extern "C" fn qf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Constructs the representation of the real root `root[0..len]` of
/// `Q(f,g,h)`. `field` is `"q"`, `"fp:<p>"` or null for the rationals.
///
/// # Safety
/// `root` must point to `len` readable values; `field` must be null or a
/// NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_construct(
    f: u32,
    g: u32,
    h: u32,
    root: *const i64,
    len: usize,
    field: *const c_char,
    out: *mut *mut QfRepresentation,
) -> QfStatus {
    guard(|| {
        out_ptr(out)?;
        if root.is_null() {
            return Err(Fail::Arg("null root pointer"));
        }
        let coords = std::slice::from_raw_parts(root, len).to_vec();
        if coords.len() != 3 {
            return Err(Fail::Lib(Error::Input("a root of Q(f,g,h) has three coordinates".into())));
        }
        let params = FamilyParams::new(f as usize, g as usize, h as usize)?;
        let (x, _) = construct(&DimVector::new(coords), params, field_of(field)?)?;
        *out = Box::into_raw(Box::new(QfRepresentation { inner: x }));
        Ok(())
    })
}

/// Parses a representation from its JSON encoding.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_rep_from_json(json: *const c_char, out: *mut *mut QfRepresentation) -> QfStatus {
    guard(|| {
        out_ptr(out)?;
        let x = rep_from_json(text(json)?)?;
        *out = Box::into_raw(Box::new(QfRepresentation { inner: x }));
        Ok(())
    })
}

/// # Safety
/// `rep_handle` must be a live handle; `out` must be writable. Free the string with
/// [`qf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qf_rep_to_json(rep_handle: *const QfRepresentation, out: *mut *mut c_char) -> QfStatus {
    guard(|| {
        out_ptr(out)?;
        give_string(rep_to_json(rep(rep_handle)?), out)
    })
}

/// Number of vertices of the representation's quiver.
///
/// # Safety
/// `rep_handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_rep_vertex_count(rep_handle: *const QfRepresentation, out: *mut usize) -> QfStatus {
    guard(|| {
        out_ptr(out)?;
        *out = rep(rep_handle)?.dims().len();
        Ok(())
    })
}

/// Copies the dimension vector into `dims[0..cap]`; `cap` must be at least
/// the vertex count.
///
/// # Safety
/// `rep_handle` must be a live handle; `dims` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn qf_rep_dims(rep_handle: *const QfRepresentation, dims: *mut usize, cap: usize) -> QfStatus {
    guard(|| {
        out_ptr(dims)?;
        let d = rep(rep_handle)?.dims();
        if cap < d.len() {
            return Err(Fail::Arg("dimension buffer too small"));
        }
        ptr::copy_nonoverlapping(d.as_ptr(), dims, d.len());
        Ok(())
    })
}

/// # Safety
/// `rep_handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_end_dim(rep_handle: *const QfRepresentation, out: *mut usize) -> QfStatus {
    guard(|| {
        out_ptr(out)?;
        *out = end_dim(rep(rep_handle)?);
        Ok(())
    })
}

/// `dim Hom(x, y)` and `dim Ext(x, y)`.
///
/// # Safety
/// `x`, `y` must be live handles; `hom`, `ext` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_hom_ext(
    x: *const QfRepresentation,
    y: *const QfRepresentation,
    hom: *mut usize,
    ext: *mut usize,
) -> QfStatus {
    guard(|| {
        out_ptr(hom)?;
        out_ptr(ext)?;
        let (x, y) = (rep(x)?, rep(y)?);
        *hom = hom_dim(x, y)?;
        *ext = ext_dim(x, y)?;
        Ok(())
    })
}

/// # Safety
/// `rep_handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_is_maximal_rank(rep_handle: *const QfRepresentation, out: *mut bool) -> QfStatus {
    guard(|| {
        out_ptr(out)?;
        *out = maximal_rank_report(rep(rep_handle)?).is_maximal_rank();
        Ok(())
    })
}

/// Whether the coefficient quiver in the stored basis is a tree.
///
/// # Safety
/// `rep_handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_is_tree(rep_handle: *const QfRepresentation, out: *mut bool) -> QfStatus {
    guard(|| {
        out_ptr(out)?;
        *out = is_tree(&coefficient_quiver(rep(rep_handle)?));
        Ok(())
    })
}

/// # Safety
/// `rep_handle` must be a live handle; `out` must be writable. Free the string with
/// [`qf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qf_export_dot(rep_handle: *const QfRepresentation, out: *mut *mut c_char) -> QfStatus {
    guard(|| {
        out_ptr(out)?;
        give_string(export_dot(&coefficient_quiver(rep(rep_handle)?)), out)
    })
}

/// Runs the catalog and returns its JSON report; `pass` receives the overall
/// verdict.
///
/// # Safety
/// `field` must be null or a NUL-terminated string; `out` and `pass` must be
/// writable. Free the string with [`qf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qf_catalog(
    f: u32,
    g: u32,
    h: u32,
    bound: i64,
    field: *const c_char,
    jobs: usize,
    out: *mut *mut c_char,
    pass: *mut bool,
) -> QfStatus {
    guard(|| {
        out_ptr(out)?;
        out_ptr(pass)?;
        let mut config = CatalogConfig::new(FamilyParams::new(f as usize, g as usize, h as usize)?, bound);
        config.field = field_of(field)?;
        config.jobs = jobs;
        let report = run_catalog(&config)?;
        *pass = report.pass;
        give_string(report.to_json(), out)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `rep_handle` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qf_rep_free(rep_handle: *mut QfRepresentation) {
    if !rep_handle.is_null() {
        drop(Box::from_raw(rep_handle));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
