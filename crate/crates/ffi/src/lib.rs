//! C interface to the `qcoh` engine.
//!
//! Models and tables are opaque handles created by `qcoh_*` constructors and
//! released with the matching `_free`. Every fallible call returns a
//! [`QcohStatus`]; on failure [`qcoh_last_error`] describes the problem.
//! Strings handed out by the library are released with [`qcoh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qcoh::gw::{default_seeds, fano3_solve, gw_invariant, nd_plane, wdvv_count, wdvv_solve, Fano3Space, GWTable};
use qcoh::model::{builtin_model, parse_model, FanoModel};
use qcoh::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcohStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownModel = 3,
    InvalidModel = 4,
    TableMiss = 5,
    Inconsistent = 6,
    Parse = 7,
    Panic = 8,
}

/// A validated model.
pub struct QcohModel(FanoModel);

/// A table of invariants for one model.
pub struct QcohTable(GWTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QcohStatus {
    match e {
        Error::UnknownModel(_) => QcohStatus::UnknownModel,
        Error::InvalidModel { .. } => QcohStatus::InvalidModel,
        Error::TableMiss { .. } => QcohStatus::TableMiss,
        Error::Parse(_) => QcohStatus::Parse,
        Error::Inconsistent(_)
        | Error::NoSolvableEquation { .. }
        | Error::NonIntegral { .. }
        | Error::Residual(_)
        | Error::InvalidEntry { .. } => QcohStatus::Inconsistent,
        _ => QcohStatus::InvalidArgument,
    }
}

struct Fail(QcohStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QcohStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QcohStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcohStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QcohStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(QcohStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn read_slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).map_err(|_| Fail(QcohStatus::InvalidArgument, "string contains NUL".into()))?.into_raw();
    Ok(())
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qcoh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qcoh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Built-in model by name (`p1`, `p2`, `p3`, `pN`, `q3`, `p1xp1`, or `pr`
/// with `r > 0`).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_builtin(name: *const c_char, r: u32, out: *mut *mut QcohModel) -> QcohStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let m = builtin_model(name, (r > 0).then_some(r))?;
        write_out(out, QcohModel(m))
    })
}

/// Model from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_from_json(json: *const c_char, out: *mut *mut QcohModel) -> QcohStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        write_out(out, QcohModel(parse_model(text, "custom")?))
    })
}

/// # Safety
/// `model` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_free(model: *mut QcohModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of basis classes, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_rank(model: *const QcohModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.rank())
}

/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_dimension(model: *const QcohModel) -> u32 {
    model.as_ref().map_or(0, |m| m.0.dimension())
}

/// Plane-curve counts through degree `d_max`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_nd_plane(d_max: u32, out: *mut *mut QcohTable) -> QcohStatus {
    guard(|| write_out(out, QcohTable(nd_plane(d_max)?)))
}

/// Recursion table for `space` = `"p3"` or `"q3"` through degree `d_max`.
///
/// # Safety
/// `space` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_fano3_solve(space: *const c_char, d_max: u32, out: *mut *mut QcohTable) -> QcohStatus {
    guard(|| {
        let space: Fano3Space = read_str(space, "space")?.parse()?;
        write_out(out, QcohTable(fano3_solve(space, d_max)?))
    })
}

/// Associativity solver from the built-in seeds through c1-degree `c1_max`.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_wdvv_solve(model: *const QcohModel, c1_max: u32, out: *mut *mut QcohTable) -> QcohStatus {
    guard(|| {
        let m = &model.as_ref().ok_or_else(|| null("model"))?.0;
        write_out(out, QcohTable(wdvv_solve(m, &default_seeds(m)?, c1_max)?))
    })
}

/// # Safety
/// `table` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qcoh_table_free(table: *mut QcohTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of stored invariants, or 0 for a null handle.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcoh_table_len(table: *const QcohTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.len())
}

/// Stored invariant for class `beta` and insertion multidegree `ins`, as a
/// decimal string.
///
/// # Safety
/// Arrays must hold the given number of elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_table_lookup(
    table: *const QcohTable,
    beta: *const u32,
    beta_len: usize,
    ins: *const u32,
    ins_len: usize,
    out: *mut *mut c_char,
) -> QcohStatus {
    guard(|| {
        let t = &table.as_ref().ok_or_else(|| null("table"))?.0;
        let v = t.lookup(read_slice(beta, beta_len, "beta")?, read_slice(ins, ins_len, "ins")?)?;
        write_string(out, v.to_string())
    })
}

/// `I_beta(T_{classes[0]} ... T_{classes[n-1]})` as a decimal string.
///
/// # Safety
/// Handles must be live; arrays must hold the given number of elements;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_gw_invariant(
    model: *const QcohModel,
    table: *const QcohTable,
    beta: *const u32,
    beta_len: usize,
    classes: *const usize,
    n: usize,
    out: *mut *mut c_char,
) -> QcohStatus {
    guard(|| {
        let m = &model.as_ref().ok_or_else(|| null("model"))?.0;
        let t = &table.as_ref().ok_or_else(|| null("table"))?.0;
        let v = gw_invariant(m, t, read_slice(beta, beta_len, "beta")?, read_slice(classes, n, "classes")?)?;
        write_string(out, v.to_string())
    })
}

/// Table entries as a JSON array of `{beta, insertions, value}`.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_table_to_json(table: *const QcohTable, out: *mut *mut c_char) -> QcohStatus {
    guard(|| {
        let t = &table.as_ref().ok_or_else(|| null("table"))?.0;
        let json = serde_json::to_string(&t.to_entries()).map_err(|e| Fail(QcohStatus::Parse, e.to_string()))?;
        write_string(out, json)
    })
}

/// Number of independent associativity equations for `m + 1` classes, as a
/// decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_wdvv_count(m: u64, out: *mut *mut c_char) -> QcohStatus {
    guard(|| write_string(out, wdvv_count(m).to_string()))
}
