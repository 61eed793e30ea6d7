//! C interface to `degmatch`.
//!
//! Graphs cross the boundary as opaque [`DegmatchGraph`] handles. Every
//! fallible call returns a [`DegmatchStatus`]; on failure a human-readable
//! message is kept per thread and can be fetched with
//! [`degmatch_last_error_message`]. Strings handed out by this library must be
//! released with [`degmatch_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use degmatch::bounds::{self, BoundParams};
use degmatch::{io, matching, star, verify, Error, Graph};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegmatchStatus {
    Ok = 0,
    Argument = 1,
    Parse = 2,
    Size = 3,
    Io = 4,
    Precondition = 5,
    NotMember = 6,
    Internal = 7,
    NullPointer = 8,
    Utf8 = 9,
    Panic = 10,
}

/// Opaque graph handle.
pub struct DegmatchGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> DegmatchStatus {
    match err {
        Error::Argument(_) => DegmatchStatus::Argument,
        Error::Parse { .. } => DegmatchStatus::Parse,
        Error::Size(_) => DegmatchStatus::Size,
        Error::Io(_) => DegmatchStatus::Io,
        Error::Precondition(_) => DegmatchStatus::Precondition,
        Error::NotMember { .. } => DegmatchStatus::NotMember,
        Error::Internal(_) => DegmatchStatus::Internal,
    }
}

fn fail(status: DegmatchStatus, msg: impl Into<String>) -> DegmatchStatus {
    set_last_error(msg);
    status
}

/// Runs `body`, recording errors and turning panics into `Panic`.
fn guard<F>(body: F) -> DegmatchStatus
where
    F: FnOnce() -> Result<(), (DegmatchStatus, String)>,
{
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DegmatchStatus::Ok,
        Ok(Err((status, msg))) => fail(status, msg),
        Err(_) => fail(DegmatchStatus::Panic, "panic inside degmatch"),
    }
}

fn lift(err: Error) -> (DegmatchStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (DegmatchStatus, String) {
    (DegmatchStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const DegmatchGraph) -> Result<&'a Graph, (DegmatchStatus, String)> {
    // SAFETY: caller passes null or a live handle from this library.
    unsafe { g.as_ref() }.map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (DegmatchStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: non-null and, per the caller contract, valid for writes.
    unsafe { out.write(value) };
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, (DegmatchStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (DegmatchStatus::Internal, "string contains NUL".to_string()))
}

fn params(d: usize, m: usize) -> Result<BoundParams, (DegmatchStatus, String)> {
    BoundParams::new(d, m).map_err(lift)
}

fn boxed(g: Graph) -> *mut DegmatchGraph {
    Box::into_raw(Box::new(DegmatchGraph { inner: g }))
}

/// Message describing the most recent failure on this thread, or null.
///
/// The pointer stays valid until the next call into this library on the same
/// thread. Do not free it.
#[no_mangle]
pub extern "C" fn degmatch_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn degmatch_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw` in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Creates an edgeless graph on `n` vertices. Returns null on allocation panic.
#[no_mangle]
pub extern "C" fn degmatch_graph_new(n: usize) -> *mut DegmatchGraph {
    catch_unwind(|| boxed(Graph::new(n))).unwrap_or(ptr::null_mut())
}

/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn degmatch_graph_free(g: *mut DegmatchGraph) {
    if !g.is_null() {
        // SAFETY: produced by `Box::into_raw` in `boxed`.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Adds the edge `{u, v}`.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn degmatch_graph_add_edge(g: *mut DegmatchGraph, u: usize, v: usize) -> DegmatchStatus {
    guard(|| {
        // SAFETY: caller contract.
        let h = unsafe { g.as_mut() }.ok_or_else(|| null("graph"))?;
        h.inner.add_edge(u, v).map_err(lift)
    })
}

/// Parses an edge list (`n` on the first line, then one `u v` pair per line).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_graph_parse(text: *const c_char, out: *mut *mut DegmatchGraph) -> DegmatchStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        // SAFETY: caller contract.
        let text = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|e| (DegmatchStatus::Utf8, e.to_string()))?;
        let g = io::parse_edge_list(text).map_err(lift)?;
        // SAFETY: caller contract.
        unsafe { write_out(out, boxed(g)) }
    })
}

/// Serializes the graph as an edge list. Free the result with
/// [`degmatch_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_graph_to_edge_list(g: *const DegmatchGraph, out: *mut *mut c_char) -> DegmatchStatus {
    guard(|| {
        // SAFETY: caller contract.
        let g = unsafe { graph_ref(g) }?;
        let s = into_c_string(io::serialize_edge_list(g))?;
        // SAFETY: caller contract.
        unsafe { write_out(out, s) }
    })
}

/// # Safety
/// `g` must be null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn degmatch_graph_vertex_count(g: *const DegmatchGraph) -> usize {
    // SAFETY: caller contract.
    unsafe { g.as_ref() }.map_or(0, |h| h.inner.n())
}

/// # Safety
/// `g` must be null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn degmatch_graph_edge_count(g: *const DegmatchGraph) -> usize {
    // SAFETY: caller contract.
    unsafe { g.as_ref() }.map_or(0, |h| h.inner.edge_count())
}

/// # Safety
/// `g` must be null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn degmatch_graph_max_degree(g: *const DegmatchGraph) -> usize {
    // SAFETY: caller contract.
    unsafe { g.as_ref() }.map_or(0, |h| h.inner.max_degree())
}

/// Matching number of the graph.
///
/// # Safety
/// `g` must be null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn degmatch_graph_nu(g: *const DegmatchGraph) -> usize {
    // SAFETY: caller contract.
    unsafe { g.as_ref() }.map_or(0, |h| matching::nu(&h.inner))
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_graph_is_factor_critical(g: *const DegmatchGraph, out: *mut bool) -> DegmatchStatus {
    guard(|| {
        // SAFETY: caller contract.
        let g = unsafe { graph_ref(g) }?;
        // SAFETY: caller contract.
        unsafe { write_out(out, star::is_factor_critical(g)) }
    })
}

/// Writes `e(d, m)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_e_bound(d: usize, m: usize, out: *mut usize) -> DegmatchStatus {
    guard(|| {
        let value = bounds::e_bound(params(d, m)?).value;
        // SAFETY: caller contract.
        unsafe { write_out(out, value) }
    })
}

/// Writes the estimate `(m-1)(2d-3)` that ignores component structure.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_trivial_bound(d: usize, m: usize, out: *mut usize) -> DegmatchStatus {
    guard(|| {
        let value = bounds::trivial_bound(params(d, m)?);
        // SAFETY: caller contract.
        unsafe { write_out(out, value) }
    })
}

/// Writes the maximum edge count with `Δ < s` and `ν < s`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_e_ss(s: usize, out: *mut usize) -> DegmatchStatus {
    guard(|| {
        let value = bounds::e_ss(s).map_err(lift)?;
        // SAFETY: caller contract.
        unsafe { write_out(out, value) }
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_is_extremal_unique(d: usize, m: usize, out: *mut bool) -> DegmatchStatus {
    guard(|| {
        let value = bounds::is_extremal_unique(params(d, m)?);
        // SAFETY: caller contract.
        unsafe { write_out(out, value) }
    })
}

/// Builds an extremal member of `F(d, m)`. Free with [`degmatch_graph_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_construct_extremal(d: usize, m: usize, out: *mut *mut DegmatchGraph) -> DegmatchStatus {
    guard(|| {
        let g = bounds::construct_extremal(params(d, m)?).map_err(lift)?;
        // SAFETY: caller contract.
        unsafe { write_out(out, boxed(g)) }
    })
}

/// Writes whether the graph is an edge-maximal member of `F(d, m)`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_is_member(g: *const DegmatchGraph, d: usize, m: usize, out: *mut bool) -> DegmatchStatus {
    guard(|| {
        // SAFETY: caller contract.
        let g = unsafe { graph_ref(g) }?;
        params(d, m)?;
        let report = verify::is_member_f(g, d, m);
        // SAFETY: caller contract.
        unsafe { write_out(out, report.is_member()) }
    })
}

/// Compares the closed form with search and writes the JSON report. Free the
/// result with [`degmatch_string_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn degmatch_verify_bound_json(d: usize, m: usize, n_max: usize, out: *mut *mut c_char) -> DegmatchStatus {
    guard(|| {
        let report = verify::verify_bound(d, m, n_max).map_err(lift)?;
        let s = into_c_string(report.to_json())?;
        // SAFETY: caller contract.
        unsafe { write_out(out, s) }
    })
}
