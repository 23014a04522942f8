//! C ABI for `graceful-core`.
//!
//! Shapes are opaque heap handles created by `gf_shape_new` / `gf_shape_parse`
//! and released with `gf_shape_free`. Every fallible call returns a
//! [`GfStatus`]; on failure a message is available from
//! `gf_last_error_message` on the same thread. Variable-length results are
//! written into caller buffers: when the buffer is too small the call returns
//! `GF_STATUS_BUFFER_TOO_SMALL` and stores the required length.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graceful_core::labelling::label_all;
use graceful_core::verify::StreamVerifier;
use graceful_core::{
    canonical_path_labelling, edge_label, invert_label, label_vertex, InverseError, Label,
    LabelError, ShapeError, TreeShape, VertexId,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Capacity = 4,
    InvalidVertex = 5,
    OutOfRange = 6,
    BufferTooSmall = 7,
    Consistency = 8,
    Panic = 9,
}

/// Opaque handle to an immutable tree shape.
pub struct GfShape {
    shape: TreeShape,
}

/// Summary of a streaming gracefulness and separator check.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GfVerifyReport {
    pub graceful: bool,
    pub vertex_labels_distinct: bool,
    pub labels_in_range: bool,
    pub edge_labels_complete: bool,
    /// True when some k weakly separates every edge; `weak_k_lo..=weak_k_hi`.
    pub weak_feasible: bool,
    pub weak_k_lo: u64,
    pub weak_k_hi: u64,
    /// True when k_1 = 2, in which case `claimed_k` is h_2.
    pub has_claimed_k: bool,
    pub claimed_k: u64,
    pub claim_holds: bool,
    pub strict_alpha_feasible: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: GfStatus, msg: impl Into<String>) -> GfStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> GfStatus) -> GfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(GfStatus::Panic, "internal panic"),
    }
}

impl From<&ShapeError> for GfStatus {
    fn from(e: &ShapeError) -> Self {
        match e {
            ShapeError::Capacity { .. } => GfStatus::Capacity,
            _ => GfStatus::Parse,
        }
    }
}

fn label_status(e: &LabelError) -> GfStatus {
    match e {
        LabelError::Vertex(_) => GfStatus::InvalidVertex,
        LabelError::Arithmetic { .. } | LabelError::TableSize { .. } => GfStatus::Consistency,
    }
}

unsafe fn shape_ref<'a>(shape: *const GfShape) -> Option<&'a TreeShape> {
    // SAFETY: caller passes a handle from gf_shape_new/gf_shape_parse or NULL.
    unsafe { shape.as_ref() }.map(|s| &s.shape)
}

unsafe fn vertex_from(edges: *const u64, len: usize) -> Option<VertexId> {
    if len == 0 {
        return Some(VertexId::root());
    }
    if edges.is_null() {
        return None;
    }
    // SAFETY: caller guarantees `edges` points to `len` readable values.
    Some(VertexId::new(
        unsafe { std::slice::from_raw_parts(edges, len) }.to_vec(),
    ))
}

/// Copies `values` into the caller's buffer, reporting the length needed.
unsafe fn write_out(
    values: &[u64],
    out: *mut u64,
    capacity: usize,
    out_len: *mut usize,
) -> GfStatus {
    if out_len.is_null() {
        return fail(GfStatus::NullPointer, "out_len is NULL");
    }
    // SAFETY: checked non-null above; caller guarantees it is writable.
    unsafe { *out_len = values.len() };
    if values.len() > capacity {
        return fail(
            GfStatus::BufferTooSmall,
            format!("buffer holds {capacity} values, {} needed", values.len()),
        );
    }
    if !values.is_empty() {
        if out.is_null() {
            return fail(GfStatus::NullPointer, "output buffer is NULL");
        }
        // SAFETY: `out` has room for `capacity >= values.len()` values.
        unsafe { ptr::copy_nonoverlapping(values.as_ptr(), out, values.len()) };
    }
    GfStatus::Ok
}

fn into_handle(result: Result<TreeShape, ShapeError>, out: *mut *mut GfShape) -> GfStatus {
    match result {
        Ok(shape) => {
            // SAFETY: `out` was checked non-null by the caller of this helper.
            unsafe { *out = Box::into_raw(Box::new(GfShape { shape })) };
            GfStatus::Ok
        }
        Err(e) => fail(GfStatus::from(&e), e.to_string()),
    }
}

/// Builds a shape from `len` daughter degrees.
///
/// # Safety
/// `degrees` must point to `len` readable values (it may be NULL when `len`
/// is 0) and `out` must be writable. On success `*out` owns a handle that
/// must be released with [`gf_shape_free`].
#[no_mangle]
pub unsafe extern "C" fn gf_shape_new(
    degrees: *const u64,
    len: usize,
    out: *mut *mut GfShape,
) -> GfStatus {
    guard(|| {
        if out.is_null() || (degrees.is_null() && len > 0) {
            return fail(GfStatus::NullPointer, "NULL argument");
        }
        let ks = if len == 0 {
            Vec::new()
        } else {
            // SAFETY: per the contract above.
            unsafe { std::slice::from_raw_parts(degrees, len) }.to_vec()
        };
        into_handle(TreeShape::from_degrees(&ks), out)
    })
}

/// Parses a comma-separated degree sequence such as `"2,3,4"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_shape_parse(text: *const c_char, out: *mut *mut GfShape) -> GfStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(GfStatus::NullPointer, "NULL argument");
        }
        // SAFETY: caller guarantees a NUL-terminated string.
        let Ok(text) = unsafe { CStr::from_ptr(text) }.to_str() else {
            return fail(GfStatus::InvalidUtf8, "degree text is not UTF-8");
        };
        into_handle(TreeShape::parse(text), out)
    })
}

/// Releases a shape. NULL is ignored.
///
/// # Safety
/// `shape` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_shape_free(shape: *mut GfShape) {
    if !shape.is_null() {
        // SAFETY: handle came from Box::into_raw in into_handle.
        drop(unsafe { Box::from_raw(shape) });
    }
}

/// Number of levels q, or 0 for NULL.
///
/// # Safety
/// `shape` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_shape_levels(shape: *const GfShape) -> usize {
    unsafe { shape_ref(shape) }.map_or(0, TreeShape::levels)
}

/// |V|, or 0 for NULL.
///
/// # Safety
/// `shape` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_shape_vertex_count(shape: *const GfShape) -> u64 {
    unsafe { shape_ref(shape) }.map_or(0, TreeShape::vertex_count)
}

/// |E|, or 0 for NULL.
///
/// # Safety
/// `shape` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_shape_edge_count(shape: *const GfShape) -> u64 {
    unsafe { shape_ref(shape) }.map_or(0, TreeShape::edge_count)
}

/// Writes h_level (1-based level) to `out`.
///
/// # Safety
/// `shape` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf_shape_level_size(
    shape: *const GfShape,
    level: usize,
    out: *mut u64,
) -> GfStatus {
    guard(|| {
        let (Some(s), false) = (unsafe { shape_ref(shape) }, out.is_null()) else {
            return fail(GfStatus::NullPointer, "NULL argument");
        };
        if level == 0 || level > s.levels() {
            return fail(
                GfStatus::OutOfRange,
                format!("level {level} outside [1, {}]", s.levels()),
            );
        }
        unsafe { *out = s.level_size(level) };
        GfStatus::Ok
    })
}

/// Label of the vertex with edge sequence `edges[0..len]` (len 0 = root).
///
/// # Safety
/// `shape` must be a live handle, `edges` must point to `len` values (or be
/// NULL when `len` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_label_vertex(
    shape: *const GfShape,
    edges: *const u64,
    len: usize,
    out: *mut u64,
) -> GfStatus {
    guard(|| {
        let (Some(s), Some(v), false) = (
            unsafe { shape_ref(shape) },
            unsafe { vertex_from(edges, len) },
            out.is_null(),
        ) else {
            return fail(GfStatus::NullPointer, "NULL argument");
        };
        match label_vertex(s, &v) {
            Ok(l) => {
                unsafe { *out = l.get() };
                GfStatus::Ok
            }
            Err(e) => fail(label_status(&e), e.to_string()),
        }
    })
}

/// Label of the edge between a non-root vertex and its parent.
///
/// # Safety
/// As for [`gf_label_vertex`].
#[no_mangle]
pub unsafe extern "C" fn gf_edge_label(
    shape: *const GfShape,
    edges: *const u64,
    len: usize,
    out: *mut u64,
) -> GfStatus {
    guard(|| {
        let (Some(s), Some(v), false) = (
            unsafe { shape_ref(shape) },
            unsafe { vertex_from(edges, len) },
            out.is_null(),
        ) else {
            return fail(GfStatus::NullPointer, "NULL argument");
        };
        match edge_label(s, &v) {
            Ok(l) => {
                unsafe { *out = l.get() };
                GfStatus::Ok
            }
            Err(e) => fail(label_status(&e), e.to_string()),
        }
    })
}

/// Decodes label `m` into the edge sequence of its vertex.
///
/// # Safety
/// `shape` must be a live handle, `out_edges` must have room for `capacity`
/// values and `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_invert_label(
    shape: *const GfShape,
    m: u64,
    out_edges: *mut u64,
    capacity: usize,
    out_len: *mut usize,
) -> GfStatus {
    guard(|| {
        let Some(s) = (unsafe { shape_ref(shape) }) else {
            return fail(GfStatus::NullPointer, "shape is NULL");
        };
        match invert_label(s, Label(m)) {
            Ok(v) => unsafe { write_out(v.edges(), out_edges, capacity, out_len) },
            Err(e @ InverseError::OutOfRange { .. }) => fail(GfStatus::OutOfRange, e.to_string()),
            Err(e) => fail(GfStatus::Consistency, e.to_string()),
        }
    })
}

/// Writes all |V| labels in breadth-first vertex order.
///
/// # Safety
/// `shape` must be a live handle, `out` must have room for `capacity` values
/// and `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_label_all(
    shape: *const GfShape,
    out: *mut u64,
    capacity: usize,
    out_len: *mut usize,
) -> GfStatus {
    guard(|| {
        let Some(s) = (unsafe { shape_ref(shape) }) else {
            return fail(GfStatus::NullPointer, "shape is NULL");
        };
        if out_len.is_null() {
            return fail(GfStatus::NullPointer, "out_len is NULL");
        }
        let needed = usize::try_from(s.vertex_count()).unwrap_or(usize::MAX);
        if needed > capacity {
            unsafe { *out_len = needed };
            return fail(
                GfStatus::BufferTooSmall,
                format!("buffer holds {capacity} values, {needed} needed"),
            );
        }
        if out.is_null() {
            return fail(GfStatus::NullPointer, "output buffer is NULL");
        }
        // SAFETY: `out` has room for `needed` values.
        let buf = unsafe { std::slice::from_raw_parts_mut(out, needed) };
        for (slot, r) in buf.iter_mut().zip(label_all(s)) {
            *slot = r.label.get();
        }
        unsafe { *out_len = needed };
        GfStatus::Ok
    })
}

/// Streams the closed-form labelling through the verifier and fills `out`.
///
/// # Safety
/// `shape` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf_verify(shape: *const GfShape, out: *mut GfVerifyReport) -> GfStatus {
    guard(|| {
        let (Some(s), false) = (unsafe { shape_ref(shape) }, out.is_null()) else {
            return fail(GfStatus::NullPointer, "NULL argument");
        };
        let mut verifier = StreamVerifier::new(s);
        for r in label_all(s) {
            if let Err(e) = verifier.push(&r) {
                return fail(GfStatus::Consistency, e.to_string());
            }
        }
        let (report, interval) = match verifier.finish() {
            Ok(x) => x,
            Err(e) => return fail(GfStatus::Consistency, e.to_string()),
        };
        let weak = interval.into_report(s);
        let range = weak.feasible_k_range;
        unsafe {
            *out = GfVerifyReport {
                graceful: report.passed(),
                vertex_labels_distinct: report.vertex_labels_distinct,
                labels_in_range: report.labels_in_range,
                edge_labels_complete: report.edge_label_multiset_complete,
                weak_feasible: range.is_some(),
                weak_k_lo: range.map_or(0, |r| r.lo),
                weak_k_hi: range.map_or(0, |r| r.hi),
                has_claimed_k: weak.claimed_k.is_some(),
                claimed_k: weak.claimed_k.unwrap_or(0),
                claim_holds: weak.claim_holds.unwrap_or(false),
                strict_alpha_feasible: weak.strict_alpha_feasible,
            }
        };
        GfStatus::Ok
    })
}

/// The zig-zag labelling 0, n-1, 1, n-2, ... of a path on `n` vertices.
///
/// # Safety
/// `out` must have room for `capacity` values and `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_canonical_path_labelling(
    n: u64,
    out: *mut u64,
    capacity: usize,
    out_len: *mut usize,
) -> GfStatus {
    guard(|| {
        if usize::try_from(n).map_or(true, |n| n > capacity) {
            if out_len.is_null() {
                return fail(GfStatus::NullPointer, "out_len is NULL");
            }
            unsafe { *out_len = usize::try_from(n).unwrap_or(usize::MAX) };
            return fail(
                GfStatus::BufferTooSmall,
                format!("buffer holds {capacity} values, {n} needed"),
            );
        }
        unsafe { write_out(&canonical_path_labelling(n), out, capacity, out_len) }
    })
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gf_status_str(status: GfStatus) -> *const c_char {
    let s: &'static CStr = match status {
        GfStatus::Ok => c"ok",
        GfStatus::NullPointer => c"null pointer argument",
        GfStatus::InvalidUtf8 => c"invalid UTF-8",
        GfStatus::Parse => c"malformed degree sequence",
        GfStatus::Capacity => c"tree exceeds 64-bit capacity",
        GfStatus::InvalidVertex => c"invalid vertex for this shape",
        GfStatus::OutOfRange => c"value out of range",
        GfStatus::BufferTooSmall => c"output buffer too small",
        GfStatus::Consistency => c"internal consistency failure",
        GfStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
