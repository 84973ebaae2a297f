//! C ABI for the perstopy library: opaque space handles, status codes, and
//! flat buffers. The header `include/perstopy.h` is generated by cbindgen at
//! build time.
//!
//! Conventions:
//! * functions returning `*mut` transfer ownership to the caller, who must
//!   free through the matching `pst_*_free`;
//! * functions taking output buffers follow the two-call pattern: call with
//!   a null buffer to query the required length;
//! * on any non-`Ok` status, `pst_last_error` returns a message valid until
//!   the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use perstopy::distances::bottleneck;
use perstopy::gh::{gh_exact, gh_lower_bounds_opts, gh_pointed_exact, GhError};
use perstopy::homology::{mu0_ultrametric, ph0_diagram, ph1_diagram, PersistenceDiagram};
use perstopy::metric::{
    circle_sample, cycle_graph, random_tree_metric, star_graph, uniform_space, SpaceJson,
};
use perstopy::pi1::persistent_pi1;
use perstopy::presentation::GroupClass;
use perstopy::{FiniteMetricSpace, PointedMetricSpace};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PstStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    NotAMetric = 4,
    InvalidArgument = 5,
    BudgetExceeded = 6,
    BufferTooSmall = 7,
}

/// Classification tag of a fundamental group at one scale.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PstGroupTag {
    Trivial = 0,
    Free = 1,
    FreeAbelian = 2,
    Unclassified = 3,
}

/// Opaque handle to a finite metric space with an optional basepoint.
pub struct PstSpace {
    space: FiniteMetricSpace,
    basepoint: Option<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pst_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a space from its JSON form
/// `{"labels": [...], "dist": [[...]], "basepoint": optional}`.
/// Returns null on failure (see `pst_last_error`).
///
/// # Safety
/// `json` must be a valid NUL-terminated C string.
#[no_mangle]
pub unsafe extern "C" fn pst_space_from_json(json: *const c_char) -> *mut PstSpace {
    if json.is_null() {
        set_error("null json pointer");
        return std::ptr::null_mut();
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("json is not valid UTF-8");
            return std::ptr::null_mut();
        }
    };
    let parsed: SpaceJson = match serde_json::from_str(text) {
        Ok(p) => p,
        Err(e) => {
            set_error(&format!("malformed JSON: {e}"));
            return std::ptr::null_mut();
        }
    };
    match FiniteMetricSpace::from_json(&parsed) {
        Ok(space) => {
            if let Some(b) = parsed.basepoint {
                if b >= space.n() {
                    set_error(&format!("basepoint {b} out of range"));
                    return std::ptr::null_mut();
                }
            }
            Box::into_raw(Box::new(PstSpace { space, basepoint: parsed.basepoint }))
        }
        Err(e) => {
            set_error(&e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Builds one of the canonical spaces: kind is `"cycle"`, `"star"`,
/// `"circle"`, `"uniform"`, or `"tree"`. Returns null on failure.
///
/// # Safety
/// `kind` must be a valid NUL-terminated C string.
#[no_mangle]
pub unsafe extern "C" fn pst_space_generate(
    kind: *const c_char,
    n: u32,
    seed: u64,
) -> *mut PstSpace {
    if kind.is_null() {
        set_error("null kind pointer");
        return std::ptr::null_mut();
    }
    let kind = match CStr::from_ptr(kind).to_str() {
        Ok(k) => k,
        Err(_) => {
            set_error("kind is not valid UTF-8");
            return std::ptr::null_mut();
        }
    };
    let n = n as usize;
    let built = match kind {
        "cycle" => cycle_graph(n).map(|s| (s, Some(0))),
        "star" => star_graph(n).map(|p| (p.space, Some(p.basepoint))),
        "circle" => circle_sample(n).map(|s| (s, Some(0))),
        "uniform" => uniform_space(n).map(|s| (s, Some(0))),
        "tree" => random_tree_metric(n, seed).map(|s| (s, Some(0))),
        other => {
            set_error(&format!("unknown space kind `{other}`"));
            return std::ptr::null_mut();
        }
    };
    match built {
        Ok((space, basepoint)) => Box::into_raw(Box::new(PstSpace { space, basepoint })),
        Err(e) => {
            set_error(&e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Frees a space handle; a null pointer is a no-op.
///
/// # Safety
/// `s` must have been returned by a `pst_space_*` constructor and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn pst_space_free(s: *mut PstSpace) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Serializes a space back to JSON; free the string with `pst_string_free`.
///
/// # Safety
/// `s` must be a live space handle.
#[no_mangle]
pub unsafe extern "C" fn pst_space_to_json(s: *const PstSpace) -> *mut c_char {
    let Some(s) = s.as_ref() else {
        set_error("null space pointer");
        return std::ptr::null_mut();
    };
    let text = serde_json::to_string(&s.space.to_json(s.basepoint)).unwrap();
    CString::new(text).unwrap().into_raw()
}

/// Frees a string returned by this library; a null pointer is a no-op.
///
/// # Safety
/// `s` must have been returned by a `pst_*` function producing a string.
#[no_mangle]
pub unsafe extern "C" fn pst_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of points, or -1 for a null handle.
///
/// # Safety
/// `s` must be null or a live space handle.
#[no_mangle]
pub unsafe extern "C" fn pst_space_size(s: *const PstSpace) -> i64 {
    match s.as_ref() {
        Some(s) => s.space.n() as i64,
        None => -1,
    }
}

/// Basepoint index, or -1 when none is set.
///
/// # Safety
/// `s` must be null or a live space handle.
#[no_mangle]
pub unsafe extern "C" fn pst_space_basepoint(s: *const PstSpace) -> i64 {
    match s.as_ref().and_then(|s| s.basepoint) {
        Some(b) => b as i64,
        None => -1,
    }
}

/// Pairwise distance.
///
/// # Safety
/// `s` must be a live space handle and `out` a writable f64 slot.
#[no_mangle]
pub unsafe extern "C" fn pst_space_distance(
    s: *const PstSpace,
    i: u32,
    j: u32,
    out: *mut f64,
) -> PstStatus {
    let (Some(s), Some(out)) = (s.as_ref(), out.as_mut()) else {
        set_error("null pointer");
        return PstStatus::NullPointer;
    };
    if i as usize >= s.space.n() || j as usize >= s.space.n() {
        set_error("point index out of range");
        return PstStatus::InvalidArgument;
    }
    *out = s.space.d(i as usize, j as usize);
    PstStatus::Ok
}

/// Diameter of the space.
///
/// # Safety
/// `s` must be a live space handle and `out` a writable f64 slot.
#[no_mangle]
pub unsafe extern "C" fn pst_space_diameter(s: *const PstSpace, out: *mut f64) -> PstStatus {
    let (Some(s), Some(out)) = (s.as_ref(), out.as_mut()) else {
        set_error("null pointer");
        return PstStatus::NullPointer;
    };
    *out = s.space.diam();
    PstStatus::Ok
}

fn gh_status(e: GhError) -> PstStatus {
    set_error(&e.to_string());
    match e {
        GhError::BudgetExceeded { .. } => PstStatus::BudgetExceeded,
        _ => PstStatus::InvalidArgument,
    }
}

/// Exact Gromov-Hausdorff distance; fails with `BudgetExceeded` when the
/// map-pair search space exceeds `budget`.
///
/// # Safety
/// `x` and `y` must be live space handles and `out` a writable f64 slot.
#[no_mangle]
pub unsafe extern "C" fn pst_gh_exact(
    x: *const PstSpace,
    y: *const PstSpace,
    budget: u64,
    out: *mut f64,
) -> PstStatus {
    let (Some(x), Some(y), Some(out)) = (x.as_ref(), y.as_ref(), out.as_mut()) else {
        set_error("null pointer");
        return PstStatus::NullPointer;
    };
    match gh_exact(&x.space, &y.space, budget as u128) {
        Ok(v) => {
            *out = v;
            PstStatus::Ok
        }
        Err(e) => gh_status(e),
    }
}

/// Pointed Gromov-Hausdorff distance using the stored basepoints
/// (defaulting to point 0).
///
/// # Safety
/// `x` and `y` must be live space handles and `out` a writable f64 slot.
#[no_mangle]
pub unsafe extern "C" fn pst_gh_pointed_exact(
    x: *const PstSpace,
    y: *const PstSpace,
    budget: u64,
    out: *mut f64,
) -> PstStatus {
    let (Some(x), Some(y), Some(out)) = (x.as_ref(), y.as_ref(), out.as_mut()) else {
        set_error("null pointer");
        return PstStatus::NullPointer;
    };
    let px = PointedMetricSpace::new(x.space.clone(), x.basepoint.unwrap_or(0)).unwrap();
    let py = PointedMetricSpace::new(y.space.clone(), y.basepoint.unwrap_or(0)).unwrap();
    match gh_pointed_exact(&px, &py, budget as u128) {
        Ok(v) => {
            *out = v;
            PstStatus::Ok
        }
        Err(e) => gh_status(e),
    }
}

/// Best certified lower bound for the GH distance (no exact search).
///
/// # Safety
/// `x` and `y` must be live space handles and `out` a writable f64 slot.
#[no_mangle]
pub unsafe extern "C" fn pst_gh_lower_bound(
    x: *const PstSpace,
    y: *const PstSpace,
    budget: u64,
    out: *mut f64,
) -> PstStatus {
    let (Some(x), Some(y), Some(out)) = (x.as_ref(), y.as_ref(), out.as_mut()) else {
        set_error("null pointer");
        return PstStatus::NullPointer;
    };
    let report = gh_lower_bounds_opts(&x.space, &y.space, budget as u128, false);
    *out = report.best_bound();
    PstStatus::Ok
}

/// Classification of the fundamental group at one scale: writes the tag and
/// the rank (free rank, free-abelian rank, or abelianization rank).
///
/// # Safety
/// `s` must be a live space handle; `out_tag` and `out_rank` writable slots.
#[no_mangle]
pub unsafe extern "C" fn pst_pi1_class_at(
    s: *const PstSpace,
    scale: f64,
    out_tag: *mut PstGroupTag,
    out_rank: *mut u64,
) -> PstStatus {
    let (Some(s), Some(out_tag), Some(out_rank)) =
        (s.as_ref(), out_tag.as_mut(), out_rank.as_mut())
    else {
        set_error("null pointer");
        return PstStatus::NullPointer;
    };
    let pointed = PointedMetricSpace::new(s.space.clone(), s.basepoint.unwrap_or(0)).unwrap();
    let pp = persistent_pi1(&pointed);
    let class = pp.class_at(scale).normalized();
    *out_rank = class.rank() as u64;
    *out_tag = match class {
        GroupClass::Trivial => PstGroupTag::Trivial,
        GroupClass::Free { .. } => PstGroupTag::Free,
        GroupClass::FreeAbelian { .. } => PstGroupTag::FreeAbelian,
        GroupClass::Unclassified { .. } => PstGroupTag::Unclassified,
    };
    PstStatus::Ok
}

fn write_pairs(
    diagram: &PersistenceDiagram,
    out_pairs: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> PstStatus {
    let needed = diagram.points.len();
    unsafe {
        if let Some(out_len) = out_len.as_mut() {
            *out_len = needed;
        } else {
            set_error("null out_len pointer");
            return PstStatus::NullPointer;
        }
        if out_pairs.is_null() {
            return PstStatus::Ok; // length query
        }
        if capacity < needed {
            set_error(&format!("buffer holds {capacity} pairs, need {needed}"));
            return PstStatus::BufferTooSmall;
        }
        for (k, &(b, d)) in diagram.points.iter().enumerate() {
            *out_pairs.add(2 * k) = b;
            *out_pairs.add(2 * k + 1) = d;
        }
    }
    PstStatus::Ok
}

/// Persistence barcode in dimension 0 or 1 as flat (birth, death) pairs;
/// infinite deaths are `INFINITY`. Call with a null buffer to query the
/// length in pairs.
///
/// # Safety
/// `s` must be a live space handle; `out_pairs` null or `2 * capacity` f64
/// slots; `out_len` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn pst_barcode(
    s: *const PstSpace,
    dim: u32,
    out_pairs: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> PstStatus {
    let Some(s) = s.as_ref() else {
        set_error("null space pointer");
        return PstStatus::NullPointer;
    };
    let d = match dim {
        0 => ph0_diagram(&s.space),
        1 => ph1_diagram(&s.space),
        other => {
            set_error(&format!("unsupported dimension {other}"));
            return PstStatus::InvalidArgument;
        }
    };
    write_pairs(&d, out_pairs, capacity, out_len)
}

/// Single-linkage ultrametric, row-major n*n. Two-call pattern as for
/// `pst_barcode` (`out_len` in f64 entries).
///
/// # Safety
/// `s` must be a live space handle; `out` null or `capacity` f64 slots;
/// `out_len` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn pst_mu0(
    s: *const PstSpace,
    out: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> PstStatus {
    let Some(s) = s.as_ref() else {
        set_error("null space pointer");
        return PstStatus::NullPointer;
    };
    let m = mu0_ultrametric(&s.space);
    let n = m.len();
    if let Some(out_len) = out_len.as_mut() {
        *out_len = n * n;
    } else {
        set_error("null out_len pointer");
        return PstStatus::NullPointer;
    }
    if out.is_null() {
        return PstStatus::Ok;
    }
    if capacity < n * n {
        set_error(&format!("buffer holds {capacity} entries, need {}", n * n));
        return PstStatus::BufferTooSmall;
    }
    for i in 0..n {
        for j in 0..n {
            *out.add(i * n + j) = m[i][j];
        }
    }
    PstStatus::Ok
}

/// Bottleneck distance between two diagrams given as flat (birth, death)
/// pairs; use `INFINITY` for essential classes.
///
/// # Safety
/// `a` must point to `2 * a_pairs` f64 values (likewise `b`); `out` must be
/// a writable f64 slot. Null data pointers are accepted only for length 0.
#[no_mangle]
pub unsafe extern "C" fn pst_bottleneck(
    a: *const f64,
    a_pairs: usize,
    b: *const f64,
    b_pairs: usize,
    out: *mut f64,
) -> PstStatus {
    let Some(out) = out.as_mut() else {
        set_error("null out pointer");
        return PstStatus::NullPointer;
    };
    if (a.is_null() && a_pairs > 0) || (b.is_null() && b_pairs > 0) {
        set_error("null diagram data");
        return PstStatus::NullPointer;
    }
    let read = |p: *const f64, k: usize| -> PersistenceDiagram {
        let mut pts = Vec::with_capacity(k);
        for i in 0..k {
            pts.push((*p.add(2 * i), *p.add(2 * i + 1)));
        }
        PersistenceDiagram::new(pts)
    };
    let da = read(a, a_pairs);
    let db = read(b, b_pairs);
    *out = bottleneck(&da, &db);
    PstStatus::Ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn generate_query_free() {
        unsafe {
            let kind = c("cycle");
            let s = pst_space_generate(kind.as_ptr(), 7, 0);
            assert!(!s.is_null());
            assert_eq!(pst_space_size(s), 7);
            let mut d = 0.0;
            assert_eq!(pst_space_distance(s, 1, 5, &mut d), PstStatus::Ok);
            assert_eq!(d, 3.0);
            let mut diam = 0.0;
            assert_eq!(pst_space_diameter(s, &mut diam), PstStatus::Ok);
            assert_eq!(diam, 3.0);
            pst_space_free(s);
        }
    }

    #[test]
    fn json_round_trip() {
        unsafe {
            let json = c(r#"{"dist":[[0,1],[1,0]],"basepoint":1}"#);
            let s = pst_space_from_json(json.as_ptr());
            assert!(!s.is_null());
            assert_eq!(pst_space_basepoint(s), 1);
            let text = pst_space_to_json(s);
            assert!(!text.is_null());
            let back = CStr::from_ptr(text).to_str().unwrap().to_string();
            assert!(back.contains("\"basepoint\":1"));
            pst_string_free(text);
            pst_space_free(s);
        }
    }

    #[test]
    fn invalid_json_sets_error() {
        unsafe {
            let json = c("{ nope");
            let s = pst_space_from_json(json.as_ptr());
            assert!(s.is_null());
            let err = CStr::from_ptr(pst_last_error()).to_str().unwrap();
            assert!(err.contains("JSON"));

            let json = c(r#"{"dist":[[0,3,1],[3,0,1],[1,1,0]]}"#);
            let s = pst_space_from_json(json.as_ptr());
            assert!(s.is_null());
            let err = CStr::from_ptr(pst_last_error()).to_str().unwrap();
            assert!(err.contains("triangle"));
        }
    }

    #[test]
    fn gh_and_budget() {
        unsafe {
            let cy = c("cycle");
            let st = c("star");
            let c3 = pst_space_generate(cy.as_ptr(), 3, 0);
            let s4 = pst_space_generate(st.as_ptr(), 4, 0);
            let mut v = 0.0;
            assert_eq!(pst_gh_exact(c3, s4, u64::MAX, &mut v), PstStatus::Ok);
            assert!((v - 0.5).abs() < 1e-9);
            assert_eq!(pst_gh_exact(c3, s4, 1, &mut v), PstStatus::BudgetExceeded);
            assert_eq!(pst_gh_pointed_exact(c3, s4, u64::MAX, &mut v), PstStatus::Ok);
            assert!((v - 0.5).abs() < 1e-9);
            let mut lb = 0.0;
            assert_eq!(pst_gh_lower_bound(c3, s4, u64::MAX, &mut lb), PstStatus::Ok);
            assert!(lb <= 0.5 + 1e-9);
            pst_space_free(c3);
            pst_space_free(s4);
        }
    }

    #[test]
    fn pi1_class_and_barcode() {
        unsafe {
            let cy = c("cycle");
            let c7 = pst_space_generate(cy.as_ptr(), 7, 0);
            let mut tag = PstGroupTag::Unclassified;
            let mut rank = 0u64;
            assert_eq!(pst_pi1_class_at(c7, 1.0, &mut tag, &mut rank), PstStatus::Ok);
            assert_eq!(tag, PstGroupTag::Free);
            assert_eq!(rank, 1);
            assert_eq!(pst_pi1_class_at(c7, 3.0, &mut tag, &mut rank), PstStatus::Ok);
            assert_eq!(tag, PstGroupTag::Trivial);

            let mut len = 0usize;
            assert_eq!(
                pst_barcode(c7, 1, std::ptr::null_mut(), 0, &mut len),
                PstStatus::Ok
            );
            assert_eq!(len, 1);
            let mut buf = vec![0.0f64; 2 * len];
            assert_eq!(pst_barcode(c7, 1, buf.as_mut_ptr(), len, &mut len), PstStatus::Ok);
            assert_eq!(buf, vec![1.0, 3.0]);
            // too-small buffer
            let mut tiny = [0.0f64; 2];
            let mut l2 = 0usize;
            assert_eq!(
                pst_barcode(c7, 0, tiny.as_mut_ptr(), 1, &mut l2),
                PstStatus::BufferTooSmall
            );
            pst_space_free(c7);
        }
    }

    #[test]
    fn mu0_and_bottleneck() {
        unsafe {
            let cy = c("cycle");
            let c5 = pst_space_generate(cy.as_ptr(), 5, 0);
            let mut len = 0usize;
            assert_eq!(pst_mu0(c5, std::ptr::null_mut(), 0, &mut len), PstStatus::Ok);
            assert_eq!(len, 25);
            let mut buf = vec![0.0f64; 25];
            assert_eq!(pst_mu0(c5, buf.as_mut_ptr(), 25, &mut len), PstStatus::Ok);
            assert_eq!(buf[1], 1.0);
            pst_space_free(c5);

            let a = [0.0f64, 1.5, 0.0, f64::INFINITY];
            let b = [0.0f64, 1.0, 0.0, f64::INFINITY];
            let mut v = 0.0;
            assert_eq!(pst_bottleneck(a.as_ptr(), 2, b.as_ptr(), 2, &mut v), PstStatus::Ok);
            assert!((v - 0.5).abs() < 1e-9);
        }
    }
}
