//! C ABI for `wedgework`.
//!
//! Every fallible function returns a [`WwStatus`]; on anything other than
//! `WW_STATUS_OK` a description is available from [`ww_last_error`] on the
//! same thread. Objects are opaque handles released with their `_free`
//! function. Strings returned through `out` parameters are owned by the
//! caller and released with [`ww_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_rational::Ratio;
use wedgework::bounds::{
    audit_dirac, audit_pair_identity, audit_theorem3, dichotomy_report, dyadic_profile, AuditError,
    Branch, DyadicProfileParams,
};
use wedgework::finite_plane::pg2;
use wedgework::kaleidoscope::{
    expand, family_wedge, gen_near_pencil, gen_pencil, gen_simple_cyclic, parse_wedge,
    serialize_wedge, WedgeSpec,
};
use wedgework::render::{render_arrangement, render_wedge, RenderError, RenderOptions};
use wedgework::{parse_structure, serialize_structure, IncidenceStructure, Stats};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WwStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    InvalidStructure = 5,
    ExpansionFailed = 6,
    BudgetExceeded = 7,
    OutOfRange = 8,
    Panic = 99,
}

/// Opaque incidence structure.
pub struct WwStructure(IncidenceStructure);

/// Opaque folded wedge.
pub struct WwWedge(WedgeSpec);

/// Opaque statistics of a valid structure.
pub struct WwStats(Stats);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct WwDiracReport {
    pub hypothesis_holds: bool,
    pub g: usize,
    pub h: usize,
    pub g_ge_h: bool,
    pub binomial_holds: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct WwDyadicWindow {
    pub lower: u64,
    pub upper: u64,
    pub below: u64,
    pub inside: u64,
    pub above: u64,
    pub empty: bool,
}

/// Bits of the dichotomy branch mask.
pub const WW_BRANCH_COMPLETE_PENCIL: u32 = 1;
pub const WW_BRANCH_LARGE_COVERAGE: u32 = 2;
pub const WW_BRANCH_MANY_VERTICES: u32 = 4;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (WwStatus, String);

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> WwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WwStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            WwStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    (WwStatus::NullArgument, format!("`{name}` is null"))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (WwStatus::InvalidUtf8, format!("`{name}`: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| (WwStatus::InvalidArgument, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = value;
    Ok(())
}

fn audit_failure(e: AuditError) -> Failure {
    let status = match e {
        AuditError::SizeLimitExceeded { .. } => WwStatus::BudgetExceeded,
        AuditError::InvalidStructure => WwStatus::InvalidStructure,
        _ => WwStatus::InvalidArgument,
    };
    (status, e.to_string())
}

fn render_failure(e: RenderError) -> Failure {
    let status = match e {
        RenderError::Expand(_) => WwStatus::ExpansionFailed,
        _ => WwStatus::InvalidArgument,
    };
    (status, e.to_string())
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ww_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ww_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// structures

/// Parses `.acc` text.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_structure_parse(
    text_ptr: *const c_char,
    out: *mut *mut WwStructure,
) -> WwStatus {
    guard(|| {
        let s = parse_structure(text(text_ptr, "text")?)
            .map_err(|e| (WwStatus::ParseError, e.to_string()))?;
        put(out, WwStructure(s))
    })
}

/// Canonical `.acc` text.
///
/// # Safety
/// `s` must be a live structure handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_structure_serialize(
    s: *const WwStructure,
    out: *mut *mut c_char,
) -> WwStatus {
    guard(|| put_string(out, serialize_structure(&handle(s, "structure")?.0)))
}

/// # Safety
/// `s` must be null or a structure handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ww_structure_free(s: *mut WwStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// α of the structure; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live structure handle.
#[no_mangle]
pub unsafe extern "C" fn ww_structure_alpha(s: *const WwStructure) -> u32 {
    s.as_ref().map_or(0, |s| s.0.alpha())
}

/// # Safety
/// `s` must be null or a live structure handle.
#[no_mangle]
pub unsafe extern "C" fn ww_structure_curve_count(s: *const WwStructure) -> usize {
    s.as_ref().map_or(0, |s| s.0.curve_count())
}

/// # Safety
/// `s` must be null or a live structure handle.
#[no_mangle]
pub unsafe extern "C" fn ww_structure_vertex_count(s: *const WwStructure) -> usize {
    s.as_ref().map_or(0, |s| s.0.vertex_count())
}

/// Copies the curve ids of vertex `index` into `buf` (capacity `cap`) and
/// stores the vertex size in `len`. When `cap` is too small nothing is
/// copied, `len` is still set and the status is `WW_STATUS_OUT_OF_RANGE`.
///
/// # Safety
/// `s` must be a live handle, `buf` must hold `cap` ids, `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_structure_vertex(
    s: *const WwStructure,
    index: usize,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> WwStatus {
    guard(|| {
        let s = &handle(s, "structure")?.0;
        let v = s.vertices().get(index).ok_or_else(|| {
            (
                WwStatus::OutOfRange,
                format!("vertex {index} of {}", s.vertex_count()),
            )
        })?;
        write(len, v.len())?;
        if cap < v.len() {
            return Err((
                WwStatus::OutOfRange,
                format!("vertex has {} curves, buffer holds {cap}", v.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(v.as_ptr(), buf, v.len());
        Ok(())
    })
}

/// Stores whether the structure is a valid α-curve combinatorics; the
/// violations, if any, become the last error message.
///
/// # Safety
/// `s` must be a live handle; `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_structure_validate(
    s: *const WwStructure,
    valid: *mut bool,
) -> WwStatus {
    guard(|| {
        let report = handle(s, "structure")?.0.validate();
        write(valid, report.valid())?;
        if !report.valid() {
            set_error(report.to_string());
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// statistics

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_structure_stats(
    s: *const WwStructure,
    out: *mut *mut WwStats,
) -> WwStatus {
    guard(|| {
        let st = handle(s, "structure")?
            .0
            .stats()
            .map_err(|e| (WwStatus::InvalidStructure, e.to_string()))?;
        put(out, WwStats(st))
    })
}

/// # Safety
/// `st` must be null or a stats handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ww_stats_free(st: *mut WwStats) {
    if !st.is_null() {
        drop(Box::from_raw(st));
    }
}

/// Number of curves.
///
/// # Safety
/// `st` must be null or a live stats handle.
#[no_mangle]
pub unsafe extern "C" fn ww_stats_n(st: *const WwStats) -> usize {
    st.as_ref().map_or(0, |st| st.0.n())
}

/// Largest number of vertices on one curve.
///
/// # Safety
/// `st` must be null or a live stats handle.
#[no_mangle]
pub unsafe extern "C" fn ww_stats_r(st: *const WwStats) -> usize {
    st.as_ref().map_or(0, |st| st.0.r)
}

/// Vertices on exactly `k` curves.
///
/// # Safety
/// `st` must be null or a live stats handle.
#[no_mangle]
pub unsafe extern "C" fn ww_stats_t(st: *const WwStats, k: usize) -> usize {
    st.as_ref().map_or(0, |st| st.0.t(k))
}

/// Curve pairs whose common vertices have minimum degree `d`.
///
/// # Safety
/// `st` must be null or a live stats handle.
#[no_mangle]
pub unsafe extern "C" fn ww_stats_l(st: *const WwStats, d: usize) -> usize {
    st.as_ref()
        .map_or(0, |st| st.0.ld.get(&d).copied().unwrap_or(0))
}

// ---------------------------------------------------------------------------
// generators

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_gen_family(j: u32, out: *mut *mut WwWedge) -> WwStatus {
    guard(|| {
        let w = family_wedge(j).map_err(|e| (WwStatus::InvalidArgument, e.to_string()))?;
        put(out, WwWedge(w))
    })
}

unsafe fn fixture(
    n: usize,
    out: *mut *mut WwStructure,
    f: fn(usize) -> Result<IncidenceStructure, wedgework::kaleidoscope::FixtureError>,
) -> WwStatus {
    guard(|| {
        let s = f(n).map_err(|e| (WwStatus::InvalidArgument, e.to_string()))?;
        put(out, WwStructure(s))
    })
}

/// `n` curves through one point.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_gen_pencil(n: usize, out: *mut *mut WwStructure) -> WwStatus {
    fixture(n, out, gen_pencil)
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_gen_near_pencil(n: usize, out: *mut *mut WwStructure) -> WwStatus {
    fixture(n, out, gen_near_pencil)
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_gen_simple(n: usize, out: *mut *mut WwStructure) -> WwStatus {
    fixture(n, out, gen_simple_cyclic)
}

/// Lines of PG(2, p): all of them when `all` is set, otherwise `n` sampled from `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_gen_pg2(
    p: u32,
    n: usize,
    seed: u64,
    all: bool,
    out: *mut *mut WwStructure,
) -> WwStatus {
    guard(|| {
        let bad =
            |e: wedgework::finite_plane::PlaneError| (WwStatus::InvalidArgument, e.to_string());
        let plane = pg2(p).map_err(bad)?;
        let ids = if all {
            (0..plane.line_count()).collect()
        } else {
            plane.sample_lines(n, seed).map_err(bad)?
        };
        put(
            out,
            WwStructure(plane.structure_from_lines(&ids, false).map_err(bad)?),
        )
    })
}

// ---------------------------------------------------------------------------
// wedges

/// Parses `.wedge` text.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_wedge_parse(
    text_ptr: *const c_char,
    out: *mut *mut WwWedge,
) -> WwStatus {
    guard(|| {
        let w = parse_wedge(text(text_ptr, "text")?)
            .map_err(|e| (WwStatus::ParseError, e.to_string()))?;
        put(out, WwWedge(w))
    })
}

/// # Safety
/// `w` must be a live wedge handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_wedge_serialize(w: *const WwWedge, out: *mut *mut c_char) -> WwStatus {
    guard(|| put_string(out, serialize_wedge(&handle(w, "wedge")?.0)))
}

/// # Safety
/// `w` must be null or a wedge handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ww_wedge_free(w: *mut WwWedge) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Mirror count `m`; 0 for a null handle.
///
/// # Safety
/// `w` must be null or a live wedge handle.
#[no_mangle]
pub unsafe extern "C" fn ww_wedge_m(w: *const WwWedge) -> u32 {
    w.as_ref().map_or(0, |w| w.0.m())
}

/// Unfolds the wedge into its arrangement.
///
/// # Safety
/// `w` must be a live wedge handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_expand(w: *const WwWedge, out: *mut *mut WwStructure) -> WwStatus {
    guard(|| {
        let arr = expand(&handle(w, "wedge")?.0)
            .map_err(|e| (WwStatus::ExpansionFailed, e.to_string()))?;
        put(out, WwStructure(arr.structure))
    })
}

// ---------------------------------------------------------------------------
// audits

/// Both t_k bounds over every applicable k.
///
/// # Safety
/// `st` must be a live stats handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_audit_thm3(
    st: *const WwStats,
    part1: *mut bool,
    part2: *mut bool,
) -> WwStatus {
    guard(|| {
        let report = audit_theorem3(&handle(st, "stats")?.0);
        write(part1, report.part1_holds())?;
        write(part2, report.part2_holds())
    })
}

/// Σ_d l_d = C(n, 2).
///
/// # Safety
/// `st` must be a live stats handle; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_audit_pairs(st: *const WwStats, holds: *mut bool) -> WwStatus {
    guard(|| write(holds, audit_pair_identity(&handle(st, "stats")?.0).holds))
}

/// # Safety
/// `s` must be a live structure handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_audit_dirac(
    s: *const WwStructure,
    budget: u64,
    out: *mut WwDiracReport,
) -> WwStatus {
    guard(|| {
        let r = audit_dirac(&handle(s, "structure")?.0, budget).map_err(audit_failure)?;
        write(
            out,
            WwDiracReport {
                hypothesis_holds: r.hypothesis_holds,
                g: r.g,
                h: r.h,
                g_ge_h: r.g_ge_h,
                binomial_holds: r.binom_ineq_holds,
            },
        )
    })
}

/// Window bounds saturate at `UINT64_MAX`.
///
/// # Safety
/// `st` must be a live stats handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_audit_dyadic(
    st: *const WwStats,
    gamma_num: u64,
    gamma_den: u64,
    v: u32,
    out: *mut WwDyadicWindow,
) -> WwStatus {
    guard(|| {
        if gamma_den == 0 {
            return Err((WwStatus::InvalidArgument, "zero denominator".into()));
        }
        let params = DyadicProfileParams {
            gamma: Ratio::new(gamma_num, gamma_den),
            v,
        };
        let w = dyadic_profile(&handle(st, "stats")?.0, params).map_err(audit_failure)?;
        let clamp = |x: u128| u64::try_from(x).unwrap_or(u64::MAX);
        write(
            out,
            WwDyadicWindow {
                lower: clamp(w.lower),
                upper: clamp(w.upper),
                below: w.below,
                inside: w.inside,
                above: w.above,
                empty: w.empty,
            },
        )
    })
}

/// Stores the `WW_BRANCH_*` bits of every branch that holds.
///
/// # Safety
/// `s` must be a live structure handle; `mask` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_audit_dichotomy(
    s: *const WwStructure,
    fraction_num: u64,
    fraction_den: u64,
    budget: u64,
    mask: *mut u32,
) -> WwStatus {
    guard(|| {
        if fraction_den == 0 {
            return Err((WwStatus::InvalidArgument, "zero denominator".into()));
        }
        let report = dichotomy_report(
            &handle(s, "structure")?.0,
            Ratio::new(fraction_num, fraction_den),
            budget,
        )
        .map_err(audit_failure)?;
        let bits = report.branches.iter().fold(0, |acc, b| {
            acc | match b {
                Branch::IsCompletePencil => WW_BRANCH_COMPLETE_PENCIL,
                Branch::LargeCoverage { .. } => WW_BRANCH_LARGE_COVERAGE,
                Branch::ManyVertices { .. } => WW_BRANCH_MANY_VERTICES,
            }
        });
        write(mask, bits)
    })
}

// ---------------------------------------------------------------------------
// rendering

/// SVG of the folded wedge with default styling.
///
/// # Safety
/// `w` must be a live wedge handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_render_wedge(w: *const WwWedge, out: *mut *mut c_char) -> WwStatus {
    guard(|| {
        let doc = render_wedge(&handle(w, "wedge")?.0, &RenderOptions::default())
            .map_err(render_failure)?;
        put_string(out, doc)
    })
}

/// SVG of the unfolded arrangement with default styling.
///
/// # Safety
/// `w` must be a live wedge handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ww_render_arrangement(
    w: *const WwWedge,
    out: *mut *mut c_char,
) -> WwStatus {
    guard(|| {
        let doc = render_arrangement(&handle(w, "wedge")?.0, &RenderOptions::default())
            .map_err(render_failure)?;
        put_string(out, doc)
    })
}
