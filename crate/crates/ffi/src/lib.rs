//! C ABI over `balgraph`.
//!
//! Objects are opaque handles created by `*_parse` functions and released
//! with the matching `*_free`. Every fallible call returns a `BgStatus`;
//! on failure `bg_last_error` describes the most recent error on the
//! calling thread. Strings returned to the caller are released with
//! `bg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use balgraph::flexible::BfVerdict;
use balgraph::oracle::{self, Caps};
use balgraph::{
    Cardinality, Digraph, Error, Family, FlexibleGraph, GroupSpec, Labeling, RigidGraph, Verdict,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Graph, group or labeling text did not parse.
    Parse = 3,
    /// Arguments are inconsistent: missing labels, wrong graph, bad parameters.
    Invalid = 4,
    /// A brute-force operation exceeded its cap.
    CapExceeded = 5,
    /// The result is infinite.
    Infinite = 6,
    /// The result does not fit in 64 bits.
    Overflow = 7,
    /// Internal failure; the handle arguments are still valid.
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgFamily {
    HF = 0,
    BF = 1,
    WF = 2,
    HR = 3,
    BR = 4,
    WR = 5,
}

impl From<BgFamily> for Family {
    fn from(f: BgFamily) -> Self {
        match f {
            BgFamily::HF => Family::HF,
            BgFamily::BF => Family::BF,
            BgFamily::WF => Family::WF,
            BgFamily::HR => Family::HR,
            BgFamily::BR => Family::BR,
            BgFamily::WR => Family::WR,
        }
    }
}

/// A directed multigraph.
pub struct BgGraph(Digraph);

/// A finitely generated Abelian group.
pub struct BgGroup(GroupSpec);

/// A labeling of one graph's vertices and edges over one group.
pub struct BgLabeling(Labeling);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(message).unwrap_or_default());
}

fn status_of(e: &Error) -> BgStatus {
    match e {
        Error::GroupSyntax { .. }
        | Error::TorsionTooSmall(_)
        | Error::FreeExponentTooSmall(_)
        | Error::ElementSyntax(_)
        | Error::GraphSyntax { .. }
        | Error::DuplicateVertex(_)
        | Error::DuplicateEdge(_)
        | Error::UndeclaredVertex { .. }
        | Error::LabelSyntax { .. }
        | Error::AmbiguousId(_) => BgStatus::Parse,
        Error::CapExceeded { .. } => BgStatus::CapExceeded,
        Error::InfiniteGroup(_) => BgStatus::Infinite,
        Error::Overflow => BgStatus::Overflow,
        _ => BgStatus::Invalid,
    }
}

struct Fail(BgStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Fail(status_of(&e))
    }
}

fn fail(status: BgStatus, message: &str) -> Fail {
    set_error(message);
    Fail(status)
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BgStatus::Ok,
        Ok(Err(Fail(s))) => s,
        Err(_) => {
            set_error("internal panic");
            BgStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    // SAFETY: caller passes either null or a pointer obtained from this library.
    unsafe { p.as_ref() }.ok_or_else(|| fail(BgStatus::NullArgument, &format!("{name} is null")))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(BgStatus::NullArgument, &format!("{name} is null")));
    }
    // SAFETY: non-null and NUL-terminated per the API contract.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| fail(BgStatus::InvalidUtf8, &format!("{name} is not UTF-8")))
}

fn out<T>(p: *mut T, name: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(fail(BgStatus::NullArgument, &format!("{name} is null")));
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

/// Message for the last failed call on this thread. Valid until the next
/// call into this library from the same thread; never null.
#[no_mangle]
pub extern "C" fn bg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bg_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a group spec such as `"Z^2 x Z/4"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out_group` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_group_parse(
    spec: *const c_char,
    out_group: *mut *mut BgGroup,
) -> BgStatus {
    guard(|| {
        out(out_group, "out_group")?;
        let spec = GroupSpec::parse(unsafe { text(spec, "spec") }?)?;
        unsafe { *out_group = Box::into_raw(Box::new(BgGroup(spec))) };
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a handle from `bg_group_parse`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bg_group_free(group: *mut BgGroup) {
    if !group.is_null() {
        drop(unsafe { Box::from_raw(group) });
    }
}

/// Number of elements. `BG_STATUS_INFINITE` for groups with a free factor.
///
/// # Safety
/// `group` must be a live handle; `out_size` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_group_cardinality(
    group: *const BgGroup,
    out_size: *mut u64,
) -> BgStatus {
    guard(|| {
        let group = unsafe { deref(group, "group") }?;
        out(out_size, "out_size")?;
        if !group.0.is_finite() {
            return Err(fail(BgStatus::Infinite, "group is infinite"));
        }
        let n = group
            .0
            .cardinality()
            .and_then(|n| u64::try_from(n).ok())
            .ok_or_else(|| fail(BgStatus::Overflow, "cardinality exceeds 64 bits"))?;
        unsafe { *out_size = n };
        Ok(())
    })
}

/// Parses the line-oriented graph format (`v <id>`, `e <id> <tail> <head>`).
///
/// # Safety
/// `source` must be a NUL-terminated string; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_parse(
    source: *const c_char,
    out_graph: *mut *mut BgGraph,
) -> BgStatus {
    guard(|| {
        out(out_graph, "out_graph")?;
        let g = Digraph::parse(unsafe { text(source, "source") }?)?;
        unsafe { *out_graph = Box::into_raw(Box::new(BgGraph(g))) };
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle from `bg_graph_parse`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_free(graph: *mut BgGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// # Safety
/// `graph` must be null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_vertex_count(graph: *const BgGraph) -> usize {
    unsafe { graph.as_ref() }.map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `graph` must be null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_edge_count(graph: *const BgGraph) -> usize {
    unsafe { graph.as_ref() }.map_or(0, |g| g.0.edge_count())
}

/// Parses `<id> <coords>` lines against `graph` and `group`. The labeling
/// may be partial; operations that need a total labeling report
/// `BG_STATUS_INVALID`.
///
/// # Safety
/// Handles must be live; `source` NUL-terminated; `out_labeling` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_labeling_parse(
    graph: *const BgGraph,
    group: *const BgGroup,
    source: *const c_char,
    out_labeling: *mut *mut BgLabeling,
) -> BgStatus {
    guard(|| {
        let graph = unsafe { deref(graph, "graph") }?;
        let group = unsafe { deref(group, "group") }?;
        out(out_labeling, "out_labeling")?;
        let l = Labeling::parse(unsafe { text(source, "source") }?, &graph.0, &group.0)?;
        unsafe { *out_labeling = Box::into_raw(Box::new(BgLabeling(l))) };
        Ok(())
    })
}

/// # Safety
/// `labeling` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bg_labeling_free(labeling: *mut BgLabeling) {
    if !labeling.is_null() {
        drop(unsafe { Box::from_raw(labeling) });
    }
}

/// Writes the labeling in its text format. Free the result with
/// `bg_string_free`.
///
/// # Safety
/// Handles must be live and the labeling built for `graph`; `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_labeling_to_text(
    graph: *const BgGraph,
    labeling: *const BgLabeling,
    out_text: *mut *mut c_char,
) -> BgStatus {
    guard(|| {
        let graph = unsafe { deref(graph, "graph") }?;
        let labeling = unsafe { deref(labeling, "labeling") }?;
        out(out_text, "out_text")?;
        if !labeling.0.fits(&graph.0) {
            return Err(fail(
                BgStatus::Invalid,
                "labeling was built for a different graph",
            ));
        }
        unsafe { *out_text = into_c_string(labeling.0.to_text(&graph.0)) };
        Ok(())
    })
}

/// Decides membership of `labeling` in `family`. For BF and BR the vertex
/// part is tested for balanceability. `*out_balanced` is 1 or 0. When not
/// balanced and `out_witness` is non-null it receives the rendered witness
/// cycle (`"x +e1 y -e2 x"`) and its sum, to be freed with `bg_string_free`;
/// otherwise it is set to null.
///
/// # Safety
/// Handles must be live; `out_balanced` writable; `out_witness` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bg_check(
    graph: *const BgGraph,
    labeling: *const BgLabeling,
    family: BgFamily,
    out_balanced: *mut i32,
    out_witness: *mut *mut c_char,
) -> BgStatus {
    guard(|| {
        let g = &unsafe { deref(graph, "graph") }?.0;
        let l = &unsafe { deref(labeling, "labeling") }?.0;
        out(out_balanced, "out_balanced")?;
        if !out_witness.is_null() {
            unsafe { *out_witness = ptr::null_mut() };
        }
        let witness = match Family::from(family) {
            Family::HF => verdict_witness(FlexibleGraph::new(g).hf_check(l)?),
            Family::WF => verdict_witness(FlexibleGraph::new(g).wf_check(l)?),
            Family::HR => verdict_witness(RigidGraph::new(g).hr_check(l)?),
            Family::WR => verdict_witness(RigidGraph::new(g).wr_check(l)?),
            Family::BF => match FlexibleGraph::new(g).bf_balance(&l.vertex_part(g))? {
                BfVerdict::Balanceable { .. } => None,
                BfVerdict::NotBalanceable { witness, .. } => Some(witness),
            },
            Family::BR => {
                balgraph::rigid::br_balance(g, &l.vertex_part(g))?;
                None
            }
        };
        unsafe { *out_balanced = i32::from(witness.is_none()) };
        if let (Some(w), false) = (witness, out_witness.is_null()) {
            let sum = w.sum.as_ref().map(|s| s.to_string()).unwrap_or_default();
            unsafe { *out_witness = into_c_string(format!("{} = {sum}", w.render(g))) };
        }
        Ok(())
    })
}

fn verdict_witness(v: Verdict) -> Option<balgraph::Witness> {
    match v {
        Verdict::Balanced => None,
        Verdict::Unbalanced(w) => Some(w),
    }
}

/// Exponents of `A^p x A_2^q` describing `family` on `graph`.
///
/// # Safety
/// `graph` must be live; `out_p` and `out_q` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_structure(
    graph: *const BgGraph,
    family: BgFamily,
    out_p: *mut usize,
    out_q: *mut usize,
) -> BgStatus {
    guard(|| {
        let g = &unsafe { deref(graph, "graph") }?.0;
        out(out_p, "out_p")?;
        out(out_q, "out_q")?;
        let family = Family::from(family);
        let d = match family {
            Family::HR | Family::BR | Family::WR => RigidGraph::new(g).structure(family)?,
            _ => FlexibleGraph::new(g).structure(family)?,
        };
        unsafe {
            *out_p = d.a_exponent;
            *out_q = d.a2_exponent;
        }
        Ok(())
    })
}

/// Size of `family` on `graph` over `group`, from the closed form.
///
/// # Safety
/// Handles must be live; `out_size` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_structure_cardinality(
    graph: *const BgGraph,
    group: *const BgGroup,
    family: BgFamily,
    out_size: *mut u64,
) -> BgStatus {
    guard(|| {
        let g = &unsafe { deref(graph, "graph") }?.0;
        let spec = &unsafe { deref(group, "group") }?.0;
        out(out_size, "out_size")?;
        let family = Family::from(family);
        let d = match family {
            Family::HR | Family::BR | Family::WR => RigidGraph::new(g).structure(family)?,
            _ => FlexibleGraph::new(g).structure(family)?,
        };
        let n = match d.cardinality(spec) {
            Cardinality::Finite(n) => {
                u64::try_from(n).map_err(|_| fail(BgStatus::Overflow, "size exceeds 64 bits"))?
            }
            Cardinality::Infinite => return Err(fail(BgStatus::Infinite, "size is infinite")),
            Cardinality::Overflow => return Err(fail(BgStatus::Overflow, "size exceeds 128 bits")),
        };
        unsafe { *out_size = n };
        Ok(())
    })
}

/// Size of `family` on `graph` over the finite `group`, by visiting every
/// labeling. `max_enumeration` of 0 uses the default cap.
///
/// # Safety
/// Handles must be live; `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_exhaustive_count(
    graph: *const BgGraph,
    group: *const BgGroup,
    family: BgFamily,
    max_enumeration: u64,
    out_count: *mut u64,
) -> BgStatus {
    guard(|| {
        let g = &unsafe { deref(graph, "graph") }?.0;
        let spec = &unsafe { deref(group, "group") }?.0;
        out(out_count, "out_count")?;
        let mut caps = Caps::default();
        if max_enumeration > 0 {
            caps.max_enumeration = u128::from(max_enumeration);
        }
        let n = oracle::exhaustive_count(g, family.into(), spec, &caps)?;
        unsafe {
            *out_count =
                u64::try_from(n).map_err(|_| fail(BgStatus::Overflow, "count exceeds 64 bits"))?
        };
        Ok(())
    })
}

/// A random member of `family`, deterministic in `seed`. For BF and BR the
/// result is a balanceable vertex function.
///
/// # Safety
/// Handles must be live; `out_labeling` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_sample(
    graph: *const BgGraph,
    group: *const BgGroup,
    family: BgFamily,
    seed: u64,
    out_labeling: *mut *mut BgLabeling,
) -> BgStatus {
    guard(|| {
        let g = &unsafe { deref(graph, "graph") }?.0;
        let spec = &unsafe { deref(group, "group") }?.0;
        out(out_labeling, "out_labeling")?;
        let l = balgraph::sample::sample_labeling(g, spec, family.into(), seed)?;
        unsafe { *out_labeling = Box::into_raw(Box::new(BgLabeling(l))) };
        Ok(())
    })
}
