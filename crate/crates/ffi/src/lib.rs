//! C ABI over `symgraph`.
//!
//! Graphs and combined systems are opaque heap handles released with their
//! `*_free` function. Every fallible call returns an [`SgStatus`]; on failure
//! [`sg_last_error_message`] describes the error for the calling thread.
//! Big integers cross the boundary as NUL-terminated decimal strings owned by
//! the caller and released with [`sg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use symgraph::combiner::{bound_series, CombinedSystem, Schedule};
use symgraph::spectral::{char_poly, classify_growth, verify_recurrence, GrowthKind};
use symgraph::{count_matrix, presets, total_count, DirectedGraph, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    AlphabetMismatch = 5,
    ScheduleError = 6,
    NumericError = 7,
    EnumerationCap = 8,
    Io = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgGrowthKind {
    Exponential = 0,
    Polynomial = 1,
    MixedPolynomialExponential = 2,
}

/// Growth class of a graph's total count.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgGrowth {
    pub kind: SgGrowthKind,
    pub rho: f64,
    pub poly_degree: usize,
}

/// Opaque directed graph.
pub struct SgGraph(DirectedGraph);

/// Opaque scheduled combination of graphs.
pub struct SgSystem(CombinedSystem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> SgStatus {
    match e {
        Error::MalformedGraph(_)
        | Error::DuplicateSymbol(_)
        | Error::UnknownSymbol(_)
        | Error::DuplicateEdge(..)
        | Error::InvalidAlphabet(_)
        | Error::Json(_) => SgStatus::ParseError,
        Error::AlphabetMismatch => SgStatus::AlphabetMismatch,
        Error::InvalidSchedule(_) | Error::ScheduleExhausted { .. } => SgStatus::ScheduleError,
        Error::IllConditioned { .. } | Error::RootClustering(..) => SgStatus::NumericError,
        Error::EnumerationCap { .. } => SgStatus::EnumerationCap,
        Error::Io(_) | Error::Csv(_) => SgStatus::Io,
        Error::EdgelessGraph | Error::InvalidArgument(_) => SgStatus::InvalidArgument,
    }
}

struct Failure(SgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SgStatus::NullPointer, format!("`{what}` is null"))
}

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            clear_error();
            SgStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SgStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SgStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(SgStatus::Panic, "interior NUL".into()))?;
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON graph document `{"alphabet": [...], "edges": [[from, to], ...]}`.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_parse(json: *const c_char, out: *mut *mut SgGraph) -> SgStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        write_handle(out, SgGraph(DirectedGraph::parse(text)?))
    })
}

/// Built-in graph by name: `G1`, `G2`, `K3`, `C2`, `CHAIN`.
///
/// # Safety
/// `name` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_preset(name: *const c_char, out: *mut *mut SgGraph) -> SgStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let g = presets::by_name(name).ok_or_else(|| {
            Failure(
                SgStatus::InvalidArgument,
                format!("unknown preset `{name}`"),
            )
        })?;
        write_handle(out, SgGraph(g))
    })
}

/// # Safety
/// `graph` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_free(graph: *mut SgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_alphabet_size(
    graph: *const SgGraph,
    out: *mut usize,
) -> SgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?;
        write_out(out, g.0.k())
    })
}

/// `ω^n` as a decimal string.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_total_count(
    graph: *const SgGraph,
    n: u64,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?;
        write_string(out, total_count(&g.0, n)?.to_string())
    })
}

/// `ω^n(X_i, X_j)` as a decimal string.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_count_entry(
    graph: *const SgGraph,
    n: u64,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?;
        let k = g.0.k();
        if i >= k || j >= k {
            return Err(Failure(
                SgStatus::InvalidArgument,
                format!("entry ({i}, {j}) outside a {k}-letter alphabet"),
            ));
        }
        write_string(out, count_matrix(&g.0, n)?.entry(i, j).to_string())
    })
}

/// Characteristic polynomial coefficients, highest degree first, as a JSON
/// array of decimal strings.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_char_poly(
    graph: *const SgGraph,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?;
        let coeffs: Vec<String> = char_poly(&g.0)
            .coefficients()
            .iter()
            .map(ToString::to_string)
            .collect();
        write_string(out, serde_json::to_string(&coeffs).map_err(Error::from)?)
    })
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_classify(graph: *const SgGraph, out: *mut SgGrowth) -> SgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?;
        let c = classify_growth(&g.0)?;
        let kind = match c.kind {
            GrowthKind::Exponential => SgGrowthKind::Exponential,
            GrowthKind::Polynomial => SgGrowthKind::Polynomial,
            GrowthKind::MixedPolynomialExponential => SgGrowthKind::MixedPolynomialExponential,
        };
        write_out(
            out,
            SgGrowth {
                kind,
                rho: c.rho,
                poly_degree: c.poly_degree,
            },
        )
    })
}

/// Checks the characteristic recurrence exactly for `k < n <= n_max`.
///
/// # Safety
/// `graph` must be a live handle; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_verify_recurrence(
    graph: *const SgGraph,
    n_max: u64,
    holds: *mut bool,
) -> SgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?;
        write_out(holds, verify_recurrence(&g.0, n_max)?.holds)
    })
}

/// The graph on the arrows of `graph`.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_higher_order(
    graph: *const SgGraph,
    out: *mut *mut SgGraph,
) -> SgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?;
        write_handle(out, SgGraph(g.0.higher_order_graph()?))
    })
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_to_json(
    graph: *const SgGraph,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?;
        write_string(out, g.0.to_json())
    })
}

/// Combines `len >= 2` graphs under the schedule with boundaries
/// `g_1 < g_2 < ...`. The graphs are copied; the caller keeps ownership.
///
/// # Safety
/// `graphs` must point to `len` live handles, `boundaries` to
/// `boundaries_len` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_system_new(
    graphs: *const *const SgGraph,
    len: usize,
    boundaries: *const u64,
    boundaries_len: usize,
    out: *mut *mut SgSystem,
) -> SgStatus {
    guard(|| {
        if graphs.is_null() {
            return Err(null("graphs"));
        }
        if boundaries.is_null() {
            return Err(null("boundaries"));
        }
        let handles = std::slice::from_raw_parts(graphs, len);
        let list = handles
            .iter()
            .map(|&h| ref_arg(h, "graphs[i]").map(|g| g.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let bounds = std::slice::from_raw_parts(boundaries, boundaries_len);
        let schedule = Schedule::from_boundaries(bounds.iter().copied())?;
        write_handle(out, SgSystem(CombinedSystem::new(list, schedule)?))
    })
}

/// Reference system `example` (1: G1 with G2, 2: K3 with G2) over `t_max`
/// stint pairs of the reference schedule.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_system_paper(
    example: u8,
    t_max: u64,
    out: *mut *mut SgSystem,
) -> SgStatus {
    guard(|| {
        let system = match example {
            1 => CombinedSystem::example_one(t_max)?,
            2 => CombinedSystem::example_two(t_max)?,
            _ => {
                return Err(Failure(
                    SgStatus::InvalidArgument,
                    format!("unknown example {example}"),
                ))
            }
        };
        write_handle(out, SgSystem(system))
    })
}

/// # Safety
/// `system` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sg_system_free(system: *mut SgSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// `ω_F^n` as a decimal string.
///
/// # Safety
/// `system` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_system_count(
    system: *const SgSystem,
    n: u64,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let s = ref_arg(system, "system")?;
        write_string(out, s.0.count(n)?.to_string())
    })
}

/// Bound reports of reference system `example` for `t = 1..=t_max`, as a
/// JSON array of `{t, n, lower, actual, upper, holds}` with decimal-string
/// integers.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_bounds(example: u8, t_max: u64, out: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let reports = bound_series(example, t_max)?;
        write_string(out, serde_json::to_string(&reports).map_err(Error::from)?)
    })
}
