//! C ABI over the core library. Graphs travel as opaque handles, strings as
//! NUL-terminated UTF-8 owned by this library (release with
//! [`ss_string_free`]), and failures as status codes with a thread-local
//! message behind [`ss_last_error_message`].
//!
//! Every function is safe to call with NULL handles or output slots; that
//! reports `SS_STATUS_NULL_ARGUMENT` instead of crashing. Library panics are
//! caught at the boundary and surface as `SS_STATUS_PANIC`.

// The safety contract is uniform (stated above), not per-function.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sizespectra::analysis::{diversity_check, edge_density, hom};
use sizespectra::construction::{
    certificates_from_json, certificates_to_json, certify, step3_stitch, PipelineParams,
};
use sizespectra::graph::{gnp, paley, parse_graph, serialize_graph, Graph, WeightedGraph};
use sizespectra::prob::{pointmass_exact, PointMassQuery};
use sizespectra::spectrum::{phi_psi_exact_capped, Mode};
use sizespectra::Error;

/// Opaque graph handle; create with the `ss_graph_*` constructors and
/// release with [`ss_graph_free`].
pub struct SsGraph {
    inner: Graph,
}

/// Status of an FFI call. Nonzero values leave a message readable through
/// [`ss_last_error_message`] on the calling thread.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SsStatus {
    Ok = 0,
    /// A required pointer argument was NULL or text was not valid UTF-8.
    NullArgument = 1,
    /// Rejected input: bad parameter, parse failure, or a size cap.
    Parameter = 2,
    /// A randomized stage exhausted its budget without a witness.
    Construction = 3,
    /// A certificate failed its independent recount.
    Integrity = 4,
    /// An internal invariant tripped; the library state is still intact.
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let stored = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> SsStatus {
    match err.exit_code() {
        3 => SsStatus::Construction,
        4 => SsStatus::Integrity,
        _ => SsStatus::Parameter,
    }
}

fn fail(err: Error) -> SsStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn fail_null(what: &str) -> SsStatus {
    set_error(format!("{what} must not be NULL"));
    SsStatus::NullArgument
}

/// Runs a fallible body, converting panics and errors into statuses and
/// writing the success value through `out`.
fn guarded<T>(
    out: *mut T,
    body: impl FnOnce() -> Result<T, Error>,
) -> SsStatus {
    if out.is_null() {
        return fail_null("output slot");
    }
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(value)) => {
            unsafe { out.write(value) };
            SsStatus::Ok
        }
        Ok(Err(err)) => fail(err),
        Err(payload) => {
            let detail = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "opaque panic payload".to_string());
            set_error(format!("internal panic: {detail}"));
            SsStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const SsGraph) -> Option<&'a Graph> {
    g.as_ref().map(|handle| &handle.inner)
}

unsafe fn text_ref<'a>(text: *const c_char) -> Result<&'a str, SsStatus> {
    if text.is_null() {
        return Err(fail_null("text argument"));
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("text argument is not valid UTF-8".to_string());
        SsStatus::NullArgument
    })
}

fn boxed(inner: Graph, out: *mut *mut SsGraph) -> SsStatus {
    guarded(out, || Ok(Box::into_raw(Box::new(SsGraph { inner }))))
}

fn string_out(text: String) -> Result<*mut c_char, Error> {
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| Error::Parameter("output contained a NUL byte".to_string()))
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn ss_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message from the most recent failing call on this thread, or NULL.
/// The caller owns the returned string; release it with [`ss_string_free`].
#[no_mangle]
pub extern "C" fn ss_last_error_message() -> *mut c_char {
    LAST_ERROR
        .with(|slot| slot.borrow().as_ref().map(|msg| msg.clone().into_raw()))
        .unwrap_or(std::ptr::null_mut())
}

/// Releases a string returned by this library. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the plain text edge format (`n m` header, one edge per line).
#[no_mangle]
pub unsafe extern "C" fn ss_graph_parse(text: *const c_char, out: *mut *mut SsGraph) -> SsStatus {
    let text = match text_ref(text) {
        Ok(text) => text,
        Err(status) => return status,
    };
    match parse_graph(text) {
        Ok(g) => boxed(g, out),
        Err(e) => fail(e),
    }
}

/// Erdős–Rényi G(n, p) from the deterministic generator.
#[no_mangle]
pub unsafe extern "C" fn ss_graph_gnp(
    n: usize,
    p: f64,
    seed: u64,
    out: *mut *mut SsGraph,
) -> SsStatus {
    match gnp(n, p, seed) {
        Ok(g) => boxed(g, out),
        Err(e) => fail(e),
    }
}

/// Paley graph on a prime q ≡ 1 (mod 4).
#[no_mangle]
pub unsafe extern "C" fn ss_graph_paley(q: usize, out: *mut *mut SsGraph) -> SsStatus {
    match paley(q) {
        Ok(g) => boxed(g, out),
        Err(e) => fail(e),
    }
}

/// Releases a graph handle. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ss_graph_free(g: *mut SsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn ss_graph_n(g: *const SsGraph) -> usize {
    graph_ref(g).map_or(0, Graph::n)
}

/// Number of edges; 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn ss_graph_edge_count(g: *const SsGraph) -> u64 {
    graph_ref(g).map_or(0, Graph::edge_count)
}

/// Serializes the graph back to the plain text edge format.
#[no_mangle]
pub unsafe extern "C" fn ss_graph_serialize(
    g: *const SsGraph,
    out: *mut *mut c_char,
) -> SsStatus {
    let Some(graph) = graph_ref(g) else {
        return fail_null("graph handle");
    };
    guarded(out, || string_out(serialize_graph(graph)))
}

/// Order of the largest clique or independent set.
#[no_mangle]
pub unsafe extern "C" fn ss_hom(g: *const SsGraph, out: *mut usize) -> SsStatus {
    let Some(graph) = graph_ref(g) else {
        return fail_null("graph handle");
    };
    guarded(out, || hom(graph).map(|h| h.hom))
}

/// Edge density e(G) / C(n, 2).
#[no_mangle]
pub unsafe extern "C" fn ss_edge_density(g: *const SsGraph, out: *mut f64) -> SsStatus {
    let Some(graph) = graph_ref(g) else {
        return fail_null("graph handle");
    };
    guarded(out, || edge_density(graph))
}

/// Whether every vertex has at most n^delta near-twins at distance < c·n.
/// Writes 1 for diverse, 0 otherwise.
#[no_mangle]
pub unsafe extern "C" fn ss_diversity_check(
    g: *const SsGraph,
    c: f64,
    delta: f64,
    out: *mut u8,
) -> SsStatus {
    let Some(graph) = graph_ref(g) else {
        return fail_null("graph handle");
    };
    guarded(out, || diversity_check(graph, c, delta).map(|r| r.is_diverse as u8))
}

/// Exact edge-count spectrum as a JSON array, refusing graphs above `cap`
/// vertices.
#[no_mangle]
pub unsafe extern "C" fn ss_phi_exact_json(
    g: *const SsGraph,
    cap: usize,
    out: *mut *mut c_char,
) -> SsStatus {
    let Some(graph) = graph_ref(g) else {
        return fail_null("graph handle");
    };
    guarded(out, || {
        let spectrum = phi_psi_exact_capped(&WeightedGraph::unweighted(graph.clone()), Mode::Phi, cap)?;
        string_out(spectrum.to_json())
    })
}

/// Runs the certified construction with default parameters and returns the
/// certificate array as JSON.
#[no_mangle]
pub unsafe extern "C" fn ss_construct_json(
    g: *const SsGraph,
    seed: u64,
    out: *mut *mut c_char,
) -> SsStatus {
    let Some(graph) = graph_ref(g) else {
        return fail_null("graph handle");
    };
    guarded(out, || {
        let outcome = step3_stitch(graph, &PipelineParams::default(), seed)?;
        certify(graph, &outcome.certificates)?;
        string_out(certificates_to_json(&outcome.certificates))
    })
}

/// Recounts a certificate JSON array against the graph; writes the number
/// of distinct certified sizes.
#[no_mangle]
pub unsafe extern "C" fn ss_certify_json(
    g: *const SsGraph,
    certificates: *const c_char,
    out: *mut u64,
) -> SsStatus {
    let Some(graph) = graph_ref(g) else {
        return fail_null("graph handle");
    };
    let text = match text_ref(certificates) {
        Ok(text) => text,
        Err(status) => return status,
    };
    guarded(out, || {
        let certs = certificates_from_json(text, graph.n())?;
        certify(graph, &certs).map(|report| report.distinct_sizes as u64)
    })
}

/// Largest point mass of |U∩B| − |U∩A| over uniform k-subsets, exactly
/// computed and rounded to f64 once at the end.
#[no_mangle]
pub unsafe extern "C" fn ss_pointmass_max(
    n: u64,
    a: u64,
    b: u64,
    k: u64,
    out: *mut f64,
) -> SsStatus {
    guarded(out, || {
        pointmass_exact(&PointMassQuery { n, a, b, k }).map(|dist| dist.max_prob_f64())
    })
}
