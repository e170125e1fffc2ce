//! C bindings for the polytope analysis library.
//!
//! The surface is a handful of `extern "C"` entry points over an opaque
//! polytope handle. Every call returns a [`ToricalgStatus`]; affirmative and
//! negative mathematical verdicts are distinct non-error statuses, mirroring
//! the CLI exit codes. Failures leave a detail message readable with
//! [`toricalg_last_error`]. Strings handed out through `char **` parameters
//! are owned by this library and must be released with
//! [`toricalg_string_free`], never with `free`.
//!
//! Certificates embedded in the JSON payloads are re-verified against their
//! defining identities before they are serialized, so a returned certificate
//! is always a checked one.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde_json::{json, Value};
use toricalg::charfun::{
    almost_complex_check, buchstaber_decision, is_characteristic, orientation_from_lambda,
    verify_sigma_factorization_gf2, BuchstaberAnswer, CharMatrix, SearchOptions,
};
use toricalg::coloring::{color, coloring_to_lambdas};
use toricalg::decompose::{
    factor_product_polynomial, format_factor_partition, format_factor_product, is_product_polytope,
};
use toricalg::document::parse_polytope;
use toricalg::face_ring::{polynomial_of_complex, sigma};
use toricalg::report::{reverify_coloring, reverify_matrix, reverify_orientation};
use toricalg::{library, Error, Orientation, Ring, SimplePolytopeCombinatorics};

/// Outcome of a call. Values mirror the CLI exit codes: `OK` and `NO` are
/// the two sides of a decided question, `UNDECIDED` means a bounded search
/// ran out of room, and the two error statuses signal bad input rather than
/// a mathematical verdict.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToricalgStatus {
    /// Success; for decision procedures, the affirmative verdict.
    Ok = 0,
    /// The question was decided negatively; any output is still valid.
    No = 1,
    /// A bounded search exhausted its budget without a verdict.
    Undecided = 2,
    /// Invalid input or an unsupported operation; see `toricalg_last_error`.
    DomainError = 3,
    /// Null pointer, malformed UTF-8 or an out-of-range argument.
    ArgumentError = 4,
}

/// Opaque handle to the combinatorics of a simple polytope. Create with
/// [`toricalg_polytope_builtin`] or [`toricalg_polytope_parse`], release
/// with [`toricalg_polytope_free`].
pub struct ToricalgPolytope {
    inner: SimplePolytopeCombinatorics,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean = message.replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(clean).expect("nul bytes stripped"));
}

fn fail(status: ToricalgStatus, message: impl AsRef<str>) -> ToricalgStatus {
    set_error(message.as_ref());
    status
}

fn domain_error(err: &Error) -> ToricalgStatus {
    fail(ToricalgStatus::DomainError, err.to_string())
}

/// Runs an entry point body with a panic guard, since unwinding across the
/// C boundary is undefined behavior.
fn guarded(body: impl FnOnce() -> ToricalgStatus) -> ToricalgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(ToricalgStatus::DomainError, "internal panic"),
    }
}

macro_rules! ffi_try {
    ($expr:expr) => {
        match $expr {
            Ok(value) => value,
            Err(status) => return status,
        }
    };
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, ToricalgStatus> {
    if ptr.is_null() {
        return Err(fail(ToricalgStatus::ArgumentError, format!("{what} must not be null")));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(ToricalgStatus::ArgumentError, format!("{what} must be valid UTF-8")))
}

unsafe fn read_handle<'a>(ptr: *const ToricalgPolytope) -> Result<&'a SimplePolytopeCombinatorics, ToricalgStatus> {
    if ptr.is_null() {
        return Err(fail(ToricalgStatus::ArgumentError, "polytope handle must not be null"));
    }
    Ok(unsafe { &(*ptr).inner })
}

fn check_out<T>(out: *mut T, what: &str) -> Result<(), ToricalgStatus> {
    if out.is_null() {
        return Err(fail(ToricalgStatus::ArgumentError, format!("{what} must not be null")));
    }
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) {
    let c = CString::new(text.replace('\0', " ")).expect("nul bytes stripped");
    unsafe { *out = c.into_raw() };
}

fn give_polytope(out: *mut *mut ToricalgPolytope, p: SimplePolytopeCombinatorics) -> ToricalgStatus {
    let handle = Box::new(ToricalgPolytope { inner: p });
    unsafe { *out = Box::into_raw(handle) };
    ToricalgStatus::Ok
}

fn ring_of(use_f2: c_int) -> Ring {
    if use_f2 != 0 {
        Ring::Gf2
    } else {
        Ring::Int
    }
}

fn format_orientation(orientation: &Orientation) -> String {
    orientation
        .iter()
        .map(|(face, sign)| format!("{face}:{}", if sign > 0 { "+1" } else { "-1" }))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Creates a polytope from a built-in name such as `prism`, `cube:3` or
/// `cyclic:4:7`. On success writes a fresh handle to `out` and returns `OK`.
#[no_mangle]
pub extern "C" fn toricalg_polytope_builtin(
    spec: *const c_char,
    out: *mut *mut ToricalgPolytope,
) -> ToricalgStatus {
    guarded(|| {
        let spec = ffi_try!(unsafe { read_str(spec, "spec") });
        ffi_try!(check_out(out, "out"));
        match library::builtin(spec) {
            None => fail(ToricalgStatus::DomainError, format!("unknown builtin polytope {spec:?}")),
            Some(Err(err)) => domain_error(&err),
            Some(Ok(p)) => give_polytope(out, p),
        }
    })
}

/// Creates a polytope from document text: a `polytope <name> n=<n> m=<m>`
/// header followed by one `v <facet labels>` line per vertex.
#[no_mangle]
pub extern "C" fn toricalg_polytope_parse(
    document: *const c_char,
    out: *mut *mut ToricalgPolytope,
) -> ToricalgStatus {
    guarded(|| {
        let text = ffi_try!(unsafe { read_str(document, "document") });
        ffi_try!(check_out(out, "out"));
        match parse_polytope(text) {
            Err(err) => domain_error(&err),
            Ok(p) => give_polytope(out, p),
        }
    })
}

/// Releases a handle. Null is tolerated.
#[no_mangle]
pub extern "C" fn toricalg_polytope_free(p: *mut ToricalgPolytope) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Dimension of the polytope; 0 when the handle is null.
#[no_mangle]
pub extern "C" fn toricalg_polytope_dim(p: *const ToricalgPolytope) -> usize {
    if p.is_null() {
        return 0;
    }
    unsafe { &(*p).inner }.dim()
}

/// Number of facets; 0 when the handle is null.
#[no_mangle]
pub extern "C" fn toricalg_polytope_facets(p: *const ToricalgPolytope) -> usize {
    if p.is_null() {
        return 0;
    }
    unsafe { &(*p).inner }.num_facets()
}

/// Number of vertices; 0 when the handle is null.
#[no_mangle]
pub extern "C" fn toricalg_polytope_vertex_count(p: *const ToricalgPolytope) -> usize {
    if p.is_null() {
        return 0;
    }
    unsafe { &(*p).inner }.num_vertices()
}

/// Writes the elementary symmetric polynomial of the boundary complex in
/// canonical text form. Degree 0 selects the top degree (the dimension);
/// `use_f2` picks coefficients mod 2 when nonzero.
#[no_mangle]
pub extern "C" fn toricalg_sigma_text(
    p: *const ToricalgPolytope,
    degree: usize,
    use_f2: c_int,
    out: *mut *mut c_char,
) -> ToricalgStatus {
    guarded(|| {
        let p = ffi_try!(unsafe { read_handle(p) });
        ffi_try!(check_out(out, "out"));
        let degree = if degree == 0 { p.dim() } else { degree };
        match sigma(&p.boundary_complex(), degree, ring_of(use_f2)) {
            Err(err) => domain_error(&err),
            Ok(poly) => {
                unsafe { write_string(out, poly.to_string()) };
                ToricalgStatus::Ok
            }
        }
    })
}

fn decompose_payload(p: &SimplePolytopeCombinatorics) -> Result<(Value, ToricalgStatus), Error> {
    let decision = is_product_polytope(p)?;
    let m = p.num_facets();
    let product = factor_product_polynomial(&decision.factors, m, Ring::Int)?;
    if product != polynomial_of_complex(&p.boundary_complex(), Ring::Int) {
        return Err(Error::Internal("factorization fails to reproduce the generating polynomial".to_string()));
    }
    let payload = json!({
        "product": decision.is_product,
        "num_factors": decision.factors.len(),
        "factors": format_factor_partition(&decision.factors),
        "product_form": format_factor_product(&decision.factors, m, Ring::Int),
    });
    let status = if decision.is_product { ToricalgStatus::Ok } else { ToricalgStatus::No };
    Ok((payload, status))
}

/// Decides whether the polytope is a product of lower-dimensional ones and
/// writes a JSON object with the factor partition and the factored
/// generating polynomial. Returns `OK` for a product, `NO` otherwise.
#[no_mangle]
pub extern "C" fn toricalg_decompose_json(
    p: *const ToricalgPolytope,
    out: *mut *mut c_char,
) -> ToricalgStatus {
    guarded(|| {
        let p = ffi_try!(unsafe { read_handle(p) });
        ffi_try!(check_out(out, "out"));
        match decompose_payload(p) {
            Err(err) => domain_error(&err),
            Ok((payload, status)) => {
                unsafe { write_string(out, payload.to_string()) };
                status
            }
        }
    })
}

fn color_payload(p: &SimplePolytopeCombinatorics, colors: usize) -> Result<(Value, ToricalgStatus), Error> {
    let requested = if colors == 0 { p.dim() } else { colors };
    match color(p, requested)? {
        None => Ok((json!({ "colorable": false, "colors": requested }), ToricalgStatus::No)),
        Some(cert) => {
            reverify_coloring(p, &cert)?;
            let lambdas: Vec<String> =
                coloring_to_lambdas(&cert, Ring::Int).iter().map(|l| l.to_string()).collect();
            let payload = json!({
                "colorable": true,
                "colors": requested,
                "classes": cert.to_string(),
                "lambdas": lambdas,
            });
            Ok((payload, ToricalgStatus::Ok))
        }
    }
}

/// Searches for a proper facet coloring with exactly `colors` colors (0
/// selects the dimension) and writes a JSON verdict, including the color
/// classes and their linear forms when one exists. Returns `OK` when
/// colorable, `NO` when provably not.
#[no_mangle]
pub extern "C" fn toricalg_color_json(
    p: *const ToricalgPolytope,
    colors: usize,
    out: *mut *mut c_char,
) -> ToricalgStatus {
    guarded(|| {
        let p = ffi_try!(unsafe { read_handle(p) });
        ffi_try!(check_out(out, "out"));
        match color_payload(p, colors) {
            Err(err) => domain_error(&err),
            Ok((payload, status)) => {
                unsafe { write_string(out, payload.to_string()) };
                status
            }
        }
    })
}

fn buchstaber_payload(
    p: &SimplePolytopeCombinatorics,
    ring: Ring,
    bound: i64,
) -> Result<(Value, ToricalgStatus), Error> {
    let decision = buchstaber_decision(p, ring, bound, &SearchOptions::from_env()?)?;
    if let Some(matrix) = &decision.certificate {
        match ring {
            Ring::Int => {
                reverify_matrix(p, matrix)?;
                let orientation =
                    decision.orientation.as_ref().ok_or_else(|| {
                        Error::Internal("integer certificate lacks its orientation".to_string())
                    })?;
                reverify_orientation(p, matrix, orientation)?;
            }
            Ring::Gf2 => {
                if !verify_sigma_factorization_gf2(p, matrix)? {
                    return Err(Error::Internal(
                        "certificate fails the top-form factorization".to_string(),
                    ));
                }
            }
        }
    }
    let mut payload = json!({
        "ring": ring.name(),
        "answer": serde_json::to_value(decision.answer).expect("answer serializes"),
        "derived_from_f2_exhaustion": decision.derived_from_gf2,
    });
    let obj = payload.as_object_mut().expect("payload is an object");
    if let Some(bound) = decision.bound {
        obj.insert("bound".to_string(), json!(bound));
    }
    if let Some(matrix) = &decision.certificate {
        obj.insert("matrix".to_string(), json!(matrix.to_string()));
    }
    if let Some(orientation) = &decision.orientation {
        obj.insert("orientation".to_string(), json!(format_orientation(orientation)));
    }
    let mut search = serde_json::Map::new();
    if !decision.derived_from_gf2 {
        search.insert("nodes".to_string(), json!(decision.stats.nodes));
        search.insert("leaves".to_string(), json!(decision.stats.leaves));
        search.insert("space".to_string(), json!(decision.stats.space));
    }
    if let Some(gf2) = decision.gf2_stats {
        search.insert("f2_nodes".to_string(), json!(gf2.nodes));
        search.insert("f2_space".to_string(), json!(gf2.space));
    }
    obj.insert("search".to_string(), Value::Object(search));
    let status = match decision.answer {
        BuchstaberAnswer::Yes => ToricalgStatus::Ok,
        BuchstaberAnswer::No => ToricalgStatus::No,
        BuchstaberAnswer::UnknownWithinBound => ToricalgStatus::Undecided,
    };
    Ok((payload, status))
}

/// Decides whether the Buchstaber invariant equals facets minus dimension
/// over the chosen ring and writes a JSON verdict with the re-verified
/// certificate and search counters. `bound` caps the entry magnitude of the
/// integer search and is ignored over `f2`. Returns `OK` for yes, `NO` for a
/// definitive no, `UNDECIDED` when the bounded integer search was exhausted.
#[no_mangle]
pub extern "C" fn toricalg_buchstaber_json(
    p: *const ToricalgPolytope,
    use_f2: c_int,
    bound: i64,
    out: *mut *mut c_char,
) -> ToricalgStatus {
    guarded(|| {
        let p = ffi_try!(unsafe { read_handle(p) });
        ffi_try!(check_out(out, "out"));
        match buchstaber_payload(p, ring_of(use_f2), bound) {
            Err(err) => domain_error(&err),
            Ok((payload, status)) => {
                unsafe { write_string(out, payload.to_string()) };
                status
            }
        }
    })
}

fn acs_payload(p: &SimplePolytopeCombinatorics, matrix_text: &str) -> Result<(Value, ToricalgStatus), Error> {
    let matrix = CharMatrix::parse(matrix_text)?;
    let admits = almost_complex_check(p, &matrix)?;
    let orientation = orientation_from_lambda(p, &matrix)?;
    reverify_orientation(p, &matrix, &orientation)?;
    let payload = json!({
        "cycle": admits,
        "matrix": matrix.to_string(),
        "orientation": format_orientation(&orientation),
    });
    let status = if admits { ToricalgStatus::Ok } else { ToricalgStatus::No };
    Ok((payload, status))
}

/// Tests whether an integer characteristic matrix (in document text form:
/// a `ring rows cols` header line, then one row per line) yields a
/// torus-invariant almost complex structure, i.e. whether the wedge of its
/// rows is a cycle. Returns `OK` when it does, `NO` when it does not.
#[no_mangle]
pub extern "C" fn toricalg_acs_json(
    p: *const ToricalgPolytope,
    matrix_text: *const c_char,
    out: *mut *mut c_char,
) -> ToricalgStatus {
    guarded(|| {
        let p = ffi_try!(unsafe { read_handle(p) });
        let text = ffi_try!(unsafe { read_str(matrix_text, "matrix_text") });
        ffi_try!(check_out(out, "out"));
        match acs_payload(p, text) {
            Err(err) => domain_error(&err),
            Ok((payload, status)) => {
                unsafe { write_string(out, payload.to_string()) };
                status
            }
        }
    })
}

fn verify_char_payload(p: &SimplePolytopeCombinatorics, matrix_text: &str) -> Result<(Value, ToricalgStatus), Error> {
    let matrix = CharMatrix::parse(matrix_text)?;
    let check = is_characteristic(p, &matrix)?;
    let failing: Vec<String> = check.failures.iter().map(|v| v.to_string()).collect();
    let payload = json!({
        "characteristic": check.ok,
        "ring": matrix.ring().name(),
        "rows": matrix.rows(),
        "cols": matrix.cols(),
        "failing_vertices": failing,
    });
    let status = if check.ok { ToricalgStatus::Ok } else { ToricalgStatus::No };
    Ok((payload, status))
}

/// Checks a matrix (document text form) against the vertex basis condition
/// and writes a JSON verdict listing any failing vertices. Returns `OK`
/// when the matrix is characteristic, `NO` otherwise.
#[no_mangle]
pub extern "C" fn toricalg_verify_char_json(
    p: *const ToricalgPolytope,
    matrix_text: *const c_char,
    out: *mut *mut c_char,
) -> ToricalgStatus {
    guarded(|| {
        let p = ffi_try!(unsafe { read_handle(p) });
        let text = ffi_try!(unsafe { read_str(matrix_text, "matrix_text") });
        ffi_try!(check_out(out, "out"));
        match verify_char_payload(p, text) {
            Err(err) => domain_error(&err),
            Ok((payload, status)) => {
                unsafe { write_string(out, payload.to_string()) };
                status
            }
        }
    })
}

/// Releases a string returned by this library. Null is tolerated.
#[no_mangle]
pub extern "C" fn toricalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Detail message of the most recent failure on the calling thread, empty
/// when none has occurred. The pointer stays valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn toricalg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}
