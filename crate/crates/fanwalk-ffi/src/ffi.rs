use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fanwalk::borsuk::{self, BorsukError, LinearMap, OddMap};
use fanwalk::complex::SymmetricComplex;
use fanwalk::flag::HemisphereFlag;
use fanwalk::generators::{self, GeneratorKind, GeneratorSpec};
use fanwalk::io::{self, ComplexDoc, LabelingDoc, ReportDoc, TraceDoc, WitnessFileDoc};
use fanwalk::labeling::{random_fan_labeling, random_labeling, LabelError, Labeling};
use fanwalk::oracle;
use fanwalk::pathfinder::{Mode, WalkError, Walker};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FwStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationFailed = 4,
    HypothesisViolation = 5,
    StructuralAnomaly = 6,
    InternalError = 7,
}

/// Walk mode selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FwMode {
    Fan = 0,
    Tucker = 1,
}

impl From<FwMode> for Mode {
    fn from(m: FwMode) -> Mode {
        match m {
            FwMode::Fan => Mode::Fan,
            FwMode::Tucker => Mode::Tucker,
        }
    }
}

/// Opaque: a symmetric complex bundled with its hemisphere flag.
pub struct FwComplex {
    complex: SymmetricComplex,
    flag: HemisphereFlag,
}

/// Opaque: an anti-symmetric labeling.
pub struct FwLabeling {
    labeling: Labeling,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let cstring = CString::new(message.replace('\0', "?"))
        .unwrap_or_else(|_| CString::new("error").expect("static string"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(status: FwStatus, message: impl Into<String>) -> FwStatus {
    set_error(message.into());
    status
}

fn walk_status(e: &WalkError) -> FwStatus {
    match e {
        WalkError::LabelCountMismatch { .. }
        | WalkError::InvalidComplex { .. }
        | WalkError::InvalidFlag { .. } => FwStatus::ValidationFailed,
        WalkError::NotAntisymmetric { .. }
        | WalkError::ComplementaryEdges { .. }
        | WalkError::LabelBoundTooSmall { .. } => FwStatus::HypothesisViolation,
        _ => FwStatus::StructuralAnomaly,
    }
}

fn label_status(e: &LabelError) -> FwStatus {
    match e {
        LabelError::RetryCapExhausted { .. }
        | LabelError::ForcedComplementaryEdge { .. }
        | LabelError::DegenerateSample { .. }
        | LabelError::MissingSample { .. } => FwStatus::HypothesisViolation,
        _ => FwStatus::ValidationFailed,
    }
}

fn borsuk_status(e: &BorsukError) -> FwStatus {
    match e {
        BorsukError::Label(inner) => label_status(inner),
        BorsukError::Walk(inner) => walk_status(inner),
        _ => FwStatus::ValidationFailed,
    }
}

/// Runs `body` with panics converted to `InternalError`.
fn guarded(body: impl FnOnce() -> FwStatus) -> FwStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(FwStatus::InternalError, "internal panic"),
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, FwStatus> {
    if ptr.is_null() {
        return Err(FwStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| FwStatus::InvalidUtf8)
}

fn give_string(out: *mut *mut c_char, text: String) -> FwStatus {
    let cstring = match CString::new(text) {
        Ok(s) => s,
        Err(_) => return fail(FwStatus::InternalError, "interior NUL in output"),
    };
    unsafe { *out = cstring.into_raw() };
    FwStatus::Ok
}

/// Message for the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn fw_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string; never freed.
#[no_mangle]
pub extern "C" fn fw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned by this library. NULL is a no-op.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

/// Builds the octahedral subdivision of `S^n`, barycentrically refined
/// `refinements` times.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_complex_octahedral(
    n: usize,
    refinements: usize,
    out: *mut *mut FwComplex,
) -> FwStatus {
    guarded(|| {
        if out.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        match generators::generate(GeneratorSpec {
            kind: GeneratorKind::Octahedral,
            n,
            refinements,
        }) {
            Ok((complex, flag)) => {
                unsafe { *out = Box::into_raw(Box::new(FwComplex { complex, flag })) };
                FwStatus::Ok
            }
            Err(e) => fail(FwStatus::ValidationFailed, e.to_string()),
        }
    })
}

/// Builds the 4-vertex tetrahedral triangulation of `S^2`.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_complex_paper_tetra(out: *mut *mut FwComplex) -> FwStatus {
    guarded(|| {
        if out.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let (complex, flag) = generators::paper_tetra();
        unsafe { *out = Box::into_raw(Box::new(FwComplex { complex, flag })) };
        FwStatus::Ok
    })
}

/// Parses a complex+flag JSON document.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_complex_from_json(
    json: *const c_char,
    out: *mut *mut FwComplex,
) -> FwStatus {
    guarded(|| {
        if out.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let text = match unsafe { read_str(json) } {
            Ok(t) => t,
            Err(status) => return fail(status, "complex JSON pointer unreadable"),
        };
        let doc: ComplexDoc = match serde_json::from_str(text) {
            Ok(doc) => doc,
            Err(e) => return fail(FwStatus::ParseError, e.to_string()),
        };
        match doc.decode() {
            Ok((complex, flag)) => {
                unsafe { *out = Box::into_raw(Box::new(FwComplex { complex, flag })) };
                FwStatus::Ok
            }
            Err(e) => fail(FwStatus::ValidationFailed, e.to_string()),
        }
    })
}

/// Serializes a complex+flag handle back to JSON.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_complex_to_json(
    handle: *const FwComplex,
    out: *mut *mut c_char,
) -> FwStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*handle };
        match io::to_json_string(&ComplexDoc::encode(&fw.complex, &fw.flag)) {
            Ok(json) => give_string(out, json),
            Err(e) => fail(FwStatus::InternalError, e.to_string()),
        }
    })
}

/// Sphere dimension, or -1 for NULL.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_complex_dim(handle: *const FwComplex) -> i64 {
    if handle.is_null() {
        return -1;
    }
    unsafe { &*handle }.complex.n() as i64
}

/// Vertex count, or -1 for NULL.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_complex_vertex_count(handle: *const FwComplex) -> i64 {
    if handle.is_null() {
        return -1;
    }
    unsafe { &*handle }.complex.vertex_count() as i64
}

/// Number of maximal simplices, or -1 for NULL.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_complex_top_count(handle: *const FwComplex) -> i64 {
    if handle.is_null() {
        return -1;
    }
    unsafe { &*handle }.complex.maximal_simplices().len() as i64
}

///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_complex_free(handle: *mut FwComplex) {
    if !handle.is_null() {
        unsafe { drop(Box::from_raw(handle)) };
    }
}

/// Parses a labeling JSON document against a complex; missing antipodal
/// partners are mirrored, conflicts rejected.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_labeling_from_json(
    complex: *const FwComplex,
    json: *const c_char,
    out: *mut *mut FwLabeling,
) -> FwStatus {
    guarded(|| {
        if complex.is_null() || out.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*complex };
        let text = match unsafe { read_str(json) } {
            Ok(t) => t,
            Err(status) => return fail(status, "labeling JSON pointer unreadable"),
        };
        let doc: LabelingDoc = match serde_json::from_str(text) {
            Ok(doc) => doc,
            Err(e) => return fail(FwStatus::ParseError, e.to_string()),
        };
        match doc.decode(&fw.complex) {
            Ok(labeling) => {
                unsafe { *out = Box::into_raw(Box::new(FwLabeling { labeling })) };
                FwStatus::Ok
            }
            Err(e) => fail(FwStatus::ValidationFailed, e.to_string()),
        }
    })
}

/// Uniform anti-symmetric labeling; with `forbid_complementary != 0`,
/// rejection-samples until no closure edge has zero label sum.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_labeling_random(
    complex: *const FwComplex,
    m: u32,
    seed: u64,
    forbid_complementary: i32,
    out: *mut *mut FwLabeling,
) -> FwStatus {
    guarded(|| {
        if complex.is_null() || out.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*complex };
        let result = if forbid_complementary != 0 {
            random_labeling(&fw.complex, m, seed, true)
        } else {
            random_labeling(&fw.complex, m, seed, false)
        };
        match result {
            Ok(labeling) => {
                unsafe { *out = Box::into_raw(Box::new(FwLabeling { labeling })) };
                FwStatus::Ok
            }
            Err(e) => {
                let status = label_status(&e);
                fail(status, e.to_string())
            }
        }
    })
}

/// Complementary-edge-free labeling via the constraint-aware sampler,
/// which also handles subdivided complexes.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_labeling_random_fan(
    complex: *const FwComplex,
    m: u32,
    seed: u64,
    out: *mut *mut FwLabeling,
) -> FwStatus {
    guarded(|| {
        if complex.is_null() || out.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*complex };
        match random_fan_labeling(&fw.complex, m, seed) {
            Ok(labeling) => {
                unsafe { *out = Box::into_raw(Box::new(FwLabeling { labeling })) };
                FwStatus::Ok
            }
            Err(e) => {
                let status = label_status(&e);
                fail(status, e.to_string())
            }
        }
    })
}

/// Serializes a labeling handle to JSON.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_labeling_to_json(
    handle: *const FwLabeling,
    out: *mut *mut c_char,
) -> FwStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*handle };
        match io::to_json_string(&LabelingDoc::encode(&fw.labeling)) {
            Ok(json) => give_string(out, json),
            Err(e) => fail(FwStatus::InternalError, e.to_string()),
        }
    })
}

///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_labeling_free(handle: *mut FwLabeling) {
    if !handle.is_null() {
        unsafe { drop(Box::from_raw(handle)) };
    }
}

/// Walks from `H_0` in the requested mode and returns the trace document
/// as JSON.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_run(
    complex: *const FwComplex,
    labeling: *const FwLabeling,
    mode: FwMode,
    out_trace_json: *mut *mut c_char,
) -> FwStatus {
    guarded(|| {
        if complex.is_null() || labeling.is_null() || out_trace_json.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*complex };
        let fl = unsafe { &*labeling };
        let walker = match Walker::new(&fw.complex, &fw.flag, &fl.labeling, mode.into()) {
            Ok(w) => w,
            Err(e) => {
                let status = walk_status(&e);
                return fail(status, e.to_string());
            }
        };
        match walker.run() {
            Ok(trace) => match io::to_json_string(&TraceDoc::encode(&trace, &fl.labeling)) {
                Ok(json) => give_string(out_trace_json, json),
                Err(e) => fail(FwStatus::InternalError, e.to_string()),
            },
            Err(e) => {
                let status = walk_status(&e);
                fail(status, e.to_string())
            }
        }
    })
}

/// Brute-force enumeration: materializes the graph, decomposes it, and
/// returns the report document as JSON (full lists when `full != 0`).
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_verify(
    complex: *const FwComplex,
    labeling: *const FwLabeling,
    mode: FwMode,
    full: i32,
    out_report_json: *mut *mut c_char,
) -> FwStatus {
    guarded(|| {
        if complex.is_null() || labeling.is_null() || out_report_json.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*complex };
        let fl = unsafe { &*labeling };
        match oracle::build_graph(&fw.complex, &fw.flag, &fl.labeling, mode.into()) {
            Ok(report) => {
                let doc = ReportDoc::encode(&report, Default::default(), full != 0);
                match io::to_json_string(&doc) {
                    Ok(json) => give_string(out_report_json, json),
                    Err(e) => fail(FwStatus::InternalError, e.to_string()),
                }
            }
            Err(e) => {
                let status = walk_status(&e);
                fail(status, e.to_string())
            }
        }
    })
}

/// Counts alternating top-dimensional simplices by sign.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_count_alternating(
    complex: *const FwComplex,
    labeling: *const FwLabeling,
    out_positive: *mut usize,
    out_negative: *mut usize,
) -> FwStatus {
    guarded(|| {
        if complex.is_null()
            || labeling.is_null()
            || out_positive.is_null()
            || out_negative.is_null()
        {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*complex };
        let fl = unsafe { &*labeling };
        if fl.labeling.vertex_count() != fw.complex.vertex_count() {
            return fail(FwStatus::ValidationFailed, "labeling size mismatch");
        }
        let (pos, neg) = oracle::count_alternating(&fw.complex, &fl.labeling);
        unsafe {
            *out_positive = pos;
            *out_negative = neg;
        }
        FwStatus::Ok
    })
}

/// Counts agreeable almost-alternating simplices containing a
/// complementary edge, by carrier sign.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_count_tucker_endpoints(
    complex: *const FwComplex,
    labeling: *const FwLabeling,
    out_positive: *mut usize,
    out_negative: *mut usize,
) -> FwStatus {
    guarded(|| {
        if complex.is_null()
            || labeling.is_null()
            || out_positive.is_null()
            || out_negative.is_null()
        {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*complex };
        let fl = unsafe { &*labeling };
        match oracle::count_tucker_endpoints(&fw.complex, &fw.flag, &fl.labeling) {
            Ok((pos, neg)) => {
                unsafe {
                    *out_positive = pos;
                    *out_negative = neg;
                }
                FwStatus::Ok
            }
            Err(e) => {
                let status = walk_status(&e);
                fail(status, e.to_string())
            }
        }
    })
}

/// Solves for an approximate zero of the odd linear map given by a
/// row-major `n x (n+1)` matrix; returns the witness document as JSON.
///
/// # Safety
/// Pointer arguments must be valid for the call: handles must come
/// from this library and not be freed yet, strings must be
/// NUL-terminated, and out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_borsuk_solve_linear(
    complex: *const FwComplex,
    entries: *const f64,
    entry_count: usize,
    refinements: usize,
    out_witness_json: *mut *mut c_char,
) -> FwStatus {
    guarded(|| {
        if complex.is_null() || entries.is_null() || out_witness_json.is_null() {
            return FwStatus::NullArgument;
        }
        clear_error();
        let fw = unsafe { &*complex };
        let n = fw.complex.n();
        if entry_count != n * (n + 1) {
            return fail(
                FwStatus::ValidationFailed,
                format!("expected {} matrix entries, got {entry_count}", n * (n + 1)),
            );
        }
        let flat = unsafe { std::slice::from_raw_parts(entries, entry_count) };
        let rows: Vec<Vec<f64>> = flat.chunks(n + 1).map(|r| r.to_vec()).collect();
        let map = match LinearMap::new(rows) {
            Ok(m) => OddMap::Linear(m),
            Err(e) => return fail(FwStatus::ValidationFailed, e.to_string()),
        };
        match borsuk::solve(&fw.complex, &fw.flag, &map, refinements) {
            Ok(witness) => match io::to_json_string(&WitnessFileDoc::encode(&witness)) {
                Ok(json) => give_string(out_witness_json, json),
                Err(e) => fail(FwStatus::InternalError, e.to_string()),
            },
            Err(e) => {
                let status = borsuk_status(&e);
                fail(status, e.to_string())
            }
        }
    })
}
