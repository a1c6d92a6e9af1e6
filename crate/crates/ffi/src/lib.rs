//! C ABI over `ringcodes`. Codes live behind an opaque `RcCode` handle.
//! Every fallible call returns an `RcStatus`; on failure the message is
//! available from `rc_last_error_message` on the same thread.
//!
//! Subset masks use bit `i - 1` for coordinate `i`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ringcodes::boolean_geometry::BitVector;
use ringcodes::code_analysis::{
    analyze, construct_instance, griesmer_check, Analysis, AnalysisError, CodeInstance, GriesmerStatus,
};
use ringcodes::code_construction::{ConstructionError, DefiningSetSpec, Variant, WorkBudget};
use ringcodes::ring_i::RingElement;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    /// Internal consistency check failed while building or analysing a code.
    ConstructionFailed = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcGriesmerStatus {
    GriesmerCode = 0,
    CertifiedOptimal = 1,
    Inconclusive = 2,
    InfeasibleParameters = 3,
}

impl From<GriesmerStatus> for RcGriesmerStatus {
    fn from(s: GriesmerStatus) -> Self {
        match s {
            GriesmerStatus::GriesmerCode => RcGriesmerStatus::GriesmerCode,
            GriesmerStatus::CertifiedOptimal => RcGriesmerStatus::CertifiedOptimal,
            GriesmerStatus::Inconclusive => RcGriesmerStatus::Inconclusive,
            GriesmerStatus::InfeasibleParameters => RcGriesmerStatus::InfeasibleParameters,
        }
    }
}

/// Gray image parameters. `has_d` is false for the zero code.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RcBinaryParams {
    pub n: u64,
    pub k: u32,
    pub d: u64,
    pub has_d: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RcGriesmerCheck {
    pub sum_at_d: u64,
    pub sum_at_d_plus_1: u64,
    pub status: RcGriesmerStatus,
}

/// Opaque code handle.
pub struct RcCode {
    instance: CodeInstance,
    budget: WorkBudget,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl ToString) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: RcStatus, message: impl ToString) -> RcStatus {
    set_error(message);
    status
}

fn construction_status(e: &ConstructionError) -> RcStatus {
    match e {
        ConstructionError::BudgetExceeded { .. } => RcStatus::BudgetExceeded,
        ConstructionError::Geometry(_)
        | ConstructionError::UnknownVariant(_)
        | ConstructionError::DimensionMismatch { .. } => RcStatus::InvalidArgument,
        _ => RcStatus::ConstructionFailed,
    }
}

fn analysis_status(e: &AnalysisError) -> RcStatus {
    match e {
        AnalysisError::Construction(inner) => construction_status(inner),
        AnalysisError::InvalidGriesmerInput { .. } | AnalysisError::UnknownAnalysis(_) => RcStatus::InvalidArgument,
        _ => RcStatus::ConstructionFailed,
    }
}

fn guarded(body: impl FnOnce() -> RcStatus) -> RcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(RcStatus::Panic, message)
        }
    }
}

fn variant_from(code: u32) -> Option<Variant> {
    Variant::ALL.get((code as usize).checked_sub(1)?).copied()
}

/// Builds the code for variant `1..=5` (T1..T5). `budget == 0` uses
/// `RINGCODES_WORK_BUDGET` or the library default. An empty defining set
/// yields a degenerate handle of length 0.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_code_new(
    variant: u32,
    m: u8,
    m_mask: u32,
    n_mask: u32,
    budget: u64,
    out: *mut *mut RcCode,
) -> RcStatus {
    guarded(|| {
        if out.is_null() {
            return fail(RcStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let Some(variant) = variant_from(variant) else {
            return fail(RcStatus::InvalidArgument, format!("variant {variant} not in 1..=5"));
        };
        let budget = if budget == 0 {
            match WorkBudget::from_env() {
                Ok(b) => b,
                Err(e) => return fail(RcStatus::InvalidArgument, e),
            }
        } else {
            WorkBudget(budget as u128)
        };
        let spec = match (BitVector::new(m, m_mask), BitVector::new(m, n_mask)) {
            (Ok(a), Ok(b)) => DefiningSetSpec::simplicial(variant, m, a, b),
            (Err(e), _) | (_, Err(e)) => return fail(RcStatus::InvalidArgument, e),
        };
        let spec = match spec {
            Ok(s) => s,
            Err(e) => return fail(construction_status(&e), &e),
        };
        match construct_instance(&spec, budget) {
            Ok(instance) => {
                *out = Box::into_raw(Box::new(RcCode { instance, budget }));
                RcStatus::Ok
            }
            Err(e) => fail(analysis_status(&e), &e),
        }
    })
}

/// # Safety
/// `code` must be null or a handle from `rc_code_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rc_code_free(code: *mut RcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

unsafe fn handle<'a>(code: *const RcCode) -> Option<&'a RcCode> {
    code.as_ref()
}

/// Length `|D|` of the code over I; 0 for null.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rc_code_length(code: *const RcCode) -> u64 {
    match handle(code).map(|c| &c.instance) {
        Some(CodeInstance::Built { ring, .. }) => ring.length() as u64,
        _ => 0,
    }
}

/// Number of distinct codewords; 0 for null.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rc_code_size(code: *const RcCode) -> u64 {
    match handle(code).map(|c| &c.instance) {
        Some(CodeInstance::Built { ring, .. }) => ring.size() as u64,
        Some(CodeInstance::EmptyDefiningSet { .. }) => 1,
        None => 0,
    }
}

/// Messages mapping to the zero codeword; 0 for null.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rc_code_kernel_size(code: *const RcCode) -> u64 {
    match handle(code).map(|c| &c.instance) {
        Some(CodeInstance::Built { ring, .. }) => ring.kernel_size(),
        Some(CodeInstance::EmptyDefiningSet { spec }) => 1u64 << (2 * spec.dimension() as u32),
        None => 0,
    }
}

/// True when the defining set is empty or the code is zero.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rc_code_is_degenerate(code: *const RcCode) -> bool {
    match handle(code).map(|c| &c.instance) {
        Some(CodeInstance::Built { params, .. }) => params.is_degenerate(),
        _ => true,
    }
}

/// Lee weight distribution of the distinct codewords, ascending by weight.
/// `*out_len` always receives the number of entries; if `capacity` is too
/// small nothing is written and `BufferTooSmall` is returned.
///
/// # Safety
/// `weights` and `counts` must each hold `capacity` elements (or be null
/// with `capacity == 0`); `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rc_code_weight_distribution(
    code: *const RcCode,
    weights: *mut u32,
    counts: *mut u64,
    capacity: usize,
    out_len: *mut usize,
) -> RcStatus {
    guarded(|| {
        let (Some(code), false) = (handle(code), out_len.is_null()) else {
            return fail(RcStatus::NullPointer, "code or out_len is null");
        };
        let entries: Vec<(u32, u64)> = match &code.instance {
            CodeInstance::Built { ring, .. } => ring.weight_distribution().iter().map(|(&w, &c)| (w, c)).collect(),
            CodeInstance::EmptyDefiningSet { .. } => vec![(0, 1)],
        };
        *out_len = entries.len();
        if capacity < entries.len() {
            return fail(RcStatus::BufferTooSmall, format!("need {} entries", entries.len()));
        }
        if weights.is_null() || counts.is_null() {
            return fail(RcStatus::NullPointer, "weights or counts is null");
        }
        for (i, (w, c)) in entries.into_iter().enumerate() {
            *weights.add(i) = w;
            *counts.add(i) = c;
        }
        RcStatus::Ok
    })
}

/// # Safety
/// `code` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rc_code_binary_params(code: *const RcCode, out: *mut RcBinaryParams) -> RcStatus {
    guarded(|| {
        let (Some(code), false) = (handle(code), out.is_null()) else {
            return fail(RcStatus::NullPointer, "code or out is null");
        };
        *out = match &code.instance {
            CodeInstance::Built { params, .. } => {
                RcBinaryParams { n: params.n, k: params.k, d: params.d.unwrap_or(0), has_d: params.d.is_some() }
            }
            CodeInstance::EmptyDefiningSet { .. } => RcBinaryParams::default(),
        };
        RcStatus::Ok
    })
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Lee weight enumerator such as `X^32 + 3X^16Y^16`; release with
/// `rc_string_free`. Null on a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rc_code_enumerator(code: *const RcCode) -> *mut c_char {
    match handle(code).map(|c| &c.instance) {
        Some(CodeInstance::Built { ring, .. }) => into_c_string(ring.enumerator()),
        Some(CodeInstance::EmptyDefiningSet { .. }) => into_c_string("1".into()),
        None => ptr::null_mut(),
    }
}

/// Runs every analysis and writes the JSON report to `*out` (release with
/// `rc_string_free`).
///
/// # Safety
/// `code` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rc_code_analysis_json(code: *const RcCode, out: *mut *mut c_char) -> RcStatus {
    guarded(|| {
        let (Some(code), false) = (handle(code), out.is_null()) else {
            return fail(RcStatus::NullPointer, "code or out is null");
        };
        *out = ptr::null_mut();
        match analyze(code.instance.spec(), &Analysis::ALL, code.budget) {
            Ok(report) => {
                let doc = serde_json::json!({ "schema_version": 1, "report": report });
                *out = into_c_string(doc.to_string());
                RcStatus::Ok
            }
            Err(e) => fail(analysis_status(&e), &e),
        }
    })
}

/// Griesmer test for a binary `[n, k, d]` code.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rc_griesmer_check(n: u64, k: u32, d: u64, out: *mut RcGriesmerCheck) -> RcStatus {
    guarded(|| {
        if out.is_null() {
            return fail(RcStatus::NullPointer, "out is null");
        }
        match griesmer_check(n, k, d) {
            Ok(g) => {
                *out = RcGriesmerCheck {
                    sum_at_d: g.sum_at_d,
                    sum_at_d_plus_1: g.sum_at_d_plus_1,
                    status: g.status.into(),
                };
                RcStatus::Ok
            }
            Err(e) => fail(analysis_status(&e), &e),
        }
    })
}

fn ring_op(a: u8, b: u8, out: *mut u8, op: fn(RingElement, RingElement) -> RingElement) -> RcStatus {
    guarded(|| {
        if out.is_null() {
            return fail(RcStatus::NullPointer, "out is null");
        }
        match (RingElement::from_code(a), RingElement::from_code(b)) {
            (Some(x), Some(y)) => {
                // SAFETY: checked non-null above; caller guarantees validity.
                unsafe { *out = op(x, y).code() };
                RcStatus::Ok
            }
            _ => fail(RcStatus::InvalidArgument, format!("element codes must be 0..=3, got {a}, {b}")),
        }
    })
}

/// Sum in I. Elements are coded 0 = 0, 1 = a, 2 = b, 3 = c.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rc_ring_add(a: u8, b: u8, out: *mut u8) -> RcStatus {
    ring_op(a, b, out, |x, y| x + y)
}

/// Product in I, same coding as `rc_ring_add`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rc_ring_mul(a: u8, b: u8, out: *mut u8) -> RcStatus {
    ring_op(a, b, out, |x, y| x * y)
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Copies a message from `rc_last_error_message` into an owned string.
pub fn last_error() -> Option<String> {
    let p = rc_last_error_message();
    // SAFETY: pointer comes from the thread-local CString, alive until the next call.
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}
