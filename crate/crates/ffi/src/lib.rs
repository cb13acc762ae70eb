//! C ABI for `qtele`.
//!
//! States and scan reports are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible function
//! returns a [`QteleStatus`]; on failure, [`qtele_last_error_message`]
//! describes the error. No function unwinds across the boundary: panics are
//! caught and reported as [`QteleStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qtele::Amplitude as Complex64;
use qtele::{
    criterion_check, mmes_check, partial_trace, purity, purity_eq8, scan, simulate,
    transformation_operator, BellIndex, Correction, Error, Layout, NamedState, PureState,
    RoleAssignment, ScanReport, ThetaClass,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QteleStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotNormalized = 3,
    UnknownState = 4,
    Panic = 99,
}

/// Opaque pure state.
pub struct QteleState(PureState);

/// Opaque scan report.
pub struct QteleScan(ScanReport);

/// Qubit labels (1-based) for Alice's two qubits, Bob's two and Charlie's.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QteleAssignment {
    pub alice1: usize,
    pub alice2: usize,
    pub bob1: usize,
    pub bob2: usize,
    pub charlie: usize,
}

/// Matrix orientation of a transformation operator.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QteleLayout {
    /// Row = Bob's index; acts on the input coefficient vector.
    Action = 0,
    /// Row = Alice's index (the transpose of `Action`).
    Paper = 1,
}

/// How Bob undoes a transformation operator.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QteleCorrection {
    Adjoint = 0,
    Inverse = 1,
}

/// Classification of an assignment over Charlie's angle.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QteleThetaClass {
    AllTheta = 0,
    DiscreteTheta = 1,
    None = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QteleMmesVerdict {
    pub mmes: bool,
    pub worst_pair_a: usize,
    pub worst_pair_b: usize,
    pub max_deviation: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QteleCriterion {
    pub pass: bool,
    pub sigma111_defect: f64,
    pub sigma112_defect: f64,
    pub purity_alice_pair: f64,
    pub purity_bob_pair: f64,
}

/// One measurement outcome `(i, j, n)` of the protocol.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QteleRecord {
    pub i: u8,
    pub j: u8,
    pub n: u8,
    pub probability: f64,
    pub fidelity: f64,
    pub recoverable: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QteleScanEntry {
    pub assignment: QteleAssignment,
    pub kind: QteleThetaClass,
    pub num_roots: usize,
    pub min_defect: f64,
    pub argmin_theta: f64,
    pub purity_alice: f64,
    pub purity_bob: f64,
}

/// Number of records written by [`qtele_simulate`].
pub const QTELE_NUM_OUTCOMES: usize = 32;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(QteleStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotNormalized { .. } => QteleStatus::NotNormalized,
            Error::UnknownState(_) => QteleStatus::UnknownState,
            _ => QteleStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(QteleStatus::NullPointer, format!("{what} is null"))
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Runs `body`, records any error message and converts it to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> QteleStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            QteleStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QteleStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn assignment(a: &QteleAssignment) -> Result<RoleAssignment, Failure> {
    Ok(RoleAssignment::new(
        [a.alice1, a.alice2],
        [a.bob1, a.bob2],
        a.charlie,
    )?)
}

fn from_assignment(a: &RoleAssignment) -> QteleAssignment {
    QteleAssignment {
        alice1: a.alice[0],
        alice2: a.alice[1],
        bob1: a.bob[0],
        bob2: a.bob[1],
        charlie: a.charlie,
    }
}

/// Message describing the last failed call on this thread, or an empty
/// string. The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qtele_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a catalog state (`man_m5`, `brown`, `ghz5`, `bell_phi_plus`,
/// `product_zero_N`, ...).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_state_named(
    name: *const c_char,
    out_state: *mut *mut QteleState,
) -> QteleStatus {
    guard(|| {
        let slot = out(out_state, "out_state")?;
        *slot = ptr::null_mut();
        if name.is_null() {
            return Err(null("name"));
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| Failure(QteleStatus::InvalidArgument, "name is not UTF-8".into()))?;
        let state = name.parse::<NamedState>()?.build()?;
        *slot = Box::into_raw(Box::new(QteleState(state)));
        Ok(())
    })
}

/// Builds a state from `2^num_qubits` amplitudes given as separate real and
/// imaginary arrays. Nonzero vectors are normalized.
///
/// # Safety
/// `re` and `im` must each point to `2^num_qubits` doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_state_from_amplitudes(
    num_qubits: usize,
    re: *const f64,
    im: *const f64,
    out_state: *mut *mut QteleState,
) -> QteleStatus {
    guard(|| {
        let slot = out(out_state, "out_state")?;
        *slot = ptr::null_mut();
        if re.is_null() || im.is_null() {
            return Err(null("amplitude array"));
        }
        if num_qubits == 0 || num_qubits > qtele::state::MAX_QUBITS {
            return Err(Error::BadQubitCount {
                got: num_qubits,
                max: qtele::state::MAX_QUBITS,
            }
            .into());
        }
        let dim = 1usize << num_qubits;
        let re = std::slice::from_raw_parts(re, dim);
        let im = std::slice::from_raw_parts(im, dim);
        let amplitudes = re
            .iter()
            .zip(im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        let state = PureState::new(num_qubits, amplitudes)?;
        *slot = Box::into_raw(Box::new(QteleState(state)));
        Ok(())
    })
}

/// Releases a state. Null is ignored.
///
/// # Safety
/// `state` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qtele_state_free(state: *mut QteleState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of qubits, or 0 for a null handle.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qtele_state_num_qubits(state: *const QteleState) -> usize {
    state.as_ref().map_or(0, |s| s.0.num_qubits())
}

/// Reads amplitude `index` (qubit 1 is the most significant bit).
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_state_amplitude(
    state: *const QteleState,
    index: usize,
    re: *mut f64,
    im: *mut f64,
) -> QteleStatus {
    guard(|| {
        let s = &deref(state, "state")?.0;
        let (re, im) = (out(re, "re")?, out(im, "im")?);
        if index >= s.dim() {
            return Err(Failure(
                QteleStatus::InvalidArgument,
                format!("index {index} out of range for dimension {}", s.dim()),
            ));
        }
        let a = s.amplitude(index);
        *re = a.re;
        *im = a.im;
        Ok(())
    })
}

/// Purity of the two-qubit reduced state on qubits `a` and `b`.
///
/// # Safety
/// `state` must be a live handle; `out_purity` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_pair_purity(
    state: *const QteleState,
    a: usize,
    b: usize,
    out_purity: *mut f64,
) -> QteleStatus {
    guard(|| {
        let s = &deref(state, "state")?.0;
        let slot = out(out_purity, "out_purity")?;
        *slot = purity(&partial_trace(s, &[a, b])?);
        Ok(())
    })
}

/// Purity of qubits 1 and 2 of a five-qubit state by the explicit block
/// expansion.
///
/// # Safety
/// `state` must be a live handle; `out_purity` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_purity_expansion(
    state: *const QteleState,
    out_purity: *mut f64,
) -> QteleStatus {
    guard(|| {
        let s = &deref(state, "state")?.0;
        *out(out_purity, "out_purity")? = purity_eq8(s)?;
        Ok(())
    })
}

/// Whether every two-qubit reduction of a five-qubit state has purity 1/4.
///
/// # Safety
/// `state` must be a live handle; `out_verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_mmes_check(
    state: *const QteleState,
    tol: f64,
    out_verdict: *mut QteleMmesVerdict,
) -> QteleStatus {
    guard(|| {
        let s = &deref(state, "state")?.0;
        let slot = out(out_verdict, "out_verdict")?;
        let v = mmes_check(s, tol)?;
        *slot = QteleMmesVerdict {
            mmes: v.mmes,
            worst_pair_a: v.worst_pair.0,
            worst_pair_b: v.worst_pair.1,
            max_deviation: v.max_deviation,
        };
        Ok(())
    })
}

/// Writes the 4x4 transformation operator for outcome `(i, j, n)` in
/// row-major order into `re[16]` and `im[16]`.
///
/// # Safety
/// `channel` must be a live handle; `re` and `im` must hold 16 doubles.
#[no_mangle]
pub unsafe extern "C" fn qtele_transformation_operator(
    channel: *const QteleState,
    assign: QteleAssignment,
    i: u8,
    j: u8,
    n: u8,
    theta: f64,
    layout: QteleLayout,
    re: *mut f64,
    im: *mut f64,
) -> QteleStatus {
    guard(|| {
        let ch = &deref(channel, "channel")?.0;
        if re.is_null() || im.is_null() {
            return Err(null("output array"));
        }
        let assign = assignment(&assign)?;
        let op = transformation_operator(
            ch,
            &assign,
            BellIndex::new(i)?,
            BellIndex::new(j)?,
            n,
            theta,
        )?;
        let layout = match layout {
            QteleLayout::Action => Layout::Action,
            QteleLayout::Paper => Layout::Paper,
        };
        let m = op.matrix(layout);
        let re = std::slice::from_raw_parts_mut(re, 16);
        let im = std::slice::from_raw_parts_mut(im, 16);
        for (k, entry) in m.iter().flatten().enumerate() {
            re[k] = entry.re;
            im[k] = entry.im;
        }
        Ok(())
    })
}

/// Unitarity of both operators for outcome `(1, 1, n)` at angle `theta`.
///
/// # Safety
/// `channel` must be a live handle; `out_report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_criterion_check(
    channel: *const QteleState,
    assign: QteleAssignment,
    theta: f64,
    tol: f64,
    out_report: *mut QteleCriterion,
) -> QteleStatus {
    guard(|| {
        let ch = &deref(channel, "channel")?.0;
        let slot = out(out_report, "out_report")?;
        let r = criterion_check(ch, &assignment(&assign)?, theta, tol)?;
        *slot = QteleCriterion {
            pass: r.pass,
            sigma111_defect: r.sigma111_defect,
            sigma112_defect: r.sigma112_defect,
            purity_alice_pair: r.purity_alice_pair,
            purity_bob_pair: r.purity_bob_pair,
        };
        Ok(())
    })
}

/// Simulates the protocol for a two-qubit input given by four complex
/// coefficients (normalized to within 1e-6) and writes [`QTELE_NUM_OUTCOMES`] records ordered by
/// `i`, then `j`, then `n`.
///
/// # Safety
/// `channel` must be a live handle; `input_re` and `input_im` must hold 4
/// doubles; `out_records` must hold 32 records.
#[no_mangle]
pub unsafe extern "C" fn qtele_simulate(
    channel: *const QteleState,
    assign: QteleAssignment,
    theta: f64,
    input_re: *const f64,
    input_im: *const f64,
    correction: QteleCorrection,
    out_records: *mut QteleRecord,
) -> QteleStatus {
    guard(|| {
        let ch = &deref(channel, "channel")?.0;
        if input_re.is_null() || input_im.is_null() {
            return Err(null("input array"));
        }
        if out_records.is_null() {
            return Err(null("out_records"));
        }
        let re = std::slice::from_raw_parts(input_re, 4);
        let im = std::slice::from_raw_parts(input_im, 4);
        let coefficients = (0..4).map(|k| Complex64::new(re[k], im[k])).collect();
        let input = PureState::new_strict(2, coefficients, qtele::state::NORM_REJECT_TOL)?;
        let correction = match correction {
            QteleCorrection::Adjoint => Correction::Adjoint,
            QteleCorrection::Inverse => Correction::Inverse,
        };
        let records = simulate(ch, &assignment(&assign)?, theta, &input, correction)?;
        let slots = std::slice::from_raw_parts_mut(out_records, QTELE_NUM_OUTCOMES);
        for (slot, r) in slots.iter_mut().zip(&records) {
            *slot = QteleRecord {
                i: r.outcome.0.value(),
                j: r.outcome.1.value(),
                n: r.outcome.2,
                probability: r.probability,
                fidelity: r.fidelity,
                recoverable: r.recoverable,
            };
        }
        Ok(())
    })
}

/// Classifies all 30 role assignments of a five-qubit channel.
///
/// # Safety
/// `channel` must be a live handle; `out_scan` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_scan(
    channel: *const QteleState,
    tol: f64,
    out_scan: *mut *mut QteleScan,
) -> QteleStatus {
    guard(|| {
        let slot = out(out_scan, "out_scan")?;
        *slot = ptr::null_mut();
        let ch = &deref(channel, "channel")?.0;
        *slot = Box::into_raw(Box::new(QteleScan(scan(ch, tol)?)));
        Ok(())
    })
}

/// Number of entries in a scan report, or 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qtele_scan_len(report: *const QteleScan) -> usize {
    report.as_ref().map_or(0, |r| r.0.entries.len())
}

/// Reads entry `index` of a scan report.
///
/// # Safety
/// `report` must be a live handle; `out_entry` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_scan_entry(
    report: *const QteleScan,
    index: usize,
    out_entry: *mut QteleScanEntry,
) -> QteleStatus {
    guard(|| {
        let r = &deref(report, "report")?.0;
        let slot = out(out_entry, "out_entry")?;
        let e = r.entries.get(index).ok_or_else(|| {
            Failure(
                QteleStatus::InvalidArgument,
                format!("entry {index} out of range"),
            )
        })?;
        let c = &e.classification;
        *slot = QteleScanEntry {
            assignment: from_assignment(&e.assignment),
            kind: match c.kind {
                ThetaClass::AllTheta => QteleThetaClass::AllTheta,
                ThetaClass::DiscreteTheta => QteleThetaClass::DiscreteTheta,
                ThetaClass::None => QteleThetaClass::None,
            },
            num_roots: c.roots.len(),
            min_defect: c.min_defect,
            argmin_theta: c.argmin_theta,
            purity_alice: e.purity_alice,
            purity_bob: e.purity_bob,
        };
        Ok(())
    })
}

/// Copies up to `capacity` roots of entry `index` into `roots`, sets
/// `*out_count` to the number copied.
///
/// # Safety
/// `report` must be a live handle; `roots` must hold `capacity` doubles;
/// `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtele_scan_roots(
    report: *const QteleScan,
    index: usize,
    roots: *mut f64,
    capacity: usize,
    out_count: *mut usize,
) -> QteleStatus {
    guard(|| {
        let r = &deref(report, "report")?.0;
        let count = out(out_count, "out_count")?;
        let e = r.entries.get(index).ok_or_else(|| {
            Failure(
                QteleStatus::InvalidArgument,
                format!("entry {index} out of range"),
            )
        })?;
        let src = &e.classification.roots;
        let k = src.len().min(capacity);
        if k > 0 {
            if roots.is_null() {
                return Err(null("roots"));
            }
            std::slice::from_raw_parts_mut(roots, k).copy_from_slice(&src[..k]);
        }
        *count = k;
        Ok(())
    })
}

/// Releases a scan report. Null is ignored.
///
/// # Safety
/// `report` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qtele_scan_free(report: *mut QteleScan) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
