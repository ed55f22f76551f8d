//! C ABI for `mubkit`.
//!
//! Conventions:
//!
//! - Every fallible entry point returns a [`MubkitStatus`]. On failure a
//!   message is available from [`mubkit_last_error_message`] on the same
//!   thread.
//! - Objects are opaque handles created by `*_new` and released by the
//!   matching `*_free`. Freeing `NULL` is a no-op.
//! - Matrices cross the boundary as row-major buffers of interleaved
//!   `(re, im)` doubles, `2·d²` values per matrix.
//! - Panics never unwind into C; they surface as `MUBKIT_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mubkit::classes::{all_pass, build_set, verify_set, OperatorSet};
use mubkit::matcore::{ComplexMatrix, Tolerance};
use mubkit::mub::{check_family, family, FamilySource, MubFamily};
use mubkit::tomography::{self, BasisOutcome, MeasurementRecord};
use mubkit::Error;

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MubkitStatus {
    Ok = 0,
    /// A check ran and did not pass.
    VerificationFailed = 1,
    /// No construction exists for the requested dimension (e.g. d = 6).
    UnsupportedDimension = 2,
    InvalidArgument = 3,
    DimensionMismatch = 4,
    InvalidData = 5,
    NullPointer = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Tables for d <= 5, the odd-prime construction otherwise.
pub const MUBKIT_SOURCE_AUTO: u32 = 0;
pub const MUBKIT_SOURCE_PAPER: u32 = 1;
pub const MUBKIT_SOURCE_GENERATED: u32 = 2;

/// Opaque complete MUB family.
pub struct MubkitFamily {
    inner: MubFamily,
}

/// Opaque operator set built from a family.
pub struct MubkitOperatorSet {
    inner: OperatorSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(MubkitStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::UnsupportedDimension { .. } => MubkitStatus::UnsupportedDimension,
            Error::InvalidArgument(_) => MubkitStatus::InvalidArgument,
            Error::DimensionMismatch(_) => MubkitStatus::DimensionMismatch,
            Error::InvalidData(_) | Error::Io { .. } | Error::Parse { .. } => MubkitStatus::InvalidData,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: MubkitStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

fn guard(f: impl FnOnce() -> Result<MubkitStatus, Failure>) -> MubkitStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MubkitStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: the caller guarantees `p` is null or a live handle.
    unsafe { p.as_ref() }.ok_or_else(|| fail(MubkitStatus::NullPointer, format!("{what} is NULL")))
}

fn tolerance(eps: f64) -> Result<Tolerance, Failure> {
    if eps == 0.0 {
        Ok(Tolerance::DEFAULT)
    } else {
        Ok(Tolerance::new(eps)?)
    }
}

unsafe fn write_matrix(m: &ComplexMatrix, buf: *mut f64, len: usize) -> Result<(), Failure> {
    let need = 2 * m.rows() * m.cols();
    if buf.is_null() {
        return Err(fail(MubkitStatus::NullPointer, "output buffer is NULL"));
    }
    if len < need {
        return Err(fail(
            MubkitStatus::BufferTooSmall,
            format!("buffer holds {len} doubles, {need} required"),
        ));
    }
    // SAFETY: `buf` is non-null and the caller promises `len` writable doubles.
    let out = unsafe { std::slice::from_raw_parts_mut(buf, need) };
    for (i, z) in m.as_slice().iter().enumerate() {
        out[2 * i] = z.re;
        out[2 * i + 1] = z.im;
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mubkit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or `NULL`. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn mubkit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a complete MUB family of dimension `dim`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn mubkit_family_new(dim: usize, source: u32, out: *mut *mut MubkitFamily) -> MubkitStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(MubkitStatus::NullPointer, "out is NULL"));
        }
        let src = match source {
            MUBKIT_SOURCE_AUTO => None,
            MUBKIT_SOURCE_PAPER => Some(FamilySource::Paper),
            MUBKIT_SOURCE_GENERATED => Some(FamilySource::Generated),
            other => return Err(fail(MubkitStatus::InvalidArgument, format!("unknown source {other}"))),
        };
        let f = family(dim, src)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(MubkitFamily { inner: f })) };
        Ok(MubkitStatus::Ok)
    })
}

/// # Safety
/// `f` must be `NULL` or a handle from [`mubkit_family_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mubkit_family_free(f: *mut MubkitFamily) {
    if !f.is_null() {
        // SAFETY: ownership returns from C exactly once.
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Dimension `d`, or 0 for `NULL`.
///
/// # Safety
/// `f` must be `NULL` or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mubkit_family_dim(f: *const MubkitFamily) -> usize {
    unsafe { f.as_ref() }.map_or(0, |f| f.inner.dim())
}

/// Number of bases (`d + 1`), or 0 for `NULL`.
///
/// # Safety
/// `f` must be `NULL` or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mubkit_family_len(f: *const MubkitFamily) -> usize {
    unsafe { f.as_ref() }.map_or(0, |f| f.inner.bases().len())
}

/// Copies basis `index` (columns are the basis vectors) into `buf`.
///
/// # Safety
/// `f` must be a live handle; `buf` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn mubkit_family_basis(
    f: *const MubkitFamily,
    index: usize,
    buf: *mut f64,
    len: usize,
) -> MubkitStatus {
    guard(|| {
        let f = unsafe { deref(f, "family") }?;
        let b = f
            .inner
            .bases()
            .get(index)
            .ok_or_else(|| fail(MubkitStatus::InvalidArgument, format!("basis index {index} out of range")))?;
        unsafe { write_matrix(b.matrix(), buf, len) }?;
        Ok(MubkitStatus::Ok)
    })
}

/// Certifies the family; `tol = 0` selects the default. Writes the worst
/// unbiasedness deviation to `worst` when it is non-null.
///
/// # Safety
/// `f` must be a live handle; `worst` must be `NULL` or writable.
#[no_mangle]
pub unsafe extern "C" fn mubkit_family_check(f: *const MubkitFamily, tol: f64, worst: *mut f64) -> MubkitStatus {
    guard(|| {
        let f = unsafe { deref(f, "family") }?;
        let r = check_family(&f.inner, tolerance(tol)?);
        if !worst.is_null() {
            // SAFETY: non-null and writable per contract.
            unsafe { *worst = r.worst_unbiasedness.max(r.worst_orthonormality) };
        }
        Ok(if r.pass { MubkitStatus::Ok } else { MubkitStatus::VerificationFailed })
    })
}

/// Builds the `d² − 1` operators from a family.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mubkit_operator_set_new(
    f: *const MubkitFamily,
    out: *mut *mut MubkitOperatorSet,
) -> MubkitStatus {
    guard(|| {
        let f = unsafe { deref(f, "family") }?;
        if out.is_null() {
            return Err(fail(MubkitStatus::NullPointer, "out is NULL"));
        }
        let set = build_set(&f.inner)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(MubkitOperatorSet { inner: set })) };
        Ok(MubkitStatus::Ok)
    })
}

/// # Safety
/// `s` must be `NULL` or a handle from [`mubkit_operator_set_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mubkit_operator_set_free(s: *mut MubkitOperatorSet) {
    if !s.is_null() {
        // SAFETY: ownership returns from C exactly once.
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Number of operators, or 0 for `NULL`.
///
/// # Safety
/// `s` must be `NULL` or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mubkit_operator_set_len(s: *const MubkitOperatorSet) -> usize {
    unsafe { s.as_ref() }.map_or(0, |s| s.inner.len())
}

/// Dimension, or 0 for `NULL`.
///
/// # Safety
/// `s` must be `NULL` or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mubkit_operator_set_dim(s: *const MubkitOperatorSet) -> usize {
    unsafe { s.as_ref() }.map_or(0, |s| s.inner.dim())
}

/// Copies operator `index` (class-major order) into `buf`.
///
/// # Safety
/// `s` must be a live handle; `buf` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn mubkit_operator_set_operator(
    s: *const MubkitOperatorSet,
    index: usize,
    buf: *mut f64,
    len: usize,
) -> MubkitStatus {
    guard(|| {
        let s = unsafe { deref(s, "operator set") }?;
        let flat = s.inner.flat();
        let m = flat
            .get(index)
            .ok_or_else(|| fail(MubkitStatus::InvalidArgument, format!("operator index {index} out of range")))?;
        unsafe { write_matrix(m, buf, len) }?;
        Ok(MubkitStatus::Ok)
    })
}

/// Runs every structural check; `tol = 0` selects the default. Writes the
/// number of failed checks to `failed` when it is non-null.
///
/// # Safety
/// `s` must be a live handle; `failed` must be `NULL` or writable.
#[no_mangle]
pub unsafe extern "C" fn mubkit_operator_set_verify(
    s: *const MubkitOperatorSet,
    tol: f64,
    failed: *mut usize,
) -> MubkitStatus {
    guard(|| {
        let s = unsafe { deref(s, "operator set") }?;
        let report = verify_set(&s.inner, tolerance(tol)?);
        if !failed.is_null() {
            // SAFETY: non-null and writable per contract.
            unsafe { *failed = report.iter().filter(|c| !c.pass).count() };
        }
        Ok(if all_pass(&report) { MubkitStatus::Ok } else { MubkitStatus::VerificationFailed })
    })
}

/// Linear-inversion reconstruction from outcome probabilities.
///
/// `probs` holds `(d + 1)·d` values, basis-major in family order. The
/// estimate is written to `rho` as `2·d²` interleaved doubles. When
/// `project` is non-zero the estimate is clipped to a valid state.
///
/// # Safety
/// `f`, `s` must be live handles of equal dimension; `probs` must hold
/// `probs_len` readable doubles and `rho` `rho_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn mubkit_reconstruct(
    f: *const MubkitFamily,
    s: *const MubkitOperatorSet,
    probs: *const f64,
    probs_len: usize,
    project: i32,
    rho: *mut f64,
    rho_len: usize,
) -> MubkitStatus {
    guard(|| {
        let f = unsafe { deref(f, "family") }?;
        let s = unsafe { deref(s, "operator set") }?;
        let d = f.inner.dim();
        if s.inner.dim() != d {
            return Err(fail(MubkitStatus::DimensionMismatch, "family and operator set differ in dimension"));
        }
        if probs.is_null() {
            return Err(fail(MubkitStatus::NullPointer, "probs is NULL"));
        }
        let need = (d + 1) * d;
        if probs_len != need {
            return Err(fail(
                MubkitStatus::DimensionMismatch,
                format!("expected {need} probabilities, got {probs_len}"),
            ));
        }
        // SAFETY: non-null with `probs_len` readable doubles per contract.
        let p = unsafe { std::slice::from_raw_parts(probs, probs_len) };
        let record = MeasurementRecord {
            dim: d,
            shots: None,
            bases: f
                .inner
                .bases()
                .iter()
                .zip(p.chunks(d))
                .map(|(b, chunk)| BasisOutcome {
                    label: b.label().to_string(),
                    p: chunk.to_vec(),
                })
                .collect(),
        };
        let report = tomography::reconstruct_from_record(&record, &s.inner, project != 0, None)?;
        unsafe { write_matrix(report.estimate.matrix(), rho, rho_len) }?;
        Ok(MubkitStatus::Ok)
    })
}
