//! C interface to shelflab.
//!
//! Every fallible call returns a [`ShelflabStatus`]; on failure a message is available
//! from [`shelflab_last_error`] on the same thread. Handles are opaque and must be
//! released with their `_free` function. Strings returned through `out` parameters are
//! owned by the caller and released with [`shelflab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shelflab::error::Error;
use shelflab::free::{fas_build, fptus_build, fpus_build, fus_build, FreeStructureTable};
use shelflab::homology::{homology, Theory};
use shelflab::laver::{laver_build, LaverTable};
use shelflab::magma::{check_axioms, FiniteMagma};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShelflabStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed table text, out-of-range entry or bad argument.
    InvalidArgument = 2,
    /// A size or degree bound was exceeded.
    BoundExceeded = 3,
    /// The operation needs a shelf (or an associative shelf) and did not get one.
    NotShelf = 4,
    ComputationFailed = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShelflabFreeKind {
    Fas = 0,
    Fpus = 1,
    Fptus = 2,
    Fus = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShelflabTheory {
    OneTerm = 0,
    TwoTerm = 1,
}

pub struct ShelflabMagma(FiniteMagma);

pub struct ShelflabFreeTable(FreeStructureTable);

pub struct ShelflabLaver(LaverTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ShelflabStatus {
    match e {
        Error::BoundExceeded { .. } | Error::CapExceeded { .. } => ShelflabStatus::BoundExceeded,
        Error::NotShelf { .. } | Error::NotAssociativeShelf => ShelflabStatus::NotShelf,
        Error::Unstable { .. } | Error::LaverInvariant(_) => ShelflabStatus::ComputationFailed,
        _ => ShelflabStatus::InvalidArgument,
    }
}

/// Runs `f`, recording its error or panic.
fn guard(f: impl FnOnce() -> Result<(), (ShelflabStatus, String)>) -> ShelflabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ShelflabStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            ShelflabStatus::Panic
        }
    }
}

type Failure = (ShelflabStatus, String);

fn lib(e: Error) -> Failure {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> Failure {
    (ShelflabStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: String) -> Failure {
    (ShelflabStatus::InvalidArgument, msg)
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| invalid("string contains a nul byte".into()))?;
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(c.into_raw());
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or null. Valid until the next call
/// into this library on the same thread.
#[no_mangle]
pub extern "C" fn shelflab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn shelflab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shelflab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a table in `.cay` text form: the order, then one row per line.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_magma_from_cay(
    text: *const c_char,
    out: *mut *mut ShelflabMagma,
) -> ShelflabStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| invalid("text is not UTF-8".into()))?;
        let m = FiniteMagma::from_cay(text).map_err(lib)?;
        write_out(out, boxed(ShelflabMagma(m)), "out")
    })
}

/// Builds a magma from `order * order` row-major entries, 0-indexed.
///
/// # Safety
/// `entries` must point to `order * order` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_magma_from_table(
    order: usize,
    entries: *const u32,
    out: *mut *mut ShelflabMagma,
) -> ShelflabStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        let len = order
            .checked_mul(order)
            .ok_or_else(|| invalid(format!("order {order} is too large")))?;
        let table = std::slice::from_raw_parts(entries, len)
            .iter()
            .map(|&v| v as usize)
            .collect();
        let m = FiniteMagma::new(order, table).map_err(lib)?;
        write_out(out, boxed(ShelflabMagma(m)), "out")
    })
}

/// # Safety
/// `m` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shelflab_magma_free(m: *mut ShelflabMagma) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Order of `m`, or 0 if `m` is null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn shelflab_magma_order(m: *const ShelflabMagma) -> usize {
    m.as_ref().map_or(0, |m| m.0.order())
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_magma_op(
    m: *const ShelflabMagma,
    x: usize,
    y: usize,
    out: *mut usize,
) -> ShelflabStatus {
    guard(|| {
        let m = &deref(m, "magma")?.0;
        let n = m.order();
        if x >= n || y >= n {
            return Err(invalid(format!("({x}, {y}) outside 0..{n}")));
        }
        write_out(out, m.op(x, y), "out")
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_magma_is_shelf(
    m: *const ShelflabMagma,
    out: *mut bool,
) -> ShelflabStatus {
    guard(|| write_out(out, deref(m, "magma")?.0.is_shelf(), "out"))
}

/// Axiom report as a JSON object.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_magma_axioms_json(
    m: *const ShelflabMagma,
    out: *mut *mut c_char,
) -> ShelflabStatus {
    guard(|| {
        let report = check_axioms(&deref(m, "magma")?.0);
        let json = serde_json::to_string(&report).expect("axiom reports serialize");
        write_string(out, json)
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_magma_to_cay(
    m: *const ShelflabMagma,
    out: *mut *mut c_char,
) -> ShelflabStatus {
    guard(|| write_string(out, deref(m, "magma")?.0.to_cay()))
}

/// Integral homology group `H_q`. Writes its free rank and its torsion coefficients as a
/// JSON array such as `[2,6]`.
///
/// # Safety
/// `m` must be a live handle; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_homology(
    m: *const ShelflabMagma,
    theory: ShelflabTheory,
    q: usize,
    reduced: bool,
    out_free_rank: *mut usize,
    out_torsion_json: *mut *mut c_char,
) -> ShelflabStatus {
    guard(|| {
        let m = &deref(m, "magma")?.0;
        if out_free_rank.is_null() || out_torsion_json.is_null() {
            return Err(null("out"));
        }
        let theory = match theory {
            ShelflabTheory::OneTerm => Theory::OneTerm,
            ShelflabTheory::TwoTerm => Theory::TwoTerm,
        };
        let g = homology(m, theory, q, reduced).map_err(lib)?;
        let torsion: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
        write_string(out_torsion_json, format!("[{}]", torsion.join(",")))?;
        write_out(out_free_rank, g.free_rank, "out_free_rank")
    })
}

/// Free structure on `n` generators. `max_len` bounds the word length for
/// [`ShelflabFreeKind::Fas`] and is ignored otherwise.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_free_table_build(
    kind: ShelflabFreeKind,
    n: usize,
    max_len: usize,
    out: *mut *mut ShelflabFreeTable,
) -> ShelflabStatus {
    guard(|| {
        let t = match kind {
            ShelflabFreeKind::Fas => fas_build(n, max_len),
            ShelflabFreeKind::Fpus => fpus_build(n),
            ShelflabFreeKind::Fptus => fptus_build(n),
            ShelflabFreeKind::Fus => fus_build(n),
        }
        .map_err(lib)?;
        write_out(out, boxed(ShelflabFreeTable(t)), "out")
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shelflab_free_table_free(t: *mut ShelflabFreeTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of elements, or 0 if `t` is null.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn shelflab_free_table_len(t: *const ShelflabFreeTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// Element `i` as a dotted word such as `0.1.0`; the empty word is `""`.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_free_table_element(
    t: *const ShelflabFreeTable,
    i: usize,
    out: *mut *mut c_char,
) -> ShelflabStatus {
    guard(|| {
        let t = &deref(t, "table")?.0;
        let w = t
            .elements
            .get(i)
            .ok_or_else(|| invalid(format!("element {i} outside 0..{}", t.len())))?;
        write_string(out, w.to_dotted())
    })
}

/// Copy of the multiplication table as a new magma handle.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_free_table_magma(
    t: *const ShelflabFreeTable,
    out: *mut *mut ShelflabMagma,
) -> ShelflabStatus {
    guard(|| {
        let m = deref(t, "table")?.0.magma.clone();
        write_out(out, boxed(ShelflabMagma(m)), "out")
    })
}

/// Laver table `A_k` on `2^k` elements.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_laver_build(
    k: usize,
    out: *mut *mut ShelflabLaver,
) -> ShelflabStatus {
    guard(|| {
        let t = laver_build(k).map_err(lib)?;
        write_out(out, boxed(ShelflabLaver(t)), "out")
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shelflab_laver_free(t: *mut ShelflabLaver) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// `2^k`, or 0 if `t` is null.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn shelflab_laver_size(t: *const ShelflabLaver) -> usize {
    t.as_ref().map_or(0, |t| t.0.size())
}

/// `a * b` with 1-indexed arguments and result.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_laver_get(
    t: *const ShelflabLaver,
    a: usize,
    b: usize,
    out: *mut usize,
) -> ShelflabStatus {
    guard(|| {
        let t = &deref(t, "laver table")?.0;
        let n = t.size();
        if !(1..=n).contains(&a) || !(1..=n).contains(&b) {
            return Err(invalid(format!("({a}, {b}) outside 1..={n}")));
        }
        write_out(out, t.get(a, b), "out")
    })
}

/// The table as a 0-indexed magma handle. The operation is left self-distributive, so
/// [`shelflab_magma_is_shelf`] reports false for `k >= 2`; transpose it for a shelf.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shelflab_laver_magma(
    t: *const ShelflabLaver,
    out: *mut *mut ShelflabMagma,
) -> ShelflabStatus {
    guard(|| {
        let m = deref(t, "laver table")?.0.magma.clone();
        write_out(out, boxed(ShelflabMagma(m)), "out")
    })
}
