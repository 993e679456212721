//! C ABI for `dixon-complex`.
//!
//! Every fallible function returns a [`DixonStatus`]; on failure a message is
//! available from [`dixon_last_error`] on the same thread. Strings handed out
//! by the library are owned by the caller and released with
//! [`dixon_string_free`]. Complexes are opaque handles created with
//! [`dixon_complex_new`] and released with [`dixon_complex_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};

use dixon_complex::formats::facets_to_string;
use dixon_complex::genfun::{dixon_lhs, verify_aigner, verify_dixon, verify_three_f2, IdentityTable};
use dixon_complex::homology::{betti_numbers, euler_poincare};
use dixon_complex::shelling::{betti_from_shelling, ShellingOrder, WitnessMode};
use dixon_complex::{enumerate_facets, ComplexParams, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DixonStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    Io = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DixonWitnessMode {
    Constructive = 0,
    Exhaustive = 1,
    Both = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DixonBettiMethod {
    Shelling = 0,
    Matrix = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DixonIdentity {
    Dixon = 0,
    ThreeF2 = 1,
    Aigner = 2,
}

/// Opaque handle for Γ_p(n) with a face budget.
pub struct DixonComplex {
    params: ComplexParams,
    budget: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> DixonStatus {
    match err {
        Error::Domain(_) | Error::Precondition(_) => DixonStatus::InvalidArgument,
        Error::Budget { .. } => DixonStatus::BudgetExceeded,
        Error::Io(_) => DixonStatus::Io,
        Error::Inconsistent(_) => DixonStatus::VerificationFailed,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (DixonStatus, String)>) -> DixonStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            DixonStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DixonStatus::Internal
        }
    }
}

fn lib_err(err: Error) -> (DixonStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (DixonStatus, String) {
    (DixonStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(h: *const DixonComplex) -> Result<&'a DixonComplex, (DixonStatus, String)> {
    h.as_ref().ok_or_else(|| null("complex handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (DixonStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library output has no nul bytes").into_raw()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dixon_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn dixon_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dixon_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a handle for Γ_p(n). A zero budget selects the default.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dixon_complex_new(p: u32, n: u32, budget: u64, out: *mut *mut DixonComplex) -> DixonStatus {
    guard(|| {
        let params = ComplexParams::new(p as usize, n).map_err(lib_err)?;
        let budget = if budget == 0 {
            dixon_complex::DEFAULT_FACE_BUDGET
        } else {
            budget
        };
        let boxed = Box::into_raw(Box::new(DixonComplex { params, budget }));
        write_out(out, boxed, "output pointer").inspect_err(|_| drop(Box::from_raw(boxed)))
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `h` must come from [`dixon_complex_new`] and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dixon_complex_free(h: *mut DixonComplex) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `f_dim = C(n, dim+1)^p`; fails with `BudgetExceeded` if it does not fit 64 bits.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dixon_face_count(h: *const DixonComplex, dim: i64, out: *mut u64) -> DixonStatus {
    guard(|| {
        let c = handle(h)?;
        let count = c.params.face_count(dim);
        let v = u64::try_from(&count).map_err(|_| (DixonStatus::BudgetExceeded, format!("f_{dim} = {count} exceeds 64 bits")))?;
        write_out(out, v, "output pointer")
    })
}

/// Reduced Euler characteristic as a decimal string.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dixon_euler_characteristic(h: *const DixonComplex, out: *mut *mut c_char) -> DixonStatus {
    guard(|| {
        let c = handle(h)?;
        let chi = dixon_complex::reduced_euler_characteristic(&dixon_complex::f_vector_formula(&c.params));
        write_out(out, into_c_string(chi.to_string()), "output pointer")
    })
}

/// Facets in order 𝒪, in the facet text format.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dixon_facets_text(h: *const DixonComplex, out: *mut *mut c_char) -> DixonStatus {
    guard(|| {
        let c = handle(h)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let facets = enumerate_facets(&c.params, c.budget).map_err(lib_err)?;
        write_out(out, into_c_string(facets_to_string(&c.params, &facets)), "output pointer")
    })
}

/// Checks order 𝒪. Returns `VerificationFailed` when some pair has no witness;
/// the counts are written either way.
///
/// # Safety
/// `h` must be a live handle; `pairs` and `violations` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dixon_verify_shelling(
    h: *const DixonComplex,
    mode: DixonWitnessMode,
    pairs: *mut u64,
    violations: *mut u64,
) -> DixonStatus {
    guard(|| {
        let c = handle(h)?;
        if pairs.is_null() || violations.is_null() {
            return Err(null("output pointer"));
        }
        let mode = match mode {
            DixonWitnessMode::Constructive => WitnessMode::Constructive,
            DixonWitnessMode::Exhaustive => WitnessMode::Exhaustive,
            DixonWitnessMode::Both => WitnessMode::Both,
        };
        let order = ShellingOrder::canonical(&c.params, c.budget).map_err(lib_err)?;
        let report = order.verify(mode);
        pairs.write(report.total_pairs);
        violations.write(report.violation_count);
        if !report.is_shelling() || report.modes_agree() == Some(false) {
            return Err((
                DixonStatus::VerificationFailed,
                format!("{} violating pairs", report.violation_count),
            ));
        }
        Ok(())
    })
}

/// Reduced Betti numbers `β_{-1}, ..., β_{n-1}` into `out[0..n+1]`.
/// `len` receives the number of entries; with `cap` too small nothing is
/// copied and `BufferTooSmall` is returned.
///
/// # Safety
/// `h` must be a live handle, `out` valid for `cap` writes, `len` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dixon_betti(
    h: *const DixonComplex,
    method: DixonBettiMethod,
    out: *mut u64,
    cap: size_t,
    len: *mut size_t,
) -> DixonStatus {
    guard(|| {
        let c = handle(h)?;
        if len.is_null() {
            return Err(null("length pointer"));
        }
        let betti = match method {
            DixonBettiMethod::Shelling => betti_from_shelling(&c.params, c.budget),
            DixonBettiMethod::Matrix => betti_numbers(&c.params, c.budget),
        }
        .map_err(lib_err)?;
        let values = betti.values();
        len.write(values.len());
        if cap < values.len() {
            return Err((DixonStatus::BufferTooSmall, format!("need room for {} values", values.len())));
        }
        if out.is_null() {
            return Err(null("output buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
        Ok(())
    })
}

/// Whether the alternating face count equals the alternating Betti sum
/// (Betti numbers from matrix ranks).
///
/// # Safety
/// `h` must be a live handle and `holds` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dixon_euler_poincare(h: *const DixonComplex, holds: *mut bool) -> DixonStatus {
    guard(|| {
        let c = handle(h)?;
        let betti = betti_numbers(&c.params, c.budget).map_err(lib_err)?;
        write_out(holds, euler_poincare(&c.params, &betti).holds, "output pointer")
    })
}

/// Checks an identity over `1..=max` (`0..=max` per entry for 3F2).
/// Returns `VerificationFailed` if any case fails.
///
/// # Safety
/// `passed` and `total` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dixon_identity_check(
    which: DixonIdentity,
    max: u64,
    passed: *mut u64,
    total: *mut u64,
) -> DixonStatus {
    guard(|| {
        if passed.is_null() || total.is_null() {
            return Err(null("output pointer"));
        }
        if which == DixonIdentity::ThreeF2 && max > 64 {
            return Err((DixonStatus::InvalidArgument, "3F2 range is limited to 64".into()));
        }
        let table: IdentityTable = match which {
            DixonIdentity::Dixon => verify_dixon(max),
            DixonIdentity::ThreeF2 => verify_three_f2(max),
            DixonIdentity::Aigner => verify_aigner(max),
        };
        passed.write(table.passed as u64);
        total.write(table.total as u64);
        if !table.all_hold() {
            return Err((DixonStatus::VerificationFailed, format!("{} cases failed", table.total - table.passed)));
        }
        Ok(())
    })
}

/// `Σ_s (−1)^s C(n,s)^3` as a decimal string.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dixon_lhs_string(n: u64, out: *mut *mut c_char) -> DixonStatus {
    guard(|| write_out(out, into_c_string(dixon_lhs(n).to_string()), "output pointer"))
}

/// Helper for Rust callers: copies a library string and frees it.
///
/// # Safety
/// `s` must be a non-null string returned by this library.
pub unsafe fn take_string(s: *mut c_char) -> String {
    let owned = CStr::from_ptr(s).to_string_lossy().into_owned();
    dixon_string_free(s);
    owned
}
