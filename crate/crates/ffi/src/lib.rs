//! C ABI over `skewcode`.
//!
//! Objects are opaque handles created by `skc_*_new`/`skc_code_from_descriptor`
//! and released with the matching `*_free`. Every fallible call returns an
//! [`SkcStatus`]; on failure [`skc_last_error`] describes the cause. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`skc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use skewcode::automorphism::automorphism_count;
use skewcode::code::ConvCode;
use skewcode::descriptor::{CodeDescriptor, MatrixJson};
use skewcode::distance;
use skewcode::ring::Ring;
use skewcode::{parse, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkcStatus {
    Ok = 0,
    NullPointer = 1,
    Precondition = 2,
    Parse = 3,
    Math = 4,
    Internal = 5,
}

/// `F[x]/(x^n - 1)` with its factorization.
pub struct SkcRing {
    ring: Ring,
}

/// A convolutional code built from a JSON descriptor.
pub struct SkcCode {
    code: ConvCode,
    q: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SkcStatus {
    match e.exit_code() {
        2 => SkcStatus::Precondition,
        3 => SkcStatus::Parse,
        _ => SkcStatus::Math,
    }
}

struct Fail(SkcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SkcStatus::NullPointer, format!("null pointer: {what}"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SkcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SkcStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal error");
            SkcStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SkcStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Creates the ring for field literal `field` (e.g. `"GF(4)"`) and length `n`.
///
/// # Safety
/// `field` must be a NUL-terminated string; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_ring_new(field: *const c_char, n: usize, out_ring: *mut *mut SkcRing) -> SkcStatus {
    guard(|| {
        let lit = str_arg(field, "field")?;
        let slot = out(out_ring, "out_ring")?;
        let ring = Ring::new(Arc::new(parse::field(lit)?), n)?;
        *slot = Box::into_raw(Box::new(SkcRing { ring }));
        Ok(())
    })
}

/// # Safety
/// `ring` must come from [`skc_ring_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn skc_ring_free(ring: *mut SkcRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_ring_num_factors(ring: *const SkcRing, out_r: *mut usize) -> SkcStatus {
    guard(|| {
        *out(out_r, "out_r")? = handle(ring, "ring")?.ring.r();
        Ok(())
    })
}

/// Degree of the `k`-th factor, `k` counted from 1.
///
/// # Safety
/// `ring` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_ring_factor_degree(ring: *const SkcRing, k: usize, out_deg: *mut usize) -> SkcStatus {
    guard(|| {
        *out(out_deg, "out_deg")? = handle(ring, "ring")?.ring.kappa(k)?;
        Ok(())
    })
}

/// The `k`-th factor as a string, `k` counted from 1.
///
/// # Safety
/// `ring` must be a live handle; out-pointers must be writable. Free the result with
/// [`skc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn skc_ring_factor_string(
    ring: *const SkcRing,
    k: usize,
    out_str: *mut *mut c_char,
) -> SkcStatus {
    guard(|| {
        let r = &handle(ring, "ring")?.ring;
        let slot = out(out_str, "out_str")?;
        *slot = c_string(r.factor(k)?.format("x", r.field()));
        Ok(())
    })
}

/// Number of automorphisms of the ring; `SKC_STATUS_MATH` if it exceeds 64 bits.
///
/// # Safety
/// `ring` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_ring_automorphism_count(ring: *const SkcRing, out_count: *mut u64) -> SkcStatus {
    guard(|| {
        let c = automorphism_count(&handle(ring, "ring")?.ring);
        let slot = out(out_count, "out_count")?;
        *slot = u64::try_from(c).map_err(|_| Fail(SkcStatus::Math, format!("count {c} exceeds 64 bits")))?;
        Ok(())
    })
}

/// Builds a code from a JSON descriptor (generator literal or recipe).
///
/// # Safety
/// `json` must be a NUL-terminated string; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_code_from_descriptor(json: *const c_char, out_code: *mut *mut SkcCode) -> SkcStatus {
    guard(|| {
        let src = str_arg(json, "json")?;
        let slot = out(out_code, "out_code")?;
        let desc = CodeDescriptor::from_json(src)?;
        let skew = desc.skew_ring()?;
        let code = ConvCode::from_reduced(&skew, &desc.generator_poly(&skew)?)?;
        *slot = Box::into_raw(Box::new(SkcCode { code, q: skew.field().size() }));
        Ok(())
    })
}

/// # Safety
/// `code` must come from [`skc_code_from_descriptor`] and not be used afterwards.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn skc_code_free(code: *mut SkcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Length `n`, dimension `k` and complexity `delta`. Any out-pointer may be null.
///
/// # Safety
/// `code` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_code_params(
    code: *const SkcCode,
    out_n: *mut usize,
    out_k: *mut usize,
    out_delta: *mut usize,
) -> SkcStatus {
    guard(|| {
        let (n, k, delta) = handle(code, "code")?.code.params();
        for (p, v) in [(out_n, n), (out_k, k), (out_delta, delta)] {
            if let Some(p) = p.as_mut() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Free distance by state-graph search; `state_cap` 0 selects the default cap.
///
/// # Safety
/// `code` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_code_free_distance(code: *const SkcCode, state_cap: u64, out_d: *mut usize) -> SkcStatus {
    guard(|| {
        let c = handle(code, "code")?;
        let slot = out(out_d, "out_d")?;
        let cap = if state_cap == 0 { distance::DEFAULT_STATE_CAP } else { state_cap as u128 };
        *slot = distance::free_distance(c.code.generator(), cap)?.distance;
        Ok(())
    })
}

/// Generator matrix as JSON `{"rows", "cols", "entries"}`.
///
/// # Safety
/// `code` must be a live handle; out-pointers must be writable. Free the result with
/// [`skc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn skc_code_generator_json(code: *const SkcCode, out_str: *mut *mut c_char) -> SkcStatus {
    guard(|| {
        let c = handle(code, "code")?;
        let slot = out(out_str, "out_str")?;
        let m = MatrixJson::from_matrix(c.code.generator());
        let s = serde_json::to_string(&m).map_err(|e| Fail(SkcStatus::Internal, e.to_string()))?;
        *slot = c_string(s);
        Ok(())
    })
}

/// Field size of the code's alphabet.
///
/// # Safety
/// `code` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_code_field_size(code: *const SkcCode, out_q: *mut u32) -> SkcStatus {
    guard(|| {
        *out(out_q, "out_q")? = handle(code, "code")?.q;
        Ok(())
    })
}

/// # Safety
/// out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_singleton_bound(n: usize, k: usize, delta: usize, out_b: *mut usize) -> SkcStatus {
    guard(|| {
        *out(out_b, "out_b")? = distance::singleton_bound(n, k, delta)?;
        Ok(())
    })
}

/// # Safety
/// out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn skc_griesmer_bound(
    n: usize,
    k: usize,
    delta: usize,
    m: usize,
    q: u32,
    out_b: *mut usize,
) -> SkcStatus {
    guard(|| {
        *out(out_b, "out_b")? = distance::griesmer_bound(n, k, delta, m, q)?;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn skc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn skc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
