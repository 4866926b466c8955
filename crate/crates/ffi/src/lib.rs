//! C ABI for the `kraitchik` library.
//!
//! Every fallible call returns a status code (`KRAITCHIK_OK` or a negative
//! `KRAITCHIK_ERR_*`) and writes results through out-pointers. Verdicts use
//! `KRAITCHIK_VERIFIED`, `KRAITCHIK_FALSIFIED` and `KRAITCHIK_UNRESOLVED`.
//! The message for the most recent failure on the calling thread is
//! available from `kraitchik_last_error`.

use kraitchik::bounds::{check_coefficient_bounds, check_corollary, Verdict};
use kraitchik::error::{CheckError, Error};
use kraitchik::kraitchik::{pair_for, verify_identity, KraitchikPair};
use kraitchik::ratio::check_ratio_estimate;
use kraitchik::ring::BigRat;
use num_bigint::BigInt;
use std::cell::RefCell;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

pub const KRAITCHIK_OK: i32 = 0;
pub const KRAITCHIK_ERR_NULL: i32 = -1;
pub const KRAITCHIK_ERR_MODULUS: i32 = -2;
pub const KRAITCHIK_ERR_INDEX: i32 = -3;
pub const KRAITCHIK_ERR_RATIO_GATE: i32 = -4;
pub const KRAITCHIK_ERR_OVERFLOW: i32 = -5;
pub const KRAITCHIK_ERR_BUFFER: i32 = -6;
pub const KRAITCHIK_ERR_ARGUMENT: i32 = -7;
pub const KRAITCHIK_ERR_INTERNAL: i32 = -8;

pub const KRAITCHIK_VERIFIED: i32 = 0;
pub const KRAITCHIK_FALSIFIED: i32 = 1;
pub const KRAITCHIK_UNRESOLVED: i32 = 2;

/// Opaque handle to a computed `(Psi_d, Xi_d)` pair.
pub struct KraitchikPairHandle {
    pair: KraitchikPair,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn code_for(err: &Error) -> i32 {
    match err {
        Error::Modulus(_) | Error::Check(CheckError::Modulus(_)) => KRAITCHIK_ERR_MODULUS,
        Error::Check(CheckError::IndexRange { .. }) => KRAITCHIK_ERR_INDEX,
        Error::Check(CheckError::RatioGate { .. }) => KRAITCHIK_ERR_RATIO_GATE,
        Error::Construction(_) => KRAITCHIK_ERR_OVERFLOW,
        _ => KRAITCHIK_ERR_INTERNAL,
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Verified => KRAITCHIK_VERIFIED,
        Verdict::Falsified => KRAITCHIK_FALSIFIED,
        Verdict::Unresolved => KRAITCHIK_UNRESOLVED,
    }
}

/// Runs `body`, translating errors and panics into status codes.
fn guarded(body: impl FnOnce() -> Result<(), i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => KRAITCHIK_OK,
        Ok(Err(code)) => code,
        Err(_) => {
            set_error("internal panic");
            KRAITCHIK_ERR_INTERNAL
        }
    }
}

fn fail<E: Into<Error>>(e: E) -> i32 {
    let e = e.into();
    set_error(e.to_string());
    code_for(&e)
}

unsafe fn handle<'a>(p: *const KraitchikPairHandle) -> Result<&'a KraitchikPair, i32> {
    if p.is_null() {
        set_error("null pair handle");
        return Err(KRAITCHIK_ERR_NULL);
    }
    Ok(&(*p).pair)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), i32> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(KRAITCHIK_ERR_NULL);
    }
    out.write(v);
    Ok(())
}

/// Builds the pair for odd squarefree `d >= 3`. Free with `kraitchik_pair_free`.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_pair_new(d: u64, out: *mut *mut KraitchikPairHandle) -> i32 {
    guarded(|| {
        let pair = pair_for(d).map_err(fail)?;
        let boxed = Box::into_raw(Box::new(KraitchikPairHandle { pair }));
        write(out, boxed).inspect_err(|_| drop(Box::from_raw(boxed)))
    })
}

/// # Safety
/// `pair` must be null or a handle from `kraitchik_pair_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_pair_free(pair: *mut KraitchikPairHandle) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// `d' = phi(d)/2`, the degree of `Psi_d`.
///
/// # Safety
/// `pair` must be a live handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_pair_degree(
    pair: *const KraitchikPairHandle,
    out: *mut u64,
) -> i32 {
    guarded(|| write(out, handle(pair)?.dprime()))
}

/// `D = (-1)^((d-1)/2) d`.
///
/// # Safety
/// `pair` must be a live handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_pair_discriminant(
    pair: *const KraitchikPairHandle,
    out: *mut i64,
) -> i32 {
    guarded(|| write(out, handle(pair)?.ctx.disc()))
}

/// Copies `a_{d,0..d'}` into `a` (length `d'+1`) and `b_{d,1..d'}` into `b`
/// (length `d'`), highest power first.
///
/// # Safety
/// `a` and `b` must be valid for `a_len` and `b_len` writes.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_pair_coefficients(
    pair: *const KraitchikPairHandle,
    a: *mut i64,
    a_len: usize,
    b: *mut i64,
    b_len: usize,
) -> i32 {
    guarded(|| {
        let p = handle(pair)?;
        let av = p.a_i64().map_err(fail)?;
        let bv = p.b_i64().map_err(fail)?;
        if a_len < av.len() || b_len < bv.len() {
            set_error(format!(
                "buffers need {} and {} entries",
                av.len(),
                bv.len()
            ));
            return Err(KRAITCHIK_ERR_BUFFER);
        }
        if a.is_null() || (b.is_null() && !bv.is_empty()) {
            set_error("null coefficient buffer");
            return Err(KRAITCHIK_ERR_NULL);
        }
        std::ptr::copy_nonoverlapping(av.as_ptr(), a, av.len());
        if !bv.is_empty() {
            std::ptr::copy_nonoverlapping(bv.as_ptr(), b, bv.len());
        }
        Ok(())
    })
}

/// Exact check of `4 Phi_d = Psi_d^2 - D Xi_d^2`.
///
/// # Safety
/// `pair` must be a live handle; `verdict` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_verify_identity(
    pair: *const KraitchikPairHandle,
    verdict: *mut i32,
) -> i32 {
    guarded(|| {
        let check = verify_identity(handle(pair)?).map_err(fail)?;
        let v = if check.holds {
            Verdict::Verified
        } else {
            Verdict::Falsified
        };
        write(verdict, verdict_code(v))
    })
}

/// Both rising-factorial coefficient bounds at index `n`, `0 <= n <= d'`.
///
/// # Safety
/// `pair` must be a live handle; `verdict` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_check_bounds(
    pair: *const KraitchikPairHandle,
    n: u64,
    precision_max: u32,
    verdict: *mut i32,
) -> i32 {
    guarded(|| {
        let r = check_coefficient_bounds(handle(pair)?, n, precision_max).map_err(fail)?;
        write(verdict, verdict_code(r.verdict()))
    })
}

/// The three-way coefficient bound at index `n`, `1 <= n <= d'`.
///
/// # Safety
/// `pair` must be a live handle; `verdict` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_check_corollary(
    pair: *const KraitchikPairHandle,
    n: u64,
    precision_max: u32,
    verdict: *mut i32,
) -> i32 {
    guarded(|| {
        let r = check_corollary(handle(pair)?, n, precision_max).map_err(fail)?;
        write(verdict, verdict_code(r.literal))
    })
}

/// The ratio estimate at `x = x_num / x_den`; requires `x > 2 G_d`.
/// `lhs` (nullable) receives a double approximation of the exact left side.
///
/// # Safety
/// `pair` must be a live handle; `verdict` valid for writing; `lhs` null or valid.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_check_ratio(
    pair: *const KraitchikPairHandle,
    x_num: i64,
    x_den: i64,
    precision_max: u32,
    verdict: *mut i32,
    lhs: *mut f64,
) -> i32 {
    guarded(|| {
        let p = handle(pair)?;
        if x_den == 0 {
            set_error("zero denominator");
            return Err(KRAITCHIK_ERR_ARGUMENT);
        }
        let x = BigRat::new(BigInt::from(x_num), BigInt::from(x_den));
        let r = check_ratio_estimate(p, &x, precision_max).map_err(fail)?;
        if !lhs.is_null() {
            lhs.write(r.lhs_exact_f64());
        }
        write(verdict, verdict_code(r.verdict))
    })
}

/// Copies the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length excluding the NUL.
///
/// # Safety
/// `buf` must be null or valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn kraitchik_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            buf.add(n).write(0);
        }
        msg.len()
    })
}
