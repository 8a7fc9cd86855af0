//! C ABI for `psinv`.
//!
//! Every function returns a [`PsinvStatus`]; on failure a message is kept per
//! thread and can be read with [`psinv_last_error_message`]. Series are
//! passed around as opaque [`PsinvSeries`] handles owned by the caller and
//! released with [`psinv_series_free`]. Output arrays are caller-allocated
//! with an explicit capacity.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use psinv::deflation::{deflate, Order};
use psinv::pseudozero::pseudozero_indicator;
use psinv::quadratic::{invert_quadratic, QuadSign, QuadraticCase};
use psinv::series::invert;
use psinv::{bounds, Cx, Error, Polynomial, PowerSeries, PrecisionContext};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsinvStatus {
    Ok = 0,
    /// Bad argument or configuration.
    Usage = 1,
    /// A numerical precondition failed (not normalized, not monic, ...).
    Numerical = 2,
    Io = 3,
    NullPointer = 4,
    /// Output buffer smaller than the result.
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsinvOrder {
    Forward = 0,
    Backward = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsinvQuadSign {
    Plus = 0,
    Minus = 1,
}

/// Opaque binary64 power series.
pub struct PsinvSeries(PowerSeries<f64>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Lib(Error),
    Null,
    Small(usize, usize),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PsinvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PsinvStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            PsinvStatus::NullPointer
        }
        Ok(Err(Fail::Small(need, cap))) => {
            set_error(format!("output buffer holds {cap} values, {need} needed"));
            PsinvStatus::BufferTooSmall
        }
        Ok(Err(Fail::Lib(e))) => {
            let code = e.exit_code();
            set_error(e.to_string());
            match code {
                1 => PsinvStatus::Usage,
                3 => PsinvStatus::Io,
                _ => PsinvStatus::Numerical,
            }
        }
        Err(_) => {
            set_error("internal panic".into());
            PsinvStatus::Panic
        }
    }
}

unsafe fn slice<'a>(p: *const f64, len: usize) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null);
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn fill(out: *mut f64, cap: usize, values: impl ExactSizeIterator<Item = f64>) -> Result<(), Fail> {
    if values.len() > cap {
        return Err(Fail::Small(values.len(), cap));
    }
    if out.is_null() {
        return Err(Fail::Null);
    }
    for (i, v) in values.enumerate() {
        *out.add(i) = v;
    }
    Ok(())
}

unsafe fn series<'a>(s: *const PsinvSeries) -> Result<&'a PowerSeries<f64>, Fail> {
    s.as_ref().map(|s| &s.0).ok_or(Fail::Null)
}

/// Message for the last failing call on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn psinv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Copies `coeffs[0..len]` into a new series. Inversion needs `coeffs[0] == 1`.
///
/// # Safety
/// `coeffs` must point to `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn psinv_series_new(coeffs: *const f64, len: usize, out: *mut *mut PsinvSeries) -> PsinvStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null);
        }
        let s = PowerSeries::from_f64(slice(coeffs, len)?)?;
        *out = Box::into_raw(Box::new(PsinvSeries(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn psinv_series_free(s: *mut PsinvSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of stored coefficients (order + 1), 0 for null.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psinv_series_len(s: *const PsinvSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.coeffs().len())
}

/// # Safety
/// `s` must be a live handle and `out` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn psinv_series_coeffs(s: *const PsinvSeries, out: *mut f64, cap: usize) -> PsinvStatus {
    guard(|| {
        let s = series(s)?;
        fill(out, cap, s.coeffs().iter().copied())
    })
}

/// Binary64 inverse to order `n` as a new handle.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn psinv_series_invert(s: *const PsinvSeries, n: usize, out: *mut *mut PsinvSeries) -> PsinvStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null);
        }
        let q = invert(series(s)?, n)?;
        *out = Box::into_raw(Box::new(PsinvSeries(q)));
        Ok(())
    })
}

/// Componentwise absolute error bound of binary64 inversion to order `n`
/// (`n + 1` values, rounded upward).
///
/// # Safety
/// `s` must be a live handle and `out` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn psinv_theorem31_bound(s: *const PsinvSeries, n: usize, out: *mut f64, cap: usize) -> PsinvStatus {
    guard(|| {
        let b = bounds::theorem31_bound(series(s)?, n)?;
        fill(out, cap, b.iter().map(|x| x.to_f64_up()))
    })
}

/// Absolute condition bound for relative coefficient perturbations of size
/// binary64 `u` (`n + 1` values, rounded upward).
///
/// # Safety
/// `s` must be a live handle and `out` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn psinv_condition_bound(s: *const PsinvSeries, n: usize, out: *mut f64, cap: usize) -> PsinvStatus {
    guard(|| {
        let b = bounds::condition_bound(series(s)?, n, &PrecisionContext::binary64())?;
        fill(out, cap, b.iter().map(|x| x.to_f64_up()))
    })
}

/// Divides the monic polynomial `coeffs[0..len]` (ascending) by `x - root`.
/// Writes `len - 1` quotient coefficients and, when `bound` is not null,
/// their absolute error bounds.
///
/// # Safety
/// `coeffs` must hold `len` values; `quotient` and a non-null `bound` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn psinv_deflate(
    coeffs: *const f64,
    len: usize,
    root: f64,
    order: PsinvOrder,
    quotient: *mut f64,
    bound: *mut f64,
    cap: usize,
) -> PsinvStatus {
    guard(|| {
        let p = Polynomial::new(slice(coeffs, len)?.to_vec())?;
        let order = match order {
            PsinvOrder::Forward => Order::Forward,
            PsinvOrder::Backward => Order::Backward,
        };
        let d = deflate(&p, &root, order, &PrecisionContext::binary64())?;
        fill(quotient, cap, d.quotient.coeffs().iter().copied())?;
        if !bound.is_null() {
            fill(bound, cap, d.bound.iter().map(|x| x.to_f64_up()))?;
        }
        Ok(())
    })
}

/// Coefficients `c_0..c_n` of `1/(x^2 + b x +- 1)` by the three-term recurrence.
///
/// # Safety
/// `out` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn psinv_quadratic_invert(b: f64, sign: PsinvQuadSign, n: usize, out: *mut f64, cap: usize) -> PsinvStatus {
    guard(|| {
        let sign = match sign {
            PsinvQuadSign::Plus => QuadSign::Plus,
            PsinvQuadSign::Minus => QuadSign::Minus,
        };
        let c = invert_quadratic(&QuadraticCase { b, sign, n });
        fill(out, cap, c.coeffs().iter().copied())
    })
}

/// `|p(z)| / |p|(|z|)` for `p = coeffs[0..len]` and `z = re + i im`.
///
/// # Safety
/// `coeffs` must hold `len` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn psinv_pseudozero_indicator(coeffs: *const f64, len: usize, re: f64, im: f64, out: *mut f64) -> PsinvStatus {
    guard(|| {
        let p = Polynomial::new(slice(coeffs, len)?.to_vec())?;
        let v = pseudozero_indicator(&p, &Cx::new(re, im))?;
        fill(out, 1, std::iter::once(v))
    })
}

/// `gamma_n = n u / (1 - n u)` for binary64, rounded upward.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn psinv_gamma(n: usize, out: *mut f64) -> PsinvStatus {
    guard(|| {
        let g = PrecisionContext::binary64().gamma(n)?;
        fill(out, 1, std::iter::once(g.to_f64_up()))
    })
}
