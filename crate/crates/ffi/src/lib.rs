//! C ABI over `hyperclass`.
//!
//! Objects are opaque handles released with their `*_free` function. Every
//! fallible call returns an [`HcStatus`]; on failure the message is available
//! from [`hc_last_error`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperclass::classgroup::two_sylow;
use hyperclass::construct::theorem2_witnesses;
use hyperclass::field::{make_field, Fe, Tower};
use hyperclass::poly::Poly;
use hyperclass::verify::{class_data, ClassData};
use hyperclass::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidField = 3,
    Parse = 4,
    NotIrreducible = 5,
    SquareMultiplier = 6,
    SearchExhausted = 7,
    CapExceeded = 8,
    CheckFailed = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

/// A base field `F_q` with its quadratic extension.
pub struct HcField(Tower);

/// Class group, class number and L-polynomial of one discriminant `e·𝔭`.
pub struct HcClassData(ClassData);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> HcStatus {
    match err {
        Error::InvalidField(_) | Error::FieldTooLarge { .. } => HcStatus::InvalidField,
        Error::Parse { .. } => HcStatus::Parse,
        Error::Reducible(_) | Error::ConstantPolynomial => HcStatus::NotIrreducible,
        Error::SquareMultiplier(_) => HcStatus::SquareMultiplier,
        Error::SearchExhausted(_) => HcStatus::SearchExhausted,
        Error::CapExceeded(_) => HcStatus::CapExceeded,
        Error::Saturated { .. } | Error::Internal(_) => HcStatus::CheckFailed,
        _ => HcStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), HcStatus>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside hyperclass".into());
            HcStatus::Panic
        }
    }
}

fn lib<T>(r: hyperclass::Result<T>) -> Result<T, HcStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null() -> HcStatus {
    set_error("null pointer argument".into());
    HcStatus::NullPointer
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, HcStatus> {
    p.as_ref().ok_or_else(null)
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, HcStatus> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8".into());
        HcStatus::InvalidArgument
    })
}

/// Copies `src` into `buf`, always reporting the full length through `len_out`.
unsafe fn fill<T: Copy>(src: &[T], buf: *mut T, cap: usize, len_out: *mut usize) -> Result<(), HcStatus> {
    if len_out.is_null() {
        return Err(null());
    }
    *len_out = src.len();
    if src.len() > cap {
        set_error(format!("buffer holds {cap}, need {}", src.len()));
        return Err(HcStatus::BufferTooSmall);
    }
    if !src.is_empty() {
        if buf.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    Ok(())
}

/// Last error message on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds `F_{p^n}` with its canonical modulus.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_field_new(p: u32, n: u32, out: *mut *mut HcField) -> HcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let t = lib(make_field(p, n))?;
        *out = Box::into_raw(Box::new(HcField(t)));
        Ok(())
    })
}

/// # Safety
/// `field` must come from [`hc_field_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn hc_field_free(field: *mut HcField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` and `q_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hc_field_size(field: *const HcField, q_out: *mut u32) -> HcStatus {
    guard(|| {
        let f = deref(field)?;
        if q_out.is_null() {
            return Err(null());
        }
        *q_out = f.0.q();
        Ok(())
    })
}

/// Least non-square of the base field, as an element index.
///
/// # Safety
/// `field` and `e_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hc_field_least_non_square(field: *const HcField, e_out: *mut u32) -> HcStatus {
    guard(|| {
        let f = deref(field)?;
        if e_out.is_null() {
            return Err(null());
        }
        *e_out = f.0.base().least_non_square().0;
        Ok(())
    })
}

/// Computes the class group of `F_q[T, √(e·𝔭)]`.
///
/// `poly` is the monic irreducible `𝔭` in text form, e.g. `"1+0T+1T^2"` for `T² + 1`.
/// `count_cap` bounds point counting; 0 selects the default.
///
/// # Safety
/// `field`, `poly` and `out` must be valid pointers; `poly` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hc_class_data_new(
    field: *const HcField,
    e: u32,
    poly: *const c_char,
    count_cap: u64,
    out: *mut *mut HcClassData,
) -> HcStatus {
    guard(|| {
        let f = deref(field)?;
        let s = text(poly)?;
        if out.is_null() {
            return Err(null());
        }
        let q = f.0.q();
        if e >= q {
            set_error(format!("e = {e} is not an element of F_{q}"));
            return Err(HcStatus::InvalidArgument);
        }
        let p_poly = lib(Poly::parse(s, q))?;
        let cap = if count_cap == 0 { hyperclass::zeta::DEFAULT_COUNT_CAP } else { count_cap };
        let cd = lib(class_data(f.0.base(), Fe(e), &p_poly, cap))?;
        *out = Box::into_raw(Box::new(HcClassData(cd)));
        Ok(())
    })
}

/// # Safety
/// `data` must come from [`hc_class_data_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn hc_class_data_free(data: *mut HcClassData) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// # Safety
/// `data` and `h_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hc_class_number(data: *const HcClassData, h_out: *mut u64) -> HcStatus {
    guard(|| {
        let d = deref(data)?;
        if h_out.is_null() {
            return Err(null());
        }
        *h_out = d.0.h;
        Ok(())
    })
}

/// # Safety
/// `data` and `g_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hc_genus(data: *const HcClassData, g_out: *mut u32) -> HcStatus {
    guard(|| {
        let d = deref(data)?;
        if g_out.is_null() {
            return Err(null());
        }
        *g_out = d.0.order.genus() as u32;
        Ok(())
    })
}

/// Invariant factors `d_1 | d_2 | …` of the class group.
///
/// Writes at most `cap` entries; `len_out` always receives the full count.
///
/// # Safety
/// `data` and `len_out` must be valid; `buf` must hold `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn hc_divisors(data: *const HcClassData, buf: *mut u64, cap: usize, len_out: *mut usize) -> HcStatus {
    guard(|| {
        let d = deref(data)?;
        fill(&d.0.group.structure().divisors, buf, cap, len_out)
    })
}

/// Coefficients `a_0, …, a_{2g}` of the L-polynomial.
///
/// # Safety
/// `data` and `len_out` must be valid; `buf` must hold `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn hc_l_polynomial(data: *const HcClassData, buf: *mut i64, cap: usize, len_out: *mut usize) -> HcStatus {
    guard(|| {
        let d = deref(data)?;
        fill(&d.0.l_coeffs, buf, cap, len_out)
    })
}

/// Rank `s` of the 2-Sylow subgroup's exponent `2^s`, and whether it is cyclic.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hc_two_sylow(data: *const HcClassData, s_out: *mut u32, cyclic_out: *mut bool) -> HcStatus {
    guard(|| {
        let d = deref(data)?;
        if s_out.is_null() || cyclic_out.is_null() {
            return Err(null());
        }
        let (s, cyclic) = two_sylow(&d.0.group.structure().divisors);
        *s_out = s;
        *cyclic_out = cyclic;
        Ok(())
    })
}

/// Searches for a degree-`k` witness pair whose class numbers differ mod 8
/// and returns its certificate as JSON. Free the string with [`hc_string_free`].
///
/// # Safety
/// `field` and `json_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hc_witness_json(field: *const HcField, k: u32, count_cap: u64, json_out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let f = deref(field)?;
        if json_out.is_null() {
            return Err(null());
        }
        let cap = if count_cap == 0 { hyperclass::zeta::DEFAULT_COUNT_CAP } else { count_cap };
        let cert = lib(theorem2_witnesses(&f.0, k as usize, cap))?;
        let json = serde_json::to_string(&cert).map_err(|e| {
            set_error(e.to_string());
            HcStatus::CheckFailed
        })?;
        *json_out = CString::new(json).map_err(|_| HcStatus::CheckFailed)?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
