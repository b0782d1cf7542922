//! C interface to `flowinc`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_parse`
//! functions and released with the matching `*_free`. Fallible calls return a
//! [`FlowincStatus`] and write results through out-pointers; the message of the
//! most recent failure on the calling thread is available from
//! [`flowinc_last_error_message`]. Strings returned to C are owned by the
//! caller and must be released with [`flowinc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use flowinc::families::{generate, FamilySpec};
use flowinc::flows::Curve;
use flowinc::incidence::{count_tangent_pairs, incidence_set, n7_grid_incidences, IncidenceOptions};
use flowinc::liealg::{bch_product, pushforward_fields, weak_malcev_basis, NilpotentAlgebra};
use flowinc::polyalg::{lie_bracket, Poly, VectorField};
use flowinc::rational::parse_rational;
use flowinc::{Error, Rational};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowincStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParameter = 4,
    DimensionMismatch = 5,
    SearchExhausted = 6,
    ScaleCapExceeded = 7,
    Overflow = 8,
    Io = 9,
    Panic = 10,
    Other = 11,
}

/// Sparse polynomial with rational coefficients.
pub struct FlowincPoly(Poly);

/// Polynomial vector field.
pub struct FlowincField(VectorField);

/// Generated family of curves.
pub struct FlowincFamily(Vec<Curve>);

/// Nilpotent Lie algebra given by structure constants.
pub struct FlowincAlgebra(NilpotentAlgebra);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FlowincStatus {
    match e {
        Error::Parse { .. } => FlowincStatus::Parse,
        Error::DimensionMismatch { .. } | Error::IndexOutOfRange { .. } => FlowincStatus::DimensionMismatch,
        Error::SearchExhausted(_) => FlowincStatus::SearchExhausted,
        Error::ScaleCapExceeded(_) => FlowincStatus::ScaleCapExceeded,
        Error::Io(_) => FlowincStatus::Io,
        Error::InvalidParameter(_) | Error::NotSubalgebra(_) | Error::ZeroDenominator(_) => FlowincStatus::InvalidParameter,
        _ => FlowincStatus::Other,
    }
}

struct Fail(FlowincStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FlowincStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FlowincStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(p) => {
            let m = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {m}"));
            FlowincStatus::Panic
        }
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(FlowincStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(FlowincStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// # Safety
/// `p` must be null or point to a live `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(FlowincStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail(FlowincStatus::NullPointer, format!("{what} is null")));
    }
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failure on this thread, or null if none. Free with
/// [`flowinc_string_free`].
#[no_mangle]
pub extern "C" fn flowinc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Clears the thread's last error.
#[no_mangle]
pub extern "C" fn flowinc_clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn flowinc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flowinc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial in `x1..x{nvars}`.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flowinc_poly_parse(text: *const c_char, nvars: usize, out: *mut *mut FlowincPoly) -> FlowincStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let p = Poly::parse(read_str(text, "text")?, nvars)?;
        *out = Box::into_raw(Box::new(FlowincPoly(p)));
        Ok(())
    })
}

/// Canonical text of a polynomial, or null on a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn flowinc_poly_to_string(p: *const FlowincPoly) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |p| to_c_string(p.0.to_string()))
}

/// Evaluates at a point given as `nvars` rational strings; writes the value as text.
///
/// # Safety
/// `p` must be a live handle, `coords` an array of `len` C strings and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn flowinc_poly_eval(
    p: *const FlowincPoly,
    coords: *const *const c_char,
    len: usize,
    out: *mut *mut c_char,
) -> FlowincStatus {
    guard(|| {
        let p = handle(p, "poly")?;
        out_ptr(out, "out")?;
        let point = read_rationals(coords, len)?;
        *out = to_c_string(p.0.eval(&point)?.to_string());
        Ok(())
    })
}

unsafe fn read_rationals(coords: *const *const c_char, len: usize) -> Result<Vec<Rational>, Fail> {
    if len > 0 && coords.is_null() {
        return Err(Fail(FlowincStatus::NullPointer, "coordinate array is null".into()));
    }
    (0..len)
        .map(|i| Ok(parse_rational(read_str(*coords.add(i), "coordinate")?)?))
        .collect()
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flowinc_poly_free(p: *mut FlowincPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses a field written `[p1, ..., pn]`.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flowinc_field_parse(text: *const c_char, out: *mut *mut FlowincField) -> FlowincStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let f = VectorField::parse(read_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(FlowincField(f)));
        Ok(())
    })
}

/// Lie bracket `[a, b]` as a new handle.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flowinc_field_bracket(
    a: *const FlowincField,
    b: *const FlowincField,
    out: *mut *mut FlowincField,
) -> FlowincStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        out_ptr(out, "out")?;
        let f = lie_bracket(&a.0, &b.0)?;
        *out = Box::into_raw(Box::new(FlowincField(f)));
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn flowinc_field_to_string(f: *const FlowincField) -> *mut c_char {
    f.as_ref().map_or(ptr::null_mut(), |f| to_c_string(f.0.to_string()))
}

/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flowinc_field_free(f: *mut FlowincField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Generates a family from its flag form, e.g. `parabola_grid:n=2`.
///
/// # Safety
/// `spec` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flowinc_family_generate(spec: *const c_char, out: *mut *mut FlowincFamily) -> FlowincStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let spec = FamilySpec::parse_flag(read_str(spec, "spec")?)?;
        *out = Box::into_raw(Box::new(FlowincFamily(generate(&spec)?)));
        Ok(())
    })
}

/// Number of curves, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn flowinc_family_len(f: *const FlowincFamily) -> usize {
    f.as_ref().map_or(0, |f| f.0.len())
}

/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flowinc_family_free(f: *mut FlowincFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of distinct incidences between two families.
///
/// # Safety
/// `l1`, `l2` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flowinc_incidence_count(
    l1: *const FlowincFamily,
    l2: *const FlowincFamily,
    workers: usize,
    out: *mut u64,
) -> FlowincStatus {
    guard(|| {
        let (l1, l2) = (handle(l1, "l1")?, handle(l2, "l2")?);
        out_ptr(out, "out")?;
        let opts = IncidenceOptions { workers, invariant: None };
        *out = incidence_set(&l1.0, &l2.0, &opts)?.count as u64;
        Ok(())
    })
}

/// Tangent pairs in the parabola grid of size `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flowinc_count_tangent_pairs(n: u64, out: *mut u64) -> FlowincStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let t = count_tangent_pairs(n)?;
        *out = u64::try_from(t).map_err(|_| Fail(FlowincStatus::Overflow, format!("count {t} exceeds 64 bits")))?;
        Ok(())
    })
}

/// Incidences of the point/parabola grid of size `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flowinc_n7_grid_incidences(n: u64, out: *mut u64) -> FlowincStatus {
    guard(|| {
        out_ptr(out, "out")?;
        if n > 16 {
            return Err(Fail(FlowincStatus::ScaleCapExceeded, format!("N = {n} exceeds 16")));
        }
        *out = n7_grid_incidences(n);
        Ok(())
    })
}

/// Parses an algebra in the text format (`dim`, `step`, rows `i j k c`).
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flowinc_algebra_parse(text: *const c_char, out: *mut *mut FlowincAlgebra) -> FlowincStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let a = NilpotentAlgebra::parse(read_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(FlowincAlgebra(a)));
        Ok(())
    })
}

/// BCH product of two coordinate vectors of rational strings; the result
/// is written as `dim` strings into `out`, each to be freed by the caller.
///
/// # Safety
/// `a` must be a live handle; `u`, `v` arrays of `len` C strings; `out` an
/// array with room for `len` pointers.
#[no_mangle]
pub unsafe extern "C" fn flowinc_algebra_bch(
    a: *const FlowincAlgebra,
    u: *const *const c_char,
    v: *const *const c_char,
    len: usize,
    out: *mut *mut c_char,
) -> FlowincStatus {
    guard(|| {
        let a = handle(a, "algebra")?;
        out_ptr(out, "out")?;
        let (u, v) = (read_rationals(u, len)?, read_rationals(v, len)?);
        let w = bch_product(&a.0, &u, &v)?;
        for (i, x) in w.iter().enumerate() {
            *out.add(i) = to_c_string(x.to_string());
        }
        Ok(())
    })
}

/// Pushforward fields for a weak Malcev basis through 0, one field per line.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flowinc_algebra_pushforward(a: *const FlowincAlgebra, out: *mut *mut c_char) -> FlowincStatus {
    guard(|| {
        let a = handle(a, "algebra")?;
        out_ptr(out, "out")?;
        let basis = weak_malcev_basis(&a.0, &[])?;
        let fields = pushforward_fields(&a.0, &basis)?;
        let text: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
        *out = to_c_string(text.join("\n"));
        Ok(())
    })
}

/// # Safety
/// `a` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flowinc_algebra_free(a: *mut FlowincAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}
