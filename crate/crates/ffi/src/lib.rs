//! C ABI for `pbracket`.
//!
//! Conventions:
//! * every fallible function returns a [`PbStatus`] and writes its result
//!   through an out-pointer, which is left untouched on failure;
//! * on failure, [`pb_last_error`] returns a message for the calling thread;
//! * polynomials and families are opaque handles released with
//!   [`pb_poly_free`] and [`pb_family_free`];
//! * strings returned through out-pointers are owned by the caller and
//!   released with [`pb_string_free`];
//! * degrees use `-1` for the degree of zero (minus infinity).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pbracket::bracket::{bracket_degree, poisson_bracket};
use pbracket::config::parse_spec;
use pbracket::formulas::{build_g, lowest_buildable_threshold, FamilySpec};
use pbracket::hreduce::h_reduce;
use pbracket::lattice::{brute_force_min, LatticeProblem};
use pbracket::poly::parse_poly;
use pbracket::{Degree, Error, HomogeneousPoly, Poly, Rational};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Polynomial or configuration text did not parse.
    ParseError = 3,
    /// Polynomials from rings with different numbers of variables.
    NvarsMismatch = 4,
    /// Parameters violate a documented constraint.
    InvalidParameters = 5,
    /// An exact division required by the computation failed.
    NonDivisible = 6,
    /// Any other mathematical precondition failed.
    DomainError = 7,
    /// The input exceeds a resource cap.
    TooLarge = 8,
    /// Internal failure; the message describes it.
    Internal = 9,
}

/// Opaque polynomial with rational coefficients.
pub struct PbPoly(Poly);

/// Opaque validated family specification.
pub struct PbFamily(FamilySpec);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> PbStatus {
    match e {
        Error::Parse { .. } | Error::Config(_) => PbStatus::ParseError,
        Error::NvarsMismatch(..) => PbStatus::NvarsMismatch,
        Error::InvalidParameters(_) => PbStatus::InvalidParameters,
        Error::NonDivisible(_) => PbStatus::NonDivisible,
        Error::TooLarge(_) => PbStatus::TooLarge,
        _ => PbStatus::DomainError,
    }
}

struct Failure(PbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

/// Runs `body`, records any failure, and converts panics to `Internal`.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> PbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PbStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PbStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(PbStatus::Internal, "string contains NUL".into()))
}

fn degree_code(d: Degree) -> i64 {
    match d {
        Degree::NegInfinity => -1,
        Degree::Finite(d) => i64::from(d),
    }
}

/// Message describing the last failure on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` as a polynomial in `nvars` variables `x1..xn`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_poly_parse(
    text: *const c_char,
    nvars: usize,
    out: *mut *mut PbPoly,
) -> PbStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let p = parse_poly(text, nvars)?;
        write_out(out, Box::into_raw(Box::new(PbPoly(p))), "out")
    })
}

/// Releases a polynomial handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pb_poly_free(p: *mut PbPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text of `p` (graded-lex order, highest term first).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_poly_to_string(p: *const PbPoly, out: *mut *mut c_char) -> PbStatus {
    guard(|| {
        let p = handle(p, "p")?;
        write_out(out, c_string(p.0.to_string())?, "out")
    })
}

/// Total degree of `p`; `-1` for the zero polynomial.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_poly_degree(p: *const PbPoly, out: *mut i64) -> PbStatus {
    guard(|| {
        let p = handle(p, "p")?;
        write_out(out, degree_code(p.0.degree()), "out")
    })
}

/// Degree of the Poisson bracket `[f, g]`; `-1` when it vanishes.
///
/// # Safety
/// `f`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_bracket_degree(
    f: *const PbPoly,
    g: *const PbPoly,
    out: *mut i64,
) -> PbStatus {
    guard(|| {
        let (f, g) = (handle(f, "f")?, handle(g, "g")?);
        write_out(out, degree_code(bracket_degree(&f.0, &g.0)?), "out")
    })
}

/// The bracket `[f, g]` as JSON: a list of `{"i", "j", "poly"}` entries
/// with 1-based variable indices.
///
/// # Safety
/// `f`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_bracket_json(
    f: *const PbPoly,
    g: *const PbPoly,
    out: *mut *mut c_char,
) -> PbStatus {
    guard(|| {
        let (f, g) = (handle(f, "f")?, handle(g, "g")?);
        let b = poisson_bracket(&f.0, &g.0)?;
        let text =
            serde_json::to_string(&b).map_err(|e| Failure(PbStatus::Internal, e.to_string()))?;
        write_out(out, c_string(text)?, "out")
    })
}

/// Writes a homogeneous `p` commuting with the homogeneous non-power `h` as
/// `a h^k`; `a` is returned as text `"p/q"`.
///
/// # Safety
/// `h`, `p` must be live handles; `out_a`, `out_k` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_h_reduce(
    h: *const PbPoly,
    p: *const PbPoly,
    out_a: *mut *mut c_char,
    out_k: *mut u32,
) -> PbStatus {
    guard(|| {
        let h = HomogeneousPoly::new(handle(h, "h")?.0.clone())?;
        let p = HomogeneousPoly::new(handle(p, "p")?.0.clone())?;
        if out_a.is_null() || out_k.is_null() {
            return Err(null("out_a or out_k"));
        }
        let (a, k): (Rational, u32) = h_reduce(&h, &p)?;
        write_out(out_a, c_string(a.to_string())?, "out_a")?;
        write_out(out_k, k, "out_k")
    })
}

/// Parses and validates a family specification in the TOML file format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_family_parse(text: *const c_char, out: *mut *mut PbFamily) -> PbStatus {
    guard(|| {
        let spec = parse_spec(str_arg(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(PbFamily(spec))), "out")
    })
}

/// Releases a family handle. Null is ignored.
///
/// # Safety
/// `f` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pb_family_free(f: *mut PbFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// The polynomial `F` of the family.
///
/// # Safety
/// `fam` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_family_f(fam: *const PbFamily, out: *mut *mut PbPoly) -> PbStatus {
    guard(|| {
        let fam = handle(fam, "fam")?;
        write_out(out, Box::into_raw(Box::new(PbPoly(fam.0.f()))), "out")
    })
}

/// Smallest `i` for which the components `G_i, ..., G_N` are polynomials.
///
/// # Safety
/// `fam` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_family_lowest_threshold(
    fam: *const PbFamily,
    out: *mut u32,
) -> PbStatus {
    guard(|| {
        let fam = handle(fam, "fam")?;
        write_out(out, lowest_buildable_threshold(&fam.0)?, "out")
    })
}

/// `G = G_i + ... + G_N` from the closed-form components; fails with
/// `NonDivisible` when some component has a pole along `h`.
///
/// # Safety
/// `fam` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_family_build_g(
    fam: *const PbFamily,
    i: u32,
    out: *mut *mut PbPoly,
) -> PbStatus {
    guard(|| {
        let fam = handle(fam, "fam")?;
        let g = build_g(&fam.0, i, None)?;
        write_out(out, Box::into_raw(Box::new(PbPoly(g))), "out")
    })
}

/// Minimum of `alpha_0 + k alpha_s` over the index set for `(j, N, d, t)`,
/// by exhaustive search, as JSON `{"value", "argmins"}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_lattice_min_json(
    d: u32,
    n: u32,
    j: u32,
    t: u32,
    k: u32,
    out: *mut *mut c_char,
) -> PbStatus {
    guard(|| {
        let p = LatticeProblem::alpha0_plus(j, n, d, t, Rational::from_integer(k.into()))?;
        let r = brute_force_min(&p)?;
        let v = serde_json::json!({"value": r.value.to_string(), "argmins": r.argmins});
        write_out(out, c_string(v.to_string())?, "out")
    })
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn pb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
