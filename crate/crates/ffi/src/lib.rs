//! C interface to `hirzebruch-core`.
//!
//! Every fallible function returns an [`HzStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`hz_last_error`]. Handles are opaque and must be released with
//! the matching `_free` function; strings returned by the library are
//! released with [`hz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hirzebruch_core::arrangement;
use hirzebruch_core::braid::{self, BraidWord};
use hirzebruch_core::degeneration::{self, DegenerationComplex};
use hirzebruch_core::error::Error;
use hirzebruch_core::factorization::Factorization;
use hirzebruch_core::invariants::{self, SurfaceParams};
use hirzebruch_core::regeneration::{self, RegenerationOptions, ThreePointMode};
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidParams = 3,
    NonGeneric = 4,
    Parse = 5,
    IdentityViolation = 6,
    /// A value does not fit the fixed-width C type.
    Overflow = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HzLevel {
    Degenerate = 0,
    Regenerated = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HzThreePointMode {
    Auto = 0,
    Literal = 1,
    Cubed = 2,
}

/// Degeneration complex of `F_k` embedded by `(a, b)`.
pub struct HzComplex {
    inner: DegenerationComplex,
}

/// Ordered braid monodromy factorization.
pub struct HzFactorization {
    inner: Factorization,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HzCounts {
    pub planes: usize,
    pub lines: usize,
    pub vertices: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HzRational {
    pub num: i64,
    pub den: i64,
}

/// Each value equals its coefficient times `factorial_index!`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HzChern {
    pub factorial_index: u64,
    pub c1sq: HzRational,
    pub c2: HzRational,
    pub signature: HzRational,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HzClassification {
    pub general_type: bool,
    pub spin: bool,
    pub simply_connected: bool,
    /// −1, 0 or 1.
    pub signature_sign: i8,
    /// Whether the flags agree with the criteria in terms of the branch curve
    /// degree and the positivity table.
    pub consistent: bool,
}

/// `(Z_torsion_order)^rank`; trivial when `torsion_order` is 1.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HzGroup {
    pub torsion_order: u64,
    pub rank: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HzStatus {
    match e {
        Error::InvalidParams(_) => HzStatus::InvalidParams,
        Error::NonGeneric(_) | Error::LinesIntersect(..) => HzStatus::NonGeneric,
        Error::Parse(_) => HzStatus::Parse,
        Error::IdentityViolation(_) => HzStatus::IdentityViolation,
        _ => HzStatus::InvalidArgument,
    }
}

struct Fail(HzStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HzStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            HzStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(HzStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn in_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|_| Fail(HzStatus::Internal, "string contains nul".into()))
}

fn rational(r: &BigRational) -> Result<HzRational, Fail> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(num), Some(den)) => Ok(HzRational { num, den }),
        _ => Err(Fail(HzStatus::Overflow, format!("{r} does not fit in 64 bits"))),
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_complex_new(k: u32, a: u32, b: u32, out: *mut *mut HzComplex) -> HzStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let inner = degeneration::build_complex(k, a, b)?;
        *out = Box::into_raw(Box::new(HzComplex { inner }));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from [`hz_complex_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hz_complex_free(c: *mut HzComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_complex_counts(c: *const HzComplex, out: *mut HzCounts) -> HzStatus {
    guard(|| {
        let c = in_ref(c, "complex")?;
        let n = c.inner.counts();
        *out_ref(out, "out")? = HzCounts { planes: n.planes, lines: n.lines, vertices: n.vertices };
        Ok(())
    })
}

/// Writes a newly allocated JSON description of the complex.
///
/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_complex_to_json(c: *const HzComplex, out: *mut *mut c_char) -> HzStatus {
    guard(|| {
        let c = in_ref(c, "complex")?;
        let out = out_ref(out, "out")?;
        *out = into_c_string(c.inner.to_json().to_string())?;
        Ok(())
    })
}

/// Builds the factorization at the given level. `mode` and `seed` apply to
/// the regenerated and degenerate levels respectively.
///
/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_factorize(
    c: *const HzComplex,
    level: HzLevel,
    mode: HzThreePointMode,
    seed: u64,
    out: *mut *mut HzFactorization,
) -> HzStatus {
    guard(|| {
        let c = in_ref(c, "complex")?;
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let inner = match level {
            HzLevel::Degenerate => {
                let induced = degeneration::induced_arrangement(&c.inner, seed)?;
                arrangement::arrangement_monodromy_factorization(&induced.arrangement)?
            }
            HzLevel::Regenerated => {
                let mode = match mode {
                    HzThreePointMode::Auto => None,
                    HzThreePointMode::Literal => Some(ThreePointMode::Literal),
                    HzThreePointMode::Cubed => Some(ThreePointMode::Cubed),
                };
                regeneration::regenerate(&c.inner, &RegenerationOptions { mode, six_point_table: None })?.0
            }
        };
        *out = Box::into_raw(Box::new(HzFactorization { inner }));
        Ok(())
    })
}

/// # Safety
/// `json` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_factorization_from_json(json: *const c_char, out: *mut *mut HzFactorization) -> HzStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let text = CStr::from_ptr(json).to_str().map_err(|e| Fail(HzStatus::Parse, e.to_string()))?;
        let inner: Factorization = serde_json::from_str(text).map_err(|e| Fail(HzStatus::Parse, e.to_string()))?;
        inner.validate()?;
        *out = Box::into_raw(Box::new(HzFactorization { inner }));
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hz_factorization_free(f: *mut HzFactorization) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_factorization_to_json(f: *const HzFactorization, out: *mut *mut c_char) -> HzStatus {
    guard(|| {
        let f = in_ref(f, "factorization")?;
        let out = out_ref(out, "out")?;
        let s = serde_json::to_string(&f.inner).map_err(|e| Fail(HzStatus::Internal, e.to_string()))?;
        *out = into_c_string(s)?;
        Ok(())
    })
}

/// Number of factors and strands.
///
/// # Safety
/// `f` must be a live handle; the out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_factorization_shape(
    f: *const HzFactorization,
    factors: *mut usize,
    strands: *mut usize,
) -> HzStatus {
    guard(|| {
        let f = in_ref(f, "factorization")?;
        *out_ref(factors, "factors")? = f.inner.factors.len();
        *out_ref(strands, "strands")? = f.inner.strand_count;
        Ok(())
    })
}

/// `p(p−1)` minus the total claimed degree.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_factorization_residual(f: *const HzFactorization, out: *mut i64) -> HzStatus {
    guard(|| {
        let f = in_ref(f, "factorization")?;
        *out_ref(out, "out")? = f.inner.audit().residual;
        Ok(())
    })
}

/// Whether the ordered product equals the full twist.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_factorization_verify(f: *const HzFactorization, out: *mut bool) -> HzStatus {
    guard(|| {
        let f = in_ref(f, "factorization")?;
        *out_ref(out, "out")? = f.inner.verify_product_is_full_twist();
        Ok(())
    })
}

/// Equality in `B_n` of two words given as signed generator indices.
///
/// # Safety
/// `u` and `v` must point to `u_len` and `v_len` readable values (or be null
/// when the length is 0); `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_braid_equal(
    n: usize,
    u: *const i32,
    u_len: usize,
    v: *const i32,
    v_len: usize,
    out: *mut bool,
) -> HzStatus {
    guard(|| {
        let slice = |p: *const i32, len: usize, what: &str| -> Result<Vec<i32>, Fail> {
            match (p.is_null(), len) {
                (_, 0) => Ok(Vec::new()),
                (true, _) => Err(null(what)),
                (false, _) => Ok(std::slice::from_raw_parts(p, len).to_vec()),
            }
        };
        let u = BraidWord::new(n, slice(u, u_len, "u")?)?;
        let v = BraidWord::new(n, slice(v, v_len, "v")?)?;
        *out_ref(out, "out")? = braid::are_equal(&u, &v)?;
        Ok(())
    })
}

/// Chern numbers and signature of `Y_k(a,b)` as coefficients of `n!`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_chern(k: u32, a: u32, b: u32, out: *mut HzChern) -> HzStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let p = SurfaceParams::new(k, a, b)?;
        let c = invariants::chern_y(p)?;
        let tau = invariants::signature(p)?;
        *out = HzChern {
            factorial_index: c.factorial_index,
            c1sq: rational(&c.c1sq_coeff)?,
            c2: rational(&c.c2_coeff)?,
            signature: rational(&tau.coeff)?,
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_classify(k: u32, a: u32, b: u32, out: *mut HzClassification) -> HzStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let c = invariants::classify(SurfaceParams::new(k, a, b)?)?;
        *out = HzClassification {
            general_type: c.general_type,
            spin: c.spin,
            simply_connected: c.simply_connected,
            signature_sign: c.signature_sign,
            consistent: c.is_consistent(),
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hz_pi1(k: u32, a: u32, b: u32, out: *mut HzGroup) -> HzStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let g = invariants::pi1(SurfaceParams::new(k, a, b)?)?;
        *out = HzGroup { torsion_order: g.torsion_order, rank: g.rank };
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::InvalidParams(String::new())), HzStatus::InvalidParams);
        assert_eq!(status_of(&Error::InvalidNu(4)), HzStatus::InvalidArgument);
        assert_eq!(guard(|| Err(null("x"))), HzStatus::NullPointer);
        assert_eq!(guard(|| panic!("boom")), HzStatus::Internal);
    }

    #[test]
    fn rationals_fit_or_overflow() {
        let r = BigRational::new(3.into(), 4.into());
        assert_eq!(rational(&r).ok(), Some(HzRational { num: 3, den: 4 }));
        let big: BigRational = "100000000000000000000".parse().unwrap();
        assert!(matches!(rational(&big), Err(Fail(HzStatus::Overflow, _))));
    }
}
