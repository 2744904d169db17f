//! C ABI over `hkpot`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` and
//! released by the matching `*_free`. Every fallible call returns an
//! [`HkStatus`]; on failure the message is kept per thread and can be read
//! with [`hkpot_last_error`]. Strings handed out by the library must be
//! released with [`hkpot_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hkpot::error::Error;
use hkpot::geometry::suite::run_point;
use hkpot::orbits::Shape;
use hkpot::potentials::PotentialSpec;
use hkpot::{Orbit, OrbitId, Potential, SuiteConfig};

/// Result codes. `HK_OK` is zero; everything else is an error.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HkStatus {
    HkOk = 0,
    HkNullPointer = 1,
    HkInvalidUtf8 = 2,
    HkParse = 3,
    HkInvalidParameter = 4,
    HkDomain = 5,
    HkUnsupported = 6,
    HkNearSingular = 7,
    HkNumerical = 8,
    HkPanic = 9,
}

/// An orbit together with its algebra and `so(4)` frame.
pub struct HkOrbit {
    orbit: Orbit,
}

/// A potential bound to a value of `k`.
pub struct HkPotential {
    potential: Potential,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> HkStatus {
    match e {
        Error::Parse(_) => HkStatus::HkParse,
        Error::Parameter(_) | Error::DimensionMismatch { .. } | Error::MissingGenerator => {
            HkStatus::HkInvalidParameter
        }
        Error::Domain(_) | Error::NotNilpotent(_) => HkStatus::HkDomain,
        Error::Unsupported(_) => HkStatus::HkUnsupported,
        Error::Output(_) => HkStatus::HkInvalidParameter,
        Error::NearSingular { .. } => HkStatus::HkNearSingular,
        Error::NumericalTolerance { .. }
        | Error::StepUnderflow(_)
        | Error::SingularGram
        | Error::NoConvergence(_) => {
            HkStatus::HkNumerical
        }
    }
}

struct Fail(HkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HkStatus::HkOk
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            HkStatus::HkPanic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(HkStatus::HkNullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(HkStatus::HkInvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn in_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn hkpot_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn hkpot_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hkpot_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the orbit named by `id`, e.g. `"A:5:2,2,1"` or `"G2"`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hkpot_orbit_new(id: *const c_char, out: *mut *mut HkOrbit) -> HkStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let id: OrbitId = read_str(id, "id")?.parse()?;
        let orbit = Orbit::new(id)?;
        *out = Box::into_raw(Box::new(HkOrbit { orbit }));
        Ok(())
    })
}

/// # Safety
/// `orbit` must come from [`hkpot_orbit_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hkpot_orbit_free(orbit: *mut HkOrbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}

/// Complex dimension of the ambient Lie algebra.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hkpot_orbit_algebra_dim(orbit: *const HkOrbit, out: *mut usize) -> HkStatus {
    guard(|| {
        *out_ref(out, "out")? = in_ref(orbit, "orbit")?.orbit.algebra().dim();
        Ok(())
    })
}

/// The constant `k^2` of the orbit. Unsupported for G2.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hkpot_orbit_k2(orbit: *const HkOrbit, out: *mut f64) -> HkStatus {
    guard(|| {
        let orbit = in_ref(orbit, "orbit")?;
        let out = out_ref(out, "out")?;
        *out = orbit.orbit.measure_k2()?;
        Ok(())
    })
}

/// `eta1`, `eta2` and the complex orbit dimension at the representative
/// with parameters `(s, t)`. Any of the outputs may be null.
///
/// # Safety
/// `orbit` must be valid; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn hkpot_orbit_point(
    orbit: *const HkOrbit,
    s: f64,
    t: f64,
    eta1: *mut f64,
    eta2: *mut f64,
    orbit_dim: *mut usize,
) -> HkStatus {
    guard(|| {
        let orbit = in_ref(orbit, "orbit")?;
        let p = orbit.orbit.representative(s, t)?;
        if let Some(e) = eta1.as_mut() {
            *e = p.eta1;
        }
        if let Some(e) = eta2.as_mut() {
            *e = p.eta2;
        }
        if let Some(d) = orbit_dim.as_mut() {
            *d = p.tangent.len();
        }
        Ok(())
    })
}

/// Builds a potential from `spec` (`theorem`, `g2`, `sl2:c=..`,
/// `family:c=..`) with `k` taken from `orbit`. `c` fills in a missing
/// family parameter; pass NaN to leave it unset.
///
/// # Safety
/// Pointers must be valid; `spec` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hkpot_potential_new(
    spec: *const c_char,
    orbit: *const HkOrbit,
    c: f64,
    out: *mut *mut HkPotential,
) -> HkStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let spec: PotentialSpec = read_str(spec, "spec")?.parse()?;
        let orbit = in_ref(orbit, "orbit")?;
        let k = match orbit.orbit.shape() {
            Shape::G2 => None,
            _ => Some(orbit.orbit.measure_k2()?.sqrt()),
        };
        let potential = spec.instantiate(k, (!c.is_nan()).then_some(c))?;
        *out = Box::into_raw(Box::new(HkPotential { potential }));
        Ok(())
    })
}

/// # Safety
/// `pot` must come from [`hkpot_potential_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hkpot_potential_free(pot: *mut HkPotential) {
    if !pot.is_null() {
        drop(Box::from_raw(pot));
    }
}

/// `rho(eta1, eta2)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hkpot_potential_value(
    pot: *const HkPotential,
    eta1: f64,
    eta2: f64,
    out: *mut f64,
) -> HkStatus {
    guard(|| {
        let pot = in_ref(pot, "pot")?;
        let out = out_ref(out, "out")?;
        *out = pot.potential.value(eta1, eta2)?;
        Ok(())
    })
}

/// Runs every geometry check at `(s, t)` on a randomly conjugated point.
/// Writes the report as JSON to `json_out` (free with
/// [`hkpot_string_free`]) and whether all checks passed to `passed`.
/// Either output may be null.
///
/// # Safety
/// Handles must be valid; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn hkpot_verify_point(
    orbit: *const HkOrbit,
    pot: *const HkPotential,
    s: f64,
    t: f64,
    seed: u64,
    json_out: *mut *mut c_char,
    passed: *mut c_int,
) -> HkStatus {
    guard(|| {
        let orbit = in_ref(orbit, "orbit")?;
        let pot = in_ref(pot, "pot")?;
        if let Some(j) = json_out.as_mut() {
            *j = ptr::null_mut();
        }
        let cfg = SuiteConfig {
            seed,
            ..SuiteConfig::default()
        };
        let report = run_point(&orbit.orbit, &pot.potential, s, t, &cfg, 0);
        if let Some(err) = &report.error {
            return Err(Fail(HkStatus::HkInvalidParameter, err.clone()));
        }
        if let Some(p) = passed.as_mut() {
            *p = c_int::from(report.passed);
        }
        if let Some(j) = json_out.as_mut() {
            let text = serde_json::to_string(&report)
                .map_err(|e| Fail(HkStatus::HkInvalidParameter, e.to_string()))?;
            *j = CString::new(text)
                .map_err(|e| Fail(HkStatus::HkInvalidParameter, e.to_string()))?
                .into_raw();
        }
        Ok(())
    })
}
