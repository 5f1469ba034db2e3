//! C ABI for the hullkit geometry library.
//!
//! Conventions: every function returns a `HullkitStatus`; results come back
//! through out-pointers. Complex scalars are (re, im) double pairs and
//! complex vectors are parallel `re`/`im` arrays. Region descriptions enter
//! as JSON strings and become opaque handles that must be freed with
//! `hullkit_region_free`. On any non-OK status a thread-local message is
//! available via `hullkit_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::slice;

use num_complex::Complex64;

use hullkit::bateman::{bateman_eval, BatemanIntegrand, Contour};
use hullkit::complex::{ComplexVector, Tolerances};
use hullkit::error::Error;
use hullkit::hull::{hull_membership, HullVerdict};
use hullkit::lie::pqp_rank_estimate;
use hullkit::odd_dim::{monodromy_loop, newtonian_monodromy, reduced_hull_member_3d};
use hullkit::region::RegionExpr;
use hullkit::twistor::lines_intersect;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullkitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    BadInput = 3,
    DimensionMismatch = 4,
    UnsupportedRegion = 5,
    Singular = 6,
    ContourError = 7,
    BranchError = 8,
    GroupError = 9,
    InternalError = 10,
}

/// Hull-membership verdicts, matching the CLI's 0/1/2 encoding.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullkitVerdict {
    MemberCertified = 0,
    ConeFailsObstacle = 1,
    ConeOkConnectivityUnverified = 2,
}

/// Opaque handle for a parsed region description.
pub struct HullkitRegion {
    inner: RegionExpr,
}

/// Opaque handle for a parsed contour integrand.
pub struct HullkitIntegrand {
    inner: BatemanIntegrand,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&ch| ch != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> HullkitStatus {
    match err {
        Error::DimensionMismatch { .. } | Error::OddDimension(_) => HullkitStatus::DimensionMismatch,
        Error::UnsupportedRegion(_) => HullkitStatus::UnsupportedRegion,
        Error::Singular(_) | Error::ZeroVector | Error::DependentInputs => HullkitStatus::Singular,
        Error::PoleNearContour(_) | Error::PoleOnContour(_) | Error::UnsupportedPoleOrder(_) => {
            HullkitStatus::ContourError
        }
        Error::BranchPointHit(_) | Error::AmbiguousStep { .. } => HullkitStatus::BranchError,
        Error::NotInGroup(_) | Error::NotARotation => HullkitStatus::GroupError,
        Error::InternalConsistency(_) => HullkitStatus::InternalError,
        Error::InvalidParameter(_) | Error::Evaluation(_) | Error::Usage(_) => HullkitStatus::BadInput,
    }
}

fn fail(err: Error) -> HullkitStatus {
    set_error(&err.to_string());
    status_of(&err)
}

/// The message associated with the most recent failure on this thread.
/// The pointer stays valid until the next failing call on the same thread;
/// never free it.
#[no_mangle]
pub extern "C" fn hullkit_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn read_vector(re: *const f64, im: *const f64, len: usize) -> Option<ComplexVector> {
    if re.is_null() || im.is_null() || len == 0 {
        return None;
    }
    let re = slice::from_raw_parts(re, len);
    let im = slice::from_raw_parts(im, len);
    Some(ComplexVector::new(
        re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect(),
    ))
}

/// Parse a region JSON document ({"dimension": n, "region": ...}) into an
/// opaque handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hullkit_region_parse(
    json: *const c_char,
    out: *mut *mut HullkitRegion,
) -> HullkitStatus {
    if json.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("region JSON is not valid UTF-8");
            return HullkitStatus::InvalidUtf8;
        }
    };
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            set_error(&format!("region JSON parse error: {}", e));
            return HullkitStatus::BadInput;
        }
    };
    match RegionExpr::from_json(&value) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(HullkitRegion { inner }));
            HullkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Release a region handle. Passing NULL is a no-op.
///
/// # Safety
/// `region` must have come from `hullkit_region_parse` and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn hullkit_region_free(region: *mut HullkitRegion) {
    if !region.is_null() {
        drop(Box::from_raw(region));
    }
}

/// The ambient real dimension of a parsed region.
///
/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hullkit_region_dimension(
    region: *const HullkitRegion,
    out: *mut usize,
) -> HullkitStatus {
    if region.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    *out = (*region).inner.dimension;
    HullkitStatus::Ok
}

/// Exact membership of a real point in the region.
///
/// # Safety
/// `point` must reference `len` doubles; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hullkit_region_contains(
    region: *const HullkitRegion,
    point: *const f64,
    len: usize,
    out: *mut bool,
) -> HullkitStatus {
    if region.is_null() || point.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    let p = slice::from_raw_parts(point, len);
    match (*region).inner.contains(p) {
        Ok(v) => {
            *out = v;
            HullkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Hull membership of the complex point (z_re, z_im) relative to the region,
/// using `samples` connectivity probes from the real `basepoint`.
///
/// # Safety
/// `z_re`, `z_im`, and `basepoint` must each reference `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn hullkit_hull_membership(
    region: *const HullkitRegion,
    z_re: *const f64,
    z_im: *const f64,
    basepoint: *const f64,
    len: usize,
    samples: usize,
    out: *mut HullkitVerdict,
) -> HullkitStatus {
    if region.is_null() || basepoint.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    let z = match read_vector(z_re, z_im, len) {
        Some(z) => z,
        None => {
            set_error("null or empty complex vector");
            return HullkitStatus::NullPointer;
        }
    };
    let x0 = slice::from_raw_parts(basepoint, len);
    match hull_membership(&z, &(*region).inner, x0, samples) {
        Ok(v) => {
            *out = match v {
                HullVerdict::MemberCertified => HullkitVerdict::MemberCertified,
                HullVerdict::ConeFailsObstacle { .. } => HullkitVerdict::ConeFailsObstacle,
                HullVerdict::ConeOkConnectivityUnverified { .. } => {
                    HullkitVerdict::ConeOkConnectivityUnverified
                }
            };
            HullkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Do the twistor lines of two C^4 points intersect? Writes the incidence
/// flag and the determinant <z - z', z - z'>.
///
/// # Safety
/// Each coordinate pointer must reference 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn hullkit_lines_intersect(
    z_re: *const f64,
    z_im: *const f64,
    zp_re: *const f64,
    zp_im: *const f64,
    out_intersect: *mut bool,
    out_det_re: *mut f64,
    out_det_im: *mut f64,
) -> HullkitStatus {
    if out_intersect.is_null() || out_det_re.is_null() || out_det_im.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    let (z, zp) = match (read_vector(z_re, z_im, 4), read_vector(zp_re, zp_im, 4)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            set_error("null complex vector");
            return HullkitStatus::NullPointer;
        }
    };
    match lines_intersect(&z, &zp, &Tolerances::default()) {
        Ok(inc) => {
            *out_intersect = inc.intersect;
            *out_det_re = inc.determinant.re;
            *out_det_im = inc.determinant.im;
            HullkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Parse a named contour integrand (same catalogue as the CLI's
/// `bateman --f`).
///
/// # Safety
/// `name` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hullkit_integrand_parse(
    name: *const c_char,
    out: *mut *mut HullkitIntegrand,
) -> HullkitStatus {
    if name.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    let text = match CStr::from_ptr(name).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("integrand name is not valid UTF-8");
            return HullkitStatus::InvalidUtf8;
        }
    };
    match BatemanIntegrand::parse(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(HullkitIntegrand { inner }));
            HullkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Release an integrand handle. Passing NULL is a no-op.
///
/// # Safety
/// `f` must have come from `hullkit_integrand_parse` and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn hullkit_integrand_free(f: *mut HullkitIntegrand) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Evaluate the contour integral of the integrand over the circle
/// (center, radius) with `nodes` quadrature nodes, at the complex point z.
///
/// # Safety
/// `z_re`/`z_im` must reference 4 doubles; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hullkit_bateman_eval(
    f: *const HullkitIntegrand,
    center_re: f64,
    center_im: f64,
    radius: f64,
    nodes: usize,
    z_re: *const f64,
    z_im: *const f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HullkitStatus {
    if f.is_null() || out_re.is_null() || out_im.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    let z = match read_vector(z_re, z_im, 4) {
        Some(z) => z,
        None => {
            set_error("null complex vector");
            return HullkitStatus::NullPointer;
        }
    };
    let contour = match Contour::new(Complex64::new(center_re, center_im), radius, nodes) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match bateman_eval(&(*f).inner, &contour, &z) {
        Ok(v) => {
            *out_re = v.re;
            *out_im = v.im;
            HullkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Branch multiplier of the tracked square root around the circular loop
/// (center, radius) with the given number of steps; -1 signals the
/// odd-dimensional obstruction.
///
/// # Safety
/// Out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hullkit_newtonian_monodromy(
    center_re: f64,
    center_im: f64,
    radius: f64,
    steps: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HullkitStatus {
    if out_re.is_null() || out_im.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    let points = match monodromy_loop(Complex64::new(center_re, center_im), radius, steps) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    match newtonian_monodromy(&points) {
        Ok(m) => {
            *out_re = m.re;
            *out_im = m.im;
            HullkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Reduced-hull membership in C^3 relative to a single real obstacle.
///
/// # Safety
/// `z_re`/`z_im` must reference 3 doubles, `obstacle` 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn hullkit_reduced_hull_member(
    z_re: *const f64,
    z_im: *const f64,
    obstacle: *const f64,
    out: *mut bool,
) -> HullkitStatus {
    if obstacle.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    let z = match read_vector(z_re, z_im, 3) {
        Some(z) => z,
        None => {
            set_error("null complex vector");
            return HullkitStatus::NullPointer;
        }
    };
    let obs = slice::from_raw_parts(obstacle, 3);
    match reduced_hull_member_3d(&z, &[[obs[0], obs[1], obs[2]]], &Tolerances::default()) {
        Ok(v) => {
            *out = v;
            HullkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Numerical dimension of the PQP variety in SO(2m+2, C), deterministic for
/// a fixed seed. m in {2, 3, 4}; expected value m(2m+3).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hullkit_pqp_rank(
    m: usize,
    trials: usize,
    seed: u64,
    out: *mut usize,
) -> HullkitStatus {
    if out.is_null() {
        set_error("null pointer argument");
        return HullkitStatus::NullPointer;
    }
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    match pqp_rank_estimate(m, trials, &mut rng) {
        Ok((rank, _)) => {
            *out = rank;
            HullkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}
