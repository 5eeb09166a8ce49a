//! C ABI over `schwarz_radius`.
//!
//! Functions are opaque-handle based and return an [`SrStatus`]; on failure
//! [`sr_last_error_message`] describes the error. Results go through out
//! pointers. Every entry point catches panics.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use schwarz_radius::bounds;
use schwarz_radius::cli::cmd_eliminate;
use schwarz_radius::function_kernel::{dilate, AnalyticFunction, DerivativeKind, PowerSeries, DEFAULT_ORDER};
use schwarz_radius::norm_engine::{derivative_norm, NormStatus};
use schwarz_radius::radius_solver::{self, Method, RadiusResult};
use schwarz_radius::Error;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrStatus {
    SrOk = 0,
    /// A required pointer argument was null.
    SrNullPointer = 1,
    /// An argument is outside its domain.
    SrDomain = 2,
    /// Non-convergence or another numeric failure.
    SrNumeric = 3,
    /// The derivative has a pole at the requested point.
    SrPole = 4,
    /// Internal panic; the library state is unaffected.
    SrPanic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrDerivative {
    SrPreSchwarzian = 0,
    SrSchwarzian = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrNormStatus {
    SrNormInterior = 0,
    SrNormBoundaryLimit = 1,
    SrNormInfinite = 2,
    SrNormLowerBound = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrRadiusMethod {
    SrClosedForm = 0,
    SrExactQuinticRoot = 1,
    SrBisection = 2,
}

/// Opaque normalized analytic function on the unit disk.
pub struct SrFunction(AnalyticFunction);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrNorm {
    /// `+inf` when unbounded.
    pub value: f64,
    pub maximizer_re: f64,
    pub maximizer_im: f64,
    pub status: SrNormStatus,
    pub accuracy: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrRadius {
    pub radius: f64,
    pub method: SrRadiusMethod,
    pub residual: f64,
    pub bracket_width: f64,
    /// Nonzero when every dilation qualifies (radius 1).
    pub saturated: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn status_of(e: &Error) -> SrStatus {
    match e {
        Error::Domain(..) => SrStatus::SrDomain,
        _ => SrStatus::SrNumeric,
    }
}

/// Runs `body`, recording the error message and mapping panics.
fn guard(body: impl FnOnce() -> Result<(), (SrStatus, String)>) -> SrStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SrStatus::SrOk,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SrStatus::SrPanic
        }
    }
}

fn lib_err(e: Error) -> (SrStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SrStatus, String) {
    (SrStatus::SrNullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (SrStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn fn_ref<'a>(f: *const SrFunction) -> Result<&'a AnalyticFunction, (SrStatus, String)> {
    f.as_ref().map(|h| &h.0).ok_or_else(|| null("function handle"))
}

fn boxed(f: AnalyticFunction) -> *mut SrFunction {
    Box::into_raw(Box::new(SrFunction(f)))
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn sr_function_identity() -> *mut SrFunction {
    boxed(AnalyticFunction::Identity)
}

#[no_mangle]
pub extern "C" fn sr_function_koebe() -> *mut SrFunction {
    boxed(AnalyticFunction::Koebe)
}

/// `e^{-i theta} k(e^{i theta} z)`.
#[no_mangle]
pub extern "C" fn sr_function_rotated_koebe(theta: f64) -> *mut SrFunction {
    boxed(AnalyticFunction::RotatedKoebe { theta })
}

/// Function with real Taylor coefficients `coeffs[0..len]`; requires
/// `coeffs[0] = 0` and `coeffs[1] = 1`.
///
/// # Safety
/// `coeffs` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_function_series(coeffs: *const f64, len: usize, out: *mut *mut SrFunction) -> SrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        let c = std::slice::from_raw_parts(coeffs, len);
        let s = PowerSeries::from_real(c, DEFAULT_ORDER.max(len));
        *out = boxed(AnalyticFunction::series(s).map_err(lib_err)?);
        Ok(())
    })
}

/// New handle for the dilation `f(r z) / r`, `0 <= r < 1`.
///
/// # Safety
/// `f` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_function_dilate(f: *const SrFunction, r: f64, out: *mut *mut SrFunction) -> SrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let g = dilate(fn_ref(f)?, r).map_err(lib_err)?;
        *out = boxed(g);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `f` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sr_function_free(f: *mut SrFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

fn kind_of(d: SrDerivative) -> DerivativeKind {
    match d {
        SrDerivative::SrPreSchwarzian => DerivativeKind::PreSchwarzian,
        SrDerivative::SrSchwarzian => DerivativeKind::Schwarzian,
    }
}

/// `T_f(z)` or `S_f(z)`. Returns `SrPole` where `f'` vanishes or `f` is
/// singular.
///
/// # Safety
/// `f` must be a live handle; `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_derivative_at(
    f: *const SrFunction,
    kind: SrDerivative,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> SrStatus {
    guard(|| {
        let f = fn_ref(f)?;
        let (out_re, out_im) = (out_ref(out_re, "out_re")?, out_ref(out_im, "out_im")?);
        let v = f
            .derivative_at(kind_of(kind), Complex64::new(re, im))
            .ok_or_else(|| (SrStatus::SrPole, format!("pole at {re}+{im}i")))?;
        *out_re = v.re;
        *out_im = v.im;
        Ok(())
    })
}

/// Weighted sup-norm `sup (1-|z|^2)^alpha |T_f|` (or `S_f`).
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_norm(f: *const SrFunction, kind: SrDerivative, alpha: f64, out: *mut SrNorm) -> SrStatus {
    guard(|| {
        let f = fn_ref(f)?;
        let out = out_ref(out, "out")?;
        let n = derivative_norm(f, kind_of(kind), alpha).map_err(lib_err)?;
        *out = SrNorm {
            value: n.value,
            maximizer_re: n.maximizer.re,
            maximizer_im: n.maximizer.im,
            status: match n.status {
                NormStatus::Interior => SrNormStatus::SrNormInterior,
                NormStatus::BoundaryLimit => SrNormStatus::SrNormBoundaryLimit,
                NormStatus::Infinite => SrNormStatus::SrNormInfinite,
                NormStatus::LowerBound => SrNormStatus::SrNormLowerBound,
            },
            accuracy: n.accuracy,
        };
        Ok(())
    })
}

unsafe fn scalar(out: *mut f64, f: impl FnOnce() -> schwarz_radius::Result<f64>) -> SrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = f().map_err(lib_err)?;
        Ok(())
    })
}

/// Sharp bound on `||T_{f_r}||_alpha` over the univalent class.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_preschwarzian_bound(r: f64, alpha: f64, out: *mut f64) -> SrStatus {
    scalar(out, || Ok(bounds::preschwarzian_bound(r, alpha)?.value))
}

/// Sharp bound `C_alpha(r)` on `||S_{f_r}||_alpha`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_schwarzian_bound(r: f64, alpha: f64, out: *mut f64) -> SrStatus {
    scalar(out, || Ok(bounds::c_alpha(r, alpha)?.value))
}

/// `P(alpha)`; `+inf` for `alpha < 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_p_alpha(alpha: f64, out: *mut f64) -> SrStatus {
    scalar(out, || bounds::p_alpha(alpha))
}

/// `P~(alpha)`; `+inf` for `alpha < 2`, else 6.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_p_tilde(alpha: f64, out: *mut f64) -> SrStatus {
    scalar(out, || bounds::p_tilde(alpha))
}

fn radius_out(r: RadiusResult) -> SrRadius {
    SrRadius {
        radius: r.radius,
        method: match r.method {
            Method::ClosedForm => SrRadiusMethod::SrClosedForm,
            Method::ExactQuinticRoot => SrRadiusMethod::SrExactQuinticRoot,
            Method::Bisection => SrRadiusMethod::SrBisection,
        },
        residual: r.residual,
        bracket_width: r.bracket_width,
        saturated: r.saturated as i32,
    }
}

unsafe fn radius(out: *mut SrRadius, f: impl FnOnce() -> schwarz_radius::Result<RadiusResult>) -> SrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = radius_out(f().map_err(lib_err)?);
        Ok(())
    })
}

/// `B_alpha(M)`-radius of the univalent class.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_b_radius(m: f64, alpha: f64, tol: f64, out: *mut SrRadius) -> SrStatus {
    radius(out, || radius_solver::b_radius(m, alpha, tol))
}

/// `B_1(1)`-radius from the exact quintic.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_b1_radius_exact(tol: f64, out: *mut SrRadius) -> SrStatus {
    radius(out, || radius_solver::b1_radius_exact(tol))
}

/// `N_alpha(M)`-radius of the univalent class.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_n_radius(m: f64, alpha: f64, tol: f64, out: *mut SrRadius) -> SrStatus {
    radius(out, || radius_solver::n_radius(m, alpha, tol))
}

/// Elimination chain as a JSON object. Free with [`sr_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_eliminate_json(out: *mut *mut c_char) -> SrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let rec = cmd_eliminate().map_err(|e| (SrStatus::SrNumeric, e.message().to_string()))?;
        let s = CString::new(rec.to_json().to_string()).map_err(|e| (SrStatus::SrNumeric, e.to_string()))?;
        *out = s.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(sr_last_error_message()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn koebe_schwarzian_norm() {
        let k = sr_function_koebe();
        let mut n = SrNorm {
            value: 0.0,
            maximizer_re: 0.0,
            maximizer_im: 0.0,
            status: SrNormStatus::SrNormInterior,
            accuracy: 0.0,
        };
        let st = unsafe { sr_norm(k, SrDerivative::SrSchwarzian, 2.0, &mut n) };
        assert_eq!(st, SrStatus::SrOk);
        assert!((n.value - 6.0).abs() < 1e-8);
        unsafe { sr_function_free(k) };
    }

    #[test]
    fn dilation_and_pointwise() {
        let k = sr_function_koebe();
        let mut kr = ptr::null_mut();
        assert_eq!(unsafe { sr_function_dilate(k, 0.5, &mut kr) }, SrStatus::SrOk);
        let (mut re, mut im) = (0.0, 0.0);
        let st = unsafe { sr_derivative_at(kr, SrDerivative::SrSchwarzian, 0.0, 0.0, &mut re, &mut im) };
        assert_eq!(st, SrStatus::SrOk);
        // S_{k_r}(0) = r^2 S_k(0) = -6 r^2
        assert!((re + 1.5).abs() < 1e-14 && im.abs() < 1e-14);
        let st = unsafe { sr_derivative_at(k, SrDerivative::SrPreSchwarzian, -1.0, 0.0, &mut re, &mut im) };
        assert_eq!(st, SrStatus::SrPole);
        unsafe {
            sr_function_free(kr);
            sr_function_free(k);
        }
    }

    #[test]
    fn error_codes_and_messages() {
        let k = sr_function_koebe();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { sr_function_dilate(k, 1.5, &mut out) }, SrStatus::SrDomain);
        assert!(out.is_null());
        assert!(last_error().contains("r"));
        assert_eq!(
            unsafe { sr_function_dilate(ptr::null(), 0.5, &mut out) },
            SrStatus::SrNullPointer
        );
        let mut v = 0.0;
        assert_eq!(unsafe { sr_p_alpha(1.0, &mut v) }, SrStatus::SrOk);
        assert_eq!(v, 6.0);
        assert!(last_error().is_empty());
        assert_eq!(unsafe { sr_p_tilde(1.0, ptr::null_mut()) }, SrStatus::SrNullPointer);
        let bad = [1.0, 1.0];
        assert_eq!(
            unsafe { sr_function_series(bad.as_ptr(), 2, &mut out) },
            SrStatus::SrDomain
        );
        unsafe { sr_function_free(k) };
    }

    #[test]
    fn radii_and_bounds() {
        let mut r = SrRadius {
            radius: 0.0,
            method: SrRadiusMethod::SrClosedForm,
            residual: 0.0,
            bracket_width: 0.0,
            saturated: 0,
        };
        assert_eq!(unsafe { sr_b1_radius_exact(1e-12, &mut r) }, SrStatus::SrOk);
        assert_eq!(r.method, SrRadiusMethod::SrExactQuinticRoot);
        assert!((r.radius - 0.2489802).abs() < 1e-6);
        assert_eq!(unsafe { sr_n_radius(2.0, 2.0, 1e-12, &mut r) }, SrStatus::SrOk);
        assert!((r.radius - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let mut v = 0.0;
        assert_eq!(unsafe { sr_schwarzian_bound(0.5, 2.0, &mut v) }, SrStatus::SrOk);
        assert_eq!(v, 1.5);
        assert_eq!(unsafe { sr_preschwarzian_bound(0.5, 1.0, &mut v) }, SrStatus::SrOk);
        assert!((v - 2.03984046419).abs() < 1e-10);
    }

    #[test]
    fn series_handle() {
        let c = [0.0, 1.0, 0.25];
        let mut f = ptr::null_mut();
        assert_eq!(
            unsafe { sr_function_series(c.as_ptr(), c.len(), &mut f) },
            SrStatus::SrOk
        );
        let (mut re, mut im) = (0.0, 0.0);
        // T_f(0) = 2 a_2
        assert_eq!(
            unsafe { sr_derivative_at(f, SrDerivative::SrPreSchwarzian, 0.0, 0.0, &mut re, &mut im) },
            SrStatus::SrOk
        );
        assert!((re - 0.5).abs() < 1e-14);
        unsafe { sr_function_free(f) };
    }

    #[test]
    fn eliminate_json_round_trip() {
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { sr_eliminate_json(&mut s) }, SrStatus::SrOk);
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
        unsafe { sr_string_free(s) };
        assert!(
            text.contains(r#""quintic_ascending":[-64,277,-60,-61,-84,17]"#),
            "{text}"
        );
    }

    #[test]
    fn version_is_nul_terminated() {
        let v = unsafe { CStr::from_ptr(sr_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
