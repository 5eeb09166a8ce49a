//! Sharp bounds over the univalent class for the norms of dilations.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_poly::{isolate_and_refine, rat, sturm_count, RatPoly, Rational};

/// Which case of a piecewise bound produced the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `H(x0)` at the interior critical point of the radial bound.
    PreSchwarzianInterior,
    /// `2r(2+r)/(1-r^2)`, attained as `x -> 1`.
    PreSchwarzianAlphaZero,
    /// `6r^2/(1-r^2)^2`, attained as `t -> 1`.
    SchwarzianAlphaZero,
    /// `6r^2 (alpha/2r^2)^alpha ((1-alpha/2)/(1-r^2))^(2-alpha)`, `0 < alpha < 2r^2`.
    SchwarzianInterior,
    /// `6r^2`, `alpha >= 2r^2`.
    SchwarzianConstant,
    /// `2(1-x0^2)^(alpha-1)(2+x0)`, the limit of `H(x0)` as `r -> 1` (`alpha > 1`).
    PAlphaInterior,
    Infinite,
    Six,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::PreSchwarzianInterior => "H(x0)",
            Branch::PreSchwarzianAlphaZero => "2r(2+r)/(1-r²)",
            Branch::SchwarzianAlphaZero => "6r²/(1-r²)²",
            Branch::SchwarzianInterior => "6r²(α/2r²)^α((1-α/2)/(1-r²))^(2-α)",
            Branch::SchwarzianConstant => "6r²",
            Branch::PAlphaInterior => "2(1-x0²)^(α-1)(2+x0)",
            Branch::Infinite => "+inf",
            Branch::Six => "6",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    /// Positive, possibly `+inf`.
    pub value: f64,
    /// Maximizer of the radial majorant in `[0, 1]` (`x0` or `t0`).
    pub maximizer: f64,
    /// The supremum is a limit at the right endpoint rather than attained.
    pub at_boundary: bool,
    pub branch: Branch,
    /// The root `x0` was certified unique by a Sturm count over the rationals.
    pub certified: bool,
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("r", format!("{r} not in (0, 1)")))
    }
}

/// Radial majorant `H(x) = 2r (1-x^2)^alpha (2 + r x) / (1 - r^2 x^2)`.
pub fn radial_bound(r: f64, alpha: f64, x: f64) -> f64 {
    2.0 * r * ((1.0 - x) * (1.0 + x)).powf(alpha) * (2.0 + r * x) / ((1.0 - r * x) * (1.0 + r * x))
}

/// Coefficients (ascending) of
/// `Q(x) = r - 4(alpha - r^2) x - (1 - r^2 + 2 alpha) r x^2 + 4(alpha - 1) r^2 x^3 + (2 alpha - 1) r^3 x^4`,
/// whose unique root in `(0, 1)` is the maximizer of `H`.
pub fn critical_poly_f64(r: f64, alpha: f64) -> [f64; 5] {
    let r2 = r * r;
    [
        r,
        -4.0 * (alpha - r2),
        -(1.0 - r2 + 2.0 * alpha) * r,
        4.0 * (alpha - 1.0) * r2,
        (2.0 * alpha - 1.0) * r2 * r,
    ]
}

/// Exact counterpart of [`critical_poly_f64`].
pub fn critical_poly(r: &Rational, alpha: &Rational) -> RatPoly {
    let one = Rational::one();
    let r2 = r * r;
    RatPoly::new(vec![
        r.clone(),
        rat(-4) * (alpha - &r2),
        -((&one - &r2 + rat(2) * alpha) * r),
        rat(4) * (alpha - &one) * &r2,
        (rat(2) * alpha - &one) * &r2 * r,
    ])
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// Safeguarded Newton iteration inside a sign-change bracket.
pub(crate) fn bracketed_root(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Numeric(format!("no sign change on [{lo}, {hi}]")));
    }
    let a_positive = fa > 0.0;
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == a_positive {
            a = x;
        } else {
            b = x;
        }
        if b - a <= tol {
            return Ok(0.5 * (a + b));
        }
        let d = df(x);
        let step = fx / d;
        let newton = x - step;
        if d != 0.0 && newton > a && newton < b {
            if step.abs() <= 0.5 * tol {
                return Ok(newton);
            }
            x = newton;
        } else {
            x = 0.5 * (a + b);
        }
    }
    Ok(0.5 * (a + b))
}

/// Sharp bound on `||T_{f_r}||_alpha` over the univalent class (floating
/// point route: sign-change bracketing of `Q` on `(0, 1)`, Newton inside the
/// bracket). `alpha = 0` is routed to [`preschwarzian_bound_alpha0`].
pub fn preschwarzian_bound(r: f64, alpha: f64) -> Result<BoundResult> {
    preschwarzian_bound_tol(r, alpha, 1e-15)
}

/// As [`preschwarzian_bound`] with an explicit tolerance on `x0`.
pub fn preschwarzian_bound_tol(r: f64, alpha: f64, tol: f64) -> Result<BoundResult> {
    check_r(r)?;
    if alpha == 0.0 {
        return preschwarzian_bound_alpha0(r);
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain("alpha", format!("{alpha} must be positive")));
    }
    let q = critical_poly_f64(r, alpha);
    let dq = [q[1], 2.0 * q[2], 3.0 * q[3], 4.0 * q[4]];
    if !(horner(&q, 0.0) > 0.0 && horner(&q, 1.0) < 0.0) {
        return Err(Error::Internal(format!(
            "critical polynomial has no sign change on (0,1) at r={r}, alpha={alpha}"
        )));
    }
    let x0 = bracketed_root(|x| horner(&q, x), |x| horner(&dq, x), 0.0, 1.0, tol)?;
    Ok(BoundResult {
        value: radial_bound(r, alpha, x0),
        maximizer: x0,
        at_boundary: false,
        branch: Branch::PreSchwarzianInterior,
        certified: false,
    })
}

/// Exact route for rational `(r, alpha)`: the root of `Q` in `(0, 1)` is
/// certified unique by a Sturm count, then refined by exact bisection.
pub fn preschwarzian_bound_exact(r: &Rational, alpha: &Rational, tol: f64) -> Result<BoundResult> {
    let rf = r.to_f64().unwrap_or(f64::NAN);
    let af = alpha.to_f64().unwrap_or(f64::NAN);
    check_r(rf)?;
    if alpha.is_zero() {
        return preschwarzian_bound_alpha0(rf);
    }
    if !(af > 0.0) {
        return Err(Error::domain("alpha", format!("{alpha} must be positive")));
    }
    let q = critical_poly(r, alpha);
    let (zero, one) = (Rational::zero(), Rational::one());
    let count = sturm_count(&q, &zero, &one)?;
    if count != 1 {
        return Err(Error::Internal(format!(
            "critical polynomial has {count} roots in (0,1) at r={r}, alpha={alpha}"
        )));
    }
    let root = isolate_and_refine(&q, &zero, &one, tol)?;
    Ok(BoundResult {
        value: radial_bound(rf, af, root.value),
        maximizer: root.value,
        at_boundary: false,
        branch: Branch::PreSchwarzianInterior,
        certified: true,
    })
}

/// `||T_{f_r}||_0 <= 2r(2+r)/(1-r^2)`, approached as `|z| -> 1`.
pub fn preschwarzian_bound_alpha0(r: f64) -> Result<BoundResult> {
    check_r(r)?;
    Ok(BoundResult {
        value: 2.0 * r * (2.0 + r) / ((1.0 - r) * (1.0 + r)),
        maximizer: 1.0,
        at_boundary: true,
        branch: Branch::PreSchwarzianAlphaZero,
        certified: false,
    })
}

/// `sup_{f in S} ||T_f||_alpha`.
pub fn p_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain("alpha", format!("{alpha} must be positive")));
    }
    if alpha < 1.0 {
        return Ok(f64::INFINITY);
    }
    if alpha == 1.0 {
        return Ok(6.0);
    }
    if alpha.is_infinite() {
        return Ok(4.0);
    }
    let s = (4.0 * alpha * alpha - 6.0 * alpha + 3.0).sqrt();
    // (3a-3)^(a-1) / (a-3/2+s)^(a-1) as a single power
    let ratio = (3.0 * alpha - 3.0) / (alpha - 1.5 + s);
    Ok((2.0 * alpha + s) * ratio.powf(alpha - 1.0) / (alpha - 0.5))
}

/// Maximizer of `2(1-x^2)^(alpha-1)(2+x)` for `alpha > 1`: the root in
/// `(0, 1)` of `(2 alpha - 1) x^2 + 4(alpha - 1) x - 1`.
///
/// As `alpha -> 1+` the maximizer tends to 1.
pub fn x0_of_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::domain("alpha", format!("{alpha} must exceed 1")));
    }
    let s = (4.0 * alpha * alpha - 6.0 * alpha + 3.0).sqrt();
    let x0 = (s - 2.0 * (alpha - 1.0)) / (2.0 * alpha - 1.0);
    let lhs = (1.0 - x0) * (1.0 + x0);
    let rhs = 6.0 * (alpha - 1.0) / (2.0 * alpha - 3.0 + 2.0 * s);
    if (lhs - rhs).abs() > 1e-12 {
        return Err(Error::Internal(format!(
            "1 - x0^2 = {lhs} disagrees with {rhs} at alpha={alpha}"
        )));
    }
    Ok(x0)
}

/// Sharp bound `C_alpha(r)` on `||S_{f_r}||_alpha` over the univalent class.
pub fn c_alpha(r: f64, alpha: f64) -> Result<BoundResult> {
    check_r(r)?;
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::domain("alpha", format!("{alpha} must be nonnegative")));
    }
    let r2 = r * r;
    let one_minus = (1.0 - r) * (1.0 + r);
    if alpha == 0.0 {
        return Ok(BoundResult {
            value: 6.0 * r2 / (one_minus * one_minus),
            maximizer: 1.0,
            at_boundary: true,
            branch: Branch::SchwarzianAlphaZero,
            certified: false,
        });
    }
    if alpha < 2.0 * r2 {
        let value = 6.0 * r2 * (alpha / (2.0 * r2)).powf(alpha) * ((1.0 - alpha / 2.0) / one_minus).powf(2.0 - alpha);
        return Ok(BoundResult {
            value,
            maximizer: (2.0 * r2 - alpha) / ((2.0 - alpha) * r2),
            at_boundary: false,
            branch: Branch::SchwarzianInterior,
            certified: false,
        });
    }
    Ok(BoundResult {
        value: 6.0 * r2,
        maximizer: 0.0,
        at_boundary: false,
        branch: Branch::SchwarzianConstant,
        certified: false,
    })
}

/// Middle-branch formula of [`c_alpha`] without the branch selection.
pub fn c_alpha_interior_formula(r: f64, alpha: f64) -> f64 {
    let r2 = r * r;
    6.0 * r2 * (alpha / (2.0 * r2)).powf(alpha) * ((1.0 - alpha / 2.0) / (1.0 - r2)).powf(2.0 - alpha)
}

/// `sup_{f in S} ||S_f||_alpha`: `+inf` below 2, else 6.
pub fn p_tilde(alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::domain("alpha", format!("{alpha} must be nonnegative")));
    }
    Ok(if alpha < 2.0 { f64::INFINITY } else { 6.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::ratio;
    use crate::norm_engine::{radial_profile_max, RadialOptions};

    #[test]
    fn large_alpha_tends_to_h_at_zero() {
        let b = preschwarzian_bound(0.3, 50.0).unwrap();
        assert!((b.value - 1.2).abs() < 1e-3, "{}", b.value);
        assert!(b.maximizer < 0.01);
    }

    #[test]
    fn exact_and_float_routes_agree() {
        let exact = preschwarzian_bound_exact(&ratio(1, 2), &rat(1), 1e-14).unwrap();
        let float = preschwarzian_bound(0.5, 1.0).unwrap();
        assert!(exact.certified);
        assert!((exact.maximizer - float.maximizer).abs() < 1e-12);
        assert!((exact.value - float.value).abs() < 1e-14);
    }

    #[test]
    fn critical_point_matches_profile_maximum() {
        let b = preschwarzian_bound_exact(&ratio(1, 2), &rat(1), 1e-14).unwrap();
        let m = radial_profile_max(|x| radial_bound(0.5, 1.0, x), &RadialOptions::default());
        assert!((m.x - b.maximizer).abs() < 1e-8, "{} vs {}", m.x, b.maximizer);
        assert!((m.value - b.value).abs() < 1e-14);
    }

    #[test]
    fn alpha_zero_route() {
        let b = preschwarzian_bound(0.5, 0.0).unwrap();
        assert_eq!(b.branch, Branch::PreSchwarzianAlphaZero);
        assert!((b.value - 10.0 / 3.0).abs() < 1e-15);
        let v = preschwarzian_bound_alpha0(0.9).unwrap().value;
        assert!((v - 2.0 * 0.9 * 2.9 / 0.19).abs() < 1e-12);
        assert!((v - 27.473684210526).abs() < 1e-9);
        let small = preschwarzian_bound_alpha0(1e-6).unwrap().value;
        assert!((small / 4e-6 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn p_alpha_cases() {
        assert_eq!(p_alpha(1.0).unwrap(), 6.0);
        assert!(p_alpha(0.5).unwrap().is_infinite());
        let x0 = (7f64.sqrt() - 2.0) / 3.0;
        let want = 2.0 * (1.0 - x0 * x0) * (2.0 + x0);
        assert!((p_alpha(2.0).unwrap() - want).abs() < 1e-13);
        assert!((p_alpha(2.0).unwrap() - 4.2252).abs() < 1e-4);
        assert!(p_alpha(0.0).is_err());
    }

    #[test]
    fn x0_cases() {
        let x = x0_of_alpha(2.0).unwrap();
        assert!((x - (7f64.sqrt() - 2.0) / 3.0).abs() < 1e-15);
        assert!((3.0 * x * x + 4.0 * x - 1.0).abs() < 1e-14);
        // alpha -> 1+: x0 -> 1
        let near = x0_of_alpha(1.0 + 1e-9).unwrap();
        assert!((1.0 - near) < 1e-8, "{near}");
        assert!(x0_of_alpha(1.0).is_err());
    }

    #[test]
    fn x0_at_ten_is_certified_root() {
        let p = RatPoly::from_ints(&[-1, 36, 19]);
        let root = isolate_and_refine(&p, &rat(0), &rat(1), 1e-14).unwrap();
        assert!((x0_of_alpha(10.0).unwrap() - root.value).abs() < 1e-13);
    }

    #[test]
    fn c_alpha_branches() {
        let b = c_alpha(0.5, 2.0).unwrap();
        assert_eq!(b.branch, Branch::SchwarzianConstant);
        assert_eq!(b.value, 1.5);
        let b = c_alpha(0.5, 0.0).unwrap();
        assert_eq!(b.branch, Branch::SchwarzianAlphaZero);
        assert!((b.value - 8.0 / 3.0).abs() < 1e-15);
        let b = c_alpha(0.9, 1.0).unwrap();
        assert_eq!(b.branch, Branch::SchwarzianInterior);
        assert!((b.value - 1.5 / 0.19).abs() < 1e-12);
        assert!((b.value - 7.8947).abs() < 1e-4);
        assert!(b.maximizer > 0.0 && b.maximizer < 1.0);
    }

    #[test]
    fn c_alpha_seam_is_continuous() {
        for r in [0.2, 0.5, 0.7, 0.95] {
            let alpha = 2.0 * r * r;
            assert!((c_alpha_interior_formula(r, alpha) - 6.0 * r * r).abs() < 1e-12);
        }
    }

    #[test]
    fn p_tilde_cases() {
        assert_eq!(p_tilde(2.0).unwrap(), 6.0);
        assert!(p_tilde(1.999).unwrap().is_infinite());
        assert_eq!(p_tilde(100.0).unwrap(), 6.0);
    }

    #[test]
    fn domain_errors() {
        assert!(preschwarzian_bound(1.0, 1.0).is_err());
        assert!(preschwarzian_bound(0.5, -1.0).is_err());
        assert!(c_alpha(0.0, 1.0).is_err());
        assert!(c_alpha(0.5, -0.1).is_err());
    }
}
