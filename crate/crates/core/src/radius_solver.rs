//! Radius problems: the largest `r` such that every dilation `f_r` of every
//! univalent `f` lies in `B_alpha(M)` or `N_alpha(M)`.

use num_traits::{One, Zero};

use crate::bounds::{c_alpha, p_alpha, p_tilde, preschwarzian_bound_tol};
use crate::error::{Error, Result};
use crate::exact_poly::{eliminate_b1_system, isolate_and_refine, sturm_count, Rational};
use crate::function_kernel::{dilate, AnalyticFunction};
use crate::norm_engine::{derivative_norm, ClassKind};

/// Lower and upper ends of the bisection bracket in `r`.
pub const BRACKET: (f64, f64) = (1e-6, 1.0 - 1e-9);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    ExactQuinticRoot,
    Bisection,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::ExactQuinticRoot => "exact_quintic_root",
            Method::Bisection => "bisection",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusResult {
    pub radius: f64,
    pub method: Method,
    /// `|bound(radius) - M|`
    pub residual: f64,
    /// Final bracket width in `r`; zero for closed forms.
    pub bracket_width: f64,
    /// Every dilation qualifies: `M` is at or above the limit of the bound
    /// as `r -> 1`, and `radius` is 1.
    pub saturated: bool,
}

impl RadiusResult {
    fn saturated() -> Self {
        RadiusResult {
            radius: 1.0,
            method: Method::ClosedForm,
            residual: 0.0,
            bracket_width: 0.0,
            saturated: true,
        }
    }
}

fn check_inputs(m: f64, alpha: f64, tol: f64) -> Result<()> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::domain("M", format!("{m} must be positive and finite")));
    }
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::domain("alpha", format!("{alpha} must be nonnegative")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol", format!("{tol} must be positive")));
    }
    Ok(())
}

/// Bisection for the crossing `bound(r) = m` of a strictly increasing bound.
/// The bracket signs are asserted before iterating.
fn bisect_increasing(bound: impl Fn(f64) -> Result<f64>, m: f64, tol: f64) -> Result<RadiusResult> {
    let (mut lo, mut hi) = BRACKET;
    let g_lo = bound(lo)? - m;
    let g_hi = bound(hi)? - m;
    if g_hi <= 0.0 {
        return Ok(RadiusResult::saturated());
    }
    if g_lo >= 0.0 {
        return Err(Error::Numeric(format!(
            "bound already exceeds M={m} at r={lo}; radius lies below the bracket"
        )));
    }
    let mut mid = 0.5 * (lo + hi);
    let mut residual = f64::INFINITY;
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let g = bound(mid)? - m;
        residual = g.abs();
        if g == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol && (residual <= tol || hi - lo <= 4.0 * f64::EPSILON) {
            break;
        }
    }
    if hi - lo > tol {
        return Err(Error::Numeric(format!("bisection did not reach tolerance {tol}")));
    }
    Ok(RadiusResult {
        radius: mid,
        method: Method::Bisection,
        residual,
        bracket_width: hi - lo,
        saturated: false,
    })
}

/// `B_alpha(M)`-radius of the univalent class by bisection on the sharp
/// bound (closed form when `alpha = 0`).
pub fn b_radius(m: f64, alpha: f64, tol: f64) -> Result<RadiusResult> {
    check_inputs(m, alpha, tol)?;
    if alpha == 0.0 {
        // 2r(2+r) = M(1-r^2)  <=>  (2+M) r^2 + 4r - M = 0
        let r = (-2.0 + (4.0 + 2.0 * m + m * m).sqrt()) / (2.0 + m);
        let residual = (2.0 * r * (2.0 + r) / ((1.0 - r) * (1.0 + r)) - m).abs();
        return Ok(RadiusResult {
            radius: r,
            method: Method::ClosedForm,
            residual,
            bracket_width: 0.0,
            saturated: false,
        });
    }
    b_radius_bisection(m, alpha, tol)
}

/// `B_alpha(M)`-radius by bisection on the sharp bound, with the bound
/// itself evaluated to `tol / 10`.
pub fn b_radius_bisection(m: f64, alpha: f64, tol: f64) -> Result<RadiusResult> {
    check_inputs(m, alpha, tol)?;
    if alpha > 0.0 && m >= p_alpha(alpha)? {
        return Ok(RadiusResult::saturated());
    }
    let inner_tol = tol / 10.0;
    bisect_increasing(|r| Ok(preschwarzian_bound_tol(r, alpha, inner_tol)?.value), m, tol)
}

/// `B_1(1)`-radius as the unique root in `(0, 1)` of the eliminated quintic.
pub fn b1_radius_exact(tol: f64) -> Result<RadiusResult> {
    if !(tol > 0.0) {
        return Err(Error::domain("tol", format!("{tol} must be positive")));
    }
    let elim = eliminate_b1_system()?;
    let (zero, one) = (Rational::zero(), Rational::one());
    let count = sturm_count(&elim.quintic, &zero, &one)?;
    if count != 1 {
        return Err(Error::AmbiguousRoot(count));
    }
    let root = isolate_and_refine(&elim.quintic, &zero, &one, tol)?;
    let bound = preschwarzian_bound_tol(root.value, 1.0, 1e-15)?.value;
    let width = root.bracket.width();
    Ok(RadiusResult {
        radius: root.value,
        method: Method::ExactQuinticRoot,
        residual: (bound - 1.0).abs(),
        bracket_width: num_traits::ToPrimitive::to_f64(&width).unwrap_or(f64::NAN),
        saturated: false,
    })
}

/// `N_alpha(M)`-radius: `sqrt(M/6)` when `M <= 3 alpha`, the explicit
/// inversion when `alpha = 0`, bisection on `C_alpha(r) = M` otherwise.
pub fn n_radius(m: f64, alpha: f64, tol: f64) -> Result<RadiusResult> {
    check_inputs(m, alpha, tol)?;
    if alpha > 0.0 && m >= p_tilde(alpha)? {
        return Ok(RadiusResult::saturated());
    }
    let closed = |radius: f64| -> Result<RadiusResult> {
        let residual = (c_alpha(radius, alpha)?.value - m).abs();
        Ok(RadiusResult {
            radius,
            method: Method::ClosedForm,
            residual,
            bracket_width: 0.0,
            saturated: false,
        })
    };
    if alpha == 0.0 {
        return closed(((m + 3.0 - (9.0 + 6.0 * m).sqrt()) / m).sqrt());
    }
    if m <= 3.0 * alpha {
        return closed((m / 6.0).sqrt());
    }
    n_radius_bisection(m, alpha, tol)
}

/// `N_alpha(M)`-radius by bisection on `C_alpha(r) = M` regardless of which
/// closed form applies.
pub fn n_radius_bisection(m: f64, alpha: f64, tol: f64) -> Result<RadiusResult> {
    check_inputs(m, alpha, tol)?;
    if alpha > 0.0 && m >= p_tilde(alpha)? {
        return Ok(RadiusResult::saturated());
    }
    bisect_increasing(|r| Ok(c_alpha(r, alpha)?.value), m, tol)
}

/// One empirical check of a radius claim.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusCheck {
    pub name: &'static str,
    pub r: f64,
    pub norm: f64,
    pub m: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusReport {
    pub kind: ClassKind,
    pub checks: Vec<RadiusCheck>,
}

impl RadiusReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks a claimed radius against the extremal (Koebe) function: the
/// numeric norm of `k_r` must not exceed `M` at `r`, and must exceed it at
/// `1.01 r` (clamped below 1).
pub fn verify_radius(kind: ClassKind, m: f64, alpha: f64, r: f64) -> Result<RadiusReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain("r", format!("{r} not in (0, 1)")));
    }
    const SLACK: f64 = 1e-7;
    let norm_at = |radius: f64| -> Result<f64> {
        let kr = dilate(&AnalyticFunction::Koebe, radius)?;
        Ok(derivative_norm(&kr, kind.derivative(), alpha)?.value)
    };
    let above = (r * 1.01).min(1.0 - 1e-9);
    let at_norm = norm_at(r)?;
    let above_norm = norm_at(above)?;
    Ok(RadiusReport {
        kind,
        checks: vec![
            RadiusCheck {
                name: "within_class_at_radius",
                r,
                norm: at_norm,
                m,
                pass: at_norm <= m + SLACK,
            },
            RadiusCheck {
                name: "outside_class_above_radius",
                r: above,
                norm: above_norm,
                m,
                pass: above_norm > m,
            },
        ],
    })
}
