//! Weighted sup-norms `||phi||_alpha = sup_{|z|<1} (1 - |z|^2)^alpha |phi(z)|`
//! and class membership tests.
//!
//! The search is a coarse polar grid followed by coordinate-wise
//! golden-section refinement (radius, then angle, repeated) around the best
//! local maxima of the grid. Suprema that are only approached as `|z| -> 1`
//! are taken from an analytic boundary limit when the target provides one.

mod golden;

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

pub use golden::{golden_section_max, radial_profile_max, RadialMax, RadialOptions};

use crate::error::{Error, Result};
use crate::function_kernel::{AnalyticFunction, DerivativeKind};

/// A function on the open unit disk that can be evaluated pointwise.
///
/// Implementations must be safe to evaluate concurrently.
pub trait DiskFunction: Sync {
    /// `None` at a pole.
    fn eval(&self, z: Complex64) -> Option<Complex64>;

    /// Closed-form supremum over angles of
    /// `lim_{rho -> 1} (1 - rho^2)^alpha |phi(rho e^{i theta})|`, with the
    /// angle where it is attained. `None` when unknown.
    fn boundary_limit(&self, _alpha: f64) -> Option<(f64, f64)> {
        None
    }

    /// Radius beyond which pointwise values are not trusted.
    fn search_radius(&self) -> f64 {
        1.0
    }
}

/// Adapts a closure into a [`DiskFunction`] with no boundary information.
pub struct FnTarget<F>(pub F);

impl<F> DiskFunction for FnTarget<F>
where
    F: Fn(Complex64) -> Option<Complex64> + Sync,
{
    fn eval(&self, z: Complex64) -> Option<Complex64> {
        (self.0)(z)
    }
}

/// `T_f` or `S_f` of an [`AnalyticFunction`], evaluated by closed forms
/// where available.
pub struct DerivativeOf<'a> {
    pub f: &'a AnalyticFunction,
    pub kind: DerivativeKind,
}

impl<'a> DerivativeOf<'a> {
    pub fn new(f: &'a AnalyticFunction, kind: DerivativeKind) -> Self {
        DerivativeOf { f, kind }
    }
}

impl DiskFunction for DerivativeOf<'_> {
    fn eval(&self, z: Complex64) -> Option<Complex64> {
        self.f.derivative_at(self.kind, z)
    }

    fn boundary_limit(&self, alpha: f64) -> Option<(f64, f64)> {
        if self.f.is_identity() {
            return Some((0.0, 0.0));
        }
        let fam = self.f.koebe_family()?;
        let angle = (-fam.theta).rem_euclid(TAU);
        // weight exponent at which the undilated map has a finite nonzero limit
        let (critical, limit) = match self.kind {
            DerivativeKind::PreSchwarzian => (1.0, 6.0),
            DerivativeKind::Schwarzian => (2.0, 6.0),
        };
        let value = if fam.r < 1.0 {
            if alpha > 0.0 {
                0.0
            } else {
                let r = fam.r;
                match self.kind {
                    DerivativeKind::PreSchwarzian => r * (2.0 * r + 4.0) / (1.0 - r * r),
                    DerivativeKind::Schwarzian => 6.0 * r * r / (1.0 - r * r).powi(2),
                }
            }
        } else if alpha < critical {
            f64::INFINITY
        } else if alpha == critical {
            limit
        } else {
            0.0
        };
        Some((value, angle))
    }

    fn search_radius(&self) -> f64 {
        self.f.reliable_radius()
    }
}

/// Grid and refinement parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormOptions {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// Argument tolerance of the golden-section refinement.
    pub tol: f64,
    /// Evaluation stops at `|z| = 1 - boundary_eps`.
    pub boundary_eps: f64,
    /// Weighted values above this while still growing at the cutoff are
    /// reported as `+inf`.
    pub blowup: f64,
    /// Number of grid local maxima refined.
    pub refine_cells: usize,
    pub max_sweeps: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            radial_nodes: 1024,
            angular_nodes: 256,
            tol: 1e-10,
            boundary_eps: 1e-8,
            blowup: 1e12,
            refine_cells: 4,
            max_sweeps: 60,
        }
    }
}

/// How the reported value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormStatus {
    /// Attained at an interior point.
    Interior,
    /// Supremum is an analytic limit as `|z| -> 1`.
    BoundaryLimit,
    /// The weighted modulus is unbounded (pole, analytic divergence, or
    /// growth past the blow-up threshold).
    Infinite,
    /// Still increasing at the search cutoff with no boundary information:
    /// `value` is a lower bound.
    LowerBound,
}

impl NormStatus {
    pub fn label(&self) -> &'static str {
        match self {
            NormStatus::Interior => "interior",
            NormStatus::BoundaryLimit => "boundary_limit",
            NormStatus::Infinite => "infinite",
            NormStatus::LowerBound => "lower_bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult {
    /// Nonnegative, possibly `+inf`.
    pub value: f64,
    /// Location of the maximum; on the unit circle for boundary limits.
    pub maximizer: Complex64,
    pub status: NormStatus,
    /// Empirical absolute error estimate.
    pub accuracy: f64,
    pub evaluations: u64,
    /// Search was confined to `|z| <= search_radius` (`1.0` when unrestricted).
    pub search_radius: f64,
}

impl NormResult {
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    value: f64,
    rho: f64,
    theta: f64,
}

impl Candidate {
    /// Larger value wins; values equal up to rounding are broken by smaller
    /// radius, then smaller angle.
    fn beats(&self, other: &Candidate) -> bool {
        let slack = 8.0 * f64::EPSILON * other.value.abs().max(self.value.abs());
        if self.value > other.value + slack {
            return true;
        }
        if self.value < other.value - slack {
            return false;
        }
        (self.rho, self.theta) < (other.rho, other.theta)
    }
}

fn weight(rho: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        1.0
    } else {
        ((1.0 - rho) * (1.0 + rho)).powf(alpha)
    }
}

fn weighted(phi: &dyn DiskFunction, alpha: f64, rho: f64, theta: f64) -> Option<f64> {
    let z = Complex64::from_polar(rho, theta);
    phi.eval(z).map(|v| weight(rho, alpha) * v.norm())
}

/// A refined interior maximum that drops by orders of magnitude a short
/// distance away in every direction is a pole, not a smooth peak (where the
/// drop is only second order in the distance).
fn looks_like_pole(phi: &dyn DiskFunction, alpha: f64, at: &Candidate) -> (bool, u64) {
    const PROBE: f64 = 1e-6;
    const RATIO: f64 = 1e3;
    let steps = [
        (PROBE, 0.0),
        (-PROBE, 0.0),
        (0.0, PROBE / at.rho),
        (0.0, -PROBE / at.rho),
    ];
    let pole = steps.iter().all(|&(d_rho, d_theta)| {
        let v = weighted(phi, alpha, at.rho + d_rho, at.theta + d_theta).unwrap_or(f64::INFINITY);
        at.value > RATIO * v
    });
    (pole, steps.len() as u64)
}

/// Numerically evaluates `||phi||_alpha`.
pub fn weighted_sup_norm(phi: &dyn DiskFunction, alpha: f64, opts: &NormOptions) -> Result<NormResult> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::domain(
            "alpha",
            format!("{alpha} must be a finite nonnegative number"),
        ));
    }
    let nr = opts.radial_nodes.max(3);
    let nt = opts.angular_nodes.max(4);
    let cap = phi.search_radius().clamp(0.0, 1.0);
    let restricted = cap < 1.0;
    let rho_max = (1.0 - opts.boundary_eps).min(cap);
    let dr = rho_max / (nr - 1) as f64;
    let dt = TAU / nt as f64;
    let rho_at = |i: usize| if i == nr - 1 { rho_max } else { i as f64 * dr };

    // rows are independent; the reduction below is sequential and ordered
    let grid: Vec<Vec<f64>> = (0..nr)
        .into_par_iter()
        .map(|i| {
            let rho = rho_at(i);
            (0..nt)
                .map(|j| weighted(phi, alpha, rho, j as f64 * dt).unwrap_or(f64::INFINITY))
                .collect()
        })
        .collect();
    let mut evaluations = (nr * nt) as u64;

    for (i, row) in grid.iter().enumerate() {
        if let Some(j) = row.iter().position(|v| v.is_infinite()) {
            return Ok(NormResult {
                value: f64::INFINITY,
                maximizer: Complex64::from_polar(rho_at(i), j as f64 * dt),
                status: NormStatus::Infinite,
                accuracy: 0.0,
                evaluations,
                search_radius: cap,
            });
        }
    }

    // local maxima of the grid (angle periodic), best first
    let mut peaks: Vec<(usize, usize)> = Vec::new();
    for i in 0..nr {
        for j in 0..nt {
            // the origin is a single point
            if i == 0 && j > 0 {
                continue;
            }
            let v = grid[i][j];
            let neighbors = [
                (i.checked_sub(1), Some(j)),
                ((i + 1 < nr).then_some(i + 1), Some(j)),
                (Some(i), Some((j + nt - 1) % nt)),
                (Some(i), Some((j + 1) % nt)),
            ];
            let is_peak = neighbors.iter().all(|&(a, b)| match (a, b) {
                (Some(a), Some(b)) => grid[a][b] <= v,
                _ => true,
            });
            if is_peak {
                peaks.push((i, j));
            }
        }
    }
    let cand = |(i, j): (usize, usize)| Candidate {
        value: grid[i][j],
        rho: rho_at(i),
        theta: j as f64 * dt,
    };
    peaks.sort_by(|&a, &b| {
        let (ca, cb) = (cand(a), cand(b));
        if ca.beats(&cb) {
            std::cmp::Ordering::Less
        } else if cb.beats(&ca) {
            std::cmp::Ordering::Greater
        } else {
            a.cmp(&b)
        }
    });
    peaks.truncate(opts.refine_cells.max(1));

    let mut best: Option<Candidate> = None;
    let mut best_accuracy = 0.0_f64;
    for &(i, j) in &peaks {
        let start = cand((i, j));
        let rho_lo = rho_at(i.saturating_sub(1));
        let rho_hi = rho_at((i + 1).min(nr - 1));
        let theta_c = start.theta;
        let mut cur = start;
        let mut last_gain = 0.0;
        for _ in 0..opts.max_sweeps {
            let prev = cur.value;
            let theta = cur.theta;
            let (rho, v, n1) = golden_section_max(
                |r| weighted(phi, alpha, r, theta).unwrap_or(f64::INFINITY),
                rho_lo,
                rho_hi,
                opts.tol,
            );
            let (theta, v2, n2) = if rho == 0.0 {
                (0.0, v, 0)
            } else {
                golden_section_max(
                    |t| weighted(phi, alpha, rho, t).unwrap_or(f64::INFINITY),
                    theta_c - dt,
                    theta_c + dt,
                    opts.tol,
                )
            };
            evaluations += (n1 + n2) as u64;
            let next = Candidate {
                value: v.max(v2),
                rho,
                theta: if v2 >= v { theta } else { cur.theta },
            };
            if next.value >= cur.value {
                cur = next;
            }
            last_gain = cur.value - prev;
            if last_gain <= 4.0 * f64::EPSILON * cur.value.abs() {
                break;
            }
        }
        if start.beats(&cur) {
            cur = start;
        }
        cur.theta = cur.theta.rem_euclid(TAU);
        if best.as_ref().is_none_or(|b| cur.beats(b)) {
            best = Some(cur);
            best_accuracy = last_gain.abs();
        }
    }
    let best = best.expect("at least one grid peak");
    if best.value.is_infinite() {
        return Ok(NormResult {
            value: f64::INFINITY,
            maximizer: Complex64::from_polar(best.rho, best.theta),
            status: NormStatus::Infinite,
            accuracy: 0.0,
            evaluations,
            search_radius: cap,
        });
    }
    if best.rho > 0.0 && best.rho < rho_max - dr {
        let (pole, used) = looks_like_pole(phi, alpha, &best);
        evaluations += used;
        if pole {
            return Ok(NormResult {
                value: f64::INFINITY,
                maximizer: Complex64::from_polar(best.rho, best.theta),
                status: NormStatus::Infinite,
                accuracy: 0.0,
                evaluations,
                search_radius: cap,
            });
        }
    }
    let accuracy = best_accuracy.max(16.0 * f64::EPSILON * best.value.abs());

    if !restricted {
        if let Some((limit, angle)) = phi.boundary_limit(alpha) {
            if limit > best.value {
                let status = if limit.is_infinite() {
                    NormStatus::Infinite
                } else {
                    NormStatus::BoundaryLimit
                };
                return Ok(NormResult {
                    value: limit,
                    maximizer: Complex64::from_polar(1.0, angle),
                    status,
                    accuracy: 0.0,
                    evaluations,
                    search_radius: cap,
                });
            }
            return Ok(NormResult {
                value: best.value,
                maximizer: Complex64::from_polar(best.rho, best.theta),
                status: NormStatus::Interior,
                accuracy,
                evaluations,
                search_radius: cap,
            });
        }
    }

    // no boundary information: look at the radial profile at the cutoff
    let near_cutoff = best.rho >= rho_max - dr;
    let growing = near_cutoff && {
        let inner = weighted(phi, alpha, rho_max - dr, best.theta).unwrap_or(f64::INFINITY);
        let outer = weighted(phi, alpha, rho_max, best.theta).unwrap_or(f64::INFINITY);
        evaluations += 2;
        outer > inner
    };
    let status = if growing && !restricted && best.value > opts.blowup {
        NormStatus::Infinite
    } else if growing {
        NormStatus::LowerBound
    } else {
        NormStatus::Interior
    };
    Ok(NormResult {
        value: if status == NormStatus::Infinite {
            f64::INFINITY
        } else {
            best.value
        },
        maximizer: Complex64::from_polar(best.rho, best.theta),
        status,
        accuracy,
        evaluations,
        search_radius: cap,
    })
}

/// `||T_f||_alpha` or `||S_f||_alpha` with default options.
pub fn derivative_norm(f: &AnalyticFunction, kind: DerivativeKind, alpha: f64) -> Result<NormResult> {
    weighted_sup_norm(&DerivativeOf::new(f, kind), alpha, &NormOptions::default())
}

/// Which class is tested: `B_alpha(M)` bounds `T_f`, `N_alpha(M)` bounds `S_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    B,
    N,
}

impl ClassKind {
    pub fn derivative(&self) -> DerivativeKind {
        match self {
            ClassKind::B => DerivativeKind::PreSchwarzian,
            ClassKind::N => DerivativeKind::Schwarzian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub member: bool,
    /// `M - norm`; negative when outside the class.
    pub margin: f64,
    pub norm: NormResult,
}

/// Tests `f` against `B_alpha(M)` or `N_alpha(M)`. The computed norm is
/// compared with `M` allowing for its reported accuracy (at least a relative
/// 1e-12), so extremal functions sitting exactly on the bound are members.
pub fn in_class(f: &AnalyticFunction, which: ClassKind, alpha: f64, m: f64) -> Result<Membership> {
    if !(m > 0.0) {
        return Err(Error::domain("M", format!("{m} must be positive")));
    }
    let norm = derivative_norm(f, which.derivative(), alpha)?;
    let slack = norm.accuracy.max(1e-12 * m);
    Ok(Membership {
        member: norm.value <= m + slack,
        margin: m - norm.value,
        norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_kernel::dilate;

    fn coarse() -> NormOptions {
        NormOptions {
            radial_nodes: 256,
            angular_nodes: 64,
            ..NormOptions::default()
        }
    }

    #[test]
    fn identity_has_zero_norm() {
        let id = AnalyticFunction::Identity;
        for alpha in [0.0, 1.0, 2.5] {
            let n =
                weighted_sup_norm(&DerivativeOf::new(&id, DerivativeKind::PreSchwarzian), alpha, &coarse()).unwrap();
            assert_eq!(n.value, 0.0);
        }
    }

    #[test]
    fn koebe_schwarzian_norm_is_six() {
        let n = derivative_norm(&AnalyticFunction::Koebe, DerivativeKind::Schwarzian, 2.0).unwrap();
        assert!((n.value - 6.0).abs() < 1e-8, "{n:?}");
    }

    #[test]
    fn koebe_pre_schwarzian_norm_is_six() {
        let n = derivative_norm(&AnalyticFunction::Koebe, DerivativeKind::PreSchwarzian, 1.0).unwrap();
        assert_eq!(n.value, 6.0);
        assert_eq!(n.status, NormStatus::BoundaryLimit);
    }

    #[test]
    fn dilated_koebe_alpha_zero() {
        let k = dilate(&AnalyticFunction::Koebe, 0.5).unwrap();
        let n = weighted_sup_norm(&DerivativeOf::new(&k, DerivativeKind::PreSchwarzian), 0.0, &coarse()).unwrap();
        assert!((n.value - 10.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn divergent_weight_is_infinite() {
        let n = weighted_sup_norm(
            &DerivativeOf::new(&AnalyticFunction::Koebe, DerivativeKind::PreSchwarzian),
            0.5,
            &coarse(),
        )
        .unwrap();
        assert!(n.is_infinite());
        assert_eq!(n.status, NormStatus::Infinite);
    }

    #[test]
    fn pole_inside_disk_is_infinite() {
        let phi = FnTarget(|z: Complex64| {
            let w = Complex64::new(1.0, 0.0) / (z - Complex64::new(0.5, 0.0));
            (w.re.is_finite() && w.im.is_finite()).then_some(w)
        });
        let n = weighted_sup_norm(&phi, 1.0, &coarse()).unwrap();
        assert!(n.is_infinite());
    }

    #[test]
    fn growth_without_boundary_info_is_flagged() {
        // 1/(1-z) with alpha = 0.5: weighted modulus grows like (1-x)^{-1/2}
        let phi = FnTarget(|z: Complex64| Some(Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - z)));
        let n = weighted_sup_norm(&phi, 0.5, &coarse()).unwrap();
        assert_eq!(n.status, NormStatus::LowerBound);
        let tight = NormOptions {
            blowup: 100.0,
            ..coarse()
        };
        assert!(weighted_sup_norm(&phi, 0.5, &tight).unwrap().is_infinite());
    }

    #[test]
    fn negative_alpha_rejected() {
        let id = AnalyticFunction::Identity;
        assert!(derivative_norm(&id, DerivativeKind::Schwarzian, -1.0).is_err());
    }

    #[test]
    fn class_membership() {
        let id = AnalyticFunction::Identity;
        let m = in_class(&id, ClassKind::B, 1.0, 1.0).unwrap();
        assert!(m.member);
        assert_eq!(m.margin, 1.0);

        let k = AnalyticFunction::Koebe;
        let m = in_class(&k, ClassKind::N, 2.0, 6.0).unwrap();
        assert!(m.member);
        assert!(m.margin.abs() < 1e-9);
        assert!(!in_class(&k, ClassKind::N, 2.0, 2.0).unwrap().member);
    }

    #[test]
    fn deterministic_under_parallelism() {
        let k = dilate(&AnalyticFunction::RotatedKoebe { theta: 1.0 }, 0.7).unwrap();
        let phi = DerivativeOf::new(&k, DerivativeKind::PreSchwarzian);
        let a = weighted_sup_norm(&phi, 1.0, &coarse()).unwrap();
        let b = weighted_sup_norm(&phi, 1.0, &coarse()).unwrap();
        assert_eq!(a, b);
    }
}
