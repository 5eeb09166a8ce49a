//! One-dimensional maximization: golden-section search and dense-grid
//! radial profiles.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximizes a unimodal `f` on `[a, b]` to an argument tolerance `tol`.
///
/// The endpoints are compared against the interior optimum so maxima sitting
/// on the bracket edge are returned as such. Returns `(x, f(x), evaluations)`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64, usize) {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut evals = 0;
    let mut eval = |x: f64| {
        evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let f_lo = eval(lo);
    let f_hi = eval(hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = eval(x2);
        }
    }
    let (mut x, mut v) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if f_lo >= v {
        (x, v) = (a.min(b), f_lo);
    }
    if f_hi > v {
        (x, v) = (a.max(b), f_hi);
    }
    (x, v, evals)
}

/// Dense grid and refinement settings for [`radial_profile_max`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOptions {
    pub nodes: usize,
    /// The profile is sampled on `[0, 1 - boundary_eps]`.
    pub boundary_eps: f64,
    pub tol: f64,
}

impl Default for RadialOptions {
    fn default() -> Self {
        RadialOptions {
            nodes: 1024,
            boundary_eps: 1e-8,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMax {
    pub x: f64,
    pub value: f64,
    /// The profile was still increasing at `1 - boundary_eps`; the true
    /// supremum is a boundary limit and `value` is only a lower bound.
    pub increasing_at_cutoff: bool,
    pub evaluations: usize,
}

/// Maximizes a continuous `h` on `[0, 1)` by a uniform grid followed by
/// golden-section refinement around the best node (ties go to the smaller x).
pub fn radial_profile_max(h: impl Fn(f64) -> f64, opts: &RadialOptions) -> RadialMax {
    let n = opts.nodes.max(3);
    let top = 1.0 - opts.boundary_eps;
    let xs: Vec<f64> = (0..n).map(|i| top * i as f64 / (n - 1) as f64).collect();
    let vals: Vec<f64> = xs.iter().map(|&x| h(x)).collect();
    let mut best = 0;
    for (i, &v) in vals.iter().enumerate() {
        if v > vals[best] {
            best = i;
        }
    }
    let lo = xs[best.saturating_sub(1)];
    let hi = xs[(best + 1).min(n - 1)];
    let (x, value, evals) = golden_section_max(&h, lo, hi, opts.tol);
    let (mut x, mut value) = if vals[best] > value {
        (xs[best], vals[best])
    } else {
        (x, value)
    };
    let mut evaluations = n + evals;
    if best > 0 && best < n - 1 {
        let (xp, used) = polish_stationary(&h, lo, hi);
        evaluations += used;
        if let Some(xp) = xp {
            let vp = h(xp);
            if vp >= value - 8.0 * f64::EPSILON * value.abs() {
                (x, value) = (xp, vp);
            }
        }
    }
    RadialMax {
        x,
        value,
        increasing_at_cutoff: best == n - 1 && vals[n - 1] > vals[n - 2],
        evaluations,
    }
}

/// Locates the zero of a central-difference derivative inside `[lo, hi]` by
/// bisection.
fn polish_stationary(h: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (Option<f64>, usize) {
    let step = (1e-5_f64).min((hi - lo) / 8.0);
    let slope = |x: f64| h(x + step) - h(x - step);
    let (mut a, mut b) = (lo + step, hi - step);
    if !(slope(a) > 0.0 && slope(b) < 0.0) {
        return (None, 4);
    }
    let mut used = 4;
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        used += 2;
        if slope(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    (Some(0.5 * (a + b)), used)
}
