//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::{Command, ExitCode};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schwarz_radius::bounds::{
    c_alpha, c_alpha_interior_formula, critical_poly_f64, p_alpha, preschwarzian_bound, radial_bound, Branch,
};
use schwarz_radius::exact_poly::{eliminate_b1_system, sturm_count, BiPoly, RatPoly, Rational};
use schwarz_radius::function_kernel::{dilate, pre_schwarzian, schwarzian, AnalyticFunction, DerivativeKind};
use schwarz_radius::norm_engine::{derivative_norm, radial_profile_max, NormStatus, RadialOptions};
use schwarz_radius::radius_solver::{b1_radius_exact, b_radius_bisection, n_radius, Method};

const R0: f64 = 0.2489802;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bisect(mut lo: f64, mut hi: f64, tol: f64, g: impl Fn(f64) -> f64) -> f64 {
    let g_lo = g(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == (g_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Outer bisection in `r` on `H(x0(r)) = 1`, inner bisection in `x` on the
/// critical polynomial.
fn nested_bisection_r0() -> f64 {
    let bound = |r: f64| {
        let q = critical_poly_f64(r, 1.0);
        let x0 = bisect(0.0, 1.0, 1e-15, |x| q.iter().rev().fold(0.0, |acc, c| acc * x + c));
        radial_bound(r, 1.0, x0)
    };
    bisect(1e-6, 1.0 - 1e-9, 1e-13, |r| bound(r) - 1.0)
}

fn criterion_1() -> Verdict {
    let exact = b1_radius_exact(1e-12).map_err(|e| e.to_string())?;
    let nested = nested_bisection_r0();
    let lib_bisect = b_radius_bisection(1.0, 1.0, 1e-10).map_err(|e| e.to_string())?;
    check(
        exact.method == Method::ExactQuinticRoot
            && (exact.radius - R0).abs() <= 1e-6
            && (nested - R0).abs() <= 1e-6
            && (exact.radius - nested).abs() <= 1e-6
            && (lib_bisect.radius - exact.radius).abs() <= 1e-6,
        format!(
            "quintic root {:.10}, nested bisection {:.10}, solver bisection {:.10}",
            exact.radius, nested, lib_bisect.radius
        ),
    )
}

fn criterion_2() -> Verdict {
    let e = eliminate_b1_system().map_err(|e| e.to_string())?;
    let q3 = BiPoly::from_int_rows(&[&[4, -13, 4], &[-16, -2, 16, 2], &[0, 4, -8, 9]]);
    let num = RatPoly::from_ints(&[22, -78, 55, -34]);
    let den = RatPoly::from_ints(&[96, -56, 33, -50, 17]);
    let (zero, one) = (Rational::from_integer(0.into()), Rational::from_integer(1.into()));
    let count = sturm_count(&e.quintic, &zero, &one).map_err(|e| e.to_string())?;
    // the sign variant +78r of the numerator does not zero Q4
    let printed = RatPoly::from_ints(&[22, 78, 55, -34]);
    let r = Rational::new(1.into(), 4.into());
    let x_printed = printed.eval(&r) / den.eval(&r);
    let printed_is_root = e.q4.eval(&x_printed, &r) == zero;
    check(
        e.q3 == q3
            && e.x_numerator == num
            && e.x_denominator == den
            && e.quintic_matches(&[-64, 277, -60, -61, -84, 17])
            && count == 1
            && !printed_is_root,
        format!(
            "Q3 exact, x(r) = ({}) / ({}), quintic {}, Sturm count on (0,1) = {count}; \
             '+78r' numerator variant is not a root of Q4",
            e.x_numerator.display_in("r"),
            e.x_denominator.display_in("r"),
            e.quintic.display_in("r")
        ),
    )
}

fn criterion_3() -> Verdict {
    let n = derivative_norm(&AnalyticFunction::Koebe, DerivativeKind::Schwarzian, 2.0).map_err(|e| e.to_string())?;
    check(
        (n.value - 6.0).abs() <= 1e-8 && n.status == NormStatus::Interior,
        format!("||S_k||_2 = {:.12} ({})", n.value, n.status.label()),
    )
}

fn criterion_4() -> Verdict {
    let rad = |m: f64, a: f64| n_radius(m, a, 1e-12).map(|r| r.radius).map_err(|e| e.to_string());
    let a = rad(2.0, 2.0)?;
    let b = rad(PI * PI / 2.0, 0.0)?;
    let c = rad(4.0, 1.0)?;
    check(
        (a - 1.0 / 3f64.sqrt()).abs() <= 1e-9 && (b - 0.5905).abs() <= 5e-4 && (c - 0.7905).abs() <= 5e-4,
        format!("N_2(2): {a:.12}, N_0(pi^2/2): {b:.6}, N_1(4): {c:.6}"),
    )
}

const SWEEP_R: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
const SWEEP_ALPHA: [f64; 3] = [0.5, 1.0, 2.0];

fn koebe_norm(r: f64, kind: DerivativeKind, alpha: f64) -> Result<f64, String> {
    let kr = dilate(&AnalyticFunction::Koebe, r).map_err(|e| e.to_string())?;
    Ok(derivative_norm(&kr, kind, alpha).map_err(|e| e.to_string())?.value)
}

fn criterion_5() -> Verdict {
    let mut worst = 0.0f64;
    for r in SWEEP_R {
        for alpha in SWEEP_ALPHA {
            let numeric = koebe_norm(r, DerivativeKind::PreSchwarzian, alpha)?;
            let closed = preschwarzian_bound(r, alpha).map_err(|e| e.to_string())?.value;
            worst = worst.max((numeric - closed).abs());
        }
    }
    check(worst <= 1e-7, format!("27 points, max |numeric - bound| = {worst:.3e}"))
}

fn criterion_6() -> Verdict {
    let mut worst = 0.0f64;
    let mut branches = BTreeSet::new();
    let mut points = Vec::new();
    for r in SWEEP_R {
        for alpha in SWEEP_ALPHA {
            points.push((r, alpha));
        }
    }
    // alpha = 0 exercises the boundary branch
    points.extend([(0.3, 0.0), (0.6, 0.0)]);
    for (r, alpha) in points {
        let numeric = koebe_norm(r, DerivativeKind::Schwarzian, alpha)?;
        let closed = c_alpha(r, alpha).map_err(|e| e.to_string())?;
        worst = worst.max((numeric - closed.value).abs());
        branches.insert(closed.branch.label());
    }
    let mut seam = 0.0f64;
    for r in SWEEP_R {
        seam = seam.max((c_alpha_interior_formula(r, 2.0 * r * r) - 6.0 * r * r).abs());
    }
    let all = [
        Branch::SchwarzianAlphaZero,
        Branch::SchwarzianInterior,
        Branch::SchwarzianConstant,
    ]
    .iter()
    .all(|b| branches.contains(b.label()));
    check(
        worst <= 1e-7 && all && seam <= 1e-12,
        format!(
            "max |numeric - C_alpha| = {worst:.3e}, branches {}/3, seam gap {seam:.1e}",
            branches.len()
        ),
    )
}

fn criterion_7() -> Verdict {
    let grid = [1.25, 1.5, 2.0, 3.0, 5.0];
    let mut worst = 0.0f64;
    let mut prev = f64::INFINITY;
    let mut monotone = true;
    for alpha in grid {
        let closed = p_alpha(alpha).map_err(|e| e.to_string())?;
        let direct = radial_profile_max(
            |x| 2.0 * ((1.0 - x) * (1.0 + x)).powf(alpha - 1.0) * (2.0 + x),
            &RadialOptions::default(),
        );
        worst = worst.max((closed - direct.value).abs());
        monotone &= closed <= prev;
        prev = closed;
    }
    let p200 = p_alpha(200.0).map_err(|e| e.to_string())?;
    check(
        worst <= 1e-8 && monotone && p200 > 4.0 && p200 < 4.05,
        format!("max |closed - direct| = {worst:.3e}, non-increasing: {monotone}, P(200) = {p200:.6}"),
    )
}

fn criterion_8() -> Verdict {
    let mut functions = vec![AnalyticFunction::Koebe];
    functions.extend((0..8).map(|j| AnalyticFunction::RotatedKoebe {
        theta: 0.3 + 2.0 * PI * j as f64 / 8.0,
    }));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut area, mut point, mut kn) = (0.0f64, 0.0f64, 0.0f64);
    let mut count = 0;
    for f in &functions {
        for _ in 0..500 {
            let z = Complex64::from_polar(0.999 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
            let w = 1.0 - z.norm_sqr();
            let t = f.pre_schwarzian_at(z).ok_or("pole inside the disk")?;
            let s = f.schwarzian_at(z).ok_or("pole inside the disk")?;
            area = area.max((t * w - 2.0 * z.conj()).norm());
            point = point.max(t.norm() * w / (2.0 * (2.0 + z.norm())));
            kn = kn.max(w * w * s.norm());
            count += 1;
        }
    }
    check(
        area <= 4.0 + 1e-9 && point <= 1.0 + 1e-9 && kn <= 6.0 + 1e-9,
        format!(
            "{count} samples; max area-theorem lhs {area:.12} (<= 4), pointwise ratio {point:.12} (<= 1), \
             Kraus-Nehari lhs {kn:.12} (<= 6)"
        ),
    )
}

fn criterion_9() -> Verdict {
    let order = 32;
    let k = AnalyticFunction::Koebe;
    let ts = pre_schwarzian(&k, order).map_err(|e| e.to_string())?;
    let ss = schwarzian(&k, order).map_err(|e| e.to_string())?;
    let mut coeff_err = 0.0f64;
    for n in 0..=ts.order().min(ss.order()) {
        let t_ref = if n % 2 == 0 { 4.0 } else { 2.0 };
        let s_ref = if n % 2 == 0 { -6.0 * (n / 2 + 1) as f64 } else { 0.0 };
        coeff_err = coeff_err
            .max((ts.coeff(n) - t_ref).norm())
            .max((ss.coeff(n) - s_ref).norm());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut point_err = 0.0f64;
    for _ in 0..50 {
        let z = Complex64::from_polar(0.4 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
        let t = k.pre_schwarzian_at(z).ok_or("pole")?;
        let s = k.schwarzian_at(z).ok_or("pole")?;
        point_err = point_err.max((ts.eval(z) - t).norm()).max((ss.eval(z) - s).norm());
    }
    check(
        coeff_err <= 1e-12 && point_err <= 1e-10,
        format!("order {order}: coefficient error {coeff_err:.2e}, pointwise error (50 points) {point_err:.2e}"),
    )
}

fn criterion_10() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_schwarz-radius");
    let run = || {
        Command::new(bin)
            .args(["reproduce", "--format", "csv"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    let text = String::from_utf8_lossy(&a.stdout).into_owned();
    let header_ok = text.lines().next() == Some("quantity,computed,paper,delta,method");
    let rows = text.lines().count().saturating_sub(1);
    check(
        a.status.code() == Some(0) && header_ok && a.stdout == b.stdout && a.stderr.is_empty(),
        format!(
            "exit {:?}, {rows} rows within tolerance, CSV byte-stable: {}",
            a.status.code(),
            a.stdout == b.stdout
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("B1(1)-radius by quintic and nested bisection", criterion_1),
        ("elimination regression", criterion_2),
        ("Koebe Schwarzian norm", criterion_3),
        ("N-radius examples", criterion_4),
        ("pre-Schwarzian sharpness sweep", criterion_5),
        ("Schwarzian sharpness sweep", criterion_6),
        ("P(alpha) agreement", criterion_7),
        ("inequality properties", criterion_8),
        ("series oracle equivalence", criterion_9),
        ("reproduce command", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {:>2} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
