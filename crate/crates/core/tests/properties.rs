use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use schwarz_radius::bounds::{c_alpha, preschwarzian_bound};
use schwarz_radius::exact_poly::{
    eliminate_b1_system, pseudo_divide, ratio, sturm_count_nudged, BiPoly, RatPoly, Rational,
};
use schwarz_radius::function_kernel::{dilate, AnalyticFunction, PowerSeries};

fn bipoly_strategy() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, 0..4), 1..=5).prop_map(|rows| {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        BiPoly::from_int_rows(&refs)
    })
}

fn ratpoly_strategy() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(-9i64..=9, 2..7)
        .prop_map(|c| RatPoly::from_ints(&c))
        .prop_filter("degree >= 1", |p| p.degree().unwrap_or(0) >= 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn pseudo_division_identity(a in bipoly_strategy(), b in bipoly_strategy()) {
        prop_assume!(!b.is_zero());
        let d = pseudo_divide(&a, &b).unwrap();
        let lhs = a.mul_r(&d.multiplier);
        let rhs = &(&d.quotient * &b) + &d.remainder;
        prop_assert_eq!(lhs, rhs);
        if let (Some(dr), Some(db)) = (d.remainder.degree_x(), b.degree_x()) {
            prop_assert!(dr < db);
        }
    }

    #[test]
    fn sturm_count_invariant_under_scaling(p in ratpoly_strategy(), k in 1i64..50, neg in any::<bool>()) {
        let c = if neg { ratio(-k, 7) } else { ratio(k, 7) };
        let (a, b) = (ratio(-3, 1), ratio(3, 1));
        let (n1, _, _) = sturm_count_nudged(&p, &a, &b).unwrap();
        let (n2, _, _) = sturm_count_nudged(&p.scale(&c), &a, &b).unwrap();
        prop_assert_eq!(n1, n2);
    }

    #[test]
    fn dilation_scaling_laws(r in 0.05f64..0.95, theta in 0.0f64..std::f64::consts::TAU, rho in 0.0f64..0.9, phi in 0.0f64..std::f64::consts::TAU) {
        let f = AnalyticFunction::RotatedKoebe { theta };
        let fr = dilate(&f, r).unwrap();
        let z = Complex64::from_polar(rho, phi);
        let t = fr.pre_schwarzian_at(z).unwrap();
        let t_ref = f.pre_schwarzian_at(z * r).unwrap() * r;
        prop_assert!((t - t_ref).norm() <= 1e-12 * (1.0 + t_ref.norm()));
        let s = fr.schwarzian_at(z).unwrap();
        let s_ref = f.schwarzian_at(z * r).unwrap() * (r * r);
        prop_assert!((s - s_ref).norm() <= 1e-12 * (1.0 + s_ref.norm()));
    }

    #[test]
    fn bounds_increase_with_r(alpha in 0.3f64..5.0, r in 0.05f64..0.9) {
        let r2 = r + 0.05;
        prop_assert!(preschwarzian_bound(r2, alpha).unwrap().value > preschwarzian_bound(r, alpha).unwrap().value);
        prop_assert!(c_alpha(r2, alpha).unwrap().value > c_alpha(r, alpha).unwrap().value);
    }

    #[test]
    fn schwarzian_is_mobius_invariant(a2 in -0.3f64..0.3, a3 in -0.1f64..0.1, c in -0.5f64..0.5, rho in 0.0f64..0.3, phi in 0.0f64..std::f64::consts::TAU) {
        // g = f / (1 + c f) is a Mobius image of f with g(0) = 0, g'(0) = 1
        let order = 48;
        let f = PowerSeries::from_real(&[0.0, 1.0, a2, a3], order);
        let one = PowerSeries::constant(Complex64::new(1.0, 0.0), order);
        let g = f.divide(&(&one + &f.scale(Complex64::new(c, 0.0)))).unwrap();
        let fa = AnalyticFunction::series(f).unwrap();
        let ga = AnalyticFunction::series(g).unwrap();
        let z = Complex64::from_polar(rho, phi);
        let (sf, sg) = (fa.schwarzian_at(z).unwrap(), ga.schwarzian_at(z).unwrap());
        prop_assert!((sf - sg).norm() <= 1e-9 * (1.0 + sf.norm()), "{sf} vs {sg}");
    }
}

#[test]
fn q4_vanishes_on_x_of_r_for_random_rationals() {
    use rand::{Rng, SeedableRng};
    let e = eliminate_b1_system().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 20 {
        let r = BigRational::new(
            BigInt::from(rng.gen_range(-200i64..200)),
            BigInt::from(rng.gen_range(1i64..97)),
        );
        let Some(x) = e.x_at(&r) else { continue };
        assert_eq!(e.q4.eval(&x, &r), Rational::from_integer(0.into()), "r = {r}");
        let den = e.x_denominator.eval(&r);
        assert_eq!(e.q3.eval(&x, &r) * &den * &den, e.substituted.eval(&r), "r = {r}");
        checked += 1;
    }
}
