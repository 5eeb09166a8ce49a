//! Elimination of `x` from the two-equation system whose common root in
//! `(0,1)^2` gives the radius for `||T_{f_r}||_1 <= 1`.
//!
//! The system is `Q1(x, r) = 0` (critical point of the radial bound) and
//! `Q2(x, r) = 0` (the bound equals one). Two pseudo-divisions reduce it to a
//! remainder linear in `x`, whose root `x(r)` is substituted back.

use num_traits::Zero;

use super::bipoly::{pseudo_divide, BiPoly, PseudoDivision};
use super::ratpoly::{RatPoly, Rational};
use crate::error::{Error, Result};

/// `r^3 x^4 - (3 - r^2) r x^2 - 4 (1 - r^2) x + r`
pub fn q1() -> BiPoly {
    BiPoly::from_int_rows(&[&[0, 1], &[-4, 0, 4], &[0, -3, 0, 1], &[], &[0, 0, 0, 1]])
}

/// `2r (1 - x^2)(2 + r x) - (1 - r^2 x^2)`
pub fn q2() -> BiPoly {
    BiPoly::from_int_rows(&[&[-1, 4], &[0, 0, 2], &[0, -4, 1], &[0, 0, -2]])
}

/// Every intermediate of the elimination, all exact.
#[derive(Debug, Clone, PartialEq)]
pub struct B1Elimination {
    pub q1: BiPoly,
    pub q2: BiPoly,
    /// `Q1` divided by `Q2`.
    pub first: PseudoDivision,
    /// `Q2` divided by `first.remainder`.
    pub second: PseudoDivision,
    /// Remainder of the first step (quadratic in `x`).
    pub q3: BiPoly,
    /// Remainder of the second step (linear in `x`).
    pub q4: BiPoly,
    /// `x(r) = x_numerator / x_denominator`, the root of `q4`, in lowest
    /// terms with a primitive denominator of positive leading coefficient.
    pub x_numerator: RatPoly,
    pub x_denominator: RatPoly,
    /// `q3(x(r), r) * x_denominator^2` before any factor is stripped.
    pub substituted: RatPoly,
    /// Factor stripped from `substituted`, together with its multiplicity.
    pub stripped_factor: RatPoly,
    pub stripped_multiplicity: usize,
    /// Rational constant `c` with
    /// `substituted = c * stripped_factor^multiplicity * quintic`.
    pub scale: Rational,
    /// Primitive, positive leading coefficient.
    pub quintic: RatPoly,
}

/// Runs the full elimination chain.
pub fn eliminate_b1_system() -> Result<B1Elimination> {
    let q1 = q1();
    let q2 = q2();
    let first = pseudo_divide(&q1, &q2)?;
    let q3 = first.remainder.clone();
    if q3.degree_x() != Some(2) {
        return Err(Error::EliminationStructure(format!(
            "first remainder has x-degree {:?}, expected 2",
            q3.degree_x()
        )));
    }
    let second = pseudo_divide(&q2, &q3)?;
    let q4 = second.remainder.clone();
    if q4.degree_x() != Some(1) {
        return Err(Error::EliminationStructure(format!(
            "second remainder has x-degree {:?}, expected 1",
            q4.degree_x()
        )));
    }

    // q4 = c1 x + c0  =>  x = -c0 / c1
    let c1 = q4.coeff(1);
    let c0 = q4.coeff(0);
    let g = c1.gcd(&c0);
    let mut num = (-&c0).exact_div(&g)?;
    let mut den = c1.exact_div(&g)?;
    let norm = den.normalized();
    let factor = norm.leading() / den.leading();
    num = num.scale(&factor);
    den = norm;

    let a2 = q3.coeff(2);
    let a1 = q3.coeff(1);
    let a0 = q3.coeff(0);
    let substituted = &(&(&a2 * &(&num * &num)) + &(&a1 * &(&num * &den))) + &(&a0 * &(&den * &den));
    if substituted.is_zero() {
        return Err(Error::EliminationStructure("substitution vanished identically".into()));
    }

    // the factor shared by the x^2 coefficient of q3 and the second multiplier
    let stripped_factor = a2.normalized().gcd(&second.multiplier).normalized();
    let mut rest = substituted.clone();
    let mut multiplicity = 0;
    if stripped_factor.degree().is_some_and(|d| d > 0) {
        loop {
            let (q, r) = rest.div_rem(&stripped_factor)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            multiplicity += 1;
        }
    }
    let quintic = rest.normalized();
    // substituted = scale * factor^m * quintic
    let mut rebuilt = quintic.clone();
    for _ in 0..multiplicity {
        rebuilt = &rebuilt * &stripped_factor;
    }
    let scale = substituted.leading() / rebuilt.leading();
    if rebuilt.scale(&scale) != substituted {
        return Err(Error::Internal(
            "factorization does not rebuild the substitution".into(),
        ));
    }

    Ok(B1Elimination {
        q1,
        q2,
        first,
        second,
        q3,
        q4,
        x_numerator: num,
        x_denominator: den,
        substituted,
        stripped_factor,
        stripped_multiplicity: multiplicity,
        scale,
        quintic,
    })
}

impl B1Elimination {
    /// `x(r)` at a rational `r`; `None` where the denominator vanishes.
    pub fn x_at(&self, r: &Rational) -> Option<Rational> {
        let d = self.x_denominator.eval(r);
        (!d.is_zero()).then(|| self.x_numerator.eval(r) / d)
    }

    pub fn x_at_f64(&self, r: f64) -> f64 {
        self.x_numerator.eval_f64(r) / self.x_denominator.eval_f64(r)
    }

    /// Does the computed quintic match the polynomial with the given
    /// ascending integer coefficients, up to a nonzero rational factor?
    pub fn quintic_matches(&self, ascending: &[i64]) -> bool {
        let other = RatPoly::from_ints(ascending);
        !other.is_zero() && other.normalized() == self.quintic
    }
}

/// Primitive quintic whose unique root in `(0, 1)` is the radius.
pub fn b1_quintic() -> Result<RatPoly> {
    Ok(eliminate_b1_system()?.quintic)
}
