use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{ToPrimitive, Zero};

use super::ratpoly::{RatPoly, Rational};
use crate::error::{Error, Result};

/// Polynomial in `x` whose coefficients are exact polynomials in `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<RatPoly>,
}

/// `multiplier * A = quotient * B + remainder`, `deg_x(remainder) < deg_x(B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoDivision {
    pub multiplier: RatPoly,
    pub quotient: BiPoly,
    pub remainder: BiPoly,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<RatPoly>) -> Self {
        while coeffs.last().is_some_and(RatPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    /// From a table of integer coefficients: `rows[i][j]` multiplies `x^i r^j`.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|row| RatPoly::from_ints(row)).collect())
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    /// A polynomial in `r` alone, viewed as degree 0 in `x`.
    pub fn from_r(p: RatPoly) -> Self {
        Self::new(vec![p])
    }

    /// `p(r) * x^k`
    pub fn monomial_x(p: RatPoly, k: usize) -> Self {
        let mut coeffs = vec![RatPoly::zero(); k];
        coeffs.push(p);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest degree in `r` over all `x`-coefficients.
    pub fn degree_r(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(RatPoly::degree).max()
    }

    pub fn coeffs(&self) -> &[RatPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading_x(&self) -> RatPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn mul_r(&self, p: &RatPoly) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * p).collect())
    }

    /// Multiply every coefficient by a rational constant.
    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn eval(&self, x: &Rational, r: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c.eval(r))
    }

    pub fn eval_f64(&self, x: f64, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.eval_f64(r))
    }

    /// Fix `r`, leaving a polynomial in `x`.
    pub fn at_r(&self, r: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c.eval(r)).collect())
    }

    /// Is `self` a rational multiple of `other` (both nonzero)?
    pub fn proportional_to(&self, other: &BiPoly) -> Option<Rational> {
        let k = (0..self.coeffs.len()).find(|&k| !self.coeffs[k].is_zero())?;
        let (a, b) = (&self.coeffs[k], other.coeff(k));
        if b.is_zero() {
            return None;
        }
        let c = a.leading() / b.leading();
        (other.scale(&c) == *self).then_some(c)
    }

    /// Float view for quick numeric checks.
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.coeffs
            .iter()
            .map(|p| p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// Human-readable form, grouped by powers of `x`.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let inner = c.display_in("r");
            terms.push(match k {
                0 => format!("({inner})"),
                1 => format!("({inner})x"),
                _ => format!("({inner})x^{k}"),
            });
        }
        terms.join(" + ")
    }
}

/// Pseudo-division of `a` by `b` with respect to `x`.
///
/// Each reduction step multiplies the running remainder by
/// `lc(b) / gcd(lc(b), lc(rem))` instead of the full `lc(b)`, so the final
/// multiplier is the smallest product of such factors over `Q[r]`. Only
/// polynomial-in-`r` multipliers are introduced; nothing is ever divided.
pub fn pseudo_divide(a: &BiPoly, b: &BiPoly) -> Result<PseudoDivision> {
    let db = b.degree_x().ok_or(Error::DivisionByZero)?;
    let lc_b = b.leading_x();
    let mut multiplier = RatPoly::one();
    let mut quotient = BiPoly::zero();
    let mut rem = a.clone();
    while let Some(dr) = rem.degree_x().filter(|&d| d >= db) {
        let lc_r = rem.leading_x();
        let g = lc_r.gcd(&lc_b);
        let scale_rem = lc_b.exact_div(&g)?;
        let scale_b = lc_r.exact_div(&g)?;
        let term = BiPoly::monomial_x(scale_b, dr - db);
        rem = &rem.mul_r(&scale_rem) - &(&term * b);
        quotient = &quotient.mul_r(&scale_rem) + &term;
        multiplier = &multiplier * &scale_rem;
        if rem.degree_x().is_some_and(|d| d >= dr) {
            return Err(Error::Internal("pseudo-division failed to reduce degree".into()));
        }
    }
    Ok(PseudoDivision {
        multiplier,
        quotient,
        remainder: rem,
    })
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: Self) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: Self) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: Self) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![RatPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}
