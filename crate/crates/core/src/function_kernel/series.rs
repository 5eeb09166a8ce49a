//! Truncated power series with complex coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncated Taylor expansion `sum_{n=0}^{N} a_n z^n`.
///
/// The vector always holds exactly `N + 1` coefficients. Binary operations
/// between series of different orders truncate to the smaller order.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series of order `order`, padding or truncating `coeffs`.
    pub fn new(mut coeffs: Vec<Complex64>, order: usize) -> Self {
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        PowerSeries { coeffs }
    }

    pub fn from_real(coeffs: &[f64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// Series whose coefficients are produced by `f(n)` for `n = 0..=order`.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> Complex64) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Termwise derivative; the order drops by one.
    pub fn derive(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::DegenerateSeries);
        }
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| c * n as f64)
                .collect(),
        })
    }

    /// Quotient `self / b` by forward recursion on the coefficients.
    pub fn divide(&self, b: &PowerSeries) -> Result<Self> {
        let b0 = b.coeff(0);
        if b0.norm() == 0.0 {
            return Err(Error::NonInvertibleSeries);
        }
        let order = self.order().min(b.order());
        let mut q: Vec<Complex64> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n];
            for (k, qk) in q.iter().enumerate() {
                acc -= qk * b.coeffs[n - k];
            }
            q.push(acc / b0);
        }
        Ok(PowerSeries { coeffs: q })
    }

    /// Coefficients of `z -> g(c z)`, i.e. `a_n c^n`.
    pub fn compose_scalar(&self, c: Complex64) -> Self {
        let mut pow = Complex64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                let out = a * pow;
                pow *= c;
                out
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// Radius inside which the truncated polynomial is trusted to represent
    /// the underlying function.
    ///
    /// The tail (upper half of the coefficients) bounds the truncation error:
    /// the returned radius is the largest `rho <= 1` with
    /// `|a_n| rho^n <= 1e-10 * scale` for every tail index `n`, where `scale`
    /// is the size of the leading coefficients. A series whose tail vanishes
    /// identically is an exact polynomial and is reliable on the whole disk.
    pub fn reliability_radius(&self) -> f64 {
        const TAIL_TOL: f64 = 1e-10;
        let order = self.order();
        let scale = self.coeffs.iter().take(2).map(|c| c.norm()).fold(1.0_f64, f64::max);
        let start = (order / 2).max(1);
        let mut radius = 1.0_f64;
        for n in start..=order {
            let m = self.coeffs[n].norm();
            if m > 0.0 {
                radius = radius.min((TAIL_TOL * scale / m).powf(1.0 / n as f64));
            }
        }
        radius
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order).map(|n| f(self.coeffs[n], rhs.coeffs[n])).collect(),
        }
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: Self) -> PowerSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: Self) -> PowerSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: Self) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| (0..=n).map(|k| self.coeffs[k] * rhs.coeffs[n - k]).sum())
            .collect();
        PowerSeries { coeffs }
    }
}
