use num_complex::Complex64;

use super::series::PowerSeries;
use crate::error::{Error, Result};

/// Values of `f` and its first three derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub f: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
}

/// Which derivative operator a norm or series refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivativeKind {
    /// `T_f = f''/f'`
    PreSchwarzian,
    /// `S_f = T_f' - T_f^2 / 2`
    Schwarzian,
}

/// A normalized analytic function on the unit disk (`f(0) = 0`, `f'(0) = 1`).
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFunction {
    Identity,
    /// `k(z) = z / (1 - z)^2`
    Koebe,
    /// `e^{-i theta} k(e^{i theta} z)`
    RotatedKoebe {
        theta: f64,
    },
    Series(PowerSeries),
    /// `f(r z) / r` for `0 < r < 1`.
    Dilated {
        base: Box<AnalyticFunction>,
        r: f64,
    },
}

/// Closed-form description of a (possibly dilated, rotated) Koebe function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct KoebeFamily {
    /// Rotation angle; the singular direction of the undilated map is `-theta`.
    pub theta: f64,
    /// Total dilation factor, `1.0` when undilated.
    pub r: f64,
}

fn cplx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn finite(z: Complex64) -> Option<Complex64> {
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}

fn koebe_jet(z: Complex64) -> Jet {
    let one = cplx(1.0);
    let w = one - z;
    let w2 = w * w;
    let w3 = w2 * w;
    let w4 = w3 * w;
    Jet {
        f: z / w2,
        d1: (one + z) / w3,
        d2: (z * 2.0 + 4.0) / w4,
        d3: (z * 6.0 + 18.0) / (w4 * w),
    }
}

fn koebe_pre_schwarzian(z: Complex64) -> Complex64 {
    (z * 2.0 + 4.0) / ((cplx(1.0) - z) * (cplx(1.0) + z))
}

fn koebe_schwarzian(z: Complex64) -> Complex64 {
    let d = (cplx(1.0) - z) * (cplx(1.0) + z);
    cplx(-6.0) / (d * d)
}

impl AnalyticFunction {
    /// Wraps a Taylor series; the normalization `a_0 = 0`, `a_1 = 1` is
    /// checked to 1e-12 and then imposed exactly.
    pub fn series(s: PowerSeries) -> Result<Self> {
        if s.order() < 1 {
            return Err(Error::domain("series", "order must be at least 1"));
        }
        let a0 = s.coeff(0);
        let a1 = s.coeff(1);
        if a0.norm() > 1e-12 || (a1 - cplx(1.0)).norm() > 1e-12 {
            return Err(Error::domain(
                "series",
                format!("expected f(0)=0 and f'(0)=1, got a0={a0}, a1={a1}"),
            ));
        }
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = cplx(0.0);
        coeffs[1] = cplx(1.0);
        let order = s.order();
        Ok(AnalyticFunction::Series(PowerSeries::new(coeffs, order)))
    }

    /// Derivatives up to third order at `z`.
    pub fn jet(&self, z: Complex64) -> Jet {
        match self {
            AnalyticFunction::Identity => Jet {
                f: z,
                d1: cplx(1.0),
                d2: cplx(0.0),
                d3: cplx(0.0),
            },
            AnalyticFunction::Koebe => koebe_jet(z),
            AnalyticFunction::RotatedKoebe { theta } => {
                let u = Complex64::from_polar(1.0, *theta);
                let j = koebe_jet(u * z);
                Jet {
                    f: j.f / u,
                    d1: j.d1,
                    d2: j.d2 * u,
                    d3: j.d3 * u * u,
                }
            }
            AnalyticFunction::Series(s) => {
                let d1 = s.derive().expect("normalized series has order >= 1");
                let (d2, d3) = match d1.derive() {
                    Ok(d2) => {
                        let d3 = d2.derive().map(|d| d.eval(z)).unwrap_or_default();
                        (d2.eval(z), d3)
                    }
                    Err(_) => (cplx(0.0), cplx(0.0)),
                };
                Jet {
                    f: s.eval(z),
                    d1: d1.eval(z),
                    d2,
                    d3,
                }
            }
            AnalyticFunction::Dilated { base, r } => {
                let j = base.jet(z * *r);
                Jet {
                    f: j.f / *r,
                    d1: j.d1,
                    d2: j.d2 * *r,
                    d3: j.d3 * (*r * *r),
                }
            }
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.jet(z).f
    }

    /// Pointwise `T_f(z)`; closed forms bypass series truncation.
    /// `None` at a pole (or a critical point of `f`).
    pub fn pre_schwarzian_at(&self, z: Complex64) -> Option<Complex64> {
        let value = match self {
            AnalyticFunction::Identity => cplx(0.0),
            AnalyticFunction::Koebe => koebe_pre_schwarzian(z),
            AnalyticFunction::RotatedKoebe { theta } => {
                let u = Complex64::from_polar(1.0, *theta);
                u * koebe_pre_schwarzian(u * z)
            }
            AnalyticFunction::Series(_) => {
                let j = self.jet(z);
                j.d2 / j.d1
            }
            AnalyticFunction::Dilated { base, r } => base.pre_schwarzian_at(z * *r)? * *r,
        };
        finite(value)
    }

    /// Pointwise `S_f(z)`.
    pub fn schwarzian_at(&self, z: Complex64) -> Option<Complex64> {
        let value = match self {
            AnalyticFunction::Identity => cplx(0.0),
            AnalyticFunction::Koebe => koebe_schwarzian(z),
            AnalyticFunction::RotatedKoebe { theta } => {
                let u = Complex64::from_polar(1.0, *theta);
                u * u * koebe_schwarzian(u * z)
            }
            AnalyticFunction::Series(_) => {
                let j = self.jet(z);
                let t = j.d2 / j.d1;
                j.d3 / j.d1 - t * t * 1.5
            }
            AnalyticFunction::Dilated { base, r } => base.schwarzian_at(z * *r)? * (*r * *r),
        };
        finite(value)
    }

    pub fn derivative_at(&self, kind: DerivativeKind, z: Complex64) -> Option<Complex64> {
        match kind {
            DerivativeKind::PreSchwarzian => self.pre_schwarzian_at(z),
            DerivativeKind::Schwarzian => self.schwarzian_at(z),
        }
    }

    /// Taylor coefficients of `f` up to `order` (fewer for a custom series of
    /// lower order: the result never claims more than the input carries).
    pub fn taylor(&self, order: usize) -> PowerSeries {
        match self {
            AnalyticFunction::Identity => PowerSeries::from_real(&[0.0, 1.0], order),
            AnalyticFunction::Koebe => PowerSeries::from_fn(order, |n| cplx(n as f64)),
            AnalyticFunction::RotatedKoebe { theta } => PowerSeries::from_fn(order, |n| {
                if n == 0 {
                    cplx(0.0)
                } else {
                    Complex64::from_polar(n as f64, (n as f64 - 1.0) * theta)
                }
            }),
            AnalyticFunction::Series(s) => s.truncate(order.min(s.order())),
            AnalyticFunction::Dilated { base, r } => {
                let b = base.taylor(order);
                PowerSeries::from_fn(b.order(), |n| {
                    if n == 0 {
                        cplx(0.0)
                    } else {
                        b.coeff(n) * r.powi(n as i32 - 1)
                    }
                })
            }
        }
    }

    /// Search radius inside which pointwise values are trusted. Closed forms
    /// are exact everywhere; custom series are limited to 0.9 of their
    /// reliability radius unless they are exact polynomials.
    pub fn reliable_radius(&self) -> f64 {
        match self {
            AnalyticFunction::Series(s) => {
                let rho = s.reliability_radius();
                if rho >= 1.0 {
                    1.0
                } else {
                    0.9 * rho
                }
            }
            AnalyticFunction::Dilated { base, r } => (base.reliable_radius() / r).min(1.0),
            _ => 1.0,
        }
    }

    pub(crate) fn koebe_family(&self) -> Option<KoebeFamily> {
        match self {
            AnalyticFunction::Koebe => Some(KoebeFamily { theta: 0.0, r: 1.0 }),
            AnalyticFunction::RotatedKoebe { theta } => Some(KoebeFamily { theta: *theta, r: 1.0 }),
            AnalyticFunction::Dilated { base, r } => base.koebe_family().map(|k| KoebeFamily { r: k.r * r, ..k }),
            _ => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, AnalyticFunction::Identity)
    }
}

/// `f_r(z) = f(r z) / r`; `r = 0` gives the identity.
pub fn dilate(f: &AnalyticFunction, r: f64) -> Result<AnalyticFunction> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain("dilation radius", format!("{r} not in [0, 1)")));
    }
    if r == 0.0 {
        return Ok(AnalyticFunction::Identity);
    }
    Ok(match f {
        AnalyticFunction::Identity => AnalyticFunction::Identity,
        AnalyticFunction::Series(s) => {
            let scaled = s.compose_scalar(cplx(r)).scale(cplx(1.0 / r));
            AnalyticFunction::Series(scaled)
        }
        AnalyticFunction::Dilated { base, r: inner } => AnalyticFunction::Dilated {
            base: base.clone(),
            r: inner * r,
        },
        other => AnalyticFunction::Dilated {
            base: Box::new(other.clone()),
            r,
        },
    })
}

/// `T_f` as a power series of order `order`.
pub fn pre_schwarzian(f: &AnalyticFunction, order: usize) -> Result<PowerSeries> {
    let taylor = f.taylor(order + 2);
    let d1 = taylor.derive()?;
    let d2 = match d1.derive() {
        Ok(d2) => d2,
        // f = z at order 1: T_f vanishes identically
        Err(Error::DegenerateSeries) => return Ok(PowerSeries::zero(0)),
        Err(e) => return Err(e),
    };
    d2.divide(&d1)
}

/// `S_f = T_f' - T_f^2 / 2` as a power series of order `order`.
pub fn schwarzian(f: &AnalyticFunction, order: usize) -> Result<PowerSeries> {
    let t = pre_schwarzian(f, order + 1)?;
    if t.order() == 0 {
        return Ok(PowerSeries::zero(0));
    }
    let dt = t.derive()?;
    let half_sq = (&t * &t).scale(cplx(0.5));
    Ok(&dt - &half_sq)
}
