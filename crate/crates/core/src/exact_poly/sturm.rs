use num_traits::{Signed, ToPrimitive, Zero};

use super::ratpoly::{ratio, RatPoly, Rational};
use crate::error::{Error, Result};

/// Open interval `(lower, upper)` holding `count` distinct real roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lower: Rational,
    pub upper: Rational,
    pub sign_change_count: usize,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }
}

/// A root refined inside a certified bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedRoot {
    pub value: f64,
    pub bracket: RootInterval,
}

/// Sequence `p, p', -rem(p, p'), ...` ending at the last nonzero remainder.
pub fn sturm_sequence(p: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone()];
    let mut next = p.derivative();
    while !next.is_zero() {
        let prev = seq.last().expect("nonempty");
        let (_, rem) = prev.div_rem(&next).expect("nonzero divisor");
        seq.push(next);
        // remainders are rescaled to primitive form; positive scaling keeps
        // every sign intact
        next = -&rem;
        if !next.is_zero() {
            let c = next.content();
            next = next.scale(&(Rational::from_integer(1.into()) / c));
        }
    }
    seq
}

fn sign_changes(seq: &[RatPoly], t: &Rational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|q| q.eval(t))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in `(a, b)`.
pub fn sturm_count(p: &RatPoly, a: &Rational, b: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::domain("polynomial", "identically zero"));
    }
    if a >= b {
        return Err(Error::domain("interval", format!("({a}, {b}) is empty")));
    }
    for t in [a, b] {
        if p.eval(t).is_zero() {
            return Err(Error::EndpointRoot(t.to_string()));
        }
    }
    let seq = sturm_sequence(p);
    Ok(sign_changes(&seq, a) - sign_changes(&seq, b))
}

/// Like [`sturm_count`], but endpoints that are roots are moved inward by
/// `(b - a) / 2^k` for the smallest `k` that clears them.
pub fn sturm_count_nudged(p: &RatPoly, a: &Rational, b: &Rational) -> Result<(usize, Rational, Rational)> {
    if a >= b {
        return Err(Error::domain("interval", format!("({a}, {b}) is empty")));
    }
    let width = b - a;
    let nudge = |t: &Rational, dir: i64| -> Rational {
        let mut step = &width / ratio(4, 1);
        let mut cur = t.clone();
        while p.eval(&cur).is_zero() {
            cur = t + &step * ratio(dir, 1);
            step /= ratio(2, 1);
        }
        cur
    };
    let lo = nudge(a, 1);
    let hi = nudge(b, -1);
    let n = sturm_count(p, &lo, &hi)?;
    Ok((n, lo, hi))
}

/// Splits `(a, b)` until every piece holds exactly one root.
pub fn isolate_roots(p: &RatPoly, a: &Rational, b: &Rational) -> Result<Vec<RootInterval>> {
    let seq = sturm_sequence(p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    for t in [a, b] {
        if p.eval(t).is_zero() {
            return Err(Error::EndpointRoot(t.to_string()));
        }
    }
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        match n {
            0 => {}
            1 => out.push(RootInterval {
                lower: lo,
                upper: hi,
                sign_change_count: 1,
            }),
            _ => {
                let mut mid = (&lo + &hi) / ratio(2, 1);
                let mut k = 3;
                while p.eval(&mid).is_zero() {
                    mid = &lo + (&hi - &lo) * ratio(1, k);
                    k += 1;
                }
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|x, y| x.lower.cmp(&y.lower));
    Ok(out)
}

/// Refines the unique root of `p` in `(a, b)` by exact bisection until the
/// bracket is no wider than `tol`.
pub fn isolate_and_refine(p: &RatPoly, a: &Rational, b: &Rational, tol: f64) -> Result<RefinedRoot> {
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance", format!("{tol} must be positive")));
    }
    let n = sturm_count(p, a, b)?;
    if n != 1 {
        return Err(Error::AmbiguousRoot(n));
    }
    let mut lo = a.clone();
    let mut hi = b.clone();
    let lo_positive = p.eval(&lo).is_positive();
    let tol_r = Rational::from_float(tol).ok_or_else(|| Error::domain("tolerance", "not finite"))?;
    while &hi - &lo > tol_r {
        let mid = (&lo + &hi) / ratio(2, 1);
        let v = p.eval(&mid);
        if v.is_zero() {
            let value = mid.to_f64().unwrap_or(f64::NAN);
            return Ok(RefinedRoot {
                value,
                bracket: RootInterval {
                    lower: mid.clone(),
                    upper: mid,
                    sign_change_count: 1,
                },
            });
        }
        if v.is_positive() == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = ((&lo + &hi) / ratio(2, 1)).to_f64().unwrap_or(f64::NAN);
    Ok(RefinedRoot {
        value,
        bracket: RootInterval {
            lower: lo,
            upper: hi,
            sign_change_count: 1,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::ratpoly::rat;

    fn quintic() -> RatPoly {
        RatPoly::from_ints(&[-64, 277, -60, -61, -84, 17])
    }

    #[test]
    fn sqrt_two() {
        let p = RatPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &rat(0), &rat(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &rat(-2), &rat(2)).unwrap(), 2);
        let root = isolate_and_refine(&p, &rat(0), &rat(2), 1e-12).unwrap();
        assert!((root.value - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(root.bracket.width() <= Rational::from_float(1e-12).unwrap());
    }

    #[test]
    fn quintic_has_one_root_in_unit_interval() {
        let p = quintic();
        assert_eq!(sturm_count(&p, &rat(0), &rat(1)).unwrap(), 1);
        let root = isolate_and_refine(&p, &rat(0), &rat(1), 1e-9).unwrap();
        assert!((root.value - 0.2489802).abs() < 5e-8, "{}", root.value);
    }

    #[test]
    fn endpoint_root_is_reported_and_nudged() {
        let p = RatPoly::from_ints(&[-1, 0, 1]); // roots at +-1
        assert!(matches!(sturm_count(&p, &rat(0), &rat(1)), Err(Error::EndpointRoot(_))));
        let (n, lo, hi) = sturm_count_nudged(&p, &rat(-1), &rat(1)).unwrap();
        assert_eq!(n, 0);
        assert!(lo > rat(-1) && hi < rat(1));
    }

    #[test]
    fn ambiguous_bracket() {
        let p = RatPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(
            isolate_and_refine(&p, &rat(-2), &rat(2), 1e-6),
            Err(Error::AmbiguousRoot(2))
        );
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (t - 1/2)^2 (t - 3/4)
        let a = RatPoly::new(vec![ratio(-1, 2), rat(1)]);
        let b = RatPoly::new(vec![ratio(-3, 4), rat(1)]);
        let p = &(&a * &a) * &b;
        assert_eq!(sturm_count(&p, &rat(0), &rat(1)).unwrap(), 2);
        let roots = isolate_roots(&p, &rat(0), &rat(1)).unwrap();
        assert_eq!(roots.len(), 2);
    }
}
