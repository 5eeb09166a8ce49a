//! Numeric command-line arguments.
//!
//! Terminating decimals (`0.5`, `-1.25e-3`) and fractions (`3/7`) are kept
//! as exact rationals alongside their `f64` value. Products and quotients
//! involving `pi` (`pi`, `pi^2/2`, `2*pi`) and `inf` are float only.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::exact_poly::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct Scalar {
    pub value: f64,
    pub exact: Option<Rational>,
}

impl Scalar {
    pub fn from_f64(value: f64) -> Self {
        Scalar { value, exact: None }
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar {
            value: q.to_f64().unwrap_or(f64::NAN),
            exact: Some(q),
        }
    }

    pub fn is_exactly(&self, n: i64) -> bool {
        self.exact.as_ref() == Some(&Rational::from_integer(BigInt::from(n)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError(String);

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse '{}' as a number", self.0)
    }
}

impl std::error::Error for ParseScalarError {}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = || ParseScalarError(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(fail());
        }
        let mut parts = t.split('/');
        let num = parse_product(parts.next().ok_or_else(fail)?).ok_or_else(fail)?;
        let mut out = num;
        for den in parts {
            let d = parse_product(den).ok_or_else(fail)?;
            out = divide(out, d).ok_or_else(fail)?;
        }
        if out.value.is_nan() {
            return Err(fail());
        }
        Ok(out)
    }
}

fn divide(a: Scalar, b: Scalar) -> Option<Scalar> {
    match (a.exact, b.exact) {
        (Some(p), Some(q)) => {
            if q.is_zero() {
                None
            } else {
                Some(Scalar::from_rational(p / q))
            }
        }
        _ => Some(Scalar::from_f64(a.value / b.value)),
    }
}

fn multiply(a: Scalar, b: Scalar) -> Scalar {
    match (a.exact, b.exact) {
        (Some(p), Some(q)) => Scalar::from_rational(p * q),
        _ => Scalar::from_f64(a.value * b.value),
    }
}

fn parse_product(s: &str) -> Option<Scalar> {
    let mut acc = Scalar::from_rational(Rational::one());
    for factor in s.split('*') {
        acc = multiply(acc, parse_factor(factor.trim())?);
    }
    Some(acc)
}

fn parse_factor(s: &str) -> Option<Scalar> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(s)),
    };
    let lower = body.to_ascii_lowercase();
    if lower == "inf" || lower == "infinity" {
        return Some(Scalar::from_f64(sign * f64::INFINITY));
    }
    if let Some(rest) = lower.strip_prefix("pi") {
        let power = if rest.is_empty() {
            1
        } else {
            rest.strip_prefix('^')?.parse::<i32>().ok()?
        };
        return Some(Scalar::from_f64(sign * std::f64::consts::PI.powi(power)));
    }
    // a leading coefficient glued to pi, e.g. "2pi"
    if let Some(idx) = lower.find("pi") {
        let coeff = parse_decimal(&lower[..idx])?;
        let rest = parse_factor(&lower[idx..])?;
        let signed = Scalar::from_rational(coeff * Rational::from_integer(BigInt::from(sign as i64)));
        return Some(multiply(signed, rest));
    }
    let q = parse_decimal(body)?;
    Some(Scalar::from_rational(if sign < 0.0 { -q } else { q }))
}

/// Unsigned terminating decimal with optional exponent, as an exact rational.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Rational::from_integer(digits * Pow::pow(&ten, scale as u32))
    } else {
        Rational::new(digits, Pow::pow(&ten, (-scale) as u32))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::ratio;

    fn p(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(p("0.5").exact, Some(ratio(1, 2)));
        assert_eq!(p("-1.25e-1").exact, Some(ratio(-1, 8)));
        assert_eq!(p("3").exact, Some(ratio(3, 1)));
        assert_eq!(p(".2").exact, Some(ratio(1, 5)));
        assert_eq!(p("2.5E2").exact, Some(ratio(250, 1)));
        assert_eq!(p("3/7").exact, Some(ratio(3, 7)));
        assert!(p("1").is_exactly(1));
    }

    #[test]
    fn pi_forms_are_float() {
        let x = p("pi^2/2");
        assert!(x.exact.is_none());
        assert!((x.value - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-15);
        assert!((p("2pi").value - 2.0 * std::f64::consts::PI).abs() < 1e-15);
        assert!((p("2*pi").value - 2.0 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(p("inf").value, f64::INFINITY);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1..2", "e5", "0.5x", "pi^"] {
            assert!(s.parse::<Scalar>().is_err(), "{s}");
        }
    }
}
