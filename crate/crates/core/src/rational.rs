//! Exact rational helpers.
//!
//! Every mechanism-side quantity is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. The canonical
//! text form is `"num/den"`; parsing also accepts a bare integer.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?} (expected \"num/den\" or an integer)", self.input)
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `"num/den"` or `"num"`. Whitespace around either part is ignored.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: String::from(s) };
    let trimmed = s.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Formats as `"num/den"`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // to_f64 only fails on overflow; saturate with the right sign.
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact conversion of a finite float (every finite f64 is a dyadic rational).
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// `x` lies in the closed unit interval.
pub fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

/// Parses a linear expression in a single symbol `eps`, e.g. `"1/4+eps"`,
/// `"1-2*eps"`, `"3*eps"` or a plain rational, and evaluates it at `epsilon`.
pub fn parse_eps_expr(s: &str, epsilon: &Rational) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: String::from(s) };
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut total = Rational::zero();
    let mut term = String::new();
    let mut sign = 1i64;
    let flush = |term: &str, sign: i64, total: &mut Rational| -> Result<(), ParseRationalError> {
        if term.is_empty() {
            return Err(err());
        }
        let value = match term.strip_suffix("eps") {
            Some("") => epsilon.clone(),
            Some(coef) => {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                parse_rational(coef).map_err(|_| err())? * epsilon
            }
            None => parse_rational(term).map_err(|_| err())?,
        };
        *total += value * int(sign);
        Ok(())
    };
    for (idx, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && idx > 0 {
            flush(&term, sign, &mut total)?;
            term.clear();
            sign = if ch == '-' { -1 } else { 1 };
        } else if ch == '-' && idx == 0 {
            sign = -1;
        } else if ch == '+' && idx == 0 {
        } else {
            term.push(ch);
        }
    }
    flush(&term, sign, &mut total)?;
    Ok(total)
}
