//! Arbitrary-precision rationals and their canonical string form.
//!
//! `BigRational` already maintains the invariants we need: values are stored
//! in lowest terms with a positive denominator, so equality is structural.
//! The string form is `"p/q"`, or just `"p"` when the denominator is one,
//! with the sign always on the numerator.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::ExactError;

/// Exact rational number; always normalized (lowest terms, denominator > 0).
pub type Rational = BigRational;

/// Shorthand used across the crate for small constants.
pub(crate) fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical serialization: `"p/q"` in lowest terms, `"p"` when `q == 1`.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"`; the sign may only sit on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let make_err = || ExactError::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| make_err())?;
    let d: BigInt = den.parse().map_err(|_| make_err())?;
    if d.is_zero() || d.is_negative() {
        return Err(make_err());
    }
    Ok(Rational::new(n, d))
}
