//! Exact rational scalars.
//!
//! Backed by `num_rational::BigRational`, which already maintains the
//! invariants we need: always reduced, denominator always positive, so
//! equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `"p/q"`, or just `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"`. The result is reduced with positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {num:?}")))?;
    let denom: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {d:?}")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Fixed-point decimal rendering with `frac_digits` digits after the point,
/// rounded to nearest (ties away from zero).
pub fn format_decimal(r: &Rational, frac_digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(frac_digits);
    let scaled = r * Rational::from_integer(scale.clone());
    // round half away from zero
    let twice = scaled.numer() * 2;
    let rounded: BigInt = if scaled.numer().is_negative() {
        (twice - scaled.denom()) / (scaled.denom() * 2)
    } else {
        (twice + scaled.denom()) / (scaled.denom() * 2)
    };
    let sign = if rounded.is_negative() { "-" } else { "" };
    let abs = rounded.abs();
    let (int_part, frac_part) = (abs.clone() / &scale, abs % &scale);
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part,
        width = frac_digits as usize
    )
}
