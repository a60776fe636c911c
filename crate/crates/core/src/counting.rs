//! Exact big-integer counting of generic dope matrices and the closed-form
//! bound calculators.
//!
//! All inequalities are kept as exact rationals and compared by
//! cross-multiplication; logarithmic endpoints are the only approximate
//! quantities, computed from exact integers by an arbitrary-precision
//! logarithm good to well beyond 12 significant digits.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::pattern::count_limited_saturated;
use crate::rational::{format_decimal, format_rational, Rational};

pub const LOG_FRACTION_DIGITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    GenericCountBounds,
    SmallMLogBounds,
    UpperBoundCount,
    GrossboundLower,
    BigMSandwich,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::GenericCountBounds => "generic_count_bounds",
            BoundKind::SmallMLogBounds => "small_m_log_bounds",
            BoundKind::UpperBoundCount => "upper_bound_count",
            BoundKind::GrossboundLower => "grossbound_lower",
            BoundKind::BigMSandwich => "big_m_sandwich",
        }
    }
}

/// One endpoint of a bound: either an exact rational or a fixed-point
/// decimal approximation of a logarithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Exact(Rational),
    Decimal(String),
}

impl BoundValue {
    pub fn render(&self) -> String {
        match self {
            BoundValue::Exact(r) => format_rational(r),
            BoundValue::Decimal(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub m: u64,
    pub n: u64,
    pub kind: BoundKind,
    pub lower: BoundValue,
    pub upper: Option<BoundValue>,
}

/// Number of safe m x (n+1) matrices with exactly k ones. Computed by the
/// integer form C((n+1)m-1, k) - (m-1) C((n+1)m-1, k-1); the rational form
/// (n+1-k)/(n+1) C((n+1)m, k) is evaluated alongside and asserted equal.
pub fn count_generic_k(m: u64, n: u64, k: u64) -> BigInt {
    assert!(m >= 1);
    if k > n {
        return BigInt::zero();
    }
    let cells = (n + 1) * m;
    let integer_form = binomial(cells - 1, k as i64)
        - BigInt::from(m - 1) * binomial(cells - 1, k as i64 - 1);
    let rational_form = Rational::new(
        BigInt::from(n + 1 - k) * binomial(cells, k as i64),
        BigInt::from(n + 1),
    );
    assert!(rational_form.is_integer(), "count must be an integer");
    assert_eq!(rational_form.to_integer(), integer_form);
    integer_form
}

/// |D_n^gen(m)|: C((n+1)m-1, n) - (m-2) * sum_{k<n} C((n+1)m-1, k),
/// asserted to equal the sum of the per-k counts.
pub fn count_generic_total(m: u64, n: u64) -> BigInt {
    assert!(m >= 1);
    let cells = (n + 1) * m;
    let partial: BigInt = (0..n).map(|k| binomial(cells - 1, k as i64)).sum();
    let total = binomial(cells - 1, n as i64) - (BigInt::from(m) - 2) * partial;
    let by_parts: BigInt = (0..=n).map(|k| count_generic_k(m, n, k)).sum();
    assert_eq!(total, by_parts);
    total
}

/// Two-sided bounds on |D_n^gen(m)| for m >= 3:
/// C((n+1)m, n)/(n+1) <= total <= (1 + 1/(m-2))^2 * C((n+1)m, n)/(n+1).
pub fn generic_bounds(m: u64, n: u64) -> Result<BoundReport> {
    if m < 3 {
        return Err(Error::OutOfDomain(format!("generic bounds need m >= 3, got {m}")));
    }
    if n < 1 {
        return Err(Error::OutOfDomain("generic bounds need n >= 1".into()));
    }
    let lower = Rational::new(binomial((n + 1) * m, n as i64), BigInt::from(n + 1));
    let ratio = Rational::new(BigInt::from(m - 1), BigInt::from(m - 2));
    let upper = &lower * &ratio * &ratio;
    Ok(BoundReport {
        m,
        n,
        kind: BoundKind::GenericCountBounds,
        lower: BoundValue::Exact(lower),
        upper: Some(BoundValue::Exact(upper)),
    })
}

/// Endpoints of the small-m regime: log(n^m C(mn, n)) and
/// log(n^(2m) C(mn, n)), as high-precision decimals.
pub fn small_m_log_bounds(m: u64, n: u64) -> Result<BoundReport> {
    if m <= 1 || 2 * m > n * n + n {
        return Err(Error::OutOfDomain(format!(
            "log bounds need 1 < m <= (n^2+n)/2, got m = {m}, n = {n}"
        )));
    }
    let base = binomial(m * n, n as i64);
    let n_pow_m = BigInt::from(n).pow(m as u32);
    let lower = ln_bigint(&(&n_pow_m * &base));
    let upper = ln_bigint(&(&n_pow_m * &n_pow_m * base));
    Ok(BoundReport {
        m,
        n,
        kind: BoundKind::SmallMLogBounds,
        lower: BoundValue::Decimal(format_decimal(&lower, LOG_FRACTION_DIGITS)),
        upper: Some(BoundValue::Decimal(format_decimal(&upper, LOG_FRACTION_DIGITS))),
    })
}

/// The zero-pattern upper bound C(mn, n) * (((n^2+n+2)/2)^m + n), exactly.
pub fn upper_bound_count(m: u64, n: u64) -> Result<BigInt> {
    if m < 1 || n < 1 {
        return Err(Error::OutOfDomain("need m >= 1 and n >= 1".into()));
    }
    let half = BigInt::from((n * n + n + 2) / 2);
    Ok(binomial(m * n, n as i64) * (half.pow(m as u32) + BigInt::from(n)))
}

/// The mixed-construction lower bound
/// C(a, n, T) * ((n+1)/(e(T^2+T)) - a/(en))^(m-a), as a high-precision
/// decimal. C(a, n, T) comes from filtered enumeration.
pub fn grossbound_lower(m: u64, n: u64, a: u64, t: u64) -> Result<BoundReport> {
    if t < 1 || n < 1 {
        return Err(Error::OutOfDomain("need T >= 1 and n >= 1".into()));
    }
    if a > m || m * (t * t + t) > n * n + n {
        return Err(Error::OutOfDomain(format!(
            "need a <= m <= (n^2+n)/(T^2+T), got m = {m}, a = {a}"
        )));
    }
    let c = if a == 0 {
        if n == 0 { BigInt::one() } else { BigInt::zero() }
    } else {
        count_limited_saturated(a as usize, n as usize, t as usize)?
    };
    // base factor q / e with q = (n+1)/(T^2+T) - a/n exact
    let q = Rational::new(BigInt::from(n + 1), BigInt::from(t * t + t))
        - Rational::new(BigInt::from(a), BigInt::from(n));
    let exponent = (m - a) as u32;
    let value = Rational::from_integer(c)
        * pow_rational(&q, exponent)
        * pow_rational(&inv_e_approx(), exponent);
    Ok(BoundReport {
        m,
        n,
        kind: BoundKind::GrossboundLower,
        lower: BoundValue::Decimal(format_decimal(&value, LOG_FRACTION_DIGITS)),
        upper: None,
    })
}

fn pow_rational(r: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

fn series_epsilon() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(25))
}

/// atanh(z) = sum z^(2i+1)/(2i+1) for |z| <= 1/3, truncated once the term
/// drops below 1e-25 (the tail is dominated by a geometric series with ratio
/// z^2 < 1/9, so the truncation error stays below the last term).
fn atanh_series(z: &Rational) -> Rational {
    let eps = series_epsilon();
    let z2 = z * z;
    let mut term = z.clone();
    let mut acc = Rational::zero();
    let mut odd = 1u32;
    while term.abs() >= eps {
        acc += &term / Rational::from_integer(BigInt::from(odd));
        term *= &z2;
        odd += 2;
    }
    acc
}

fn ln2_approx() -> Rational {
    // ln 2 = 2 atanh(1/3)
    atanh_series(&Rational::new(BigInt::one(), BigInt::from(3))) * Rational::from_integer(BigInt::from(2))
}

/// Natural logarithm of a positive integer as a rational approximation with
/// absolute error far below 1e-12: x = m * 2^e with m in [1, 2), m rounded
/// to 64 fractional bits, ln m by the atanh series, plus e * ln 2.
pub fn ln_bigint(x: &BigInt) -> Rational {
    assert!(x.is_positive(), "logarithm needs a positive integer");
    if x.is_one() {
        return Rational::zero();
    }
    let e = x.bits() - 1;
    const SCALE_BITS: u64 = 64;
    let scaled: BigInt = if e >= SCALE_BITS {
        x >> (e - SCALE_BITS)
    } else {
        x << (SCALE_BITS - e)
    };
    let unit = BigInt::one() << SCALE_BITS;
    // z = (m - 1)/(m + 1) in [0, 1/3)
    let z = Rational::new(&scaled - &unit, scaled + unit);
    atanh_series(&z) * Rational::from_integer(BigInt::from(2))
        + Rational::from_integer(BigInt::from(e)) * ln2_approx()
}

/// 1/e from the reciprocal factorial series, error below 1e-30.
fn inv_e_approx() -> Rational {
    let e: Rational = (0..=30u64)
        .map(|k| Rational::new(BigInt::one(), crate::comb::factorial(k)))
        .sum();
    Rational::one() / e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::enumerate_safe;
    use crate::rational::rat_int;
    use num_traits::ToPrimitive;

    #[test]
    fn per_k_counts() {
        assert_eq!(count_generic_k(3, 2, 2), BigInt::from(12));
        assert_eq!(count_generic_k(5, 4, 0), BigInt::one());
        assert_eq!(count_generic_k(3, 1, 1), BigInt::from(3));
        assert_eq!(count_generic_k(3, 2, 5), BigInt::zero());
    }

    #[test]
    fn totals_and_special_cases() {
        assert_eq!(count_generic_total(3, 2), BigInt::from(19));
        for n in 0..=30u64 {
            assert_eq!(count_generic_total(1, n), BigInt::one() << n);
            assert_eq!(count_generic_total(2, n), binomial(2 * n + 1, n as i64));
        }
    }

    #[test]
    fn totals_match_enumeration() {
        for m in 1..=3u64 {
            for n in 0..=3u64 {
                let enumerated = enumerate_safe(m as usize, n as usize, None).count();
                assert_eq!(count_generic_total(m, n), BigInt::from(enumerated));
            }
        }
    }

    #[test]
    fn generic_bounds_examples() {
        let r = generic_bounds(3, 2).unwrap();
        assert_eq!(r.lower, BoundValue::Exact(rat_int(12)));
        assert_eq!(r.upper, Some(BoundValue::Exact(rat_int(48))));
        let r = generic_bounds(3, 1).unwrap();
        assert_eq!(r.lower, BoundValue::Exact(rat_int(3)));
        assert!(matches!(generic_bounds(2, 5), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn generic_bounds_sandwich_total() {
        for (m, n) in [(3u64, 2u64), (3, 1), (10, 1), (4, 4)] {
            let r = generic_bounds(m, n).unwrap();
            let total = Rational::from_integer(count_generic_total(m, n));
            let (BoundValue::Exact(lo), Some(BoundValue::Exact(hi))) = (&r.lower, &r.upper)
            else {
                panic!("generic bounds must be exact");
            };
            assert!(lo <= &total && &total <= hi, "sandwich fails at m={m}, n={n}");
        }
    }

    #[test]
    fn log_bounds_examples() {
        let r = small_m_log_bounds(2, 2).unwrap();
        let (BoundValue::Decimal(lo), Some(BoundValue::Decimal(hi))) = (&r.lower, &r.upper)
        else {
            panic!()
        };
        // log 24 and log 96, rounded to 12 fractional digits
        assert_eq!(lo, "3.178053830348");
        assert_eq!(hi, "4.564348191468");
        assert!(lo < hi);
        let r = small_m_log_bounds(3, 3).unwrap();
        let BoundValue::Decimal(lo) = &r.lower else { panic!() };
        // log 2268
        assert_eq!(lo, "7.726653664848");
        assert!(matches!(small_m_log_bounds(1, 5), Err(Error::OutOfDomain(_))));
        assert!(matches!(small_m_log_bounds(4, 2), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound_count(1, 1).unwrap(), BigInt::from(3));
        assert_eq!(upper_bound_count(2, 1).unwrap(), BigInt::from(10));
        assert_eq!(upper_bound_count(1, 2).unwrap(), BigInt::from(6));
    }

    #[test]
    fn grossbound_at_m_equals_a() {
        // exponent 0 makes the bound exactly C(a, n, T)
        let r = grossbound_lower(3, 3, 3, 1).unwrap();
        let BoundValue::Decimal(s) = &r.lower else { panic!() };
        let c = count_limited_saturated(3, 3, 1).unwrap();
        assert_eq!(s, &format!("{c}.000000000000"));
        assert!(c >= BigInt::one());
    }

    #[test]
    fn grossbound_domain() {
        assert!(matches!(grossbound_lower(3, 3, 3, 0), Err(Error::OutOfDomain(_))));
        assert!(matches!(grossbound_lower(9, 3, 2, 1), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn ln_matches_f64_for_small_inputs() {
        for v in [2u64, 3, 24, 96, 2268, 1_000_000] {
            let exact = ln_bigint(&BigInt::from(v));
            let approx = exact.to_f64().unwrap();
            assert!((approx - (v as f64).ln()).abs() < 1e-12, "ln({v})");
        }
    }
}
