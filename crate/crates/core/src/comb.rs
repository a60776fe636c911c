//! Exact big-integer combinatorics helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact binomial coefficient with the convention that out-of-range `k`
/// (negative or larger than `n`) gives 0.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}
