//! Large-m structure of the full dope-matrix count: the polynomial-in-m
//! expansion over V(k, n), exact small-n tables, leading coefficients, and
//! the large-m sandwich bounds.

use num_bigint::BigInt;
use num_traits::One;

use crate::comb::{binomial, factorial};
use crate::counting::{BoundKind, BoundReport, BoundValue};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// (n^2 + n)/2, the largest row count of a pattern with no all-zero rows.
pub fn t_cap(n: u64) -> u64 {
    (n * n + n) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ExactSmallN,
    LeadingTermsOnly,
}

/// Exact values V(k, n) for 0 <= k <= (n^2+n)/2: the number of k x (n+1)
/// dope matrices with no all-zero rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    pub n: u64,
    pub values: Vec<BigInt>,
    pub provenance: Provenance,
}

/// Exact tables for n <= 2, from the finite case analysis of linear and
/// quadratic root configurations:
///   n = 1: the only nonzero row is (1, 0), so V = (1, 1);
///   n = 2: nonzero rows are (1,0,0), (0,1,0) and the double-root row
///          (1,1,0); combining them with the distinctness of the P' root
///          gives V = (1, 3, 3, 3).
pub fn v_table_small(n: u64) -> Result<CensusTable> {
    let values: Vec<i64> = match n {
        0 => vec![1],
        1 => vec![1, 1],
        2 => vec![1, 3, 3, 3],
        _ => {
            return Err(Error::OutOfDomain(format!(
                "exact census tables exist only for n <= 2, got {n}"
            )))
        }
    };
    Ok(CensusTable {
        n,
        values: values.into_iter().map(BigInt::from).collect(),
        provenance: Provenance::ExactSmallN,
    })
}

/// |D_n^m| = sum_k C(m, k) V(k, n), requiring a complete exact table.
pub fn census_count(n: u64, m: u64, table: &CensusTable) -> Result<BigInt> {
    if table.n != n
        || table.provenance != Provenance::ExactSmallN
        || table.values.len() != t_cap(n) as usize + 1
    {
        return Err(Error::IncompleteTable(n as usize));
    }
    Ok(table
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| binomial(m, k as i64) * v)
        .sum())
}

/// V((n^2+n)/2, n) = ((n^2+n)/2)! / (1! 2! ... n!), the leading census
/// coefficient.
pub fn v_top(n: u64) -> BigInt {
    assert!(n >= 1);
    let mut denom = BigInt::one();
    for k in 1..=n {
        denom *= factorial(k);
    }
    let num = factorial(t_cap(n));
    debug_assert!((&num % &denom) == BigInt::from(0));
    num / denom
}

/// The second leading coefficient v_top(n) * (1 + (n-1)(n-2)/4); the product
/// v_top(n) * (4 + (n-1)(n-2)) is asserted divisible by 4.
pub fn v_top_minus1(n: u64) -> BigInt {
    assert!(n >= 1);
    let scaled = v_top(n) * (BigInt::from(4) + BigInt::from(n as i64 - 1) * BigInt::from(n as i64 - 2));
    let r = Rational::new(scaled, BigInt::from(4));
    assert!(r.is_integer(), "second leading coefficient must be integral");
    r.to_integer()
}

/// The large-m sandwich: with T = (n^2+n)/2 and m > T,
/// max(C(m,T) V(T,n), |D_n^T|) <= |D_n^m| <= C(m,T) |D_n^T|.
pub fn sandwich_bounds(n: u64, m: u64, table: &CensusTable) -> Result<BoundReport> {
    let t = t_cap(n);
    if m <= t {
        return Err(Error::OutOfDomain(format!(
            "sandwich needs m > (n^2+n)/2 = {t}, got m = {m}"
        )));
    }
    let d_at_t = census_count(n, t, table)?;
    let v_top_val = table.values[t as usize].clone();
    let choose = binomial(m, t as i64);
    let lower = (&choose * v_top_val).max(d_at_t.clone());
    let upper = choose * d_at_t;
    Ok(BoundReport {
        m,
        n,
        kind: BoundKind::BigMSandwich,
        lower: BoundValue::Exact(Rational::from_integer(lower)),
        upper: Some(BoundValue::Exact(Rational::from_integer(upper))),
    })
}

/// Human-readable leading-terms expansion for n >= 3, where the exact table
/// is unavailable.
pub fn leading_expansion(n: u64) -> String {
    let t = t_cap(n);
    format!(
        "{} * C(m, {t}) + {} * C(m, {}) + O(m^{})",
        v_top(n),
        v_top_minus1(n),
        t - 1,
        t - 2
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dope::dope_matrix;
    use crate::poly::RationalPolynomial;
    use crate::rational::rat_int;

    #[test]
    fn small_tables() {
        assert_eq!(v_table_small(1).unwrap().values, vec![BigInt::one(); 2]);
        assert_eq!(
            v_table_small(2).unwrap().values,
            [1, 3, 3, 3].map(BigInt::from)
        );
        assert!(matches!(v_table_small(3), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn census_counts() {
        let t1 = v_table_small(1).unwrap();
        for m in 1..=10u64 {
            assert_eq!(census_count(1, m, &t1).unwrap(), BigInt::from(m + 1));
        }
        let t2 = v_table_small(2).unwrap();
        assert_eq!(census_count(2, 3, &t2).unwrap(), BigInt::from(22));
        assert_eq!(census_count(2, 4, &t2).unwrap(), BigInt::from(43));
        assert_eq!(census_count(2, 5, &t2).unwrap(), BigInt::from(76));
    }

    #[test]
    fn census_rejects_mismatched_table() {
        let t1 = v_table_small(1).unwrap();
        assert!(matches!(census_count(2, 3, &t1), Err(Error::IncompleteTable(_))));
    }

    #[test]
    fn census_monotone_in_m() {
        let t2 = v_table_small(2).unwrap();
        let mut prev = BigInt::from(0);
        for m in 1..=12u64 {
            let v = census_count(2, m, &t2).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(v_top(1), BigInt::one());
        assert_eq!(v_top(2), BigInt::from(3));
        assert_eq!(v_top(3), BigInt::from(60));
        assert_eq!(v_top_minus1(1), BigInt::one());
        assert_eq!(v_top_minus1(2), BigInt::from(3));
        assert_eq!(v_top_minus1(3), BigInt::from(90));
        // agreement with the exact tables at k = T and T - 1
        for n in 1..=2u64 {
            let table = v_table_small(n).unwrap();
            let t = t_cap(n) as usize;
            assert_eq!(v_top(n), table.values[t]);
            assert_eq!(v_top_minus1(n), table.values[t - 1]);
        }
    }

    #[test]
    fn sandwich_examples() {
        let t2 = v_table_small(2).unwrap();
        let r = sandwich_bounds(2, 5, &t2).unwrap();
        assert_eq!(r.lower, BoundValue::Exact(rat_int(30)));
        assert_eq!(r.upper, Some(BoundValue::Exact(rat_int(220))));

        let t1 = v_table_small(1).unwrap();
        let r = sandwich_bounds(1, 3, &t1).unwrap();
        assert_eq!(r.lower, BoundValue::Exact(rat_int(3)));
        assert_eq!(r.upper, Some(BoundValue::Exact(rat_int(6))));

        assert!(matches!(sandwich_bounds(2, 3, &t2), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn expansion_string() {
        assert_eq!(
            leading_expansion(3),
            "60 * C(m, 6) + 90 * C(m, 5) + O(m^4)"
        );
    }

    #[test]
    fn nonzero_rows_capped_by_t() {
        for (coeffs, points) in [
            (&[0i64, -2, 1][..], &[0i64, 1, 2, 3, -1][..]),
            (&[-6, 11, -6, 1][..], &[0, 1, 2, 3][..]),
            (&[0, 0, 0, 0, 1][..], &[0, 1, -1, 2][..]),
        ] {
            let p = RationalPolynomial::from_i64(coeffs);
            let pts: Vec<_> = points.iter().map(|&v| rat_int(v)).collect();
            let m = dope_matrix(&p, &pts).unwrap();
            let nonzero = (0..m.rows()).filter(|&i| m.row_ones(i) > 0).count() as u64;
            assert!(nonzero <= t_cap(m.n() as u64));
        }
    }
}
