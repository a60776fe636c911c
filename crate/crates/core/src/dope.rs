//! Dope matrices and rows of rational polynomials, and the derivative-gcd
//! bound on the largest possible row weight.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pattern::DopePattern;
use crate::poly::RationalPolynomial;
use crate::rational::Rational;

/// Length n+1 indicator row: entry j is 1 iff P^(j)(lambda) = 0.
pub fn dope_row(p: &RationalPolynomial, lambda: &Rational) -> Result<Vec<bool>> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    Ok((0..=n)
        .map(|j| p.derivative(j).eval(lambda).is_zero())
        .collect())
}

/// The m x (n+1) matrix of derivative-vanishing indicators, with exact zero
/// tests. The last column is always all-zero since P^(n) is a nonzero
/// constant.
pub fn dope_matrix(p: &RationalPolynomial, points: &[Rational]) -> Result<DopePattern> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    let derivatives: Vec<RationalPolynomial> = (0..=n).map(|j| p.derivative(j)).collect();
    let bits = points
        .iter()
        .map(|lambda| derivatives.iter().map(|d| d.eval(lambda).is_zero()).collect())
        .collect();
    DopePattern::new(bits)
}

/// The maximum over all complex lambda of the number of derivative orders j
/// with P^(j)(lambda) = 0. A subset J of orders shares a common complex root
/// iff gcd of the P^(j) over J is nonconstant, so the search grows J by
/// increasing order and prunes once the running gcd degenerates.
pub fn max_row_weight(p: &RationalPolynomial) -> Result<usize> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    let derivatives: Vec<RationalPolynomial> = (0..=n).map(|j| p.derivative(j)).collect();

    fn search(
        derivatives: &[RationalPolynomial],
        start: usize,
        running_gcd: Option<&RationalPolynomial>,
        size: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(size);
        for j in start..derivatives.len() {
            let g = match running_gcd {
                None => derivatives[j].monic(),
                Some(g) => g.gcd(&derivatives[j]).unwrap(),
            };
            if g.degree().map_or(true, |d| d == 0) {
                continue;
            }
            search(derivatives, j + 1, Some(&g), size + 1, best);
        }
    }

    let mut best = 0usize;
    search(&derivatives, 0, None, 0, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::is_safe;
    use crate::rational::rat_int;

    fn p(coeffs: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_i64(coeffs)
    }

    fn pts(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rat_int(v)).collect()
    }

    #[test]
    fn dope_matrix_examples() {
        // x^2 - 1 at (1, -1, 0)
        let m = dope_matrix(&p(&[-1, 0, 1]), &pts(&[1, -1, 0])).unwrap();
        assert_eq!(
            m,
            DopePattern::from_rows(&[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0]])
        );
        // x^2 - 2x at (0, 1)
        let m = dope_matrix(&p(&[0, -2, 1]), &pts(&[0, 1])).unwrap();
        assert_eq!(m, DopePattern::from_rows(&[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(
            dope_matrix(&RationalPolynomial::zero(), &pts(&[0])),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn nongeneric_points_realize_an_unsafe_pattern() {
        // x(x-2) at the arithmetic progression (0, 1, 2)
        let m = dope_matrix(&p(&[0, -2, 1]), &pts(&[0, 1, 2])).unwrap();
        assert_eq!(
            m,
            DopePattern::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 0]])
        );
        assert!(!is_safe(&m));
    }

    #[test]
    fn dope_row_examples() {
        let cube = p(&[0, 0, 0, 1]);
        assert_eq!(
            dope_row(&cube, &rat_int(0)).unwrap(),
            vec![true, true, true, false]
        );
        assert_eq!(
            dope_row(&cube, &rat_int(1)).unwrap(),
            vec![false, false, false, false]
        );
        assert_eq!(
            dope_row(&p(&[0, -2, 1]), &rat_int(2)).unwrap(),
            vec![true, false, false]
        );
    }

    #[test]
    fn rows_match_matrix() {
        let q = p(&[6, -11, 6, -1]); // -(x-1)(x-2)(x-3)
        let points = pts(&[0, 1, 2, 3]);
        let m = dope_matrix(&q, &points).unwrap();
        for (i, lambda) in points.iter().enumerate() {
            assert_eq!(m.row(i), &dope_row(&q, lambda).unwrap()[..]);
        }
    }

    #[test]
    fn max_row_weight_examples() {
        assert_eq!(max_row_weight(&p(&[0, 0, 0, 1])).unwrap(), 3);
        assert_eq!(max_row_weight(&p(&[0, -2, 1])).unwrap(), 1);
        // (x-1)(x-2)(x-3): P and P'' share the root 2
        assert_eq!(max_row_weight(&p(&[-6, 11, -6, 1])).unwrap(), 2);
        // a rootless constant
        assert_eq!(max_row_weight(&p(&[5])).unwrap(), 0);
    }

    #[test]
    fn weight_dominates_rational_probes() {
        let q = p(&[-6, 11, -6, 1]);
        let w = max_row_weight(&q).unwrap();
        for v in -10..=10 {
            let ones = dope_row(&q, &rat_int(v))
                .unwrap()
                .iter()
                .filter(|&&b| b)
                .count();
            assert!(ones <= w);
        }
    }
}
