//! Polynomials with exact rational coefficients, stored in ascending degree
//! order. The zero polynomial is the empty coefficient list.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros so the degree invariant holds.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// The `order`-th formal derivative.
    pub fn derivative(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        for _ in 0..order {
            if coeffs.len() <= 1 {
                return Self::zero();
            }
            coeffs = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat_int(k as i64))
                .collect();
        }
        Self::new(coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg r < deg divisor. Panics if the divisor is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap() / &lead;
            quot[rd - dd] = factor.clone();
            let mut shifted = vec![Rational::zero(); rd - dd];
            shifted.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&Self::new(shifted));
        }
        (Self::new(quot), rem)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lead) => {
                let inv = Rational::one() / lead;
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd over the rationals by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }
}
