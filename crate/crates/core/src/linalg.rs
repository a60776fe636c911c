//! Exact rational linear algebra and the binomial-coefficient systems behind
//! the rank theorem and the derivative-limit identity.
//!
//! Elimination is fraction-free (Bareiss) on integer rows obtained by
//! clearing denominators, with row pivoting by smallest pivot bit length to
//! keep intermediate entries small.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::comb::{binomial, factorial};
use crate::error::{Error, Result};
use crate::pattern::RowSet;
use crate::poly::RationalPolynomial;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    /// Row-by-row denominator clearing; each integer row is a positive
    /// multiple of the rational one, so rank and solution sets agree.
    fn to_integer_rows(&self, extra: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut row: Vec<Rational> =
                    (0..self.cols).map(|j| self.get(i, j).clone()).collect();
                if let Some(b) = extra {
                    row.push(b[i].clone());
                }
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                row.iter()
                    .map(|r| r.numer() * (&lcm / r.denom()))
                    .collect()
            })
            .collect()
    }
}

/// Outcome of an exact square solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Singular,
}

/// Fraction-free row echelon in place. Returns the pivot columns.
fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot_row = (rank..rows)
            .filter(|&r| !m[r][c].is_zero())
            .min_by_key(|&r| m[r][c].bits());
        let Some(pr) = pivot_row else { continue };
        m.swap(rank, pr);
        let pivot = m[rank][c].clone();
        for i in rank + 1..rows {
            let factor = m[i][c].clone();
            for j in c..cols {
                let v = (&m[i][j] * &pivot - &factor * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = pivot;
        pivots.push(c);
        rank += 1;
    }
    pivots
}

/// Exact rank over the rationals.
pub fn rank(a: &RationalMatrix) -> usize {
    let mut rows = a.to_integer_rows(None);
    bareiss_echelon(&mut rows).len()
}

/// Exact solve of A x = b for square A via fraction-free elimination and
/// rational back-substitution.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Result<Solution> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(format!(
            "solve needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "rhs length {} for {} equations",
            b.len(),
            a.rows
        )));
    }
    let n = a.rows;
    let mut aug = a.to_integer_rows(Some(b));
    let pivots = bareiss_echelon(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return Ok(Solution::Singular);
    }
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = Rational::from_integer(aug[k][n].clone());
        for j in k + 1..n {
            acc -= Rational::from_integer(aug[k][j].clone()) * &x[j];
        }
        x[k] = acc / Rational::from_integer(aug[k][k].clone());
    }
    Ok(Solution::Unique(x))
}

/// The |G| x |H| matrix [C(g, h)] with rows and columns in increasing order.
pub fn binomial_matrix(g: &BTreeSet<usize>, h: &BTreeSet<usize>) -> RationalMatrix {
    let gs: Vec<usize> = g.iter().copied().collect();
    let hs: Vec<usize> = h.iter().copied().collect();
    let entries = gs
        .iter()
        .flat_map(|&gv| {
            hs.iter()
                .map(move |&hv| Rational::from_integer(binomial(gv as u64, hv as i64)))
        })
        .collect();
    RationalMatrix::new(gs.len(), hs.len(), entries).unwrap()
}

/// Checks the prefix-dominance condition |G∩[0,c]| <= |H∩[0,c]| and then
/// asserts the binomial matrix has full row rank |G|. A `false` return would
/// indicate an implementation bug, never a valid state.
pub fn gv_rank_check(g: &BTreeSet<usize>, h: &BTreeSet<usize>) -> Result<bool> {
    let max = g.iter().max().copied().unwrap_or(0);
    let (mut gc, mut hc) = (0usize, 0usize);
    for c in 0..=max {
        gc += g.contains(&c) as usize;
        hc += h.contains(&c) as usize;
        if gc > hc {
            return Err(Error::DominanceViolated(c));
        }
    }
    let r = rank(&binomial_matrix(g, h));
    assert_eq!(r, g.len(), "binomial matrix rank fell short of |G|");
    Ok(r == g.len())
}

/// Coefficients c_{s,1}, c_{s,2} realizing the d-th derivative at a point as
/// a limit of combinations of lower derivatives at the point and a nearby
/// shifted point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCoefficients {
    pub d: usize,
    pub c1: BTreeMap<usize, Rational>,
    pub c2: BTreeMap<usize, Rational>,
}

fn check_limit_precondition(d: usize, s1: &RowSet, s2: &RowSet) -> Result<()> {
    if s1.members().iter().any(|&s| s > d) || s2.members().iter().any(|&s| s > d) {
        return Err(Error::ConditionViolated(format!(
            "row sets must live in [0, {d}]"
        )));
    }
    for t in 0..=d {
        let ones = s1.count_in(t, d) + s2.count_in(t, d);
        if ones > d - t + 1 {
            return Err(Error::ConditionViolated(format!(
                "columns [{t}, {d}] hold {ones} > {} entries",
                d - t + 1
            )));
        }
    }
    if s1.len() + s2.len() != d + 1 {
        return Err(Error::ConditionViolated(format!(
            "need |S1| + |S2| = {}, got {}",
            d + 1,
            s1.len() + s2.len()
        )));
    }
    Ok(())
}

/// Solves the defining system: for every t in [0, d],
/// [t in S1] c1[t] + sum_{s in S2, s <= t} C(t, s) c2[s] = d! [t = d].
///
/// The c2 part is solved on the lexicographically smallest full-rank column
/// subset of S2 (greedy by increasing index); remaining c2 entries are zero.
pub fn derivative_limit_coeffs(d: usize, s1: &RowSet, s2: &RowSet) -> Result<LimitCoefficients> {
    check_limit_precondition(d, s1, s2)?;
    let g: BTreeSet<usize> = (0..=d).filter(|t| !s1.contains(*t)).collect();
    let h: BTreeSet<usize> = s2.members().clone();

    let mut selected: BTreeSet<usize> = BTreeSet::new();
    let mut cur_rank = 0usize;
    for &col in &h {
        if cur_rank == g.len() {
            break;
        }
        let mut trial = selected.clone();
        trial.insert(col);
        let r = rank(&binomial_matrix(&g, &trial));
        if r > cur_rank {
            selected = trial;
            cur_rank = r;
        }
    }
    assert_eq!(cur_rank, g.len(), "full-rank column subset must exist");

    let dfact = Rational::from_integer(factorial(d as u64));
    let mut c2: BTreeMap<usize, Rational> =
        h.iter().map(|&s| (s, Rational::zero())).collect();
    if !g.is_empty() {
        let system = binomial_matrix(&g, &selected);
        let rhs: Vec<Rational> = g
            .iter()
            .map(|&gv| if gv == d { dfact.clone() } else { Rational::zero() })
            .collect();
        match solve(&system, &rhs)? {
            Solution::Unique(x) => {
                for (&s, v) in selected.iter().zip(x) {
                    c2.insert(s, v);
                }
            }
            Solution::Singular => unreachable!("greedy subset is full rank"),
        }
    }

    let mut c1 = BTreeMap::new();
    for &t in s1.members() {
        let target = if t == d { dfact.clone() } else { Rational::zero() };
        let acc: Rational = c2
            .iter()
            .filter(|(&s, _)| s <= t)
            .map(|(&s, v)| Rational::from_integer(binomial(t as u64, s as i64)) * v)
            .sum();
        c1.insert(t, target - acc);
    }
    Ok(LimitCoefficients { d, c1, c2 })
}

/// Exact Laurent-polynomial check of the limit identity: the residual
///
/// R(eps) = P^(d)(lambda)
///        - sum_{s in S1} c1[s] P^(s)(lambda)/s! eps^(s-d)
///        - sum_{s in S2} c2[s] P^(s)(lambda+eps)/s! eps^(s-d)
///
/// must have no terms of epsilon-degree <= 0, i.e. R = eps * Q.
pub fn verify_limit_identity(
    coeffs: &LimitCoefficients,
    p: &RationalPolynomial,
    lambda: &Rational,
    s1: &RowSet,
    s2: &RowSet,
) -> bool {
    let d = coeffs.d;
    let mut residual: BTreeMap<i64, Rational> = BTreeMap::new();
    let mut add = |exp: i64, v: Rational| {
        let slot = residual.entry(exp).or_insert_with(Rational::zero);
        *slot += v;
    };

    add(0, p.derivative(d).eval(lambda));
    for &s in s1.members() {
        let c = coeffs.c1.get(&s).cloned().unwrap_or_else(Rational::zero);
        let v = c * p.derivative(s).eval(lambda)
            / Rational::from_integer(factorial(s as u64));
        add(s as i64 - d as i64, -v);
    }
    for &s in s2.members() {
        let c = coeffs.c2.get(&s).cloned().unwrap_or_else(Rational::zero);
        if c.is_zero() {
            continue;
        }
        let scale = c / Rational::from_integer(factorial(s as u64));
        // P^(s)(lambda + eps) expanded as a Taylor polynomial in eps
        let ps = p.derivative(s);
        let deg = ps.degree().map_or(0, |deg| deg);
        for k in 0..=deg {
            let taylor = ps.derivative(k).eval(lambda)
                / Rational::from_integer(factorial(k as u64));
            add(s as i64 - d as i64 + k as i64, -(&scale * taylor));
        }
    }

    residual
        .iter()
        .all(|(&exp, v)| exp > 0 || v.is_zero())
}
