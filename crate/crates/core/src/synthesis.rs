//! Constructive realization of safe matrices as dope matrices: sample
//! candidate points, solve the exact interpolation system, and keep only
//! outputs whose dope matrix reproduces the target exactly. Failures from
//! unlucky (non-generic) rational points are handled by resampling, so every
//! returned certificate is unconditionally correct.

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dope::{dope_matrix, max_row_weight};
use crate::error::{Error, Result};
use crate::linalg::{solve, RationalMatrix, Solution};
use crate::pattern::{is_safe, is_saturated, is_t_limited, DopePattern};
use crate::poly::RationalPolynomial;
use crate::rational::Rational;

/// Base half-width of the sampling range; attempt k draws from
/// [-BASE_RANGE * k, BASE_RANGE * k].
const BASE_RANGE: i64 = 1 << 16;

/// A verified witness that a safe matrix is a dope matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisCertificate {
    pub target: DopePattern,
    pub points: Vec<Rational>,
    pub poly: RationalPolynomial,
    pub prepended_columns: usize,
    pub padded_row: bool,
    pub attempts_used: usize,
    pub verified: bool,
}

/// Pure recheck of a certificate; trusts nothing stored in it.
pub fn verify_certificate(cert: &SynthesisCertificate) -> bool {
    match dope_matrix(&cert.poly, &cert.points) {
        Ok(pattern) => pattern == cert.target,
        Err(_) => false,
    }
}

/// Synthesizes a polynomial and point tuple whose dope matrix is exactly the
/// given safe matrix. Deterministic for fixed (matrix, seed, max_attempts).
pub fn synthesize(
    matrix: &DopePattern,
    seed: u64,
    max_attempts: usize,
) -> Result<SynthesisCertificate> {
    if !is_safe(matrix) {
        return Err(Error::NotSafe);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    synthesize_with(matrix, &mut rng, max_attempts, |_| true)
}

/// As [`synthesize`], additionally requiring the witness polynomial to have
/// row weight at most T at every complex point. Preconditions: safe,
/// saturated, T-limited.
pub fn synthesize_limited(
    matrix: &DopePattern,
    t: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<SynthesisCertificate> {
    if !is_safe(matrix) {
        return Err(Error::NotSafe);
    }
    if !is_saturated(matrix) {
        return Err(Error::NotSaturated);
    }
    if !is_t_limited(matrix, t) {
        return Err(Error::NotLimited(t));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    synthesize_with(matrix, &mut rng, max_attempts, |cert| {
        max_row_weight(&cert.poly).map_or(false, |w| w <= t)
    })
}

fn synthesize_with<F>(
    matrix: &DopePattern,
    rng: &mut ChaCha8Rng,
    max_attempts: usize,
    accept: F,
) -> Result<SynthesisCertificate>
where
    F: Fn(&SynthesisCertificate) -> bool,
{
    let n = matrix.n();
    let padded_row = matrix.rows() == 1;
    let work = if padded_row {
        let mut bits: Vec<Vec<bool>> = vec![matrix.row(0).to_vec()];
        bits.push(vec![false; n + 1]);
        DopePattern::new(bits).unwrap()
    } else {
        matrix.clone()
    };
    let rows = work.rows();

    // prepend c = n - z columns with ones in the top two rows, giving a safe
    // matrix with exactly n + c ones
    let z = work.ones();
    let c = n - z;
    let mut prepended = DopePattern::zeros(rows, n + c + 1);
    for j in 0..c {
        prepended.set(0, j, true);
        prepended.set(1, j, true);
    }
    for i in 0..rows {
        for j in 0..=n {
            prepended.set(i, c + j, work.get(i, j));
        }
    }
    debug_assert!(is_safe(&prepended));
    debug_assert_eq!(prepended.ones(), n + c);
    let deg = n + c;

    for attempt in 1..=max_attempts {
        let points = sample_distinct(rng, rows, BASE_RANGE * attempt as i64);
        let Some(p0) = solve_interpolation(&prepended, &points, deg) else {
            continue;
        };
        if dope_matrix(&p0, &points).unwrap() != prepended {
            // spurious vanishing at a non-generic point tuple
            continue;
        }
        let poly = p0.derivative(c);
        let kept_points = if padded_row {
            points[..1].to_vec()
        } else {
            points.clone()
        };
        let cert = SynthesisCertificate {
            target: matrix.clone(),
            points: kept_points,
            poly,
            prepended_columns: c,
            padded_row,
            attempts_used: attempt,
            verified: false,
        };
        if !accept(&cert) {
            continue;
        }
        let cert = SynthesisCertificate {
            verified: true,
            ..cert
        };
        assert!(verify_certificate(&cert));
        return Ok(cert);
    }
    Err(Error::RetriesExhausted(max_attempts))
}

fn sample_distinct(rng: &mut ChaCha8Rng, count: usize, half_width: i64) -> Vec<Rational> {
    let mut picked: Vec<i64> = Vec::with_capacity(count);
    while picked.len() < count {
        let v = rng.gen_range(-half_width..=half_width);
        if !picked.contains(&v) {
            picked.push(v);
        }
    }
    picked
        .into_iter()
        .map(|v| Rational::from_integer(BigInt::from(v)))
        .collect()
}

/// Builds and solves the exact system over a_0..a_deg: one vanishing
/// equation per one-entry of the matrix, plus the normalization a_deg = 1.
fn solve_interpolation(
    matrix: &DopePattern,
    points: &[Rational],
    deg: usize,
) -> Option<RationalPolynomial> {
    let unknowns = deg + 1;
    let mut system = RationalMatrix::zeros(unknowns, unknowns);
    let mut rhs = vec![Rational::from_integer(BigInt::from(0)); unknowns];
    let mut eq = 0usize;
    for i in 0..matrix.rows() {
        // powers of lambda_i up to deg
        let lambda = &points[i];
        let mut powers = Vec::with_capacity(deg + 1);
        let mut acc = Rational::from_integer(BigInt::one());
        for _ in 0..=deg {
            powers.push(acc.clone());
            acc *= lambda;
        }
        for j in 0..matrix.cols() {
            if !matrix.get(i, j) {
                continue;
            }
            // falling = t!/(t-j)!, stepped by *t/(t-j)
            let mut falling = crate::comb::factorial(j as u64);
            for t in j..=deg {
                if t > j {
                    falling *= BigInt::from(t as u64);
                    falling /= BigInt::from((t - j) as u64);
                }
                let coeff = Rational::from_integer(falling.clone()) * &powers[t - j];
                system.set(eq, t, coeff);
            }
            eq += 1;
        }
    }
    system.set(eq, deg, Rational::from_integer(BigInt::one()));
    rhs[eq] = Rational::from_integer(BigInt::one());
    eq += 1;
    debug_assert_eq!(eq, unknowns);

    match solve(&system, &rhs).ok()? {
        Solution::Unique(coeffs) => Some(RationalPolynomial::new(coeffs)),
        Solution::Singular => None,
    }
}
