//! Exact computation with dope matrices of rational polynomials: the 0/1
//! patterns recording which derivatives of a polynomial vanish at which
//! points.
//!
//! The crate provides
//! - exact rational polynomials and their derivative/evaluation/gcd
//!   plumbing ([`poly`], [`rational`]),
//! - the safe-matrix characterization of generic dope matrices, their
//!   enumeration, the dominating-sequence bijection and cycle lemma, and
//!   the row-combining carry process ([`pattern`]),
//! - exact big-integer counting formulas and bound calculators
//!   ([`counting`]),
//! - exact rational linear algebra, binomial-coefficient rank checks, and
//!   the derivative-limit identity ([`linalg`]),
//! - dope matrices and the derivative-gcd row-weight bound ([`dope`]),
//! - certified randomized synthesis of witnesses for safe matrices
//!   ([`synthesis`]),
//! - the large-m census polynomial and its leading coefficients
//!   ([`census`]),
//! - canonical JSON encodings shared with the CLI ([`json`]).

pub mod census;
pub mod comb;
pub mod counting;
pub mod dope;
pub mod error;
pub mod json;
pub mod linalg;
pub mod pattern;
pub mod poly;
pub mod rational;
pub mod synthesis;

pub use census::{
    census_count, leading_expansion, sandwich_bounds, t_cap, v_table_small, v_top, v_top_minus1,
    CensusTable,
};
pub use comb::{binomial, factorial};
pub use counting::{
    count_generic_k, count_generic_total, generic_bounds, grossbound_lower, small_m_log_bounds,
    upper_bound_count, BoundKind, BoundReport, BoundValue,
};
pub use dope::{dope_matrix, dope_row, max_row_weight};
pub use error::{Error, Result};
pub use linalg::{
    binomial_matrix, derivative_limit_coeffs, gv_rank_check, rank, solve, verify_limit_identity,
    LimitCoefficients, RationalMatrix, Solution,
};
pub use pattern::{
    combine_rows, combine_rows_carry, combine_rows_carry_with, count_dominating_shifts,
    count_limited_saturated, enumerate_safe, is_almost_safe, is_safe, is_saturated,
    is_t_dominating, is_t_limited, matrix_to_sequence, sequence_to_matrix, BinarySequence,
    DopePattern, RowSet,
};
pub use poly::RationalPolynomial;
pub use rational::Rational;
pub use synthesis::{synthesize, synthesize_limited, verify_certificate, SynthesisCertificate};
