//! `dope` — command-line front end for exact dope-matrix computation.
//!
//! Every subcommand maps 1:1 onto a library operation and emits canonical
//! JSON (sorted keys, rationals as reduced "p/q" strings) on standard
//! output. Exit codes: 0 success, 1 property-check false, 2 usage or
//! precondition error, 3 retries exhausted.

use std::collections::BTreeSet;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use dope_core::json::{
    bound_report_to_json, certificate_to_json, limit_coeffs_to_json, pattern_from_json,
    pattern_to_json, points_from_json, poly_from_json, rowset_to_json, to_canonical_string,
};
use dope_core::{
    census_count, combine_rows, combine_rows_carry, count_dominating_shifts, count_generic_k,
    count_generic_total, count_limited_saturated, derivative_limit_coeffs, dope_matrix,
    enumerate_safe, generic_bounds, grossbound_lower, gv_rank_check, is_safe, leading_expansion,
    max_row_weight, sandwich_bounds, small_m_log_bounds, synthesize, synthesize_limited, t_cap,
    upper_bound_count, v_table_small, BinarySequence, Error, RowSet,
};

#[derive(Parser)]
#[command(name = "dope", version, about = "Exact computation with dope matrices of rational polynomials", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a 0/1 matrix is safe (equivalently, a generic dope
    /// matrix); exit 0 if safe, 1 if not.
    #[command(visible_alias = "is-generic")]
    CheckSafe {
        /// DopePattern JSON {"bits": ["0100", ...]} from a file or "-"
        #[arg(long)]
        matrix: String,
    },
    /// Stream all safe m x (n+1) matrices as NDJSON, one DopePattern per
    /// line, optionally restricted to exactly k ones.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Count generic dope matrices: total for (m, n), per ones-count with
    /// --k, or T-limited saturated matrices with --t.
    Count {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, conflicts_with = "t")]
        k: Option<u64>,
        /// Count saturated T-limited matrices with m rows instead
        #[arg(long)]
        t: Option<usize>,
    },
    /// Evaluate a counting bound as a BoundReport.
    Bounds {
        /// One of: generic, log, upper, gross
        #[arg(long)]
        kind: String,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        /// Row budget a (gross only)
        #[arg(long)]
        a: Option<u64>,
        /// Per-row weight cap T (gross only)
        #[arg(long)]
        t: Option<u64>,
    },
    /// Compute the dope matrix of a polynomial at a point tuple.
    Compute {
        /// RationalPolynomial JSON {"coeffs": [...]} from a file or "-"
        #[arg(long)]
        poly: String,
        /// PointTuple JSON {"points": [...]} from a file or "-"
        #[arg(long)]
        points: String,
    },
    /// Maximum number of ones any dope-matrix row of this polynomial can
    /// have, over all evaluation points.
    RowWeight {
        #[arg(long)]
        poly: String,
    },
    /// Synthesize a certified polynomial witness for a safe matrix.
    Synth {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        retries: usize,
        /// Also require max row weight <= T (matrix must be saturated and
        /// T-limited)
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Combine two rows over columns 0..=n with the carry process.
    Combine {
        /// Comma-separated members of S1, e.g. "0,1,4"
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
        #[arg(long)]
        n: usize,
    },
    /// Count t-dominating cyclic shifts of a 0/1 sequence.
    Cycle {
        /// Sequence as a string of '0'/'1'
        #[arg(long)]
        seq: String,
        #[arg(long)]
        t: usize,
    },
    /// Check that the binomial-coefficient matrix of a dominance pair
    /// (G, H) has full rank |G|; exit 0 if it does, 1 otherwise.
    GvRank {
        /// Comma-separated members of G
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Solve for the derivative-limit coefficients c1, c2 of a valid
    /// (d, S1, S2) triple.
    LimitCoeffs {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
    /// Exact dope-matrix census |D_n^m| (n <= 2) or the leading-terms
    /// expansion in m (n >= 3).
    Census {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum LogLevel {
    Quiet,
    Info,
    Debug,
}

fn log_level() -> LogLevel {
    match std::env::var("DOPE_LOG").as_deref() {
        Ok("debug") => LogLevel::Debug,
        Ok("quiet") => LogLevel::Quiet,
        _ => LogLevel::Info,
    }
}

fn info(msg: &str) {
    if log_level() >= LogLevel::Info {
        eprintln!("dope: {msg}");
    }
}

fn read_input(path: &str) -> Result<Value, Error> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("malformed JSON in {path}: {e}")))
}

fn parse_members(s: &str) -> Result<BTreeSet<usize>, Error> {
    let mut out = BTreeSet::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: usize = part
            .parse()
            .map_err(|_| Error::Parse(format!("bad list entry {part:?}")))?;
        out.insert(v);
    }
    Ok(out)
}

fn parse_rowset(s: &str, n: usize) -> Result<RowSet, Error> {
    RowSet::new(n, parse_members(s)?)
}

fn emit(v: &Value) {
    println!("{}", to_canonical_string(v));
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::RetriesExhausted(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::CheckSafe { matrix } => {
            let m = pattern_from_json(&read_input(&matrix)?)?;
            let safe = is_safe(&m);
            emit(&json!({ "safe": safe }));
            Ok(if safe { 0 } else { 1 })
        }
        Command::Enumerate { m, n, k } => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            let mut count = 0usize;
            for pat in enumerate_safe(m, n, k) {
                writeln!(out, "{}", to_canonical_string(&pattern_to_json(&pat)))
                    .map_err(|e| Error::Parse(format!("write failed: {e}")))?;
                count += 1;
            }
            info(&format!("enumerated {count} safe matrices"));
            Ok(0)
        }
        Command::Count { m, n, k, t } => {
            let value = match (k, t) {
                (Some(k), None) => count_generic_k(m, n, k),
                (None, Some(t)) => count_limited_saturated(m as usize, n as usize, t)?,
                (None, None) => count_generic_total(m, n),
                (Some(_), Some(_)) => unreachable!("clap rejects --k with --t"),
            };
            emit(&Value::String(value.to_string()));
            Ok(0)
        }
        Command::Bounds { kind, m, n, a, t } => {
            let report = match kind.as_str() {
                "generic" => bound_report_to_json(&generic_bounds(m, n)?),
                "log" => bound_report_to_json(&small_m_log_bounds(m, n)?),
                "upper" => {
                    let value = upper_bound_count(m, n)?;
                    let mut obj = Map::new();
                    obj.insert("kind".into(), Value::String("upper_bound_count".into()));
                    obj.insert("m".into(), json!(m));
                    obj.insert("n".into(), json!(n));
                    obj.insert("upper".into(), Value::String(value.to_string()));
                    Value::Object(obj)
                }
                "gross" => {
                    let a = a.ok_or_else(|| Error::Parse("gross bound needs --a".into()))?;
                    let t = t.ok_or_else(|| Error::Parse("gross bound needs --t".into()))?;
                    bound_report_to_json(&grossbound_lower(m, n, a, t)?)
                }
                "sandwich" => {
                    let table = v_table_small(n)?;
                    bound_report_to_json(&sandwich_bounds(n, m, &table)?)
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unknown bound kind {other:?}; expected generic, log, upper, gross, or sandwich"
                    )))
                }
            };
            emit(&report);
            Ok(0)
        }
        Command::Compute { poly, points } => {
            let p = poly_from_json(&read_input(&poly)?)?;
            let pts = points_from_json(&read_input(&points)?)?;
            let m = dope_matrix(&p, &pts)?;
            emit(&pattern_to_json(&m));
            Ok(0)
        }
        Command::RowWeight { poly } => {
            let p = poly_from_json(&read_input(&poly)?)?;
            let w = max_row_weight(&p)?;
            emit(&json!(w));
            Ok(0)
        }
        Command::Synth {
            matrix,
            seed,
            retries,
            limit,
        } => {
            let m = pattern_from_json(&read_input(&matrix)?)?;
            let cert = match limit {
                Some(t) => synthesize_limited(&m, t, seed, retries)?,
                None => synthesize(&m, seed, retries)?,
            };
            info(&format!("verified certificate after {} attempts", cert.attempts_used));
            emit(&certificate_to_json(&cert));
            Ok(0)
        }
        Command::Combine { s1, s2, n } => {
            let s1 = parse_rowset(&s1, n)?;
            let s2 = parse_rowset(&s2, n)?;
            let combined = combine_rows_carry(&s1, &s2, n)?;
            debug_assert_eq!(combined, combine_rows(&s1, &s2, n));
            emit(&rowset_to_json(&combined));
            Ok(0)
        }
        Command::Cycle { seq, t } => {
            let s = BinarySequence::parse(&seq)?;
            if s.zeros_count() < t * s.ones_count() {
                return Err(Error::ConditionViolated(format!(
                    "cycle lemma needs a >= t*b, got a = {}, b = {}, t = {t}",
                    s.zeros_count(),
                    s.ones_count()
                )));
            }
            emit(&json!(count_dominating_shifts(&s, t)));
            Ok(0)
        }
        Command::GvRank { g, h } => {
            let g = parse_members(&g)?;
            let h = parse_members(&h)?;
            let full = gv_rank_check(&g, &h)?;
            emit(&json!({ "full_rank": full }));
            Ok(if full { 0 } else { 1 })
        }
        Command::LimitCoeffs { d, s1, s2 } => {
            let s1 = parse_rowset(&s1, d)?;
            let s2 = parse_rowset(&s2, d)?;
            let coeffs = derivative_limit_coeffs(d, &s1, &s2)?;
            emit(&limit_coeffs_to_json(&coeffs));
            Ok(0)
        }
        Command::Census { n, m } => {
            if n <= 2 {
                let table = v_table_small(n)?;
                let count = census_count(n, m, &table)?;
                emit(&Value::String(count.to_string()));
            } else {
                info(&format!(
                    "no exact table for n = {n}; reporting leading terms up to O(m^{})",
                    t_cap(n).saturating_sub(2)
                ));
                emit(&Value::String(leading_expansion(n)));
            }
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("dope: {err}");
            std::process::exit(exit_code_for(&err));
        }
    }
}
