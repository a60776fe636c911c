//! Canonical JSON encodings shared with the CLI: object keys sorted
//! (serde_json's default map is ordered), rationals as reduced "p/q"
//! strings, patterns as row strings of '0'/'1'. The encodings are
//! byte-stable so pipelines can compare outputs directly.

use serde_json::{json, Map, Value};

use crate::counting::BoundReport;
use crate::error::{Error, Result};
use crate::linalg::LimitCoefficients;
use crate::pattern::{BinarySequence, DopePattern, RowSet};
use crate::poly::RationalPolynomial;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::synthesis::SynthesisCertificate;

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::Parse(format!("expected a rational string, got {v}"))),
    }
}

pub fn poly_to_json(p: &RationalPolynomial) -> Value {
    json!({ "coeffs": p.coeffs().iter().map(rational_to_json).collect::<Vec<_>>() })
}

pub fn poly_from_json(v: &Value) -> Result<RationalPolynomial> {
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("polynomial needs a \"coeffs\" array".into()))?;
    Ok(RationalPolynomial::new(
        coeffs.iter().map(rational_from_json).collect::<Result<_>>()?,
    ))
}

pub fn points_to_json(points: &[Rational]) -> Value {
    json!({ "points": points.iter().map(rational_to_json).collect::<Vec<_>>() })
}

pub fn points_from_json(v: &Value) -> Result<Vec<Rational>> {
    let points = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("point tuple needs a \"points\" array".into()))?;
    let parsed: Vec<Rational> = points.iter().map(rational_from_json).collect::<Result<_>>()?;
    for (i, a) in parsed.iter().enumerate() {
        if parsed[..i].contains(a) {
            return Err(Error::Parse(format!(
                "points must be pairwise distinct, {} repeats",
                format_rational(a)
            )));
        }
    }
    Ok(parsed)
}

pub fn pattern_to_json(m: &DopePattern) -> Value {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect()
        })
        .collect();
    json!({ "bits": rows })
}

pub fn pattern_from_json(v: &Value) -> Result<DopePattern> {
    let rows = v
        .get("bits")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("pattern needs a \"bits\" array of row strings".into()))?;
    let bits = rows
        .iter()
        .map(|r| {
            let s = r
                .as_str()
                .ok_or_else(|| Error::Parse("pattern rows must be strings".into()))?;
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Parse(format!("bad pattern char {c:?}"))),
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    DopePattern::new(bits)
}

pub fn sequence_to_json(s: &BinarySequence) -> Value {
    Value::String(s.to_string01())
}

pub fn rowset_to_json(s: &RowSet) -> Value {
    json!({
        "members": s.members().iter().copied().collect::<Vec<_>>(),
        "n": s.n(),
    })
}

pub fn certificate_to_json(c: &SynthesisCertificate) -> Value {
    json!({
        "attempts_used": c.attempts_used,
        "padded_row": c.padded_row,
        "points": points_to_json(&c.points),
        "poly": poly_to_json(&c.poly),
        "prepended_columns": c.prepended_columns,
        "target": pattern_to_json(&c.target),
        "verified": c.verified,
    })
}

pub fn limit_coeffs_to_json(c: &LimitCoefficients) -> Value {
    let mut c1 = Map::new();
    for (s, v) in &c.c1 {
        c1.insert(s.to_string(), rational_to_json(v));
    }
    let mut c2 = Map::new();
    for (s, v) in &c.c2 {
        c2.insert(s.to_string(), rational_to_json(v));
    }
    json!({ "c1": c1, "c2": c2, "d": c.d })
}

pub fn bound_report_to_json(r: &BoundReport) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), Value::String(r.kind.as_str().into()));
    obj.insert("lower".into(), Value::String(r.lower.render()));
    obj.insert("m".into(), json!(r.m));
    obj.insert("n".into(), json!(r.n));
    if let Some(upper) = &r.upper {
        obj.insert("upper".into(), Value::String(upper.render()));
    }
    Value::Object(obj)
}

/// Compact canonical rendering (sorted keys, no whitespace).
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON serialization cannot fail")
}
