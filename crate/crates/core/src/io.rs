//! Text and JSON encodings of exact numbers and matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Number, Value};

use crate::RationalMatrix;

/// An exact JSON integer, however large.
pub fn big_number(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

pub fn parse_big_number(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// `"p/q"`, always with an explicit denominator.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// `{"n": .., "entries": [[i, j, "p/q"], ...]}` over all nonzero entries.
pub fn matrix_to_json(m: &RationalMatrix) -> Value {
    let entries: Vec<Value> = m
        .iter_indexed()
        .filter(|(_, _, x)| !x.is_zero())
        .map(|(i, j, x)| json!([i, j, format_rational(x)]))
        .collect();
    json!({ "n": m.nrows(), "entries": entries })
}

pub fn matrix_from_json(v: &Value) -> Option<RationalMatrix> {
    let n = usize::try_from(v.get("n")?.as_u64()?).ok()?;
    let mut m = RationalMatrix::zeros(n, n);
    for e in v.get("entries")?.as_array()? {
        let e = e.as_array()?;
        let i = usize::try_from(e.first()?.as_u64()?).ok()?;
        let j = usize::try_from(e.get(1)?.as_u64()?).ok()?;
        if i >= n || j >= n {
            return None;
        }
        m[(i, j)] = parse_rational(e.get(2)?.as_str()?)?;
    }
    Some(m)
}

/// Dense tab-separated rows of `p/q` cells.
pub fn matrix_to_tsv(m: &RationalMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let cells: Vec<String> = m.row(i).iter().map(format_rational).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

pub fn matrix_from_tsv(text: &str) -> Option<RationalMatrix> {
    let rows: Vec<Vec<BigRational>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split('\t').map(parse_rational).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return None;
    }
    Some(RationalMatrix::from_rows(rows))
}

/// Decimal rendering for human inspection only.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
