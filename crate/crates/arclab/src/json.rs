//! Number encodings shared by every file format.
//!
//! Exact values are written as `{"num": n, "den": d}` (integers, or decimal
//! strings when they do not fit in 64 bits). Floating values are rounded to
//! 13 significant digits so that reports are byte-stable.

use arclab_core::scalar::Rational;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "arclab/1";

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.12e}").parse().expect("formatted float");
    json!(if r == 0.0 { 0.0 } else { r })
}

pub fn int(b: &BigInt) -> Value {
    b.to_i64().map_or_else(|| Value::String(b.to_string()), Value::from)
}

pub fn rational(q: &Rational) -> Value {
    json!({ "num": int(q.numer()), "den": int(q.denom()) })
}

/// A parsed number: exact when given as an integer, a `"p/q"` string or a
/// `{"num", "den"}` object; floating otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Number::Float(x) => *x,
        }
    }
}

pub fn parse_bigint(v: &Value) -> CliResult<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| CliError::validation(format!("expected an integer, got {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| CliError::validation(format!("expected an integer, got {s:?}"))),
        _ => Err(CliError::validation(format!("expected an integer, got {v}"))),
    }
}

pub fn make_rational(num: BigInt, den: BigInt) -> CliResult<Rational> {
    if den.is_zero() {
        return Err(CliError::validation("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn parse_number(v: &Value) -> CliResult<Number> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Number::Exact(Rational::from_integer(i.into()))),
            None => n.as_f64().map(Number::Float).ok_or_else(|| CliError::validation(format!("bad number {n}"))),
        },
        Value::String(s) => {
            let s = s.trim();
            if let Some((p, q)) = s.split_once('/') {
                let p = p.trim().parse().map_err(|_| CliError::validation(format!("bad rational {s:?}")))?;
                let q = q.trim().parse().map_err(|_| CliError::validation(format!("bad rational {s:?}")))?;
                return make_rational(p, q).map(Number::Exact);
            }
            if let Ok(i) = s.parse::<BigInt>() {
                return Ok(Number::Exact(Rational::from_integer(i)));
            }
            s.parse::<f64>().map(Number::Float).map_err(|_| CliError::validation(format!("bad number {s:?}")))
        }
        Value::Object(o) => {
            let num = parse_bigint(o.get("num").ok_or_else(|| CliError::validation("rational without \"num\""))?)?;
            let den = parse_bigint(o.get("den").ok_or_else(|| CliError::validation("rational without \"den\""))?)?;
            make_rational(num, den).map(Number::Exact)
        }
        _ => Err(CliError::validation(format!("expected a number, got {v}"))),
    }
}

/// Per-edge values, exact when every entry is exact.
#[derive(Debug, Clone, PartialEq)]
pub enum EdgeData {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl EdgeData {
    pub fn from_numbers(nums: Vec<Number>) -> Self {
        if nums.iter().all(|n| matches!(n, Number::Exact(_))) {
            EdgeData::Exact(
                nums.into_iter()
                    .map(|n| match n {
                        Number::Exact(q) => q,
                        Number::Float(_) => unreachable!(),
                    })
                    .collect(),
            )
        } else {
            EdgeData::Float(nums.iter().map(Number::to_f64).collect())
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            EdgeData::Exact(v) => v.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect(),
            EdgeData::Float(v) => v.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            EdgeData::Exact(v) => v.len(),
            EdgeData::Float(v) => v.len(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EdgeData::Exact(v) => edge_map(v.iter().map(rational)),
            EdgeData::Float(v) => edge_map(v.iter().map(|x| float(*x))),
        }
    }
}

/// `{"0": v0, "1": v1, ...}`.
pub fn edge_map(values: impl IntoIterator<Item = Value>) -> Value {
    Value::Object(values.into_iter().enumerate().map(|(e, v)| (e.to_string(), v)).collect::<Map<_, _>>())
}

/// Accepts an array of `n` values or an object keyed by every edge id `0..n`.
pub fn parse_edge_values(v: &Value, n: usize, what: &str) -> CliResult<Vec<Number>> {
    let items: Vec<&Value> = match v {
        Value::Array(a) => a.iter().collect(),
        Value::Object(o) => {
            let mut slots: Vec<Option<&Value>> = vec![None; n];
            for (k, x) in o {
                let e: usize = k.trim().parse().map_err(|_| CliError::validation(format!("{what}: bad edge id {k:?}")))?;
                let slot = slots.get_mut(e).ok_or_else(|| CliError::validation(format!("{what}: no edge {e}")))?;
                *slot = Some(x);
            }
            slots
                .into_iter()
                .enumerate()
                .map(|(e, x)| x.ok_or_else(|| CliError::validation(format!("{what}: edge {e} missing"))))
                .collect::<CliResult<_>>()?
        }
        _ => return Err(CliError::validation(format!("{what}: expected an array or an object"))),
    };
    if items.len() != n {
        return Err(CliError::validation(format!("{what}: expected {n} values, got {}", items.len())));
    }
    items.into_iter().map(parse_number).collect()
}

pub fn usize_field(v: &Value, key: &str) -> CliResult<Option<usize>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x
            .as_u64()
            .map(|n| Some(n as usize))
            .ok_or_else(|| CliError::validation(format!("\"{key}\" must be a nonnegative integer"))),
    }
}

pub fn u64_list(v: &Value, what: &str) -> CliResult<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| CliError::validation(format!("{what}: expected an array")))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| CliError::validation(format!("{what}: expected nonnegative integers"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use arclab_core::scalar::ratio;

    #[test]
    fn numbers() {
        assert_eq!(parse_number(&json!(3)).unwrap(), Number::Exact(ratio(3, 1)));
        assert_eq!(parse_number(&json!("6/4")).unwrap(), Number::Exact(ratio(3, 2)));
        assert_eq!(parse_number(&json!({"num": 1, "den": "3"})).unwrap(), Number::Exact(ratio(1, 3)));
        assert_eq!(parse_number(&json!(0.5)).unwrap(), Number::Float(0.5));
        assert!(parse_number(&json!("1/0")).is_err());
        assert!(parse_number(&json!([1])).is_err());
    }

    #[test]
    fn floats_are_rounded() {
        assert_eq!(float(0.1 + 0.2), json!(0.3));
        assert_eq!(float(-0.0), json!(0.0));
        assert_eq!(float(f64::NAN), Value::Null);
    }

    #[test]
    fn edge_values_by_key() {
        let v = parse_edge_values(&json!({"1": 2, "0": "1/2"}), 2, "lambda").unwrap();
        assert_eq!(EdgeData::from_numbers(v), EdgeData::Exact(vec![ratio(1, 2), ratio(2, 1)]));
        assert!(parse_edge_values(&json!({"0": 1}), 2, "lambda").is_err());
        assert!(parse_edge_values(&json!([1, 2, 3]), 2, "lambda").is_err());
    }
}
