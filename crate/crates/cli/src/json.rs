//! JSON form of a Fermat real.
//!
//! `{"std":"p/q","exact":bool,"terms":[{"coef":"p/q","exact":bool,"order":"p/q"}]}`
//! with orders strictly descending and at least 1, and coefficients nonzero.
//! Rationals are strings so that no precision is lost.

use fermat_core::{format_rational, parse_rational, FermatReal, Rational, Scalar};
use num_traits::One;
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid JSON at {path}: {message}")]
pub struct JsonError {
    /// `$`, `$.terms[1].order`, ...
    pub path: String,
    pub message: String,
}

fn err(path: &str, message: impl Into<String>) -> JsonError {
    JsonError {
        path: path.to_string(),
        message: message.into(),
    }
}

pub fn to_json_value(x: &FermatReal) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .iter()
        .map(|t| {
            json!({
                "coef": format_rational(t.coef().value()),
                "exact": t.coef().is_exact(),
                "order": format_rational(t.order()),
            })
        })
        .collect();
    json!({
        "std": format_rational(x.std_part().value()),
        "exact": x.std_part().is_exact(),
        "terms": terms,
    })
}

pub fn to_json(x: &FermatReal) -> String {
    to_json_value(x).to_string()
}

pub fn from_json(text: &str) -> Result<FermatReal, JsonError> {
    let value: Value = serde_json::from_str(text).map_err(|e| err("$", e.to_string()))?;
    from_json_value(&value)
}

pub fn from_json_value(value: &Value) -> Result<FermatReal, JsonError> {
    let obj = object(value, "$")?;
    let std = Scalar::with_flag(rational(obj, "$", "std")?, boolean(obj, "$", "exact")?);
    let terms = obj
        .get("terms")
        .ok_or_else(|| err("$.terms", "missing field"))?
        .as_array()
        .ok_or_else(|| err("$.terms", "expected an array"))?;
    let mut parsed = Vec::with_capacity(terms.len());
    let mut previous: Option<Rational> = None;
    for (i, t) in terms.iter().enumerate() {
        let path = format!("$.terms[{i}]");
        let obj = object(t, &path)?;
        let coef = rational(obj, &path, "coef")?;
        if coef == Rational::default() {
            return Err(err(&format!("{path}.coef"), "coefficient must be nonzero"));
        }
        let exact = boolean(obj, &path, "exact")?;
        let order = rational(obj, &path, "order")?;
        if order < Rational::one() {
            return Err(err(&format!("{path}.order"), "order must be at least 1"));
        }
        if previous.as_ref().is_some_and(|p| *p <= order) {
            return Err(err(&format!("{path}.order"), "orders must be strictly descending"));
        }
        previous = Some(order.clone());
        parsed.push((Scalar::with_flag(coef, exact), order));
    }
    Ok(FermatReal::normalize(std, parsed))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, JsonError> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn rational(obj: &Map<String, Value>, path: &str, key: &str) -> Result<Rational, JsonError> {
    let path = format!("{path}.{key}");
    let s = obj
        .get(key)
        .ok_or_else(|| err(&path, "missing field"))?
        .as_str()
        .ok_or_else(|| err(&path, "expected a string \"p/q\""))?;
    parse_rational(s).ok_or_else(|| err(&path, format!("malformed rational \"{s}\"")))
}

fn boolean(obj: &Map<String, Value>, path: &str, key: &str) -> Result<bool, JsonError> {
    let path = format!("{path}.{key}");
    obj.get(key)
        .ok_or_else(|| err(&path, "missing field"))?
        .as_bool()
        .ok_or_else(|| err(&path, "expected a boolean"))
}
