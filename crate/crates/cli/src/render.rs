//! Canonical JSON values for the core types, and the text mirror.
//!
//! Keys come out sorted because `serde_json::Map` is a `BTreeMap`.
//! Rationals are `"p/q"` strings (`"p"` for integers); number-field elements
//! carry their coefficients in the power basis of γ along with the minimal
//! polynomial of γ.

use chebcurve::arith::{AlgNum, Rational, UPoly};
use chebcurve::hilbert::IntPoly;
use chebcurve::poly::{KPoly, QPoly};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn bigint(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

pub fn upoly(p: &UPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational).collect())
}

pub fn alg(a: &AlgNum) -> Value {
    json!({
        "coeffs": a.coeffs().iter().map(rational).collect::<Vec<_>>(),
        "minpoly": upoly(a.field().minpoly()),
    })
}

pub fn int_poly(p: &IntPoly) -> Value {
    json!(p.coeffs())
}

pub fn qpoly(p: &QPoly) -> Value {
    Value::String(p.to_string())
}

/// A polynomial over K_d: the display string plus exact terms.
pub fn kpoly(p: &KPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| json!({ "exponents": m.exps(), "coeff": alg(c) }))
        .collect();
    json!({ "text": p.to_string(), "terms": terms })
}

/// `key.path: value` lines in key order; arrays of scalars stay on one line.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, "", &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn walk(v: &Value, path: &str, out: &mut String) {
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{path}: {s}\n"));
        return;
    }
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                walk(x, &join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                walk(x, &join(&i.to_string()), out);
            }
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chebcurve::chebyshev::field_for;

    #[test]
    fn rationals_and_field_elements() {
        assert_eq!(rational(&Rational::new(-3, 4)), json!("-3/4"));
        assert_eq!(rational(&Rational::from(5)), json!("5"));
        let k = field_for(4);
        let v = alg(&AlgNum::gamma(&k));
        assert_eq!(v["coeffs"], json!(["0", "1"]));
        assert_eq!(v["minpoly"], json!(["-2", "0", "1"]));
        assert_eq!(bigint(&BigInt::from(7)), json!(7));
        let big: BigInt = BigInt::from(1u8) << 80;
        assert_eq!(bigint(&big), json!(big.to_string()));
    }

    #[test]
    fn text_mirror() {
        let v = json!({ "b": [1, 2], "a": { "c": "x", "d": [{ "e": true }] } });
        assert_eq!(text(&v), "a.c: x\na.d.0.e: true\nb: [1, 2]\n");
    }
}
