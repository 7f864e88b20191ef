// SPDX-License-Identifier: Apache-2.0

//! JSON shaping: 12 significant digits, complex entries as `[re, im]`,
//! and a flat `path = value` text rendering.

use serde_json::{Map, Value};
use zxforge::{Matrix, C64};

/// Round to 12 significant digits so output is stable across platforms.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Apply [`round12`] to every floating-point number in `v`.
pub fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().unwrap_or(0.0));
            serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, rounded(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

pub fn complex(z: C64) -> Value {
    serde_json::json!([z.re, z.im])
}

/// Row-major matrix of `[re, im]` pairs.
pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array((0..m.cols()).map(|c| complex(m[(r, c)])).collect())).collect())
}

pub fn vector(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|z| complex(*z)).collect())
}

pub fn real_matrix(m: &[Vec<f64>]) -> Value {
    serde_json::json!(m)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => out.push(format!("{prefix} = {v}")),
    }
}

/// One `path = value` line per leaf; arrays of scalars stay inline.
pub fn text(v: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", v, &mut lines);
    let mut s = lines.join("\n");
    s.push('\n');
    s
}
