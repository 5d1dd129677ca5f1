//! JSON encodings of library values and the plain-text renderer.

use serde_json::{json, Value};
use wittcalc::abelian::{AbHom, FinAbGroup};
use wittcalc::formparam::FormParameter;
use wittcalc::qform::QForm;
use wittcalc::Matrix;

pub fn group(g: &FinAbGroup) -> Value {
    json!({ "orders": g.orders() })
}

pub fn matrix(m: &Matrix) -> Value {
    json!(m.to_rows())
}

pub fn hom(f: &AbHom) -> Value {
    json!({ "source": group(f.source()), "target": group(f.target()), "matrix": matrix(f.matrix()) })
}

pub fn param(p: &FormParameter) -> Value {
    json!({ "carrier": group(p.carrier()), "h": p.h_values(), "pOne": p.p_one().coords() })
}

pub fn form(f: &QForm) -> Value {
    let mu: Vec<&[i64]> = f.mu_basis().iter().map(|m| m.coords()).collect();
    json!({ "param": param(f.param()), "lambda": matrix(f.lambda()), "mu": mu })
}

/// One `key: value` line per top-level field, values in compact JSON.
pub fn pretty(report: &Value) -> String {
    match report {
        Value::Object(fields) => {
            let width = fields.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            fields
                .iter()
                .map(|(k, v)| {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    format!("{k:<width$}  {shown}")
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        other => other.to_string(),
    }
}
