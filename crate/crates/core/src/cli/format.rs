//! Output encodings. Reals carry 17 significant digits; non-finite values
//! are spelled `inf`, `-inf` or `nan` (as strings in JSON).

use crate::bounds::{Bandwidth, BoundResult};

pub fn real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn json_real(x: f64) -> String {
    if x.is_finite() {
        real(x)
    } else {
        format!("\"{}\"", real(x))
    }
}

pub fn json_opt(x: Option<f64>) -> String {
    x.map(json_real).unwrap_or_else(|| "null".into())
}

pub fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

pub fn json_bandwidth(b: &Bandwidth) -> String {
    match b {
        Bandwidth::Isotropic(s) => json_real(*s),
        Bandwidth::Anisotropic(v) => {
            let parts: Vec<String> = v.iter().map(|s| json_real(*s)).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

/// Text form of a bandwidth for CSV and tables: `2` or `2;3`.
pub fn text_bandwidth(b: &Bandwidth) -> String {
    match b {
        Bandwidth::Isotropic(s) => real(*s),
        Bandwidth::Anisotropic(v) => v.iter().map(|s| real(*s)).collect::<Vec<_>>().join(";"),
    }
}

/// Objects are built by hand so that field order is fixed.
pub struct JsonObject {
    fields: Vec<(String, String)>,
}

impl JsonObject {
    pub fn new() -> Self {
        JsonObject { fields: Vec::new() }
    }

    pub fn raw(mut self, key: &str, value: String) -> Self {
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn str(self, key: &str, value: &str) -> Self {
        self.raw(key, json_str(value))
    }

    pub fn real(self, key: &str, value: f64) -> Self {
        self.raw(key, json_real(value))
    }

    pub fn int(self, key: &str, value: u64) -> Self {
        self.raw(key, value.to_string())
    }

    pub fn bool(self, key: &str, value: bool) -> Self {
        self.raw(key, value.to_string())
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.fields.iter().map(|(k, v)| format!("{}:{}", json_str(k), v)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

pub fn json_array(items: &[String]) -> String {
    if items.is_empty() {
        return "[]".into();
    }
    format!("[\n  {}\n]", items.join(",\n  "))
}

/// `{method, d, sigma, r, eps, p, eps0, log_covering_bound, log_of_bound,
/// constant, valid, reason}`.
pub fn bound_json(r: &BoundResult) -> String {
    JsonObject::new()
        .str("method", r.method.name())
        .int("d", r.inputs.d as u64)
        .raw("sigma", json_bandwidth(&r.inputs.bandwidth))
        .real("r", r.inputs.radius)
        .real("eps", r.inputs.eps)
        .raw("p", json_opt(r.inputs.p))
        .raw("eps0", json_opt(r.inputs.eps0))
        .real("log_covering_bound", r.log_covering_bound)
        .real("log_of_bound", r.log_of_bound)
        .real("constant", r.constant)
        .bool("valid", r.valid)
        .str("reason", &r.validity_reason)
        .render()
}
