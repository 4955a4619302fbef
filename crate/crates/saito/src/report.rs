//! Report documents and their JSON and text renderings.
//!
//! Object keys are kept sorted, so identical inputs give byte-identical
//! output. Tensors are keyed `"(i,j,k)"` for the component `T^k_{ij}`.

use std::fmt::Write as _;

use saito_core::algebra::{Entry, Matrix, RatFn};
use saito_core::saito::Check;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            id: c.id.clone(),
            status: if c.passed { Status::Pass } else { Status::Fail },
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub group: String,
    pub command: String,
    pub checks: Vec<CheckRecord>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(group: &str, command: &str) -> Self {
        Report { schema: SCHEMA, group: group.into(), command: command.into(), checks: Vec::new(), data: Map::new() }
    }

    pub fn check(&mut self, c: &Check) {
        self.checks.push(c.into());
    }

    pub fn checks<'a>(&mut self, cs: impl IntoIterator<Item = &'a Check>) {
        for c in cs {
            self.check(c);
        }
    }

    /// Adds every check under a common prefix, as `prefix/id`.
    pub fn checks_prefixed<'a>(&mut self, prefix: &str, cs: impl IntoIterator<Item = &'a Check>) {
        for c in cs {
            let mut r = CheckRecord::from(c);
            r.id = format!("{prefix}/{}", r.id);
            self.checks.push(r);
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.into(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are plain JSON");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group: {}", self.group);
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "checks:");
        if self.checks.is_empty() {
            let _ = writeln!(out, "  (none)");
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            if c.detail.is_empty() {
                let _ = writeln!(out, "  [{tag}] {}", c.id);
            } else {
                let _ = writeln!(out, "  [{tag}] {}: {}", c.id, c.detail);
            }
        }
        let _ = writeln!(out, "data:");
        for (k, v) in &self.data {
            render_text(&mut out, k, v, 1);
        }
        out
    }
}

fn render_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, x) in m {
                render_text(out, k, x, depth + 1);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_array() || x.is_object()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, x) in xs.iter().enumerate() {
                render_text(out, &format!("[{}]", i + 1), x, depth + 1);
            }
        }
        Value::Array(xs) => {
            let items: Vec<String> = xs.iter().map(scalar_text).collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", items.join(", "));
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar_text(other));
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn strings<T: ToString>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix<T: Entry + ToString>(m: &Matrix<T>) -> Value {
    Value::Array((0..m.rows()).map(|i| strings(m.row(i))).collect())
}

/// `mats[i][(k, j)] = T^k_{ij}` as `{"(i,j,k)": "..."}` (1-based).
pub fn tensor<T: Entry + ToString>(mats: &[Matrix<T>]) -> Value {
    let mut m = Map::new();
    for (i, t) in mats.iter().enumerate() {
        for k in 0..t.rows() {
            for j in 0..t.cols() {
                m.insert(format!("({},{},{})", i + 1, j + 1, k + 1), Value::String(t[(k, j)].to_string()));
            }
        }
    }
    Value::Object(m)
}

pub fn vector(v: &[RatFn]) -> Value {
    strings(v)
}

pub fn witness<W: std::fmt::Debug>(w: &Option<W>) -> Value {
    match w {
        Some(w) => Value::String(format!("{w:?}")),
        None => Value::Null,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite() {
        let r = Report::new("Z5", "verify");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"], Value::Array(vec![]));
        assert_eq!(v["schema"], 1);
        assert!(r.passed());
    }

    #[test]
    fn field_order_is_fixed() {
        let mut r = Report::new("B2", "natural");
        r.insert("zeta", 1);
        r.insert("alpha", 2);
        let s = r.to_json();
        let order: Vec<usize> = ["\"schema\"", "\"group\"", "\"command\"", "\"checks\"", "\"data\"", "\"alpha\"", "\"zeta\""]
            .iter()
            .map(|k| s.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]), "{s}");
    }
}
