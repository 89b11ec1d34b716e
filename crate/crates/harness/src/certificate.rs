//! Canonical JSON certificates.

use chernlab_core::exterior::Check;
use chernlab_core::invariants::{ChernClass, PrimeCertificate};
use chernlab_core::module::PresentedModule;
use chernlab_core::poly::Polynomial;
use serde_json::{json, Map, Value};

use crate::scenario::{prime_strings, rows_of};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome classes, in the order of the process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    InputError,
    Hypothesis,
    ResourceLimit,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
            Status::Hypothesis => 3,
            Status::ResourceLimit => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::InputError => "INPUT-ERROR",
            Status::Hypothesis => "HYPOTHESIS-VIOLATION",
            Status::ResourceLimit => "RESOURCE-LIMIT",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub status: Status,
    pub value: Value,
}

impl Certificate {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn checks(&self) -> Vec<(String, bool)> {
        self.value["checks"]
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|c| (c["name"].as_str().unwrap_or("").to_string(), c["passed"].as_bool().unwrap_or(false)))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn digest(&self) -> &str {
        self.value["scenario_digest"].as_str().unwrap_or("")
    }

    /// One line per check plus the verdict.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (name, ok) in self.checks() {
            out.push_str(&format!("  [{}] {name}\n", if ok { "ok" } else { "FAILED" }));
        }
        if let Some(e) = self.value.get("error").and_then(Value::as_str) {
            out.push_str(&format!("  error: {e}\n"));
        }
        out.push_str(&format!("{} {}\n", self.status.name(), self.digest()));
        out
    }
}

/// Accumulates named checks and data for one scenario.
#[derive(Debug, Default)]
pub struct Builder {
    checks: Vec<(String, bool)>,
    data: Map<String, Value>,
}

impl Builder {
    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push((name.into(), passed));
    }

    pub fn checks_from(&mut self, checks: &[Check]) {
        for c in checks {
            self.check(c.name.clone(), c.passed);
        }
    }

    pub fn put(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_string(), v);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn finish(self, header: Map<String, Value>, status: Status, error: Option<String>) -> Certificate {
        let mut value = header;
        value.insert(
            "checks".into(),
            Value::Array(self.checks.iter().map(|(n, ok)| json!({"name": n, "passed": ok})).collect()),
        );
        value.insert("data".into(), Value::Object(self.data));
        value.insert("status".into(), json!(status.name()));
        if let Some(e) = error {
            value.insert("error".into(), json!(e));
        }
        Certificate { status, value: Value::Object(value) }
    }
}

pub fn poly(p: &Polynomial) -> Value {
    json!(p.to_string())
}

pub fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

pub fn prime(p: &PrimeCertificate) -> Value {
    json!({
        "generators": prime_strings(p),
        "codim": p.codim(),
        "degree": p.degree(),
        "provenance": p.provenance().name(),
    })
}

pub fn chern(c: &ChernClass) -> Value {
    let terms: Vec<Value> =
        c.terms().map(|(p, m)| json!({"prime_generators": prime_strings(p), "multiplicity": m})).collect();
    let mut v = json!({"codim": c.codim(), "terms": terms});
    if let Some(r) = c.principal_rep() {
        v["principal_rep"] = poly(r);
    }
    v
}

/// Presentation, k-dimension and support codimension of a module.
pub fn module(m: &PresentedModule) -> Value {
    let m = &chernlab_core::module::prune(m).module;
    let dim = m.dim_k().ok().flatten();
    let codim = m.support_codim().ok().flatten();
    json!({
        "ambient_rank": m.rank(),
        "relations": if m.relations().cols() == 0 { Value::Array(vec![]) } else { json!(rows_of(m.relations())) },
        "dim_k": dim,
        "support_codim": codim,
    })
}
