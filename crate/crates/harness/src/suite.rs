//! Randomized suites, run in parallel and reported in digest order.

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certificate::{Certificate, Status};
use crate::random::{
    exterior_instance, finite_length_instance, fitting_instance, groebner_instance, instance_seed,
    vanishing_instance,
};
use crate::run::run_scenario;
use crate::scenario::{InputError, LimitsSpec, Scenario};

pub const SUITE_KINDS: &[&str] = &["groebner", "fitting", "finite-length", "duality", "exterior-corollary", "vanishing"];

pub fn generate(kind: &str, seed: u64) -> Result<Scenario> {
    Ok(match kind {
        "groebner" => groebner_instance(seed),
        "fitting" => fitting_instance(seed),
        "finite-length" => finite_length_instance(seed, false),
        "duality" => finite_length_instance(seed, true),
        "exterior-corollary" | "theorem-A" => exterior_instance(seed),
        "vanishing" => vanishing_instance(seed),
        other => bail!(InputError(format!("unknown suite kind `{other}`; expected one of {SUITE_KINDS:?}"))),
    })
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub scenario: Scenario,
    pub certificate: Certificate,
}

#[derive(Debug, Clone)]
pub struct Summary {
    pub kind: String,
    pub seed: u64,
    /// sorted by scenario digest
    pub results: Vec<SuiteResult>,
}

impl Summary {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| r.certificate.status != Status::Pass).count()
    }

    pub fn failing(&self) -> impl Iterator<Item = &SuiteResult> {
        self.results.iter().filter(|r| r.certificate.status != Status::Pass)
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|r| json!({"digest": r.certificate.digest(), "status": r.certificate.status.name()}))
            .collect();
        json!({
            "kind": self.kind,
            "seed": self.seed,
            "count": self.results.len(),
            "passed": self.results.len() - self.failures(),
            "failed": self.failures(),
            "results": results,
        })
    }

    /// All certificates concatenated in digest order.
    pub fn transcript(&self) -> String {
        self.results.iter().map(|r| r.certificate.to_json()).collect()
    }
}

pub fn run_random_suite(kind: &str, count: usize, seed: u64, overrides: &LimitsSpec) -> Result<Summary> {
    if count == 0 {
        bail!(InputError("suite count must be at least 1".into()));
    }
    generate(kind, seed)?;
    let mut results: Vec<SuiteResult> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let scenario = generate(kind, instance_seed(seed, i)).expect("kind checked above");
            let certificate = run_scenario(&scenario, overrides);
            SuiteResult { scenario, certificate }
        })
        .collect();
    results.sort_by(|a, b| a.certificate.digest().cmp(b.certificate.digest()));
    Ok(Summary { kind: kind.to_string(), seed, results })
}
