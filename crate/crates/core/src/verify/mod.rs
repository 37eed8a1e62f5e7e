//! Seeded property suites over random symbol corpora.
//!
//! Every check returns a [`CheckResult`] carrying the instance (as parseable
//! expressions and parameters) so a failure can be replayed.

pub mod corpus;
mod suites;

pub use suites::{
    basepoint_independence, berger_shaw_checks, bound_checks, conjugation_rule, cross_method_agreement, golden_checks,
    hilbert_schmidt_checks, idempotent_rule, index_checks, factorization_checks, power_law, scalar_rule,
    steinberg_relations, trace_checks, unimodularity, variational_exp,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Golden,
    Steinberg,
    Bounds,
    Traces,
    Index,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Golden, Suite::Steinberg, Suite::Bounds, Suite::Traces, Suite::Index];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::Steinberg => "steinberg",
            Suite::Bounds => "bounds",
            Suite::Traces => "traces",
            Suite::Index => "index",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}' (golden, steinberg, bounds, traces, index, all)"))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub corpus_size: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 1, corpus_size: 20 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub instance: serde_json::Value,
}

pub type CheckOutcome = Result<(bool, String), Box<dyn std::error::Error + Send + Sync>>;

/// Runs one check, turning an error into a failure with the error text.
pub fn check(
    suite: &str,
    name: impl Into<String>,
    instance: serde_json::Value,
    body: impl FnOnce() -> CheckOutcome,
) -> CheckResult {
    let (pass, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckResult { suite: suite.to_string(), name: name.into(), pass, detail, instance }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let (seed, n) = (opts.seed, opts.corpus_size);
    let checks = match suite {
        Suite::Golden => golden_checks(),
        Suite::Steinberg => [
            cross_method_agreement(seed, n),
            steinberg_relations(seed, n),
            conjugation_rule(seed, n),
            idempotent_rule(seed, n),
            unimodularity(seed, n),
            scalar_rule(seed, n),
            power_law(seed, n),
            variational_exp(seed, n),
            basepoint_independence(seed, n),
        ]
        .concat(),
        Suite::Bounds => bound_checks(seed, n),
        Suite::Traces => [trace_checks(seed, n), berger_shaw_checks(seed, n), hilbert_schmidt_checks(seed, n)].concat(),
        Suite::Index => [index_checks(seed, n), factorization_checks(seed, n.min(10))].concat(),
        Suite::All => Suite::EACH.iter().flat_map(|s| run_suite(*s, opts).checks).collect(),
    };
    SuiteReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn errors_become_failures() {
        let c = check("x", "boom", serde_json::Value::Null, || Err("bad".into()));
        assert!(!c.pass);
        assert_eq!(c.detail, "error: bad");
    }
}
