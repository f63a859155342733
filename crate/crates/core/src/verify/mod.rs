//! Machine checks of the theory: oracles for every shortcut the library
//! takes, a theorem suite over generated instances, category laws on
//! function-enumerable carriers and counterexample search for dropped
//! hypotheses.

mod category;
mod generator;
mod oracles;
mod search;
mod suite;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use category::check_category_laws;
pub use generator::{splitmix64, Instance, InstanceGenerator, QuantaleChoice};
pub use oracles::{
    lattice_corpus, oracle_epsilon_reduction, oracle_filters, oracle_well_above, EpsPredicate,
    OracleStatus,
};
pub use search::{search_counterexamples, Finding, SearchTarget};
pub use suite::{check_universal_property, run_all, run_theorem_suite, FullReport, Section, Suite, SuiteConfig};

/// One failed check, with what is needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    pub instance: Value,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub instances: usize,
    pub passes: usize,
    pub skipped: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skip_reasons: Vec<String>,
    pub failures: Vec<Failure>,
    /// Wall-clock time of the section that produced the report; left out of
    /// the serialized form so reports are reproducible byte for byte.
    #[serde(skip)]
    pub runtime: Duration,
}

impl VerificationReport {
    pub fn new(id: &str) -> Self {
        VerificationReport {
            id: id.to_string(),
            instances: 0,
            passes: 0,
            skipped: 0,
            skip_reasons: Vec::new(),
            failures: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, seed: u64, instance: &Value, outcome: Outcome) {
        self.instances += 1;
        match outcome {
            Outcome::Pass => self.passes += 1,
            Outcome::Skip(reason) => {
                self.skipped += 1;
                if !self.skip_reasons.contains(&reason) {
                    self.skip_reasons.push(reason);
                }
            }
            Outcome::Fail(witness) => self.failures.push(Failure {
                seed,
                instance: instance.clone(),
                witness,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The hypothesis of the statement does not hold on this instance.
    Skip(String),
    Fail(String),
}

impl Outcome {
    pub fn check(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(witness())
        }
    }

    /// The first failure among several sub-checks, or a pass.
    pub fn first_failure(witness: Option<String>) -> Outcome {
        match witness {
            None => Outcome::Pass,
            Some(w) => Outcome::Fail(w),
        }
    }
}

/// Reports in first-seen order, keyed by id.
#[derive(Debug, Default)]
pub struct Tally {
    reports: Vec<VerificationReport>,
}

impl Tally {
    pub fn record(&mut self, id: &str, seed: u64, instance: &Value, outcome: Outcome) {
        let idx = match self.reports.iter().position(|r| r.id == id) {
            Some(i) => i,
            None => {
                self.reports.push(VerificationReport::new(id));
                self.reports.len() - 1
            }
        };
        self.reports[idx].record(seed, instance, outcome);
    }

    pub fn finish(mut self, runtime: Duration) -> Vec<VerificationReport> {
        for r in &mut self.reports {
            r.runtime = runtime;
        }
        self.reports
    }
}
