//! Executable pass/fail suites for the inequalities, equivalences, and
//! counterexamples the rest of the crate implements. Each suite is
//! deterministic given its inputs and seed, and failing checks carry a
//! witness reproducible from the report alone.

mod bounds;
mod democracy;
mod greedy_inequality;
mod sparse_block;
mod weak_greedy;
mod witnesses;

pub use bounds::{suite_indicator_bounds, suite_projection_bound};
pub use democracy::{suite_democracy_transfer, suite_disjoint_democracy};
pub use greedy_inequality::{
    suite_greedy_inequality, FunctionalChoice, GreedyInequalityConfig, OrderRule,
};
pub use sparse_block::suite_sparse_block;
pub use weak_greedy::{suite_abt_weak, suite_t_weak};
pub use witnesses::suite_space_witnesses;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Reported number with no assertion attached.
    Info,
    Skipped,
}

/// One verified statement inside a suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub statement_id: String,
    pub status: CheckStatus,
    pub worst_ratio: Option<f64>,
    pub witness: Option<serde_json::Value>,
    pub tolerance: f64,
}

impl Check {
    pub fn outcome(
        id: &str,
        pass: bool,
        worst_ratio: Option<f64>,
        witness: Option<serde_json::Value>,
        tolerance: f64,
    ) -> Self {
        Check {
            statement_id: id.to_string(),
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            worst_ratio,
            witness,
            tolerance,
        }
    }

    pub fn info(id: &str, value: Option<f64>, witness: Option<serde_json::Value>) -> Self {
        Check {
            statement_id: id.to_string(),
            status: CheckStatus::Info,
            worst_ratio: value,
            witness,
            tolerance: 0.0,
        }
    }
}

/// Enumerated scope of a suite run, for reproducibility.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Scope {
    pub sizes: Vec<u64>,
    pub horizons: Vec<u64>,
    pub sample_count: usize,
    pub seed: u64,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_id: String,
    pub space: String,
    pub scope: Scope,
    pub checks: Vec<Check>,
    pub overall: Overall,
}

impl SuiteReport {
    pub fn new(suite_id: &str, space: String, scope: Scope, checks: Vec<Check>) -> Self {
        let overall = if checks.iter().any(|c| c.status == CheckStatus::Fail) {
            Overall::Fail
        } else {
            Overall::Pass
        };
        SuiteReport { suite_id: suite_id.to_string(), space, scope, checks, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall == Overall::Pass
    }

    pub fn check(&self, statement_id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.statement_id == statement_id)
    }

    /// One check per row, for plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite_id,statement_id,status,worst_ratio,tolerance,witness\n");
        for check in &self.checks {
            let witness = check
                .witness
                .as_ref()
                .map(|w| w.to_string().replace('"', "\"\""))
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{:?},{},{},\"{}\"\n",
                self.suite_id,
                check.statement_id,
                check.status,
                check.worst_ratio.map(|r| r.to_string()).unwrap_or_default(),
                check.tolerance,
                witness
            ));
        }
        out
    }

    pub fn summary(&self) -> String {
        let (pass, fail): (Vec<_>, Vec<_>) = self
            .checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Fail))
            .partition(|c| c.status == CheckStatus::Pass);
        format!(
            "suite {} on {}: {:?} ({} pass, {} fail, {} checks)",
            self.suite_id,
            self.space,
            self.overall,
            pass.len(),
            fail.len(),
            self.checks.len()
        )
    }
}

/// Ratio bookkeeping shared by the inequality suites: skips 0/0, flags a
/// positive numerator over a zero denominator as unbounded.
#[derive(Clone, Debug, Default)]
pub(crate) struct RatioFit {
    pub worst: Option<(f64, serde_json::Value)>,
    pub skipped: usize,
    pub unbounded: Option<serde_json::Value>,
}

impl RatioFit {
    pub fn feed(&mut self, numerator: f64, denominator: f64, witness: impl Fn() -> serde_json::Value) {
        if numerator == 0.0 && denominator == 0.0 {
            self.skipped += 1;
            return;
        }
        if denominator == 0.0 {
            if self.unbounded.is_none() {
                self.unbounded = Some(witness());
            }
            return;
        }
        let ratio = numerator / denominator;
        if self.worst.as_ref().map(|(w, _)| ratio > *w).unwrap_or(true) {
            self.worst = Some((ratio, witness()));
        }
    }

    pub fn worst_ratio(&self) -> Option<f64> {
        self.worst.as_ref().map(|(r, _)| *r)
    }
}
