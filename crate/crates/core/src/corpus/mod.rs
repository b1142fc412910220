//! Seeded property corpora. Every suite derives its instances from the run
//! seed, runs them in parallel, and reports them in instance order as JSON
//! lines.

pub mod gen;
mod suites;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::DEFAULT_BUDGET;
use gen::Rng8;

pub use suites::run_suite;

/// Everything a corpus run depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: u64,
    /// Corrupts outputs before the independent checks, so that failures
    /// must surface. Negative control only.
    #[serde(default)]
    pub mutant: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            budget: DEFAULT_BUDGET,
            mutant: false,
        }
    }
}

impl RunConfig {
    /// The generator for instance `index` of `suite`: one ChaCha stream per
    /// (suite, instance) pair under the run seed.
    pub fn rng(&self, suite: Suite, index: usize) -> Rng8 {
        let mut r = Rng8::seed_from_u64(self.seed);
        r.set_stream(((suite as u64) << 40) | index as u64);
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Ell,
    LemmaLongpath,
    LemmaLocate,
    MinorOracle,
    LemmaCycle,
    #[serde(rename = "lemma-2con")]
    Lemma2Con,
    ReductionFacts,
    Tutte,
    CorollaryEquivalence,
    Saturation,
    CycleHost,
    WheelHost,
    WheelExtraction,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Ell,
        Suite::LemmaLongpath,
        Suite::LemmaLocate,
        Suite::MinorOracle,
        Suite::LemmaCycle,
        Suite::Lemma2Con,
        Suite::ReductionFacts,
        Suite::Tutte,
        Suite::CorollaryEquivalence,
        Suite::Saturation,
        Suite::CycleHost,
        Suite::WheelHost,
        Suite::WheelExtraction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ell => "ell",
            Suite::LemmaLongpath => "lemma-longpath",
            Suite::LemmaLocate => "lemma-locate",
            Suite::MinorOracle => "minor-oracle",
            Suite::LemmaCycle => "lemma-cycle",
            Suite::Lemma2Con => "lemma-2con",
            Suite::ReductionFacts => "reduction-facts",
            Suite::Tutte => "tutte",
            Suite::CorollaryEquivalence => "corollary-equivalence",
            Suite::Saturation => "saturation",
            Suite::CycleHost => "cycle-host",
            Suite::WheelHost => "wheel-host",
            Suite::WheelExtraction => "wheel-extraction",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One checked instance. `detail` names the instance on success and carries
/// the counterexample on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub suite: Suite,
    pub index: usize,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub suite: Suite,
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl SuiteReport {
    pub fn new(suite: Suite, seed: u64, records: Vec<Record>) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        SuiteReport {
            summary: Summary {
                suite,
                seed,
                instances: records.len(),
                passed: count(Status::Pass),
                failed: count(Status::Fail),
                inconclusive: count(Status::Inconclusive),
            },
            records,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.instances
    }

    /// Records first, then the summary line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialise"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summaries serialise"));
        out.push('\n');
        out
    }
}

/// Outcome of one instance before it is stamped with suite and index.
pub(crate) type Check = (Status, String);

pub(crate) fn pass(detail: impl Into<String>) -> Check {
    (Status::Pass, detail.into())
}

pub(crate) fn fail(detail: impl Into<String>) -> Check {
    (Status::Fail, detail.into())
}

/// Failures and inconclusive searches from library errors.
pub(crate) fn from_error(e: Error) -> Check {
    match e {
        Error::BudgetExhausted { .. } => (Status::Inconclusive, e.to_string()),
        Error::CounterexampleCandidate(_) => (Status::Fail, format!("COUNTEREXAMPLE-CANDIDATE: {e}")),
        _ => (Status::Fail, e.to_string()),
    }
}

/// Runs `count` instances in parallel and stamps them in index order.
pub(crate) fn run_indexed(suite: Suite, count: usize, f: impl Fn(usize) -> Check + Sync) -> Vec<Record> {
    (0..count)
        .into_par_iter()
        .map(|index| {
            let (status, detail) = f(index);
            Record {
                suite,
                index,
                status,
                detail,
            }
        })
        .collect()
}

/// Every suite in order.
pub fn run_all(config: &RunConfig) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_independent_and_reproducible() {
        let c = RunConfig::default();
        let a: u64 = c.rng(Suite::Tutte, 3).gen();
        let b: u64 = c.rng(Suite::Tutte, 3).gen();
        let other: u64 = c.rng(Suite::Tutte, 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, other);
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
    }
}
