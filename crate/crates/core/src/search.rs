//! Budget accounting shared by every exhaustive search in the crate.
//!
//! A search either finds a witness, proves absence by exhausting its space,
//! or runs out of budget. The third outcome is never reported as absence.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Default node budget for minor and embedding searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome<T> {
    Found(T),
    Absent,
    Inconclusive { explored: u64 },
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, SearchOutcome::Absent)
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, SearchOutcome::Inconclusive { .. })
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::Absent => SearchOutcome::Absent,
            SearchOutcome::Inconclusive { explored } => SearchOutcome::Inconclusive { explored },
        }
    }

    /// Converts to a `Result`, mapping exhaustion to [`Error::BudgetExhausted`].
    pub fn into_result(self, budget: u64) -> Result<Option<T>, Error> {
        match self {
            SearchOutcome::Found(t) => Ok(Some(t)),
            SearchOutcome::Absent => Ok(None),
            SearchOutcome::Inconclusive { .. } => Err(Error::BudgetExhausted { budget }),
        }
    }
}

/// Counts search-tree nodes against a fixed limit.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhausted;

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        self.used += 1;
        if self.used > self.limit {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn inconclusive<T>(&self) -> SearchOutcome<T> {
        SearchOutcome::Inconclusive { explored: self.used }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
