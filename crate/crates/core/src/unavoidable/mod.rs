//! Extraction of unavoidable minors: long cycles, two cycles sharing an edge,
//! wheels, and the reduction facts about double wheels and ladders.

mod cycles;
mod wheels;

use serde::{Deserialize, Serialize};

use crate::families::{generate, FamilySpec};
use crate::graph::Graph;
use crate::minor::{verify_model, MinorModel, Subdivision};

pub use cycles::{find_cycle_pair_minor, find_long_cycle, two_disjoint_connecting_paths, LongCycle};
pub use wheels::{
    check_reduction_facts, f_bound, find_wheel_minor, wheel_in_r2_truncation, CaseOutcome, DeletionCase, Fact,
    FactsReport,
};

/// Which case of the extraction produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// The two cycles are disjoint and joined by two disjoint paths.
    DisjointCycles,
    /// The two cycles share exactly one vertex; one path avoids it.
    SharedVertex,
    /// The longer cycle has a long segment whose ends lie on the shorter one.
    SharedSegment,
    /// The cycle-length hypotheses failed; the subdivision was found directly.
    DirectSubdivision,
    /// Connected hub set plus a rim cycle through its neighbours.
    HubAndRim,
    /// General minor search.
    MinorSearch,
}

/// A verified minor model of a named family in some host, with the case that
/// produced it. Serialises as the minor-model JSON plus `target`, `route` and
/// an optional `subdivision`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionCertificate {
    pub target: FamilySpec,
    pub route: Route,
    #[serde(flatten)]
    pub model: MinorModel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subdivision: Option<Subdivision>,
}

impl ExtractionCertificate {
    /// Re-checks the model (and subdivision, when present) against `host`.
    pub fn verify(&self, host: &Graph) -> bool {
        let Ok(target) = generate(&self.target) else {
            return false;
        };
        self.model.pattern == target
            && &self.model.host == host
            && verify_model(&self.model).is_valid()
            && self
                .subdivision
                .as_ref()
                .is_none_or(|s| s.pattern == target && s.verify(host))
    }
}
