use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ExtractionCertificate, Route};
use crate::connectivity::is_k_connected;
use crate::decomposition::ell;
use crate::error::{Error, Result};
use crate::families::{generate, FamilySpec};
use crate::graph::{ColoredGraph, Graph, Vertex};
use crate::iso::canonical_form;
use crate::minor::{bits, connected_sets, find_minor_model, model_from_sets, verify_model, MinorModel, MINOR_HOST_CAP};
use crate::search::{Budget, Exhausted, SearchOutcome};

/// Marked vertices reachable from `from` through `open`.
fn reachable(adj: &[u128], from: usize, open: u128) -> u128 {
    let mut seen = 1u128 << from;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for u in bits(frontier) {
            next |= adj[u] & open & !seen;
        }
        seen |= next;
        frontier = next;
    }
    seen
}

struct RimSearch<'a> {
    adj: &'a [u128],
    free: u128,
    marked: u128,
    k: usize,
    start: usize,
    path: Vec<usize>,
    budget: &'a mut Budget,
}

impl RimSearch<'_> {
    fn extend(&mut self, on: u128, count: usize) -> std::result::Result<bool, Exhausted> {
        self.budget.tick()?;
        let u = *self.path.last().unwrap();
        if count >= self.k && self.path.len() >= 3 && self.adj[u] >> self.start & 1 == 1 {
            return Ok(true);
        }
        let below = (1u128 << self.start) - 1;
        let open = self.free & !on & !(self.marked & below) & !(1u128 << self.start);
        let reach = reachable(self.adj, u, open);
        let ahead = (reach & self.marked & !(1u128 << u)).count_ones() as usize;
        if count + ahead < self.k {
            return Ok(false);
        }
        for w in bits(self.adj[u] & open) {
            self.path.push(w);
            let c = count + (self.marked >> w & 1) as usize;
            if self.extend(on | (1 << w), c)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// A cycle inside `free` through at least `k` marked vertices.
fn rim_cycle(
    adj: &[u128],
    free: u128,
    marked: u128,
    k: usize,
    budget: &mut Budget,
) -> std::result::Result<Option<Vec<usize>>, Exhausted> {
    for s in bits(marked & free) {
        let mut r = RimSearch {
            adj,
            free,
            marked,
            k,
            start: s,
            path: vec![s],
            budget,
        };
        if r.extend(1 << s, 1)? {
            return Ok(Some(r.path));
        }
    }
    Ok(None)
}

fn wheel_search(g: &Graph, k: usize, budget: u64) -> Result<SearchOutcome<ExtractionCertificate>> {
    let target = FamilySpec::Wheel { k };
    let pattern = generate(&target)?;
    if g.order() > MINOR_HOST_CAP {
        return Err(Error::SizeCap {
            what: "wheel search host",
            size: g.order(),
            cap: MINOR_HOST_CAP,
        });
    }
    let d = g.dense();
    let adj = d.masks();
    let n = d.len();
    let all: u128 = if n == 128 { !0 } else { (1u128 << n) - 1 };
    let mut budget = Budget::new(budget);
    let mut found: Option<(u128, Vec<usize>)> = None;
    let mut result = Ok(false);
    for size in 1..=n.saturating_sub(k) {
        result = connected_sets(&adj, all, size, &mut |hub| {
            budget.tick()?;
            let nbrs = bits(hub).fold(0u128, |m, x| m | adj[x]) & !hub;
            if (nbrs.count_ones() as usize) < k {
                return Ok(false);
            }
            if let Some(c) = rim_cycle(&adj, all & !hub, nbrs, k, &mut budget)? {
                found = Some((hub, c));
                return Ok(true);
            }
            Ok(false)
        });
        if !matches!(result, Ok(false)) {
            break;
        }
    }
    if result.is_err() {
        return Ok(budget.inconclusive());
    }
    let Some((hub, cycle)) = found else {
        return Ok(SearchOutcome::Absent);
    };
    let nbrs = bits(hub).fold(0u128, |m, x| m | adj[x]) & !hub;
    let cuts: Vec<usize> = (0..cycle.len())
        .filter(|&i| nbrs >> cycle[i] & 1 == 1)
        .take(k)
        .collect();
    let mut sets: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for (i, &from) in cuts.iter().enumerate() {
        let to = if i + 1 < k { cuts[i + 1] } else { cycle.len() };
        sets.insert(i as Vertex, cycle[from..to].iter().map(|&x| d.ids[x]).collect());
    }
    sets.get_mut(&0)
        .unwrap()
        .extend(cycle[..cuts[0]].iter().map(|&x| d.ids[x]));
    sets.insert(k as Vertex, bits(hub).map(|x| d.ids[x]).collect());
    let model = model_from_sets(&pattern, g, sets)
        .ok_or_else(|| Error::CounterexampleCandidate("hub and rim do not form a wheel model".into()))?;
    let report = verify_model(&model);
    if !report.is_valid() {
        return Err(Error::CounterexampleCandidate(format!(
            "wheel model fails verification: {}",
            report.violations[0]
        )));
    }
    Ok(SearchOutcome::Found(ExtractionCertificate {
        target,
        route: Route::HubAndRim,
        model,
        subdivision: None,
    }))
}

/// A `W_k` minor of a 3-connected graph: a connected hub set, smallest
/// first, and a cycle avoiding it through `k` of its neighbours. Exhaustive
/// within `budget`.
pub fn find_wheel_minor(g: &Graph, k: usize, budget: u64) -> Result<SearchOutcome<ExtractionCertificate>> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("wheels need k >= 3 (k={k})")));
    }
    if !is_k_connected(g, 3) {
        return Err(Error::Precondition("graph is not 3-connected".into()));
    }
    wheel_search(g, k, budget)
}

/// `W_k` in the `R_2` truncation with `m` ray vertices. When there is none,
/// the error names the smallest `m' > m` that works.
pub fn wheel_in_r2_truncation(k: usize, m: usize, budget: u64) -> Result<ExtractionCertificate> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("wheels need k >= 3 (k={k})")));
    }
    let host = |m| generate(&FamilySpec::RayWithTwoApexes { m });
    match wheel_search(&host(m)?, k, budget)? {
        SearchOutcome::Found(c) => return Ok(c),
        SearchOutcome::Inconclusive { .. } => return Err(Error::BudgetExhausted { budget }),
        SearchOutcome::Absent => {}
    }
    for bigger in m + 1..=m + k + 2 {
        if wheel_search(&host(bigger)?, k, budget)?.is_found() {
            return Err(Error::NotFound(format!(
                "W_{k} is not a minor of the R_2 truncation with m = {m}; smallest sufficient m is {bigger}"
            )));
        }
    }
    Err(Error::NotFound(format!(
        "W_{k} is not a minor of the R_2 truncation for any m in {m}..={}",
        m + k + 2
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseOutcome {
    Found,
    Absent,
    Inconclusive,
}

/// One deleted vertex, standing for its whole symmetry class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionCase {
    pub deleted: Vertex,
    pub class_size: usize,
    pub outcome: CaseOutcome,
    pub model: Option<MinorModel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub pattern: FamilySpec,
    pub host: FamilySpec,
    pub cases: Vec<DeletionCase>,
    /// `None` when some case was inconclusive and none failed.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactsReport {
    pub k: usize,
    pub facts: Vec<Fact>,
}

impl FactsReport {
    pub fn all_true(&self) -> bool {
        self.facts.iter().all(|f| f.holds == Some(true))
    }
}

fn check_fact(pattern: FamilySpec, host: FamilySpec, budget: u64) -> Result<Fact> {
    let p = generate(&pattern)?;
    let h = generate(&host)?;
    let mut classes: BTreeMap<_, (Vertex, usize)> = BTreeMap::new();
    for v in h.vertices() {
        let label = canonical_form(&ColoredGraph::monochrome(&h.without_vertices(&[v])))?;
        classes.entry(label).or_insert((v, 0)).1 += 1;
    }
    let mut reps: Vec<(Vertex, usize)> = classes.into_values().collect();
    reps.sort_unstable();
    let mut cases = Vec::new();
    for (v, class_size) in reps {
        let g = h.without_vertices(&[v]);
        let (outcome, model) = match find_minor_model(&p, &g, budget)? {
            SearchOutcome::Found(m) => {
                let report = verify_model(&m);
                if !report.is_valid() {
                    return Err(Error::CounterexampleCandidate(format!(
                        "minor engine returned an invalid model: {}",
                        report.violations[0]
                    )));
                }
                (CaseOutcome::Found, Some(m))
            }
            SearchOutcome::Absent => (CaseOutcome::Absent, None),
            SearchOutcome::Inconclusive { .. } => (CaseOutcome::Inconclusive, None),
        };
        cases.push(DeletionCase {
            deleted: v,
            class_size,
            outcome,
            model,
        });
    }
    let holds = if cases.iter().any(|c| c.outcome == CaseOutcome::Absent) {
        Some(false)
    } else if cases.iter().all(|c| c.outcome == CaseOutcome::Found) {
        Some(true)
    } else {
        None
    };
    Ok(Fact {
        pattern,
        host,
        cases,
        holds,
    })
}

/// Checks, for every vertex `v` up to symmetry, that `W_k` is a minor of
/// `D_{k+1} - v`, `O_{k+1} - v` and `M_{k+1} - v`, and that `K_{3,k}` is a
/// minor of `K_{4,k+1} - v`.
pub fn check_reduction_facts(k: usize, budget: u64) -> Result<FactsReport> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("wheels need k >= 3 (k={k})")));
    }
    use FamilySpec::*;
    let wheel = Wheel { k };
    let facts = vec![
        check_fact(wheel.clone(), DoubleWheel { k: k + 1 }, budget)?,
        check_fact(wheel.clone(), CircularLadder { k: k + 1 }, budget)?,
        check_fact(wheel, MoebiusLadder { k: k + 1 }, budget)?,
        check_fact(
            CompleteBipartite { a: 3, b: k },
            CompleteBipartite { a: 4, b: k + 1 },
            budget,
        )?,
    ];
    Ok(FactsReport { k, facts })
}

/// `ell(w(k + 1), p(k + 1))` for caller-supplied constants `w` and `p`.
pub fn f_bound(k: u64, w: &BTreeMap<u64, u64>, p: &BTreeMap<u64, u64>) -> Result<u128> {
    let missing = |name: &str| Error::Precondition(format!("no value supplied for {name}({})", k + 1));
    let wv = *w.get(&(k + 1)).ok_or_else(|| missing("w"))?;
    let pv = *p.get(&(k + 1)).ok_or_else(|| missing("p"))?;
    ell(wv, pv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, wheel};
    use crate::search::DEFAULT_BUDGET;

    fn found(g: &Graph, k: usize) -> Option<ExtractionCertificate> {
        find_wheel_minor(g, k, DEFAULT_BUDGET).unwrap().found()
    }

    #[test]
    fn wheel_examples() {
        let w5 = wheel(5);
        let cert = found(&w5, 5).unwrap();
        assert!(cert.verify(&w5));
        assert_eq!(cert.model.branch_sets.values().map(BTreeSet::len).sum::<usize>(), 6);
        let d6 = generate(&FamilySpec::DoubleWheel { k: 6 })
            .unwrap()
            .without_vertices(&[7]);
        assert!(found(&d6, 5).unwrap().verify(&d6));
        let k33 = complete_bipartite(3, 3);
        assert!(found(&k33, 4).unwrap().verify(&k33));
        assert!(find_wheel_minor(&k33, 5, DEFAULT_BUDGET).unwrap().is_absent());
        assert!(find_wheel_minor(&crate::families::cycle(5), 3, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn r2_truncations() {
        for (k, m) in [(3, 3), (4, 4)] {
            let cert = wheel_in_r2_truncation(k, m, DEFAULT_BUDGET).unwrap();
            let host = generate(&FamilySpec::RayWithTwoApexes { m }).unwrap();
            assert!(cert.verify(&host));
        }
        let err = wheel_in_r2_truncation(5, 2, DEFAULT_BUDGET).unwrap_err();
        assert!(err.to_string().contains("smallest sufficient m is 5"), "{err}");
    }

    #[test]
    fn reduction_facts_small() {
        assert!(check_reduction_facts(3, DEFAULT_BUDGET).unwrap().all_true());
        assert!(check_reduction_facts(2, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn f_bound_values() {
        let w = BTreeMap::from([(4, 2)]);
        assert_eq!(f_bound(3, &w, &BTreeMap::from([(4, 1)])).unwrap(), 1);
        assert_eq!(f_bound(3, &w, &BTreeMap::from([(4, 2)])).unwrap(), 7);
        assert_eq!(
            f_bound(3, &BTreeMap::from([(4, 3)]), &BTreeMap::from([(4, 3)])).unwrap(),
            46
        );
        assert!(f_bound(4, &w, &w).is_err());
    }
}
