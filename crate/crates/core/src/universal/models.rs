use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, Vertex};
use crate::iso::{canonical_form, find_subgraph};
use crate::minor::find_minor_model;
use crate::paths::path_of_length_at_least;
use crate::search::{SearchOutcome, DEFAULT_BUDGET};

/// Graphs obtained from `g` by splitting one vertex `v` into an edge
/// `v v'`, each end keeping at least one of `v`'s old neighbours.
fn splits(g: &Graph) -> Vec<Graph> {
    let fresh = g.next_vertex_id();
    let mut out = Vec::new();
    for v in g.vertices() {
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        if nbrs.len() < 2 {
            continue;
        }
        let rest = &nbrs[1..];
        for mask in 0u64..(1 << rest.len()) - 1 {
            let mut h = g.clone();
            h.add_vertex(fresh);
            h.add_edge(v, fresh);
            for (i, &w) in rest.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    h.remove_edge(v, w);
                    h.add_edge(fresh, w);
                }
            }
            out.push(h);
        }
    }
    out
}

fn has_path(g: &Graph, n: usize, budget: u64) -> Result<bool> {
    match path_of_length_at_least(g, n, budget) {
        SearchOutcome::Found(_) => Ok(true),
        SearchOutcome::Absent => Ok(false),
        SearchOutcome::Inconclusive { .. } => Err(Error::BudgetExhausted { budget }),
    }
}

/// Models of `x` without a path of length `n` whose branch sets induce
/// trees, each leaf of which carries an edge to another branch set. One graph
/// per isomorphism class. These are exactly the graphs reachable from `x` by
/// vertex splits, so the search is a closure under splitting.
pub fn enumerate_forbidden_models(x: &Graph, n: usize, max_members: usize) -> Result<Vec<Graph>> {
    if x.is_empty() || !x.is_connected() {
        return Err(Error::Precondition("x must be connected and non-empty".into()));
    }
    let mut seen: BTreeMap<_, Graph> = BTreeMap::new();
    let mut queue = VecDeque::new();
    if !has_path(x, n, DEFAULT_BUDGET)? {
        seen.insert(canonical_form(&ColoredGraph::monochrome(x))?, x.clone());
        queue.push_back(x.clone());
    }
    while let Some(g) = queue.pop_front() {
        for h in splits(&g) {
            let label = canonical_form(&ColoredGraph::monochrome(&h))?;
            if seen.contains_key(&label) || has_path(&h, n, DEFAULT_BUDGET)? {
                continue;
            }
            if seen.len() >= max_members {
                return Err(Error::LimitExceeded(format!(
                    "more than {max_members} models of a {}-vertex graph without P_{n}",
                    x.order()
                )));
            }
            seen.insert(label, h.clone());
            queue.push_back(h);
        }
    }
    let mut out: Vec<Graph> = seen.into_values().collect();
    out.sort_by_key(|g| (g.order(), g.size()));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEquivalence {
    /// `g` has neither `x` nor `P_n` as a minor.
    pub minor_free: bool,
    /// `g` has no member of the model class and no `P_n` as a subgraph.
    pub subgraph_free: bool,
    pub equal: bool,
}

/// Compares minor-freeness with subgraph-freeness against the enumerated
/// model class, which is computed once.
#[derive(Clone, Debug)]
pub struct ClassChecker {
    pub x: Graph,
    pub n: usize,
    pub models: Vec<Graph>,
    pub budget: u64,
}

impl ClassChecker {
    pub fn new(x: &Graph, n: usize, budget: u64) -> Result<Self> {
        Ok(ClassChecker {
            x: x.clone(),
            n,
            models: enumerate_forbidden_models(x, n, 100_000)?,
            budget,
        })
    }

    pub fn check(&self, g: &Graph) -> Result<ClassEquivalence> {
        let exhausted = Error::BudgetExhausted { budget: self.budget };
        let long_path = has_path(g, self.n, self.budget)?;
        let minor_free = !long_path
            && match find_minor_model(&self.x, g, self.budget)? {
                SearchOutcome::Found(_) => false,
                SearchOutcome::Absent => true,
                SearchOutcome::Inconclusive { .. } => return Err(exhausted),
            };
        let mut subgraph_free = !long_path;
        for m in &self.models {
            if !subgraph_free {
                break;
            }
            match find_subgraph(m, g, self.budget) {
                SearchOutcome::Found(_) => subgraph_free = false,
                SearchOutcome::Absent => {}
                SearchOutcome::Inconclusive { .. } => return Err(exhausted),
            }
        }
        Ok(ClassEquivalence {
            minor_free,
            subgraph_free,
            equal: minor_free == subgraph_free,
        })
    }
}

pub fn check_class_equivalence(g: &Graph, x: &Graph, n: usize, budget: u64) -> Result<ClassEquivalence> {
    ClassChecker::new(x, n, budget)?.check(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, cycle, path};
    use crate::oracle::is_minor;

    #[test]
    fn model_class_examples() {
        let m = enumerate_forbidden_models(&cycle(3), 3, 1000).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 3);
        assert!(enumerate_forbidden_models(&cycle(3), 2, 1000).unwrap().is_empty());
        let m = enumerate_forbidden_models(&path(1), 3, 1000).unwrap();
        assert_eq!(m, vec![path(1)]);
    }

    #[test]
    fn members_are_models() {
        for (x, n) in [(cycle(3), 4), (cycle(4), 4), (complete_bipartite(1, 3), 3)] {
            for m in enumerate_forbidden_models(&x, n, 1000).unwrap() {
                assert!(is_minor(&x, &m));
                assert!(path_of_length_at_least(&m, n, DEFAULT_BUDGET).is_absent());
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let c3 = cycle(3);
        let e = check_class_equivalence(&cycle(4), &c3, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((e.minor_free, e.subgraph_free, e.equal), (false, false, true));
        let e = check_class_equivalence(&complete_bipartite(1, 3), &c3, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((e.minor_free, e.subgraph_free, e.equal), (true, true, true));
        let e = check_class_equivalence(&path(5), &c3, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((e.minor_free, e.subgraph_free, e.equal), (false, false, true));
    }
}
