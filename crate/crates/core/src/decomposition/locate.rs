use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::tree::{verify_decomposition, Node, TreeDecomposition};
use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::minor::{model_from_sets, verify_model, MinorModel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocatedMinor {
    pub node: Node,
    /// Directed walk through the oriented tree ending at `node`.
    pub walk: Vec<Node>,
    /// Model of the pattern in the subgraph induced by the bag of `node`.
    pub model: MinorModel,
}

/// Finds a bag whose induced subgraph carries the pattern, by orienting each
/// tree edge towards the side met by every branch set and walking to a sink.
pub fn locate_minor_part(
    g: &Graph,
    td: &TreeDecomposition,
    pattern: &Graph,
    model: &MinorModel,
) -> Result<LocatedMinor> {
    let report = verify_decomposition(g, td);
    if !report.valid {
        return Err(Error::Precondition(format!(
            "decomposition is invalid: {:?}",
            report.violations.first()
        )));
    }
    if !report.adhesion_sets_complete_in_g {
        let (s, t) = td
            .tree
            .edges()
            .find(|&(s, t)| {
                let a: Vec<Vertex> = td.adhesion_set(s, t).into_iter().collect();
                a.iter()
                    .enumerate()
                    .any(|(i, &x)| a[i + 1..].iter().any(|&y| !g.has_edge(x, y)))
            })
            .unwrap();
        return Err(Error::Precondition(format!(
            "adhesion set {:?} of tree edge {s}-{t} is not complete",
            td.adhesion_set(s, t)
        )));
    }
    let kappa = vertex_connectivity(pattern);
    if kappa <= report.adhesion {
        return Err(Error::Precondition(format!(
            "pattern connectivity {kappa} does not exceed adhesion {}",
            report.adhesion
        )));
    }
    if &model.pattern != pattern || &model.host != g {
        return Err(Error::Precondition(
            "model does not relate this pattern and graph".into(),
        ));
    }
    let check = verify_model(model);
    if !check.is_valid() {
        return Err(Error::Precondition(format!(
            "model is invalid: {}",
            check.violations[0]
        )));
    }

    let meets_all = |s: Node, t: Node| -> bool {
        let side = td.side_vertices(s, t);
        model.branch_sets.values().all(|b| b.iter().any(|x| side.contains(x)))
    };
    let mut out: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for (s, t) in td.tree.edges() {
        if meets_all(s, t) {
            out.entry(s).or_default().push(t);
        } else if meets_all(t, s) {
            out.entry(t).or_default().push(s);
        } else {
            return Err(Error::CounterexampleCandidate(format!(
                "neither side of tree edge {s}-{t} meets every branch set"
            )));
        }
    }
    let mut node = td
        .tree
        .vertices()
        .next()
        .ok_or_else(|| Error::Precondition("empty tree".into()))?;
    let mut walk = vec![node];
    while let Some(next) = out.get(&node).and_then(|v| v.iter().min()) {
        node = *next;
        walk.push(node);
    }

    let bag = td.bag(node);
    let part = g.induced_subgraph(bag);
    let sets: BTreeMap<Vertex, BTreeSet<Vertex>> = model
        .branch_sets
        .iter()
        .map(|(&v, b)| (v, b.intersection(bag).copied().collect()))
        .collect();
    let restricted = model_from_sets(pattern, &part, sets)
        .ok_or_else(|| Error::CounterexampleCandidate(format!("restriction to bag {node} loses a pattern edge")))?;
    let check = verify_model(&restricted);
    if !check.is_valid() {
        return Err(Error::CounterexampleCandidate(format!(
            "restricted model at node {node} is invalid: {}",
            check.violations[0]
        )));
    }
    Ok(LocatedMinor {
        node,
        walk,
        model: restricted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, wheel};
    use crate::minor::find_minor_model;
    use crate::search::DEFAULT_BUDGET;

    fn two_k4s() -> (Graph, TreeDecomposition) {
        let mut g = complete(4);
        for (u, v) in complete(4).edges() {
            g.add_edge(u + 3, v + 3);
        }
        let td = TreeDecomposition::path_shaped(vec![BTreeSet::from([0, 1, 2, 3]), BTreeSet::from([3, 4, 5, 6])]);
        (g, td)
    }

    #[test]
    fn single_bag_keeps_model() {
        let g = wheel(5);
        let m = find_minor_model(&cycle(4), &g, DEFAULT_BUDGET)
            .unwrap()
            .found()
            .unwrap();
        let td = TreeDecomposition::single_bag(&g);
        let loc = locate_minor_part(&g, &td, &cycle(4), &m).unwrap();
        assert_eq!(loc.node, 0);
        assert_eq!(loc.model.branch_sets, m.branch_sets);
    }

    #[test]
    fn triangle_in_glued_k4s() {
        let (g, td) = two_k4s();
        let m = find_minor_model(&cycle(3), &g, DEFAULT_BUDGET)
            .unwrap()
            .found()
            .unwrap();
        let loc = locate_minor_part(&g, &td, &cycle(3), &m).unwrap();
        assert!(verify_model(&loc.model).is_valid());
        let used: BTreeSet<Vertex> = m.branch_sets.values().flatten().copied().collect();
        assert!(used.iter().any(|v| td.bag(loc.node).contains(v)));
    }

    #[test]
    fn low_connectivity_pattern_rejected() {
        let (g, td) = two_k4s();
        let p = crate::families::path(2);
        let m = find_minor_model(&p, &g, DEFAULT_BUDGET).unwrap().found().unwrap();
        assert!(locate_minor_part(&g, &td, &p, &m).is_err());
    }

    #[test]
    fn incomplete_adhesion_rejected() {
        let g = cycle(4);
        let td = TreeDecomposition::path_shaped(vec![BTreeSet::from([0, 1, 2]), BTreeSet::from([0, 2, 3])]);
        let m = find_minor_model(&cycle(3), &g, DEFAULT_BUDGET)
            .unwrap()
            .found()
            .unwrap();
        let err = locate_minor_part(&g, &td, &cycle(3), &m).unwrap_err();
        assert!(err.to_string().contains("not complete"));
    }
}
