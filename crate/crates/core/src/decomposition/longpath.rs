use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::tree::{tree_longest_path, verify_decomposition, Node, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::paths::longest_path;

/// `ell(w, 1) = 1`, `ell(w, k) = (w + 1) ell(w, k - 1) + 2w`.
pub fn ell(w: u64, k: u64) -> Result<u128> {
    if w < 1 || k < 1 {
        return Err(Error::OutOfRange(format!("ell needs w >= 1 and k >= 1 (w={w}, k={k})")));
    }
    let w = w as u128;
    let mut value: u128 = 1;
    for _ in 1..k {
        value = (w + 1)
            .checked_mul(value)
            .and_then(|x| x.checked_add(2 * w))
            .ok_or_else(|| Error::Overflow(format!("ell({w}, {k})")))?;
    }
    Ok(value)
}

/// One level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftStep {
    pub k: u64,
    /// Node on every longest path of the current tree.
    pub centre: Node,
    /// Component of the current tree minus `centre` that holds `subpath`.
    pub component: BTreeSet<Node>,
    /// Longest component of the current path minus the centre's bag.
    pub subpath: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedPath {
    pub tree_path: Vec<Node>,
    pub trace: Vec<LiftStep>,
}

impl LiftedPath {
    pub fn length(&self) -> usize {
        self.tree_path.len().saturating_sub(1)
    }
}

/// Nodes lying on every longest path of a tree: its centre.
pub fn tree_centre(t: &Graph) -> Vec<Node> {
    let p = tree_longest_path(t);
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = if p.len() % 2 == 1 {
        vec![p[p.len() / 2]]
    } else {
        vec![p[p.len() / 2 - 1], p[p.len() / 2]]
    };
    c.sort_unstable();
    c
}

/// Maximal runs of `path` avoiding `bag`.
fn path_components(path: &[Vertex], bag: &BTreeSet<Vertex>) -> Vec<Vec<Vertex>> {
    path.split(|v| bag.contains(v))
        .filter(|s| !s.is_empty())
        .map(<[Vertex]>::to_vec)
        .collect()
}

/// Given a decomposition of width below `w` and a path of length at least
/// `ell(w, k)`, returns a tree path of length at least `k`. The recursion
/// picks a centre node, keeps the longest piece of the path outside its bag,
/// and descends into the tree component that holds the piece.
pub fn lift_long_path(
    g: &Graph,
    td: &TreeDecomposition,
    w: u64,
    k: u64,
    path: Option<&[Vertex]>,
) -> Result<LiftedPath> {
    let report = verify_decomposition(g, td);
    if !report.valid {
        return Err(Error::Precondition(format!(
            "decomposition is invalid: {:?}",
            report.violations.first()
        )));
    }
    if report.width as u64 >= w {
        return Err(Error::Precondition(format!(
            "width {} is not below w = {w}",
            report.width
        )));
    }
    let need = ell(w, k)?;
    let owned;
    let path = match path {
        Some(p) => p,
        None => {
            owned = longest_path(g)?;
            &owned[..]
        }
    };
    if !g.is_path(path) {
        return Err(Error::Precondition(
            "supplied vertex sequence is not a path of g".into(),
        ));
    }
    let len = path.len().saturating_sub(1) as u128;
    if len < need {
        return Err(Error::Precondition(format!(
            "path length {len} is below ell({w}, {k}) = {need}"
        )));
    }
    if k == 1 && td.tree.order() < 2 {
        return Err(Error::Precondition("a single-node tree has no path of length 1".into()));
    }

    let mut trace = Vec::new();
    let mut tree = td.tree.clone();
    let mut bags: BTreeMap<Node, BTreeSet<Vertex>> = td.bags.clone();
    let mut current: Vec<Vertex> = path.to_vec();
    let mut level = k;
    while level > 1 {
        let candidates = tree_centre(&tree);
        let (centre, pieces) = candidates
            .iter()
            .map(|&t| (t, path_components(&current, &bags[&t])))
            .min_by_key(|(t, pieces)| (pieces.iter().map(Vec::len).max().unwrap_or(0), *t))
            .ok_or_else(|| Error::CounterexampleCandidate("empty tree during lifting".into()))?;
        let piece = pieces
            .iter()
            .max_by_key(|p| (p.len(), std::cmp::Reverse(p[0])))
            .cloned()
            .ok_or_else(|| Error::CounterexampleCandidate(format!("path lies inside the bag of node {centre}")))?;
        let blocked = BTreeSet::from([centre]);
        let component = tree
            .neighbors(centre)
            .map(|s| tree.reachable_from(s, &blocked))
            .find(|comp| comp.iter().any(|n| bags[n].contains(&piece[0])))
            .ok_or_else(|| Error::CounterexampleCandidate("no tree component holds the subpath".into()))?;
        let members: BTreeSet<Vertex> = piece.iter().copied().collect();
        tree = tree.induced_subgraph(&component);
        bags = component
            .iter()
            .map(|n| (*n, bags[n].intersection(&members).copied().collect()))
            .collect();
        trace.push(LiftStep {
            k: level,
            centre,
            component,
            subpath: piece.clone(),
        });
        current = piece;
        level -= 1;
    }

    let tree_path = tree_longest_path(&td.tree);
    if ((tree_path.len() as u64).saturating_sub(1)) < k {
        return Err(Error::CounterexampleCandidate(format!(
            "tree has longest path {} < k = {k} despite the hypotheses",
            tree_path.len().saturating_sub(1)
        )));
    }
    Ok(LiftedPath { tree_path, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::path;

    #[test]
    fn ell_values() {
        for w in 1..=10 {
            assert_eq!(ell(w, 1).unwrap(), 1);
        }
        assert_eq!(ell(2, 2).unwrap(), 7);
        assert_eq!(ell(3, 2).unwrap(), 10);
        assert_eq!(ell(3, 3).unwrap(), 46);
        assert_eq!(ell(2, 3).unwrap(), 25);
        assert!(matches!(ell(1000, 40), Err(Error::Overflow(_))));
        assert!(ell(0, 1).is_err());
    }

    #[test]
    fn p7_along_a_path_tree() {
        let g = path(7);
        let bags = (0..7).map(|i| BTreeSet::from([i, i + 1])).collect();
        let td = TreeDecomposition::path_shaped(bags);
        let p: Vec<Vertex> = (0..=7).collect();
        let lifted = lift_long_path(&g, &td, 2, 2, Some(&p)).unwrap();
        assert!(lifted.length() >= 2);
        assert_eq!(lifted.trace.len(), 1);
    }

    #[test]
    fn k1_needs_two_nodes() {
        let g = path(1);
        let td = TreeDecomposition::single_bag(&g);
        assert!(lift_long_path(&g, &td, 2, 1, Some(&[0, 1])).is_err());
        let td = TreeDecomposition::path_shaped(vec![BTreeSet::from([0]), BTreeSet::from([0, 1])]);
        assert_eq!(lift_long_path(&g, &td, 2, 1, Some(&[0, 1])).unwrap().length(), 1);
    }

    #[test]
    fn short_path_rejected() {
        let g = path(3);
        let bags = (0..3).map(|i| BTreeSet::from([i, i + 1])).collect();
        let td = TreeDecomposition::path_shaped(bags);
        let err = lift_long_path(&g, &td, 2, 2, None).unwrap_err();
        assert!(err.to_string().contains("below ell"));
    }

    #[test]
    fn centre_of_paths() {
        assert_eq!(tree_centre(&path(4)), vec![2]);
        assert_eq!(tree_centre(&path(3)), vec![1, 2]);
    }
}
