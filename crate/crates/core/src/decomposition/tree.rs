use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};

/// Identifier of a decomposition tree node.
pub type Node = u32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TdRepr", try_from = "TdRepr")]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: BTreeMap<Node, BTreeSet<Vertex>>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TreeRepr {
    pub nodes: Vec<Node>,
    pub edges: Vec<[Node; 2]>,
}

#[derive(Serialize, Deserialize)]
struct TdRepr {
    tree: TreeRepr,
    bags: BTreeMap<Node, Vec<Vertex>>,
}

impl From<&Graph> for TreeRepr {
    fn from(t: &Graph) -> Self {
        TreeRepr {
            nodes: t.vertices().collect(),
            edges: t.edges().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl TreeRepr {
    pub(crate) fn to_graph(&self) -> Result<Graph> {
        let mut t = Graph::with_vertices(self.nodes.iter().copied());
        for &[a, b] in &self.edges {
            if !t.contains(a) || !t.contains(b) {
                return Err(Error::Parse(format!("tree edge {a}-{b} names an unknown node")));
            }
            t.try_add_edge(a, b)?;
        }
        Ok(t)
    }
}

impl From<TreeDecomposition> for TdRepr {
    fn from(td: TreeDecomposition) -> Self {
        TdRepr {
            tree: TreeRepr::from(&td.tree),
            bags: td.bags.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect(),
        }
    }
}

impl TryFrom<TdRepr> for TreeDecomposition {
    type Error = Error;

    fn try_from(r: TdRepr) -> Result<Self> {
        Ok(TreeDecomposition {
            tree: r.tree.to_graph()?,
            bags: r.bags.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect(),
        })
    }
}

impl TreeDecomposition {
    /// One bag holding every vertex.
    pub fn single_bag(g: &Graph) -> Self {
        TreeDecomposition {
            tree: Graph::with_vertices([0]),
            bags: BTreeMap::from([(0, g.vertex_set())]),
        }
    }

    /// Bags along a path tree `0 - 1 - ... - (len-1)`.
    pub fn path_shaped(bags: Vec<BTreeSet<Vertex>>) -> Self {
        let n = bags.len() as Node;
        let mut tree = Graph::with_vertices(0..n);
        for i in 1..n {
            tree.add_edge(i - 1, i);
        }
        TreeDecomposition {
            tree,
            bags: bags.into_iter().enumerate().map(|(i, b)| (i as Node, b)).collect(),
        }
    }

    pub fn bag(&self, t: Node) -> &BTreeSet<Vertex> {
        &self.bags[&t]
    }

    pub fn width(&self) -> usize {
        self.bags.values().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn adhesion_set(&self, s: Node, t: Node) -> BTreeSet<Vertex> {
        self.bags[&s].intersection(&self.bags[&t]).copied().collect()
    }

    pub fn adhesion(&self) -> usize {
        self.tree
            .edges()
            .map(|(s, t)| self.adhesion_set(s, t).len())
            .max()
            .unwrap_or(0)
    }

    /// Nodes of the component of `tree - st` that contains `t`.
    pub fn side(&self, s: Node, t: Node) -> BTreeSet<Node> {
        self.tree.reachable_from(t, &BTreeSet::from([s]))
    }

    /// Union of the bags on the `t` side of the tree edge `st`.
    pub fn side_vertices(&self, s: Node, t: Node) -> BTreeSet<Vertex> {
        self.side(s, t)
            .iter()
            .flat_map(|n| self.bags[n].iter().copied())
            .collect()
    }

    /// Nodes of the tree path from `a` to `b`.
    pub fn tree_path(&self, a: Node, b: Node) -> Vec<Node> {
        self.tree
            .bfs_path(a, &BTreeSet::from([b]), |_| true)
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TdViolation {
    NotATree,
    BagNodeMismatch(Node),
    UnknownVertex {
        node: Node,
        vertex: Vertex,
    },
    UncoveredVertex(Vertex),
    UncoveredEdge(Edge),
    /// `vertex` lies in the bags of `x` and `z` but not of `y` on the path between them.
    Disconnected {
        x: Node,
        y: Node,
        z: Node,
        vertex: Vertex,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub valid: bool,
    pub width: usize,
    pub adhesion: usize,
    pub adhesion_sets_complete_in_g: bool,
    pub violations: Vec<TdViolation>,
}

fn is_tree(t: &Graph) -> bool {
    !t.is_empty() && t.is_connected() && t.size() + 1 == t.order()
}

/// Checks both tree-decomposition axioms and reports width and adhesion.
pub fn verify_decomposition(g: &Graph, td: &TreeDecomposition) -> DecompositionReport {
    let mut violations = Vec::new();
    if !is_tree(&td.tree) {
        violations.push(TdViolation::NotATree);
    }
    for n in td.tree.vertices() {
        if !td.bags.contains_key(&n) {
            violations.push(TdViolation::BagNodeMismatch(n));
        }
    }
    for (&n, bag) in &td.bags {
        if !td.tree.contains(n) {
            violations.push(TdViolation::BagNodeMismatch(n));
        }
        for &v in bag {
            if !g.contains(v) {
                violations.push(TdViolation::UnknownVertex { node: n, vertex: v });
            }
        }
    }
    let mut holders: BTreeMap<Vertex, BTreeSet<Node>> = BTreeMap::new();
    for (&n, bag) in &td.bags {
        for &v in bag {
            holders.entry(v).or_default().insert(n);
        }
    }
    for v in g.vertices() {
        if !holders.contains_key(&v) {
            violations.push(TdViolation::UncoveredVertex(v));
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.values().any(|b| b.contains(&u) && b.contains(&v)) {
            violations.push(TdViolation::UncoveredEdge((u, v)));
        }
    }
    if violations.iter().all(|v| *v != TdViolation::NotATree) {
        for (&v, nodes) in &holders {
            let sub = td.tree.induced_subgraph(nodes);
            if sub.is_connected() {
                continue;
            }
            let comps = sub.components();
            let x = *comps[0].iter().next().unwrap();
            let z = *comps[1].iter().next().unwrap();
            let path = td.tree_path(x, z);
            let y = path.iter().copied().find(|p| !nodes.contains(p)).unwrap_or(x);
            violations.push(TdViolation::Disconnected { x, y, z, vertex: v });
        }
    }
    let adhesion_sets_complete_in_g = td.tree.edges().all(|(s, t)| {
        let a: Vec<Vertex> = td.adhesion_set(s, t).into_iter().collect();
        a.iter()
            .enumerate()
            .all(|(i, &x)| a[i + 1..].iter().all(|&y| g.has_edge(x, y)))
    });
    DecompositionReport {
        valid: violations.is_empty(),
        width: td.width(),
        adhesion: td.adhesion(),
        adhesion_sets_complete_in_g,
        violations,
    }
}

/// Bag subgraph of `t` with every adhesion set at `t` made complete.
pub fn torso(g: &Graph, td: &TreeDecomposition, t: Node) -> Result<Graph> {
    let bag = td
        .bags
        .get(&t)
        .ok_or_else(|| Error::NotFound(format!("tree node {t}")))?;
    let mut h = g.induced_subgraph(bag);
    for s in td.tree.neighbors(t) {
        let a: Vec<Vertex> = td.adhesion_set(s, t).into_iter().collect();
        for (i, &x) in a.iter().enumerate() {
            for &y in &a[i + 1..] {
                h.add_edge(x, y);
            }
        }
    }
    Ok(h)
}

/// Torso edges of node `t` that are not edges of `g`.
pub fn virtual_edges(g: &Graph, td: &TreeDecomposition, t: Node) -> Result<BTreeSet<Edge>> {
    Ok(torso(g, td, t)?
        .edges()
        .filter(|&(u, v)| !g.has_edge(u, v))
        .map(|(u, v)| edge(u, v))
        .collect())
}

/// Longest path of a tree (node sequence), by two sweeps.
pub fn tree_longest_path(t: &Graph) -> Vec<Node> {
    let Some(start) = t.vertices().next() else {
        return Vec::new();
    };
    let far = |s: Node| -> (Node, BTreeMap<Node, Node>) {
        let mut parent = BTreeMap::from([(s, s)]);
        let mut queue = VecDeque::from([s]);
        let mut last = s;
        while let Some(u) = queue.pop_front() {
            last = u;
            for w in t.neighbors(u) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                    e.insert(u);
                    queue.push_back(w);
                }
            }
        }
        (last, parent)
    };
    let (a, _) = far(start);
    let (b, parent) = far(a);
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = parent[&x];
        path.push(x);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, path};

    #[test]
    fn single_bag_k4() {
        let g = complete(4);
        let r = verify_decomposition(&g, &TreeDecomposition::single_bag(&g));
        assert!(r.valid);
        assert_eq!((r.width, r.adhesion), (3, 0));
    }

    #[test]
    fn path_bags() {
        let g = path(3);
        let td = TreeDecomposition::path_shaped(vec![
            BTreeSet::from([0, 1]),
            BTreeSet::from([1, 2]),
            BTreeSet::from([2, 3]),
        ]);
        let r = verify_decomposition(&g, &td);
        assert!(r.valid);
        assert_eq!((r.width, r.adhesion), (1, 1));
    }

    #[test]
    fn connectivity_violation_has_witness() {
        let g = path(2);
        let td = TreeDecomposition::path_shaped(vec![
            BTreeSet::from([0, 1]),
            BTreeSet::from([1, 2]),
            BTreeSet::from([2, 0]),
        ]);
        let r = verify_decomposition(&g, &td);
        assert!(!r.valid);
        assert!(r.violations.contains(&TdViolation::Disconnected {
            x: 0,
            y: 1,
            z: 2,
            vertex: 0
        }));
    }

    #[test]
    fn torso_completes_adhesion() {
        let g = crate::families::cycle(4);
        let td = TreeDecomposition::path_shaped(vec![BTreeSet::from([0, 1, 2]), BTreeSet::from([0, 2, 3])]);
        assert!(verify_decomposition(&g, &td).valid);
        let t0 = torso(&g, &td, 0).unwrap();
        assert!(t0.has_edge(0, 2));
        assert_eq!(virtual_edges(&g, &td, 1).unwrap(), BTreeSet::from([(0, 2)]));
        assert_eq!(torso(&g, &TreeDecomposition::single_bag(&g), 0).unwrap(), g);
    }

    #[test]
    fn json_shape() {
        let td = TreeDecomposition::path_shaped(vec![BTreeSet::from([0, 1]), BTreeSet::from([1, 2])]);
        let v: serde_json::Value = serde_json::to_value(&td).unwrap();
        assert!(v["tree"]["nodes"].is_array());
        assert_eq!(serde_json::from_value::<TreeDecomposition>(v).unwrap(), td);
    }
}
