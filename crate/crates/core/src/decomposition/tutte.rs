use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::blocks::blocks;
use super::tree::{torso, verify_decomposition, DecompositionReport, Node, TreeDecomposition, TreeRepr};
use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::minor::MinorModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TorsoKind {
    ThreeConnected,
    Cycle,
    K1,
    K2,
}

/// Tree-decomposition of adhesion at most 2 whose torsos are 3-connected,
/// cycles, `K_1` or `K_2`, with a graph path for every virtual torso edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TutteRepr", try_from = "TutteRepr")]
pub struct TutteDecomposition {
    pub td: TreeDecomposition,
    pub torso_kind: BTreeMap<Node, TorsoKind>,
    pub virtual_edges: BTreeMap<Node, BTreeSet<Edge>>,
    /// For node `t` and virtual edge `uv` of its torso, a `u`–`v` path in the
    /// graph with no inner vertex in the bag of `t`.
    pub path_witnesses: BTreeMap<(Node, Edge), Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct TutteRepr {
    tree: TreeRepr,
    bags: BTreeMap<Node, Vec<Vertex>>,
    torso_kind: BTreeMap<Node, TorsoKind>,
    virtual_edges: BTreeMap<Node, Vec<[Vertex; 2]>>,
    path_witnesses: BTreeMap<String, Vec<Vertex>>,
}

impl From<TutteDecomposition> for TutteRepr {
    fn from(t: TutteDecomposition) -> Self {
        TutteRepr {
            tree: TreeRepr::from(&t.td.tree),
            bags: t
                .td
                .bags
                .into_iter()
                .map(|(k, v)| (k, v.into_iter().collect()))
                .collect(),
            torso_kind: t.torso_kind,
            virtual_edges: t
                .virtual_edges
                .into_iter()
                .map(|(k, v)| (k, v.into_iter().map(|(a, b)| [a, b]).collect()))
                .collect(),
            path_witnesses: t
                .path_witnesses
                .into_iter()
                .map(|((n, (a, b)), p)| (format!("{n}:{a}-{b}"), p))
                .collect(),
        }
    }
}

impl TryFrom<TutteRepr> for TutteDecomposition {
    type Error = Error;

    fn try_from(r: TutteRepr) -> Result<Self> {
        let mut path_witnesses = BTreeMap::new();
        for (k, p) in r.path_witnesses {
            let parsed = k.split_once(':').and_then(|(n, e)| {
                let (a, b) = e.split_once('-')?;
                Some((n.parse().ok()?, edge(a.parse().ok()?, b.parse().ok()?)))
            });
            let key = parsed.ok_or_else(|| Error::Parse(format!("bad path witness key `{k}`")))?;
            path_witnesses.insert(key, p);
        }
        Ok(TutteDecomposition {
            td: TreeDecomposition {
                tree: r.tree.to_graph()?,
                bags: r.bags.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect(),
            },
            torso_kind: r.torso_kind,
            virtual_edges: r
                .virtual_edges
                .into_iter()
                .map(|(k, v)| (k, v.into_iter().map(|[a, b]| edge(a, b)).collect()))
                .collect(),
            path_witnesses,
        })
    }
}

/// Classifies a torso, or `None` if it is none of the four kinds.
pub fn classify_torso(h: &Graph) -> Option<TorsoKind> {
    match h.order() {
        0 => None,
        1 => Some(TorsoKind::K1),
        2 => (h.size() == 1).then_some(TorsoKind::K2),
        n => {
            let cyc = h.size() == n && h.vertices().all(|v| h.degree(v) == 2) && h.is_connected();
            if cyc {
                Some(TorsoKind::Cycle)
            } else if n >= 4 && vertex_connectivity(h) >= 3 {
                Some(TorsoKind::ThreeConnected)
            } else {
                None
            }
        }
    }
}

/// Lexicographically least pair `{a, b}` whose removal disconnects `h`.
fn least_two_separator(h: &Graph) -> Option<(Vertex, Vertex)> {
    let vs: Vec<Vertex> = h.vertices().collect();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let rest = h.without_vertices(&[a, b]);
            if !rest.is_empty() && !rest.is_connected() {
                return Some((a, b));
            }
        }
    }
    None
}

struct Builder {
    tree: Graph,
    bags: BTreeMap<Node, BTreeSet<Vertex>>,
    next: Node,
}

impl Builder {
    fn node(&mut self, bag: BTreeSet<Vertex>) -> Node {
        let id = self.next;
        self.next += 1;
        self.tree.add_vertex(id);
        self.bags.insert(id, bag);
        id
    }

    fn td(&self) -> TreeDecomposition {
        TreeDecomposition {
            tree: self.tree.clone(),
            bags: self.bags.clone(),
        }
    }
}

/// Splits along 2-separations until every torso is 3-connected, a cycle,
/// `K_1` or `K_2`. Ties go to the least separator pair; the parts of a split
/// are ordered by their least vertex.
pub fn tutte_decomposition(g: &Graph) -> TutteDecomposition {
    let mut b = Builder {
        tree: Graph::new(),
        bags: BTreeMap::new(),
        next: 0,
    };
    let bd = blocks(g);
    let mut first_of_component: Option<Node> = None;
    let mut block_nodes: Vec<Node> = Vec::new();
    for (i, blk) in bd.blocks.iter().enumerate() {
        let id = b.node(blk.clone());
        match bd.attachments[i] {
            Some(v) => {
                let parent = (0..i).find(|&j| bd.blocks[j].contains(&v)).unwrap();
                b.tree.add_edge(block_nodes[parent], id);
            }
            None => match first_of_component {
                Some(root) => {
                    b.tree.add_edge(root, id);
                }
                None => first_of_component = Some(id),
            },
        }
        block_nodes.push(id);
    }

    let mut work: Vec<Node> = block_nodes.iter().rev().copied().collect();
    while let Some(n) = work.pop() {
        let h = torso(g, &b.td(), n).expect("node exists");
        if classify_torso(&h).is_some() || h.order() <= 3 {
            continue;
        }
        let Some((a, c)) = least_two_separator(&h) else {
            continue;
        };
        let mut comps = h.without_vertices(&[a, c]).components();
        comps.sort_by_key(|s| *s.iter().next().unwrap());
        let parts: Vec<BTreeSet<Vertex>> = comps
            .into_iter()
            .map(|mut s| {
                s.insert(a);
                s.insert(c);
                s
            })
            .collect();
        let old_nbrs: Vec<Node> = b.tree.neighbors(n).collect();
        let old_adhesions: Vec<BTreeSet<Vertex>> = old_nbrs
            .iter()
            .map(|m| b.bags[&n].intersection(&b.bags[m]).copied().collect())
            .collect();
        for &m in &old_nbrs {
            b.tree.remove_edge(n, m);
        }
        b.bags.insert(n, parts[0].clone());
        let mut ids = vec![n];
        for part in &parts[1..] {
            ids.push(b.node(part.clone()));
        }
        for w in ids.windows(2) {
            b.tree.add_edge(w[0], w[1]);
        }
        for (m, adh) in old_nbrs.iter().zip(&old_adhesions) {
            let host = parts
                .iter()
                .position(|p| adh.is_subset(p))
                .expect("adhesion sets are cliques of the torso");
            b.tree.add_edge(ids[host], *m);
        }
        work.extend(ids.iter().rev());
    }

    let td = b.td();
    let mut torso_kind = BTreeMap::new();
    let mut virtual_edges = BTreeMap::new();
    let mut path_witnesses = BTreeMap::new();
    for t in td.tree.vertices() {
        let h = torso(g, &td, t).expect("node exists");
        if let Some(kind) = classify_torso(&h) {
            torso_kind.insert(t, kind);
        }
        let virt: BTreeSet<Edge> = h.edges().filter(|&(u, v)| !g.has_edge(u, v)).collect();
        for &(u, v) in &virt {
            if let Some(p) = witness_path(g, &td, t, u, v) {
                path_witnesses.insert((t, (u, v)), p);
            }
        }
        virtual_edges.insert(t, virt);
    }
    TutteDecomposition {
        td,
        torso_kind,
        virtual_edges,
        path_witnesses,
    }
}

/// A `u`–`v` path through the first branch beyond a tree edge at `t` whose
/// adhesion set contains both ends.
fn witness_path(g: &Graph, td: &TreeDecomposition, t: Node, u: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
    let bag = td.bag(t);
    for s in td.tree.neighbors(t) {
        let adh = td.adhesion_set(t, s);
        if !(adh.contains(&u) && adh.contains(&v)) {
            continue;
        }
        let beyond = td.side_vertices(t, s);
        let allowed = |x: Vertex| x == u || x == v || (beyond.contains(&x) && !bag.contains(&x));
        let sub: Graph = {
            let keep: BTreeSet<Vertex> = g.vertices().filter(|&x| allowed(x)).collect();
            let mut h = g.induced_subgraph(&keep);
            h.remove_edge(u, v);
            h
        };
        if let Some(p) = sub.bfs_path(u, &BTreeSet::from([v]), |_| true) {
            return Some(p);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteReport {
    pub decomposition: DecompositionReport,
    pub adhesion_ok: bool,
    pub kinds_ok: bool,
    pub virtual_edges_ok: bool,
    pub witnesses_ok: bool,
    pub problems: Vec<String>,
}

impl TutteReport {
    pub fn is_valid(&self) -> bool {
        self.decomposition.valid && self.adhesion_ok && self.kinds_ok && self.virtual_edges_ok && self.witnesses_ok
    }
}

/// Re-derives every property of a Tutte decomposition from scratch.
pub fn verify_tutte(g: &Graph, t: &TutteDecomposition) -> TutteReport {
    let decomposition = verify_decomposition(g, &t.td);
    let mut problems = Vec::new();
    let adhesion_ok = decomposition.adhesion <= 2;
    if !adhesion_ok {
        problems.push(format!("adhesion {} exceeds 2", decomposition.adhesion));
    }
    let mut kinds_ok = true;
    let mut virtual_edges_ok = true;
    let mut witnesses_ok = true;
    for n in t.td.tree.vertices() {
        let Ok(h) = torso(g, &t.td, n) else {
            kinds_ok = false;
            continue;
        };
        let actual = classify_torso(&h);
        if actual.is_none() || actual != t.torso_kind.get(&n).copied() {
            kinds_ok = false;
            problems.push(format!(
                "node {n}: declared {:?}, torso is {:?}",
                t.torso_kind.get(&n),
                actual
            ));
        }
        let virt: BTreeSet<Edge> = h.edges().filter(|&(u, v)| !g.has_edge(u, v)).collect();
        if t.virtual_edges.get(&n) != Some(&virt) {
            virtual_edges_ok = false;
            problems.push(format!("node {n}: virtual edge set mismatch"));
        }
        let bag = t.td.bag(n);
        for &(u, v) in &virt {
            let ok = t.path_witnesses.get(&(n, (u, v))).is_some_and(|p| {
                p.len() >= 2
                    && g.is_path(p)
                    && ((p[0] == u && p[p.len() - 1] == v) || (p[0] == v && p[p.len() - 1] == u))
                    && p[1..p.len() - 1].iter().all(|x| !bag.contains(x))
            });
            if !ok {
                witnesses_ok = false;
                problems.push(format!("node {n}: virtual edge {u}-{v} lacks a valid witness"));
            }
        }
    }
    TutteReport {
        decomposition,
        adhesion_ok,
        kinds_ok,
        virtual_edges_ok,
        witnesses_ok,
        problems,
    }
}

/// Model of the torso at `t` in `g`: each witness path is contracted onto its
/// first end.
pub fn torso_minor_model(g: &Graph, t: &TutteDecomposition, node: Node) -> Result<MinorModel> {
    let h = torso(g, &t.td, node)?;
    let mut sets: BTreeMap<Vertex, BTreeSet<Vertex>> = h.vertices().map(|v| (v, BTreeSet::from([v]))).collect();
    let mut witnesses = BTreeMap::new();
    for (u, v) in h.edges() {
        if g.has_edge(u, v) {
            witnesses.insert((u, v), (u, v));
            continue;
        }
        let p = t
            .path_witnesses
            .get(&(node, (u, v)))
            .ok_or_else(|| Error::NotFound(format!("witness for virtual edge {u}-{v} at node {node}")))?;
        let p: Vec<Vertex> = if p[0] == u {
            p.clone()
        } else {
            p.iter().rev().copied().collect()
        };
        let n = p.len();
        sets.get_mut(&u).unwrap().extend(&p[1..n - 1]);
        witnesses.insert((u, v), (p[n - 2], p[n - 1]));
    }
    Ok(MinorModel {
        pattern: h,
        host: g.clone(),
        branch_sets: sets,
        edge_witnesses: witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, path};
    use crate::minor::verify_model;

    #[test]
    fn cycle_is_one_torso() {
        let t = tutte_decomposition(&cycle(5));
        assert_eq!(t.td.tree.order(), 1);
        assert_eq!(t.torso_kind[&0], TorsoKind::Cycle);
        assert!(verify_tutte(&cycle(5), &t).is_valid());
    }

    #[test]
    fn subdivided_k4() {
        let mut g = complete(4);
        g.remove_edge(0, 1);
        g.add_edge(0, 4);
        g.add_edge(4, 1);
        let t = tutte_decomposition(&g);
        assert!(verify_tutte(&g, &t).is_valid());
        let kinds: Vec<TorsoKind> = t.torso_kind.values().copied().collect();
        assert_eq!(kinds.len(), 2);
        assert!(kinds.contains(&TorsoKind::ThreeConnected));
        assert!(kinds.contains(&TorsoKind::Cycle));
        let total_virtual: usize = t.virtual_edges.values().map(BTreeSet::len).sum();
        assert_eq!(total_virtual, 2);
        for n in t.td.tree.vertices() {
            assert!(verify_model(&torso_minor_model(&g, &t, n).unwrap()).is_valid());
        }
    }

    #[test]
    fn k2_and_paths() {
        let t = tutte_decomposition(&path(1));
        assert_eq!(t.torso_kind[&0], TorsoKind::K2);
        let g = path(4);
        assert!(verify_tutte(&g, &tutte_decomposition(&g)).is_valid());
        let g = Graph::with_vertices([0, 1, 2]);
        assert!(verify_tutte(&g, &tutte_decomposition(&g)).is_valid());
    }

    #[test]
    fn json_roundtrip() {
        let mut g = complete(4);
        g.remove_edge(0, 1);
        g.add_edge(0, 4);
        g.add_edge(4, 1);
        let t = tutte_decomposition(&g);
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<TutteDecomposition>(&text).unwrap(), t);
    }
}
