//! Finite simple graphs with stable vertex identifiers, and their
//! edge- and vertex-coloured variant.
//!
//! Vertex identifiers are opaque integers. Deleting vertices never renumbers
//! the survivors, so certificates that name host vertices stay meaningful
//! while a host grows.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// Unordered edge, stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<Vertex>,
    edges: Vec<[Vertex; 2]>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            vertices: g.vertices().collect(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut g = Graph::with_vertices(r.vertices);
        for [u, v] in r.edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(vs: impl IntoIterator<Item = Vertex>) -> Self {
        let mut g = Graph::new();
        for v in vs {
            g.add_vertex(v);
        }
        g
    }

    /// Graph on `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Graph::with_vertices(0..n as Vertex);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds `uv`, inserting missing endpoints. Panics on a self-loop.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        self.try_add_edge(u, v).expect("self-loop")
    }

    pub fn try_add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        self.adj.entry(u).or_default();
        self.adj.entry(v).or_default();
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let had = self.adj.get_mut(&u).map(|s| s.remove(&v)).unwrap_or(false);
        if had {
            self.adj.get_mut(&v).unwrap().remove(&u);
        }
        had
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> bool {
        match self.adj.remove(&v) {
            Some(nbrs) => {
                for w in nbrs {
                    self.adj.get_mut(&w).unwrap().remove(&v);
                }
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    /// Edges in lexicographic order, smaller endpoint first.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, s)| s.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn neighbor_set(&self, v: Vertex) -> &BTreeSet<Vertex> {
        static EMPTY: BTreeSet<Vertex> = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    /// Smallest identifier strictly above every vertex in use.
    pub fn next_vertex_id(&self) -> Vertex {
        self.max_vertex().map_or(0, |v| v + 1)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.values().map(|s| s.len()).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn induced_subgraph<'a>(&self, vs: impl IntoIterator<Item = &'a Vertex>) -> Graph {
        let keep: BTreeSet<Vertex> = vs.into_iter().copied().filter(|v| self.contains(*v)).collect();
        let mut g = Graph::new();
        for &v in &keep {
            let nbrs = self.adj[&v].intersection(&keep).copied().collect();
            g.adj.insert(v, nbrs);
        }
        g
    }

    pub fn without_vertices<'a>(&self, vs: impl IntoIterator<Item = &'a Vertex>) -> Graph {
        let drop: BTreeSet<Vertex> = vs.into_iter().copied().collect();
        let keep: Vec<Vertex> = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Renames vertices through `map`; vertices absent from `map` keep their id.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Graph {
        let f = |v: Vertex| map.get(&v).copied().unwrap_or(v);
        let mut g = Graph::with_vertices(self.vertices().map(f));
        for (u, v) in self.edges() {
            g.add_edge(f(u), f(v));
        }
        g
    }

    /// Relabels to `0..n` in the current vertex order.
    pub fn compact(&self) -> (Graph, Vec<Vertex>) {
        let ids: Vec<Vertex> = self.vertices().collect();
        let map: BTreeMap<Vertex, Vertex> = ids.iter().enumerate().map(|(i, &v)| (v, i as Vertex)).collect();
        (self.relabel(&map), ids)
    }

    /// Union of two graphs (shared identifiers are identified).
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        for v in other.vertices() {
            g.add_vertex(v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices().all(|v| other.contains(v)) && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let comp = self.reachable_from(s, &BTreeSet::new());
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` without entering `blocked`.
    pub fn reachable_from(&self, s: Vertex, blocked: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::new();
        if !self.contains(s) || blocked.contains(&s) {
            return seen;
        }
        let mut queue = VecDeque::from([s]);
        seen.insert(s);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if !blocked.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(s) => self.reachable_from(s, &BTreeSet::new()).len() == self.order(),
        }
    }

    /// Shortest path from `s` to any vertex of `targets`, using only vertices
    /// accepted by `allowed` (the endpoints included).
    pub fn bfs_path(
        &self,
        s: Vertex,
        targets: &BTreeSet<Vertex>,
        allowed: impl Fn(Vertex) -> bool,
    ) -> Option<Vec<Vertex>> {
        if !self.contains(s) || !allowed(s) {
            return None;
        }
        if targets.contains(&s) {
            return Some(vec![s]);
        }
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut queue = VecDeque::from([s]);
        parent.insert(s, s);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if parent.contains_key(&w) || !allowed(w) {
                    continue;
                }
                parent.insert(w, u);
                if targets.contains(&w) {
                    let mut path = vec![w];
                    let mut x = w;
                    while x != s {
                        x = parent[&x];
                        path.push(x);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }

    /// True when `path` is a sequence of distinct vertices joined by edges.
    pub fn is_path(&self, path: &[Vertex]) -> bool {
        let distinct: BTreeSet<_> = path.iter().collect();
        distinct.len() == path.len()
            && path.iter().all(|&v| self.contains(v))
            && path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// True when `cycle` lists at least three distinct vertices forming a cycle.
    pub fn is_cycle(&self, cycle: &[Vertex]) -> bool {
        cycle.len() >= 3 && self.is_path(cycle) && self.has_edge(cycle[0], cycle[cycle.len() - 1])
    }

    /// Adjacency lists over dense indices `0..n` in vertex order.
    pub fn dense(&self) -> Dense {
        let ids: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|v| self.adj[v].iter().map(|w| index[w]).collect())
            .collect();
        Dense { ids, index, adj }
    }
}

/// Index-based view used by the search routines.
#[derive(Clone, Debug)]
pub struct Dense {
    pub ids: Vec<Vertex>,
    pub index: BTreeMap<Vertex, usize>,
    pub adj: Vec<Vec<usize>>,
}

impl Dense {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Adjacency bitmasks; only valid for graphs with at most 128 vertices.
    pub fn masks(&self) -> Vec<u128> {
        debug_assert!(self.len() <= 128);
        self.adj
            .iter()
            .map(|nbrs| nbrs.iter().fold(0u128, |m, &w| m | (1u128 << w)))
            .collect()
    }
}

/// A graph together with a `c`-edge-colouring and a `d`-vertex-colouring.
/// Plain graphs are the `c = d = 1` case.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ColoredRepr", try_from = "ColoredRepr")]
pub struct ColoredGraph {
    base: Graph,
    vertex_color: BTreeMap<Vertex, u32>,
    edge_color: BTreeMap<Edge, u32>,
    c: u32,
    d: u32,
}

#[derive(Serialize, Deserialize)]
struct ColoredRepr {
    vertices: Vec<VertexRepr>,
    edges: Vec<EdgeRepr>,
    c: u32,
    d: u32,
}

#[derive(Serialize, Deserialize)]
struct VertexRepr {
    id: Vertex,
    color: u32,
}

#[derive(Serialize, Deserialize)]
struct EdgeRepr {
    u: Vertex,
    v: Vertex,
    color: u32,
}

impl From<ColoredGraph> for ColoredRepr {
    fn from(g: ColoredGraph) -> Self {
        ColoredRepr {
            vertices: g
                .vertex_color
                .iter()
                .map(|(&id, &color)| VertexRepr { id, color })
                .collect(),
            edges: g
                .edge_color
                .iter()
                .map(|(&(u, v), &color)| EdgeRepr { u, v, color })
                .collect(),
            c: g.c,
            d: g.d,
        }
    }
}

impl TryFrom<ColoredRepr> for ColoredGraph {
    type Error = Error;

    fn try_from(r: ColoredRepr) -> Result<Self> {
        let mut g = ColoredGraph::empty(r.c, r.d)?;
        for v in r.vertices {
            g.add_vertex(v.id, v.color)?;
        }
        for e in r.edges {
            if !g.base.contains(e.u) {
                return Err(Error::UnknownVertex(e.u));
            }
            if !g.base.contains(e.v) {
                return Err(Error::UnknownVertex(e.v));
            }
            g.add_edge(e.u, e.v, e.color)?;
        }
        Ok(g)
    }
}

impl ColoredGraph {
    pub fn empty(c: u32, d: u32) -> Result<Self> {
        if c == 0 || d == 0 {
            return Err(Error::OutOfRange(format!(
                "colour counts must be positive (c={c}, d={d})"
            )));
        }
        Ok(ColoredGraph {
            base: Graph::new(),
            vertex_color: BTreeMap::new(),
            edge_color: BTreeMap::new(),
            c,
            d,
        })
    }

    /// Every vertex and edge coloured 0.
    pub fn monochrome(g: &Graph) -> Self {
        Self::uniform(g, 1, 1)
    }

    /// Colour-0 everywhere, but declared with `c` edge and `d` vertex colours.
    pub fn uniform(g: &Graph, c: u32, d: u32) -> Self {
        ColoredGraph {
            base: g.clone(),
            vertex_color: g.vertices().map(|v| (v, 0)).collect(),
            edge_color: g.edges().map(|e| (e, 0)).collect(),
            c: c.max(1),
            d: d.max(1),
        }
    }

    pub fn from_parts(
        base: Graph,
        vertex_color: BTreeMap<Vertex, u32>,
        edge_color: BTreeMap<Edge, u32>,
        c: u32,
        d: u32,
    ) -> Result<Self> {
        let g = ColoredGraph {
            base,
            vertex_color,
            edge_color,
            c,
            d,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.c == 0 || self.d == 0 {
            return Err(Error::OutOfRange("colour counts must be positive".into()));
        }
        if self.vertex_color.len() != self.base.order()
            || self.base.vertices().any(|v| !self.vertex_color.contains_key(&v))
        {
            return Err(Error::InvalidGraph("vertex colouring is not total".into()));
        }
        if self.edge_color.len() != self.base.size() || self.base.edges().any(|e| !self.edge_color.contains_key(&e)) {
            return Err(Error::InvalidGraph("edge colouring is not total".into()));
        }
        if let Some((v, col)) = self.vertex_color.iter().find(|(_, &col)| col >= self.d) {
            return Err(Error::OutOfRange(format!(
                "vertex {v} has colour {col} >= d = {}",
                self.d
            )));
        }
        if let Some((e, col)) = self.edge_color.iter().find(|(_, &col)| col >= self.c) {
            return Err(Error::OutOfRange(format!(
                "edge {e:?} has colour {col} >= c = {}",
                self.c
            )));
        }
        Ok(())
    }

    pub fn add_vertex(&mut self, v: Vertex, color: u32) -> Result<()> {
        if color >= self.d {
            return Err(Error::OutOfRange(format!("vertex colour {color} >= d = {}", self.d)));
        }
        self.base.add_vertex(v);
        self.vertex_color.insert(v, color);
        Ok(())
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, color: u32) -> Result<()> {
        if color >= self.c {
            return Err(Error::OutOfRange(format!("edge colour {color} >= c = {}", self.c)));
        }
        for x in [u, v] {
            if !self.base.contains(x) {
                self.add_vertex(x, 0)?;
            }
        }
        self.base.try_add_edge(u, v)?;
        self.edge_color.insert(edge(u, v), color);
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        let nbrs: Vec<Vertex> = self.base.neighbors(v).collect();
        for w in nbrs {
            self.edge_color.remove(&edge(v, w));
        }
        self.base.remove_vertex(v);
        self.vertex_color.remove(&v);
    }

    pub fn graph(&self) -> &Graph {
        &self.base
    }

    pub fn into_graph(self) -> Graph {
        self.base
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn vertex_color(&self, v: Vertex) -> Option<u32> {
        self.vertex_color.get(&v).copied()
    }

    pub fn edge_color(&self, u: Vertex, v: Vertex) -> Option<u32> {
        self.edge_color.get(&edge(u, v)).copied()
    }

    pub fn vertex_colors(&self) -> &BTreeMap<Vertex, u32> {
        &self.vertex_color
    }

    pub fn edge_colors(&self) -> &BTreeMap<Edge, u32> {
        &self.edge_color
    }

    pub fn set_vertex_color(&mut self, v: Vertex, color: u32) -> Result<()> {
        if !self.base.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        if color >= self.d {
            return Err(Error::OutOfRange(format!("vertex colour {color} >= d = {}", self.d)));
        }
        self.vertex_color.insert(v, color);
        Ok(())
    }

    /// Changes the declared palette sizes; existing colours must still fit.
    pub fn with_palette(mut self, c: u32, d: u32) -> Result<Self> {
        self.c = c;
        self.d = d;
        self.validate()?;
        Ok(self)
    }

    pub fn induced_subgraph<'a>(&self, vs: impl IntoIterator<Item = &'a Vertex>) -> ColoredGraph {
        let base = self.base.induced_subgraph(vs);
        self.restrict_to(base)
    }

    fn restrict_to(&self, base: Graph) -> ColoredGraph {
        ColoredGraph {
            vertex_color: base.vertices().map(|v| (v, self.vertex_color[&v])).collect(),
            edge_color: base.edges().map(|e| (e, self.edge_color[&e])).collect(),
            base,
            c: self.c,
            d: self.d,
        }
    }

    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> ColoredGraph {
        let f = |v: Vertex| map.get(&v).copied().unwrap_or(v);
        ColoredGraph {
            base: self.base.relabel(map),
            vertex_color: self.vertex_color.iter().map(|(&v, &col)| (f(v), col)).collect(),
            edge_color: self
                .edge_color
                .iter()
                .map(|(&(u, v), &col)| (edge(f(u), f(v)), col))
                .collect(),
            c: self.c,
            d: self.d,
        }
    }

    /// Subgraph spanned by the edges of one colour (all vertices kept).
    pub fn edge_color_class(&self, color: u32) -> Graph {
        let mut g = Graph::with_vertices(self.base.vertices());
        for (&(u, v), &col) in &self.edge_color {
            if col == color {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Union of two coloured graphs with identical palettes. Shared vertices
    /// and edges must agree on colour.
    pub fn union(&self, other: &ColoredGraph) -> Result<ColoredGraph> {
        if self.c != other.c || self.d != other.d {
            return Err(Error::InvalidGraph("palette mismatch in union".into()));
        }
        let mut g = self.clone();
        for (&v, &col) in &other.vertex_color {
            match g.vertex_color.get(&v) {
                Some(&old) if old != col => {
                    return Err(Error::InvalidGraph(format!("vertex {v} coloured {old} and {col}")))
                }
                Some(_) => {}
                None => g.add_vertex(v, col)?,
            }
        }
        for (&(u, v), &col) in &other.edge_color {
            match g.edge_color.get(&(u, v)) {
                Some(&old) if old != col => {
                    return Err(Error::InvalidGraph(format!("edge {u}-{v} coloured {old} and {col}")))
                }
                Some(_) => {}
                None => g.add_edge(u, v, col)?,
            }
        }
        Ok(g)
    }
}

impl From<Graph> for ColoredGraph {
    fn from(g: Graph) -> Self {
        ColoredGraph::monochrome(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removal_keeps_identifiers() {
        let mut g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        g.remove_vertex(1);
        assert_eq!(g.vertices().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert!(g.has_edge(2, 3));
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn self_loop_rejected() {
        let mut g = Graph::new();
        assert!(g.try_add_edge(3, 3).is_err());
    }

    #[test]
    fn json_roundtrip_colored() {
        let mut g = ColoredGraph::empty(2, 3).unwrap();
        g.add_vertex(5, 2).unwrap();
        g.add_vertex(9, 0).unwrap();
        g.add_edge(5, 9, 1).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"vertices\""));
        let back: ColoredGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn colour_range_enforced() {
        let mut g = ColoredGraph::empty(1, 1).unwrap();
        assert!(g.add_vertex(0, 1).is_err());
        g.add_vertex(0, 0).unwrap();
        assert!(g.add_edge(0, 1, 1).is_err());
        let bad = r#"{"vertices":[{"id":0,"color":0}],"edges":[{"u":0,"v":4,"color":0}],"c":1,"d":1}"#;
        assert!(serde_json::from_str::<ColoredGraph>(bad).is_err());
    }
}
