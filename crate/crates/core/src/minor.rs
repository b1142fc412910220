//! Certified minor models, minor search, and subdivision search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::search::{Budget, Exhausted, SearchOutcome};

pub use crate::paths::circumference_at_least;

/// Hosts larger than this are refused by [`find_minor_model`].
pub const MINOR_HOST_CAP: usize = 128;

/// A witness that `pattern` is a minor of `host`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub pattern: Graph,
    pub host: Graph,
    pub branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>>,
    pub edge_witnesses: BTreeMap<Edge, Edge>,
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    pattern: Graph,
    host_ref: Graph,
    branch_sets: BTreeMap<String, Vec<Vertex>>,
    edge_witnesses: BTreeMap<String, [Vertex; 2]>,
}

impl Serialize for MinorModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModelRepr {
            pattern: self.pattern.clone(),
            host_ref: self.host.clone(),
            branch_sets: self
                .branch_sets
                .iter()
                .map(|(v, b)| (v.to_string(), b.iter().copied().collect()))
                .collect(),
            edge_witnesses: self
                .edge_witnesses
                .iter()
                .map(|(&(u, v), &(a, b))| (format!("{u}-{v}"), [a, b]))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MinorModel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ModelRepr::deserialize(d)?;
        let mut branch_sets = BTreeMap::new();
        for (k, vs) in r.branch_sets {
            let v: Vertex = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad vertex key `{k}`")))?;
            branch_sets.insert(v, vs.into_iter().collect());
        }
        let mut edge_witnesses = BTreeMap::new();
        for (k, [a, b]) in r.edge_witnesses {
            let (u, v) = k
                .split_once('-')
                .and_then(|(u, v)| Some((u.parse().ok()?, v.parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad edge key `{k}`")))?;
            edge_witnesses.insert(edge(u, v), (a, b));
        }
        Ok(MinorModel {
            pattern: r.pattern,
            host: r.host_ref,
            branch_sets,
            edge_witnesses,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    MissingBranchSet(Vertex),
    UnexpectedBranchSet(Vertex),
    EmptyBranchSet(Vertex),
    UnknownHostVertex { branch_set: Vertex, host_vertex: Vertex },
    Overlap { a: Vertex, b: Vertex, host_vertex: Vertex },
    Disconnected(Vertex),
    MissingWitness(Edge),
    WitnessNotAnEdge { pattern_edge: Edge, witness: Edge },
    WitnessWrongEnds { pattern_edge: Edge, witness: Edge },
    UnexpectedWitness(Edge),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingBranchSet(v) => write!(f, "no branch set for pattern vertex {v}"),
            Violation::UnexpectedBranchSet(v) => write!(f, "branch set for non-pattern vertex {v}"),
            Violation::EmptyBranchSet(v) => write!(f, "branch set {v} is empty"),
            Violation::UnknownHostVertex {
                branch_set,
                host_vertex,
            } => {
                write!(
                    f,
                    "branch set {branch_set} uses host vertex {host_vertex} not in the host"
                )
            }
            Violation::Overlap { a, b, host_vertex } => {
                write!(f, "branch sets {a} and {b} share host vertex {host_vertex}")
            }
            Violation::Disconnected(v) => write!(f, "branch set {v} is not connected"),
            Violation::MissingWitness((u, v)) => write!(f, "no witness for pattern edge {u}-{v}"),
            Violation::WitnessNotAnEdge { pattern_edge, witness } => write!(
                f,
                "witness {:?} for pattern edge {:?} is not a host edge",
                witness, pattern_edge
            ),
            Violation::WitnessWrongEnds { pattern_edge, witness } => write!(
                f,
                "witness {:?} does not join the branch sets of {:?}",
                witness, pattern_edge
            ),
            Violation::UnexpectedWitness((u, v)) => write!(f, "witness for non-edge {u}-{v}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelReport {
    pub violations: Vec<Violation>,
}

impl ModelReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every model invariant and lists the violations.
pub fn verify_model(m: &MinorModel) -> ModelReport {
    let mut violations = Vec::new();
    for v in m.pattern.vertices() {
        if !m.branch_sets.contains_key(&v) {
            violations.push(Violation::MissingBranchSet(v));
        }
    }
    let mut owner: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for (&v, set) in &m.branch_sets {
        if !m.pattern.contains(v) {
            violations.push(Violation::UnexpectedBranchSet(v));
        }
        if set.is_empty() {
            violations.push(Violation::EmptyBranchSet(v));
            continue;
        }
        for &x in set {
            if !m.host.contains(x) {
                violations.push(Violation::UnknownHostVertex {
                    branch_set: v,
                    host_vertex: x,
                });
            }
            if let Some(&a) = owner.get(&x) {
                violations.push(Violation::Overlap {
                    a,
                    b: v,
                    host_vertex: x,
                });
            } else {
                owner.insert(x, v);
            }
        }
        if set.iter().all(|&x| m.host.contains(x)) {
            let sub = m.host.induced_subgraph(set);
            if !sub.is_connected() {
                violations.push(Violation::Disconnected(v));
            }
        }
    }
    for e in m.pattern.edges() {
        let Some(&w) = m.edge_witnesses.get(&e) else {
            violations.push(Violation::MissingWitness(e));
            continue;
        };
        if !m.host.has_edge(w.0, w.1) {
            violations.push(Violation::WitnessNotAnEdge {
                pattern_edge: e,
                witness: w,
            });
            continue;
        }
        let (Some(bu), Some(bv)) = (m.branch_sets.get(&e.0), m.branch_sets.get(&e.1)) else {
            continue;
        };
        let ok = (bu.contains(&w.0) && bv.contains(&w.1)) || (bu.contains(&w.1) && bv.contains(&w.0));
        if !ok {
            violations.push(Violation::WitnessWrongEnds {
                pattern_edge: e,
                witness: w,
            });
        }
    }
    for &e in m.edge_witnesses.keys() {
        if !m.pattern.has_edge(e.0, e.1) {
            violations.push(Violation::UnexpectedWitness(e));
        }
    }
    ModelReport { violations }
}

/// Connected order with the highest-degree vertex first; later vertices
/// maximise the number of already ordered neighbours.
pub(crate) fn connected_order(g: &Graph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = Vec::with_capacity(g.order());
    let mut placed: BTreeSet<Vertex> = BTreeSet::new();
    while order.len() < g.order() {
        let next = g
            .vertices()
            .filter(|v| !placed.contains(v))
            .max_by_key(|&v| {
                let linked = g.neighbors(v).filter(|w| placed.contains(w)).count();
                (linked, g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    order
}

#[inline]
pub(crate) fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[inline]
fn above(r: usize) -> u128 {
    if r >= 127 {
        0
    } else {
        !((1u128 << (r + 1)) - 1)
    }
}

/// Enumerates each connected subset of `free` with exactly `size` vertices
/// once; `f` returns `true` to stop.
pub(crate) fn connected_sets(
    adj: &[u128],
    free: u128,
    size: usize,
    f: &mut dyn FnMut(u128) -> std::result::Result<bool, Exhausted>,
) -> std::result::Result<bool, Exhausted> {
    #[allow(clippy::too_many_arguments)]
    fn extend(
        adj: &[u128],
        free: u128,
        root: usize,
        set: u128,
        nbrs: u128,
        mut ext: u128,
        size: usize,
        f: &mut dyn FnMut(u128) -> std::result::Result<bool, Exhausted>,
    ) -> std::result::Result<bool, Exhausted> {
        if set.count_ones() as usize == size {
            return f(set);
        }
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let excl = adj[w] & free & above(root) & !set & !nbrs;
            if extend(adj, free, root, set | (1 << w), nbrs | adj[w], ext | excl, size, f)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    for r in bits(free) {
        let ext = adj[r] & free & above(r);
        if extend(adj, free, r, 1 << r, adj[r], ext, size, f)? {
            return Ok(true);
        }
    }
    Ok(false)
}

struct MinorSearch<'a> {
    adj: &'a [u128],
    order: Vec<usize>,
    pnbrs: Vec<Vec<usize>>,
    sets: Vec<u128>,
    reach: Vec<u128>,
    budget: Budget,
}

impl MinorSearch<'_> {
    /// Pattern neighbours of `x` that come after position `depth` in the order.
    fn unplaced_after(&self, x: usize, pos: &[usize], depth: usize) -> usize {
        self.pnbrs[x].iter().filter(|&&y| pos[y] > depth).count()
    }

    fn place(&mut self, depth: usize, free: u128, pos: &[usize]) -> std::result::Result<bool, Exhausted> {
        let k = self.order.len();
        if depth == k {
            return Ok(true);
        }
        let p = self.order[depth];
        let remaining = k - depth - 1;
        let free_count = free.count_ones() as usize;
        if free_count < remaining + 1 {
            return Ok(false);
        }
        let earlier: Vec<usize> = self.pnbrs[p].iter().copied().filter(|&q| pos[q] < depth).collect();
        let placed: Vec<usize> = self.order[..depth].to_vec();
        let max_size = free_count - remaining;
        for size in 1..=max_size {
            let mut found = false;
            let adj = self.adj;
            let mut candidates: Vec<u128> = Vec::new();
            connected_sets(adj, free, size, &mut |set| {
                if earlier.iter().all(|&q| set & self.reach[q] != 0) {
                    candidates.push(set);
                }
                Ok(false)
            })?;
            for set in candidates {
                self.budget.tick()?;
                let new_free = free & !set;
                let reach: u128 = bits(set).fold(0, |m, x| m | adj[x]) & !set;
                let need_p = self.unplaced_after(p, pos, depth);
                if ((reach & new_free).count_ones() as usize) < need_p {
                    continue;
                }
                let ok = placed.iter().all(|&x| {
                    let need = self.unplaced_after(x, pos, depth);
                    need == 0 || (self.reach[x] & new_free).count_ones() as usize >= need
                });
                if !ok {
                    continue;
                }
                self.sets[p] = set;
                self.reach[p] = reach;
                if self.place(depth + 1, new_free, pos)? {
                    found = true;
                    break;
                }
            }
            if found {
                return Ok(true);
            }
        }
        self.sets[p] = 0;
        self.reach[p] = 0;
        Ok(false)
    }
}

/// Searches for a model of the connected `pattern` in `host`.
pub fn find_minor_model(pattern: &Graph, host: &Graph, budget: u64) -> Result<SearchOutcome<MinorModel>> {
    if pattern.is_empty() {
        return Err(Error::Precondition("pattern has no vertices".into()));
    }
    if !pattern.is_connected() {
        return Err(Error::Precondition("pattern must be connected".into()));
    }
    if host.order() > MINOR_HOST_CAP {
        return Err(Error::SizeCap {
            what: "minor search host",
            size: host.order(),
            cap: MINOR_HOST_CAP,
        });
    }
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return Ok(SearchOutcome::Absent);
    }
    let hd = host.dense();
    let adj = hd.masks();
    let pd = pattern.dense();
    let order: Vec<usize> = connected_order(pattern).iter().map(|v| pd.index[v]).collect();
    let mut pos = vec![0usize; order.len()];
    for (i, &p) in order.iter().enumerate() {
        pos[p] = i;
    }
    let k = order.len();
    let mut search = MinorSearch {
        adj: &adj,
        order,
        pnbrs: pd.adj.clone(),
        sets: vec![0; k],
        reach: vec![0; k],
        budget: Budget::new(budget),
    };
    let all: u128 = if hd.len() == 128 {
        u128::MAX
    } else {
        (1u128 << hd.len()) - 1
    };
    match search.place(0, all, &pos) {
        Err(Exhausted) => Ok(search.budget.inconclusive()),
        Ok(false) => Ok(SearchOutcome::Absent),
        Ok(true) => {
            let branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>> = (0..k)
                .map(|p| (pd.ids[p], bits(search.sets[p]).map(|x| hd.ids[x]).collect()))
                .collect();
            let model = model_from_sets(pattern, host, branch_sets).expect("search only places adjacent branch sets");
            Ok(SearchOutcome::Found(model))
        }
    }
}

/// Completes branch sets with the least witness edge per pattern edge.
pub fn model_from_sets(
    pattern: &Graph,
    host: &Graph,
    branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>>,
) -> Option<MinorModel> {
    let mut edge_witnesses = BTreeMap::new();
    for (u, v) in pattern.edges() {
        let (bu, bv) = (branch_sets.get(&u)?, branch_sets.get(&v)?);
        let w = bu
            .iter()
            .flat_map(|&a| host.neighbors(a).filter(|b| bv.contains(b)).map(move |b| (a, b)))
            .next()?;
        edge_witnesses.insert(edge(u, v), w);
    }
    Some(MinorModel {
        pattern: pattern.clone(),
        host: host.clone(),
        branch_sets,
        edge_witnesses,
    })
}

/// Outcome of a freeness test against several patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    Free,
    Contains(MinorModel),
    Inconclusive { pattern: usize, explored: u64 },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

/// Tests `host` against each pattern; `Free` only when every search completed.
pub fn is_minor_free(host: &Graph, patterns: &[Graph], budget: u64) -> Result<Freeness> {
    let mut inconclusive = None;
    for (i, p) in patterns.iter().enumerate() {
        match find_minor_model(p, host, budget)? {
            SearchOutcome::Found(m) => return Ok(Freeness::Contains(m)),
            SearchOutcome::Absent => {}
            SearchOutcome::Inconclusive { explored } => {
                inconclusive.get_or_insert(Freeness::Inconclusive { pattern: i, explored });
            }
        }
    }
    Ok(inconclusive.unwrap_or(Freeness::Free))
}

/// A topological embedding: branch vertices plus internally disjoint paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SubdivisionRepr", try_from = "SubdivisionRepr")]
pub struct Subdivision {
    pub pattern: Graph,
    pub branch_vertices: BTreeMap<Vertex, Vertex>,
    /// Host path for each pattern edge `(u, v)`, from the image of `u` to that of `v`.
    pub paths: BTreeMap<Edge, Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct SubdivisionRepr {
    pattern: Graph,
    branch_vertices: BTreeMap<Vertex, Vertex>,
    paths: BTreeMap<String, Vec<Vertex>>,
}

impl From<Subdivision> for SubdivisionRepr {
    fn from(s: Subdivision) -> Self {
        SubdivisionRepr {
            pattern: s.pattern,
            branch_vertices: s.branch_vertices,
            paths: s.paths.into_iter().map(|((u, v), p)| (format!("{u}-{v}"), p)).collect(),
        }
    }
}

impl TryFrom<SubdivisionRepr> for Subdivision {
    type Error = Error;

    fn try_from(r: SubdivisionRepr) -> Result<Self> {
        let mut paths = BTreeMap::new();
        for (k, p) in r.paths {
            let (u, v) = k
                .split_once('-')
                .and_then(|(u, v)| Some((u.parse().ok()?, v.parse().ok()?)))
                .ok_or_else(|| Error::Parse(format!("bad edge key `{k}`")))?;
            paths.insert(edge(u, v), p);
        }
        Ok(Subdivision {
            pattern: r.pattern,
            branch_vertices: r.branch_vertices,
            paths,
        })
    }
}

impl Subdivision {
    /// Checks branch vertices are distinct, paths are host paths with the
    /// right ends, and paths share no vertex beyond common ends.
    pub fn verify(&self, host: &Graph) -> bool {
        let images: BTreeSet<Vertex> = self.branch_vertices.values().copied().collect();
        if images.len() != self.pattern.order()
            || self.pattern.vertices().any(|v| !self.branch_vertices.contains_key(&v))
        {
            return false;
        }
        let mut inner: BTreeSet<Vertex> = BTreeSet::new();
        for e in self.pattern.edges() {
            let Some(p) = self.paths.get(&e) else { return false };
            if p.len() < 2 || !host.is_path(p) {
                return false;
            }
            if p[0] != self.branch_vertices[&e.0] || p[p.len() - 1] != self.branch_vertices[&e.1] {
                return false;
            }
            for &x in &p[1..p.len() - 1] {
                if images.contains(&x) || !inner.insert(x) {
                    return false;
                }
            }
        }
        self.paths.len() == self.pattern.size()
    }

    /// The induced minor model: each path's inner vertices join the branch
    /// set of its first end.
    pub fn to_model(&self, host: &Graph) -> MinorModel {
        let mut sets: BTreeMap<Vertex, BTreeSet<Vertex>> = self
            .branch_vertices
            .iter()
            .map(|(&v, &x)| (v, BTreeSet::from([x])))
            .collect();
        let mut edge_witnesses = BTreeMap::new();
        for (&(u, v), p) in &self.paths {
            let n = p.len();
            sets.get_mut(&u).unwrap().extend(&p[1..n - 1]);
            edge_witnesses.insert(edge(u, v), (p[n - 2], p[n - 1]));
        }
        MinorModel {
            pattern: self.pattern.clone(),
            host: host.clone(),
            branch_sets: sets,
            edge_witnesses,
        }
    }
}

/// Pattern skeleton: vertices of degree other than two, joined by chains of
/// degree-two vertices. A cycle gets its least vertex as the only anchor.
fn skeleton(pattern: &Graph) -> (Vec<Vertex>, Vec<Vec<Vertex>>) {
    let mut anchors: Vec<Vertex> = pattern.vertices().filter(|&v| pattern.degree(v) != 2).collect();
    if anchors.is_empty() {
        anchors.extend(pattern.vertices().next());
    }
    let is_anchor: BTreeSet<Vertex> = anchors.iter().copied().collect();
    let mut covered: BTreeSet<Edge> = BTreeSet::new();
    let mut chains = Vec::new();
    for &a in &anchors {
        for w in pattern.neighbors(a) {
            if covered.contains(&edge(a, w)) {
                continue;
            }
            let mut chain = vec![a, w];
            covered.insert(edge(a, w));
            while !is_anchor.contains(chain.last().unwrap()) {
                let n = chain.len();
                let (prev, cur) = (chain[n - 2], chain[n - 1]);
                let next = pattern.neighbors(cur).find(|&x| x != prev).unwrap();
                covered.insert(edge(cur, next));
                chain.push(next);
            }
            chains.push(chain);
        }
    }
    (connected_anchor_order(pattern, &anchors), chains)
}

fn connected_anchor_order(pattern: &Graph, anchors: &[Vertex]) -> Vec<Vertex> {
    let set: BTreeSet<Vertex> = anchors.iter().copied().collect();
    connected_order(pattern)
        .into_iter()
        .filter(|v| set.contains(v))
        .collect()
}

struct SubdivisionSearch<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    anchors: Vec<Vertex>,
    chains: Vec<Vec<Vertex>>,
    /// Chains to route once the anchor at each depth is placed.
    due: Vec<Vec<usize>>,
    image: BTreeMap<Vertex, Vertex>,
    used: BTreeSet<Vertex>,
    routes: BTreeMap<usize, Vec<Vertex>>,
    budget: Budget,
}

impl SubdivisionSearch<'_> {
    fn assign(&mut self, depth: usize) -> std::result::Result<bool, Exhausted> {
        if depth == self.anchors.len() {
            return Ok(true);
        }
        let a = self.anchors[depth];
        let deg = self.pattern.degree(a);
        let candidates: Vec<Vertex> = self
            .host
            .vertices()
            .filter(|x| !self.used.contains(x) && self.host.degree(*x) >= deg)
            .collect();
        for x in candidates {
            self.budget.tick()?;
            self.image.insert(a, x);
            self.used.insert(x);
            if self.route(depth, 0)? {
                return Ok(true);
            }
            self.used.remove(&x);
            self.image.remove(&a);
        }
        Ok(false)
    }

    fn route(&mut self, depth: usize, i: usize) -> std::result::Result<bool, Exhausted> {
        if i == self.due[depth].len() {
            return self.assign(depth + 1);
        }
        let c = self.due[depth][i];
        let chain = &self.chains[c];
        let from = self.image[&chain[0]];
        let to = self.image[chain.last().unwrap()];
        let min_len = chain.len() - 1;
        let mut path = vec![from];
        self.walk(depth, i, c, to, min_len, &mut path)
    }

    fn walk(
        &mut self,
        depth: usize,
        i: usize,
        c: usize,
        to: Vertex,
        min_len: usize,
        path: &mut Vec<Vertex>,
    ) -> std::result::Result<bool, Exhausted> {
        self.budget.tick()?;
        let last = *path.last().unwrap();
        let next: Vec<Vertex> = self.host.neighbors(last).collect();
        for y in next {
            if y == to {
                if path.len() < min_len || (path[0] == to && path.len() < 3) {
                    continue;
                }
                path.push(y);
                self.routes.insert(c, path.clone());
                if self.route(depth, i + 1)? {
                    return Ok(true);
                }
                self.routes.remove(&c);
                path.pop();
                continue;
            }
            if self.used.contains(&y) {
                continue;
            }
            self.used.insert(y);
            path.push(y);
            if self.walk(depth, i, c, to, min_len, path)? {
                return Ok(true);
            }
            path.pop();
            self.used.remove(&y);
        }
        Ok(false)
    }

    fn finish(self, pattern: &Graph) -> Subdivision {
        let mut branch_vertices = self.image.clone();
        let mut paths = BTreeMap::new();
        for (c, chain) in self.chains.iter().enumerate() {
            let host_path = &self.routes[&c];
            let r = chain.len() - 1;
            for j in 1..r {
                branch_vertices.insert(chain[j], host_path[j]);
            }
            for j in 0..r {
                let seg: Vec<Vertex> = if j + 1 < r {
                    vec![host_path[j], host_path[j + 1]]
                } else {
                    host_path[j..].to_vec()
                };
                paths.insert(edge(chain[j], chain[j + 1]), oriented(chain[j], chain[j + 1], &seg));
            }
        }
        Subdivision {
            pattern: pattern.clone(),
            branch_vertices,
            paths,
        }
    }
}

/// `path` runs from the image of `q` to the image of `p`; stored from the
/// smaller pattern vertex to the larger.
fn oriented(q: Vertex, p: Vertex, path: &[Vertex]) -> Vec<Vertex> {
    if q < p {
        path.to_vec()
    } else {
        path.iter().rev().copied().collect()
    }
}

/// Searches for a subdivision of `pattern` in `host`. Vertices of degree two
/// in the pattern are not placed individually: each chain of them becomes one
/// host path of at least the chain's length.
pub fn find_subdivision(pattern: &Graph, host: &Graph, budget: u64) -> Result<SearchOutcome<Subdivision>> {
    if pattern.is_empty() {
        return Err(Error::Precondition("pattern has no vertices".into()));
    }
    if !pattern.is_connected() {
        return Err(Error::Precondition("pattern must be connected".into()));
    }
    let (anchors, chains) = skeleton(pattern);
    let pos: BTreeMap<Vertex, usize> = anchors.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut due = vec![Vec::new(); anchors.len()];
    for (c, chain) in chains.iter().enumerate() {
        let d = pos[&chain[0]].max(pos[chain.last().unwrap()]);
        due[d].push(c);
    }
    let mut s = SubdivisionSearch {
        host,
        pattern,
        anchors,
        chains,
        due,
        image: BTreeMap::new(),
        used: BTreeSet::new(),
        routes: BTreeMap::new(),
        budget: Budget::new(budget),
    };
    match s.assign(0) {
        Err(Exhausted) => Ok(s.budget.inconclusive()),
        Ok(false) => Ok(SearchOutcome::Absent),
        Ok(true) => Ok(SearchOutcome::Found(s.finish(pattern))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, generate, path, two_cycles, wheel, FamilySpec};
    use crate::search::DEFAULT_BUDGET;

    fn found(p: &Graph, h: &Graph) -> Option<MinorModel> {
        find_minor_model(p, h, DEFAULT_BUDGET).unwrap().found()
    }

    #[test]
    fn identity_and_contraction_models() {
        let k4 = complete(4);
        let sets = k4.vertices().map(|v| (v, BTreeSet::from([v]))).collect();
        let m = model_from_sets(&k4, &k4, sets).unwrap();
        assert!(verify_model(&m).is_valid());

        let c8 = cycle(8);
        let sets = (0..4).map(|i| (i, BTreeSet::from([2 * i, 2 * i + 1]))).collect();
        let m = model_from_sets(&cycle(4), &c8, sets).unwrap();
        assert!(verify_model(&m).is_valid());
    }

    #[test]
    fn disconnected_branch_set_is_named() {
        let c8 = cycle(8);
        let mut m = found(&cycle(4), &c8).unwrap();
        m.branch_sets.insert(0, BTreeSet::from([0, 4]));
        let r = verify_model(&m);
        assert!(r.violations.contains(&Violation::Disconnected(0)));
    }

    #[test]
    fn search_examples() {
        assert!(found(&cycle(4), &complete(4)).is_some());
        assert!(found(&complete(4), &cycle(5)).is_none());
        let mut d6 = generate(&FamilySpec::DoubleWheel { k: 6 }).unwrap();
        d6.remove_vertex(7);
        let m = found(&wheel(5), &d6).unwrap();
        assert!(verify_model(&m).is_valid());
        assert!(found(&cycle(3), &path(9)).is_none());
    }

    #[test]
    fn disconnected_pattern_rejected() {
        let p = Graph::with_vertices([0, 1]);
        assert!(find_minor_model(&p, &complete(3), 100).is_err());
    }

    #[test]
    fn freeness_examples() {
        assert!(is_minor_free(&path(9), &[cycle(3)], DEFAULT_BUDGET).unwrap().is_free());
        assert!(matches!(
            is_minor_free(&complete(4), &[wheel(3)], DEFAULT_BUDGET).unwrap(),
            Freeness::Contains(_)
        ));
        assert!(matches!(
            is_minor_free(&cycle(9), &[cycle(4)], DEFAULT_BUDGET).unwrap(),
            Freeness::Contains(_)
        ));
    }

    #[test]
    fn subdivision_examples() {
        let mut c = cycle(3);
        c.remove_edge(0, 2);
        c.add_edge(0, 3);
        c.add_edge(3, 2);
        let s = find_subdivision(&cycle(3), &c, DEFAULT_BUDGET)
            .unwrap()
            .found()
            .unwrap();
        assert!(s.verify(&c));
        assert_eq!(s.paths.values().filter(|p| p.len() == 3).count(), 1);
        assert!(verify_model(&s.to_model(&c)).is_valid());

        let w4 = wheel(4);
        let s = find_subdivision(&two_cycles(3, 3), &w4, DEFAULT_BUDGET)
            .unwrap()
            .found()
            .unwrap();
        assert!(s.verify(&w4));
        assert!(find_subdivision(&complete_bipartite(1, 4), &cycle(6), DEFAULT_BUDGET)
            .unwrap()
            .is_absent());
    }

    #[test]
    fn json_schema_roundtrip() {
        let m = found(&cycle(4), &complete(5)).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"host_ref\""));
        assert!(text.contains("\"edge_witnesses\""));
        let back: MinorModel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
