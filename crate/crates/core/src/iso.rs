//! Colour-preserving embedding search and canonical labelling.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, Vertex};
use crate::search::{Budget, SearchOutcome, DEFAULT_BUDGET};

/// Largest connected component accepted by [`canonical_form`].
pub const CANON_CAP: usize = 30;

/// Index-based coloured adjacency with sorted neighbour lists.
#[derive(Clone, Debug)]
pub struct ColoredDense {
    pub ids: Vec<Vertex>,
    pub index: BTreeMap<Vertex, usize>,
    pub color: Vec<u32>,
    pub adj: Vec<Vec<(usize, u32)>>,
}

impl ColoredDense {
    pub fn new(g: &ColoredGraph) -> Self {
        let ids: Vec<Vertex> = g.graph().vertices().collect();
        let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let color = ids.iter().map(|&v| g.vertex_color(v).unwrap_or(0)).collect();
        let adj = ids
            .iter()
            .map(|&v| {
                g.graph()
                    .neighbors(v)
                    .map(|w| (index[&w], g.edge_color(v, w).unwrap_or(0)))
                    .collect()
            })
            .collect();
        ColoredDense { ids, index, color, adj }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    #[inline]
    pub fn edge(&self, a: usize, b: usize) -> Option<u32> {
        let row = &self.adj[a];
        row.binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| row[i].1)
    }
}

/// Search options for [`find_embedding`].
#[derive(Clone, Debug)]
pub struct EmbedOptions {
    /// Require non-edges to map to non-edges.
    pub induced: bool,
    /// Pattern–host pairs that must be part of the map.
    pub fixed: Vec<(Vertex, Vertex)>,
    /// Restrict images to these host vertices.
    pub allowed: Option<BTreeSet<Vertex>>,
    pub budget: u64,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions {
            induced: true,
            fixed: Vec::new(),
            allowed: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// An injective, colour-preserving map from `pattern` into `host`.
pub fn find_embedding(
    pattern: &ColoredGraph,
    host: &ColoredGraph,
    opts: &EmbedOptions,
) -> SearchOutcome<BTreeMap<Vertex, Vertex>> {
    let p = ColoredDense::new(pattern);
    let h = ColoredDense::new(host);
    let np = p.len();
    if np > h.len() {
        return SearchOutcome::Absent;
    }
    let allowed: Vec<bool> = match &opts.allowed {
        Some(set) => h.ids.iter().map(|v| set.contains(v)).collect(),
        None => vec![true; h.len()],
    };

    let mut assign = vec![usize::MAX; np];
    let mut used = vec![false; h.len()];
    let mut order = Vec::with_capacity(np);
    for &(pv, hv) in &opts.fixed {
        let (Some(&a), Some(&b)) = (p.index.get(&pv), h.index.get(&hv)) else {
            return SearchOutcome::Absent;
        };
        if assign[a] != usize::MAX || used[b] {
            return SearchOutcome::Absent;
        }
        assign[a] = b;
        used[b] = true;
        order.push(a);
    }
    for (i, &a) in order.iter().enumerate() {
        if !compatible(&p, &h, &assign, &order[..i], a, assign[a], opts.induced) {
            return SearchOutcome::Absent;
        }
    }
    let fixed_count = order.len();
    let mut placed = vec![false; np];
    for &a in &order {
        placed[a] = true;
    }
    while order.len() < np {
        let next = (0..np)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = p.adj[v].iter().filter(|&&(w, _)| placed[w]).count();
                (linked, p.adj[v].len(), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut budget = Budget::new(opts.budget);
    let mut search = Embedder {
        p: &p,
        h: &h,
        allowed: &allowed,
        induced: opts.induced,
        order: &order,
        assign,
        used,
        budget: &mut budget,
    };
    match search.run(fixed_count) {
        Ok(true) => SearchOutcome::Found((0..np).map(|a| (p.ids[a], h.ids[search.assign[a]])).collect()),
        Ok(false) => SearchOutcome::Absent,
        Err(()) => budget.inconclusive(),
    }
}

fn compatible(
    p: &ColoredDense,
    h: &ColoredDense,
    assign: &[usize],
    earlier: &[usize],
    a: usize,
    b: usize,
    induced: bool,
) -> bool {
    if p.color[a] != h.color[b] || h.adj[b].len() < p.adj[a].len() {
        return false;
    }
    for &q in earlier {
        let pe = p.edge(a, q);
        let he = h.edge(b, assign[q]);
        match (pe, he) {
            (Some(x), Some(y)) if x != y => return false,
            (Some(_), None) => return false,
            (None, Some(_)) if induced => return false,
            _ => {}
        }
    }
    true
}

struct Embedder<'a> {
    p: &'a ColoredDense,
    h: &'a ColoredDense,
    allowed: &'a [bool],
    induced: bool,
    order: &'a [usize],
    assign: Vec<usize>,
    used: Vec<bool>,
    budget: &'a mut Budget,
}

impl Embedder<'_> {
    fn run(&mut self, depth: usize) -> std::result::Result<bool, ()> {
        self.budget.tick().map_err(|_| ())?;
        if depth == self.order.len() {
            return Ok(true);
        }
        let a = self.order[depth];
        let anchor = self.p.adj[a]
            .iter()
            .filter(|&&(w, _)| self.assign[w] != usize::MAX)
            .min_by_key(|&&(w, _)| self.h.adj[self.assign[w]].len())
            .copied();
        let candidates: Vec<usize> = match anchor {
            Some((w, col)) => self.h.adj[self.assign[w]]
                .iter()
                .filter(|&&(_, c)| c == col)
                .map(|&(x, _)| x)
                .collect(),
            None => (0..self.h.len()).collect(),
        };
        for b in candidates {
            if self.used[b] || !self.allowed[b] {
                continue;
            }
            if !compatible(self.p, self.h, &self.assign, &self.order[..depth], a, b, self.induced) {
                continue;
            }
            self.assign[a] = b;
            self.used[b] = true;
            if self.run(depth + 1)? {
                return Ok(true);
            }
            self.used[b] = false;
            self.assign[a] = usize::MAX;
        }
        Ok(false)
    }
}

/// Induced, colour-preserving embedding of `pattern` into `host`.
pub fn find_induced_embedding(
    pattern: &ColoredGraph,
    host: &ColoredGraph,
    budget: u64,
) -> SearchOutcome<BTreeMap<Vertex, Vertex>> {
    find_embedding(
        pattern,
        host,
        &EmbedOptions {
            budget,
            ..EmbedOptions::default()
        },
    )
}

/// Subgraph (not necessarily induced) embedding of uncoloured graphs.
pub fn find_subgraph(pattern: &Graph, host: &Graph, budget: u64) -> SearchOutcome<BTreeMap<Vertex, Vertex>> {
    find_embedding(
        &ColoredGraph::monochrome(pattern),
        &ColoredGraph::monochrome(host),
        &EmbedOptions {
            induced: false,
            budget,
            ..EmbedOptions::default()
        },
    )
}

/// Checks that `map` is an injective colour-preserving embedding; with
/// `induced`, non-edges must also be preserved.
pub fn verify_embedding(
    pattern: &ColoredGraph,
    host: &ColoredGraph,
    map: &BTreeMap<Vertex, Vertex>,
    induced: bool,
) -> bool {
    let pg = pattern.graph();
    if map.len() != pg.order() || pg.vertices().any(|v| !map.contains_key(&v)) {
        return false;
    }
    let images: BTreeSet<_> = map.values().collect();
    if images.len() != map.len() || images.iter().any(|&&v| !host.graph().contains(v)) {
        return false;
    }
    if pg
        .vertices()
        .any(|v| pattern.vertex_color(v) != host.vertex_color(map[&v]))
    {
        return false;
    }
    let vs: Vec<Vertex> = pg.vertices().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            let pe = pattern.edge_color(u, v);
            let he = host.edge_color(map[&u], map[&v]);
            match (pe, he) {
                (Some(x), Some(y)) if x != y => return false,
                (Some(_), None) => return false,
                (None, Some(_)) if induced => return false,
                _ => {}
            }
        }
    }
    true
}

/// Canonical label of a coloured graph: equal iff colour-preserving isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalLabel(pub Vec<u8>);

/// Canonical label together with a canonical vertex order. Two isomorphic
/// graphs are matched position by position by their orders.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub label: CanonicalLabel,
    pub order: Vec<Vertex>,
}

pub fn canonical_form(g: &ColoredGraph) -> Result<CanonicalLabel> {
    canonical_form_budgeted(g, DEFAULT_BUDGET).map(|c| c.label)
}

pub fn canonical_form_budgeted(g: &ColoredGraph, budget: u64) -> Result<Canonical> {
    let mut budget = Budget::new(budget);
    let mut parts: Vec<(Vec<u8>, Vec<Vertex>)> = Vec::new();
    for comp in g.graph().components() {
        if comp.len() > CANON_CAP {
            return Err(Error::SizeCap {
                what: "canonical labelling component",
                size: comp.len(),
                cap: CANON_CAP,
            });
        }
        let sub = g.induced_subgraph(&comp);
        let d = ColoredDense::new(&sub);
        let (code, order) = canonical_connected(&d, &mut budget)?;
        let mut bytes = Vec::with_capacity(4 * code.len() + 4);
        bytes.extend_from_slice(&(comp.len() as u32).to_le_bytes());
        for x in code {
            bytes.extend_from_slice(&x.to_le_bytes());
        }
        parts.push((bytes, order.into_iter().map(|i| d.ids[i]).collect()));
    }
    parts.sort();
    let mut label = Vec::new();
    let mut order = Vec::new();
    label.extend_from_slice(&(parts.len() as u32).to_le_bytes());
    for (bytes, o) in parts {
        label.extend_from_slice(&bytes);
        order.extend(o);
    }
    Ok(Canonical {
        label: CanonicalLabel(label),
        order,
    })
}

/// True when the two coloured graphs are isomorphic.
pub fn isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> Result<bool> {
    if a.graph().order() != b.graph().order() || a.graph().size() != b.graph().size() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// An isomorphism `a -> b`, if one exists.
pub fn isomorphism(a: &ColoredGraph, b: &ColoredGraph) -> Result<Option<BTreeMap<Vertex, Vertex>>> {
    let ca = canonical_form_budgeted(a, DEFAULT_BUDGET)?;
    let cb = canonical_form_budgeted(b, DEFAULT_BUDGET)?;
    if ca.label != cb.label {
        return Ok(None);
    }
    Ok(Some(ca.order.into_iter().zip(cb.order).collect()))
}

fn refine(d: &ColoredDense, colors: &mut [u32]) {
    let n = d.len();
    let mut classes = distinct(colors);
    loop {
        let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(u32, u32)> = d.adj[v].iter().map(|&(w, c)| (c, colors[w])).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let mut sorted: Vec<&(u32, Vec<(u32, u32)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        for v in 0..n {
            colors[v] = sorted.binary_search(&&sigs[v]).unwrap() as u32;
        }
        let now = sorted.len();
        if now == classes {
            break;
        }
        classes = now;
    }
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

fn canonical_connected(d: &ColoredDense, budget: &mut Budget) -> Result<(Vec<u32>, Vec<usize>)> {
    let mut colors: Vec<u32> = {
        let mut vc: Vec<u32> = d.color.clone();
        vc.sort_unstable();
        vc.dedup();
        d.color.iter().map(|c| vc.binary_search(c).unwrap() as u32).collect()
    };
    refine(d, &mut colors);
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    individualize(d, colors, &mut best, budget)?;
    Ok(best.unwrap())
}

fn individualize(
    d: &ColoredDense,
    colors: Vec<u32>,
    best: &mut Option<(Vec<u32>, Vec<usize>)>,
    budget: &mut Budget,
) -> Result<()> {
    budget
        .tick()
        .map_err(|_| Error::BudgetExhausted { budget: budget.limit() })?;
    let n = d.len();
    let mut count = vec![0usize; n];
    for &c in &colors {
        count[c as usize] += 1;
    }
    let target = (0..n as u32).find(|&c| count[c as usize] > 1);
    let Some(target) = target else {
        let mut order = vec![0usize; n];
        for v in 0..n {
            order[colors[v] as usize] = v;
        }
        let code = encode(d, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return Ok(());
    };
    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let mut reps: Vec<usize> = Vec::new();
    for &v in &cell {
        if !reps.iter().any(|&r| twins(d, r, v)) {
            reps.push(v);
        }
    }
    for v in reps {
        let mut next: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(w, &c)| {
                if c > target || (c == target && w != v) {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        refine(d, &mut next);
        individualize(d, next, best, budget)?;
    }
    Ok(())
}

fn twins(d: &ColoredDense, a: usize, b: usize) -> bool {
    let na: Vec<(usize, u32)> = d.adj[a].iter().copied().filter(|&(w, _)| w != b).collect();
    let nb: Vec<(usize, u32)> = d.adj[b].iter().copied().filter(|&(w, _)| w != a).collect();
    na == nb
}

fn encode(d: &ColoredDense, order: &[usize]) -> Vec<u32> {
    let n = order.len();
    let mut code = Vec::with_capacity(n + n * (n - 1) / 2);
    code.extend(order.iter().map(|&v| d.color[v]));
    for i in 0..n {
        for j in i + 1..n {
            code.push(d.edge(order[i], order[j]).map_or(0, |c| c + 1));
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, path};

    fn mono(g: &Graph) -> ColoredGraph {
        ColoredGraph::monochrome(g)
    }

    #[test]
    fn induced_examples() {
        assert!(find_induced_embedding(&mono(&path(1)), &mono(&complete(3)), 1000).is_found());
        assert!(find_induced_embedding(&mono(&cycle(4)), &mono(&complete(4)), 1000).is_absent());
        assert!(find_subgraph(&cycle(4), &complete(4), 1000).is_found());
    }

    #[test]
    fn found_maps_verify() {
        let host = mono(&crate::families::wheel(6));
        let pat = mono(&path(3));
        let m = find_induced_embedding(&pat, &host, 10_000).found().unwrap();
        assert!(verify_embedding(&pat, &host, &m, true));
    }

    #[test]
    fn colours_are_respected() {
        let mut host = ColoredGraph::empty(2, 1).unwrap();
        host.add_edge(0, 1, 1).unwrap();
        let mut pat = ColoredGraph::empty(2, 1).unwrap();
        pat.add_edge(5, 6, 0).unwrap();
        assert!(find_induced_embedding(&pat, &host, 100).is_absent());
    }

    #[test]
    fn fixed_pairs() {
        let host = mono(&path(4));
        let pat = mono(&path(1));
        let opts = EmbedOptions {
            fixed: vec![(0, 4)],
            ..EmbedOptions::default()
        };
        let m = find_embedding(&pat, &host, &opts).found().unwrap();
        assert_eq!(m[&0], 4);
        assert_eq!(m[&1], 3);
    }

    #[test]
    fn canonical_examples() {
        let c5 = cycle(5);
        let rot: BTreeMap<Vertex, Vertex> = (0..5).map(|v| (v, (v * 2 + 1) % 5 + 10)).collect();
        assert_eq!(
            canonical_form(&mono(&c5)).unwrap(),
            canonical_form(&mono(&c5.relabel(&rot))).unwrap()
        );
        assert_eq!(
            canonical_form(&mono(&path(2))).unwrap(),
            canonical_form(&mono(&complete_bipartite(1, 2))).unwrap()
        );
        assert_ne!(
            canonical_form(&mono(&path(3))).unwrap(),
            canonical_form(&mono(&complete_bipartite(1, 3))).unwrap()
        );
    }

    #[test]
    fn isomorphism_map_is_valid() {
        let a = mono(&cycle(6));
        let map: BTreeMap<Vertex, Vertex> = (0..6).map(|v| (v, 5 - v)).collect();
        let b = a.relabel(&map);
        let iso = isomorphism(&a, &b).unwrap().unwrap();
        assert!(verify_embedding(&a, &b, &iso, true));
    }
}
