//! Slow, independent reference implementations for small graphs.
//!
//! Nothing here shares code with the search engines it checks; every routine
//! is exhaustive and only suited to graphs of a dozen vertices or so.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::graph::{ColoredGraph, Graph, Vertex};
use crate::iso::canonical_form;
use crate::minor::MinorModel;

/// Largest host accepted by [`is_minor`].
pub const ORACLE_CAP: usize = 12;

/// Adjacency rows over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Small(Vec<u16>);

impl Small {
    fn of(g: &Graph) -> Small {
        let ids: Vec<Vertex> = g.vertices().collect();
        let pos = |v: Vertex| ids.iter().position(|&x| x == v).unwrap();
        let mut rows = vec![0u16; ids.len()];
        for (u, v) in g.edges() {
            rows[pos(u)] |= 1 << pos(v);
            rows[pos(v)] |= 1 << pos(u);
        }
        Small(rows)
    }

    fn n(&self) -> usize {
        self.0.len()
    }

    fn edges(&self) -> usize {
        self.0.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    fn delete(&self, v: usize) -> Small {
        let low = (1u16 << v) - 1;
        let squeeze = |r: u16| (r & low) | ((r >> 1) & !low);
        Small(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != v)
                .map(|(_, &r)| squeeze(r))
                .collect(),
        )
    }

    /// Merges `b` into `a` and removes `b`.
    fn contract(&self, a: usize, b: usize) -> Small {
        let mut rows = self.0.clone();
        let merged = (rows[a] | rows[b]) & !(1 << a) & !(1 << b);
        rows[a] = merged;
        for (i, r) in rows.iter_mut().enumerate() {
            if merged >> i & 1 == 1 {
                *r |= 1 << a;
            }
        }
        Small(rows).delete(b)
    }

    /// Whether `p` (same order) is a spanning subgraph under some permutation.
    fn contains_spanning(&self, p: &Small) -> bool {
        let n = self.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        fn go(i: usize, p: &Small, h: &Small, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if i == p.n() {
                return true;
            }
            for x in 0..h.n() {
                if used[x] {
                    continue;
                }
                let ok = (0..i).all(|j| p.0[i] >> j & 1 == 0 || h.0[x] >> perm[j] & 1 == 1);
                if ok {
                    used[x] = true;
                    perm[i] = x;
                    if go(i + 1, p, h, perm, used) {
                        return true;
                    }
                    used[x] = false;
                }
            }
            false
        }
        go(0, p, self, &mut perm, &mut used)
    }
}

/// Whether `pattern` is a minor of `host`, by exhaustive vertex deletion and
/// edge contraction down to the pattern's order followed by a spanning
/// subgraph test. Edge deletions are covered by the final subgraph test.
pub fn is_minor(pattern: &Graph, host: &Graph) -> bool {
    assert!(host.order() <= ORACLE_CAP, "oracle host too large");
    let p = Small::of(pattern);
    let mut seen = HashSet::new();
    reduce(&p, Small::of(host), &mut seen)
}

fn reduce(p: &Small, h: Small, seen: &mut HashSet<Small>) -> bool {
    if h.n() < p.n() || h.edges() < p.edges() || !seen.insert(h.clone()) {
        return false;
    }
    if h.n() == p.n() {
        return h.contains_spanning(p);
    }
    for v in 0..h.n() {
        if reduce(p, h.delete(v), seen) {
            return true;
        }
    }
    for a in 0..h.n() {
        for b in a + 1..h.n() {
            if h.0[a] >> b & 1 == 1 && reduce(p, h.contract(a, b), seen) {
                return true;
            }
        }
    }
    false
}

/// Independent model check: disjoint non-empty connected branch sets inside
/// the host, and a host edge between the sets of every pattern edge.
pub fn model_is_valid(m: &MinorModel) -> bool {
    let mut all = BTreeSet::new();
    for v in m.pattern.vertices() {
        let Some(set) = m.branch_sets.get(&v) else {
            return false;
        };
        if set.is_empty() || !set.iter().all(|&x| m.host.contains(x)) {
            return false;
        }
        if set.iter().any(|x| !all.insert(*x)) {
            return false;
        }
        let start = *set.iter().next().unwrap();
        let mut reached = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in m.host.neighbors(x) {
                if set.contains(&y) && reached.insert(y) {
                    stack.push(y);
                }
            }
        }
        if reached.len() != set.len() {
            return false;
        }
    }
    if m.branch_sets.len() != m.pattern.order() {
        return false;
    }
    m.pattern.edges().all(|(u, v)| {
        let (a, b) = (&m.branch_sets[&u], &m.branch_sets[&v]);
        a.iter().any(|&x| b.iter().any(|&y| m.host.has_edge(x, y)))
    })
}

/// Length of a longest path, by extending every simple path.
pub fn longest_path_length(g: &Graph) -> usize {
    fn extend(g: &Graph, v: Vertex, on: &mut BTreeSet<Vertex>) -> usize {
        let mut best = 0;
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        for w in nbrs {
            if on.insert(w) {
                best = best.max(1 + extend(g, w, on));
                on.remove(&w);
            }
        }
        best
    }
    g.vertices()
        .map(|v| extend(g, v, &mut BTreeSet::from([v])))
        .max()
        .unwrap_or(0)
}

/// Length of a longest cycle, 0 for forests.
pub fn circumference(g: &Graph) -> usize {
    fn extend(g: &Graph, start: Vertex, v: Vertex, on: &mut BTreeSet<Vertex>) -> usize {
        let mut best = 0;
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        for w in nbrs {
            if w == start && on.len() >= 3 {
                best = best.max(on.len());
            } else if w > start && on.insert(w) {
                best = best.max(extend(g, start, w, on));
                on.remove(&w);
            }
        }
        best
    }
    g.vertices()
        .map(|v| extend(g, v, v, &mut BTreeSet::from([v])))
        .max()
        .unwrap_or(0)
}

/// Vertex connectivity by trying every vertex subset in increasing size.
/// Complete graphs on `n` vertices get `n - 1`.
pub fn connectivity(g: &Graph) -> usize {
    let vs: Vec<Vertex> = g.vertices().collect();
    let n = vs.len();
    if n == 0 {
        return 0;
    }
    for k in 0..n.saturating_sub(1) {
        let mut found = false;
        for_each_subset(n, k, &mut |idx| {
            if found {
                return;
            }
            let cut: BTreeSet<Vertex> = idx.iter().map(|&i| vs[i]).collect();
            if !g.without_vertices(&cut).is_connected() {
                found = true;
            }
        });
        if found {
            return k;
        }
    }
    n - 1
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

/// Whether some injective map sends the edges of `pattern` onto edges of
/// `host`, by plain backtracking over all assignments.
pub fn contains_subgraph(pattern: &Graph, host: &Graph) -> bool {
    let p: Vec<Vertex> = pattern.vertices().collect();
    let h: Vec<Vertex> = host.vertices().collect();
    fn go(i: usize, p: &[Vertex], h: &[Vertex], pg: &Graph, hg: &Graph, map: &mut BTreeMap<Vertex, Vertex>) -> bool {
        if i == p.len() {
            return true;
        }
        for &x in h {
            if map.values().any(|&y| y == x) {
                continue;
            }
            let ok = p[..i].iter().all(|&q| !pg.has_edge(p[i], q) || hg.has_edge(x, map[&q]));
            if ok {
                map.insert(p[i], x);
                if go(i + 1, p, h, pg, hg, map) {
                    return true;
                }
                map.remove(&p[i]);
            }
        }
        false
    }
    go(0, &p, &h, pattern, host, &mut BTreeMap::new())
}

/// All graphs on `n` vertices up to isomorphism, labelled `0..n`, built by
/// adding a vertex with every neighbourhood to each graph on `n - 1`
/// vertices and keeping one graph per canonical form.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::new()];
    for k in 0..n {
        let mut next: BTreeMap<_, Graph> = BTreeMap::new();
        for g in &level {
            for mask in 0u32..(1 << k) {
                let mut h = g.clone();
                h.add_vertex(k as Vertex);
                for i in 0..k {
                    if mask >> i & 1 == 1 {
                        h.add_edge(i as Vertex, k as Vertex);
                    }
                }
                let label = canonical_form(&ColoredGraph::monochrome(&h)).expect("small graph");
                next.entry(label).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, path, two_cycles, wheel};

    #[test]
    fn minor_examples() {
        assert!(is_minor(&complete(4), &wheel(4)));
        assert!(!is_minor(&complete(4), &cycle(6)));
        assert!(is_minor(&cycle(3), &cycle(5)));
        assert!(!is_minor(&cycle(3), &path(5)));
        assert!(is_minor(&wheel(4), &complete_bipartite(3, 3)));
        assert!(!is_minor(&wheel(5), &complete_bipartite(3, 3)));
        assert!(is_minor(&two_cycles(3, 3), &wheel(4)));
    }

    #[test]
    fn counts_of_small_graphs() {
        let counts: Vec<usize> = (1..=6).map(|n| graphs_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn measurements() {
        assert_eq!(longest_path_length(&path(4)), 4);
        assert_eq!(longest_path_length(&complete(5)), 4);
        assert_eq!(circumference(&wheel(5)), 6);
        assert_eq!(circumference(&path(3)), 0);
        assert_eq!(connectivity(&complete(5)), 4);
        assert_eq!(connectivity(&cycle(6)), 2);
        assert_eq!(connectivity(&wheel(5)), 3);
        assert_eq!(connectivity(&path(3)), 1);
        assert!(contains_subgraph(&cycle(4), &complete(4)));
        assert!(!contains_subgraph(&cycle(3), &complete_bipartite(3, 3)));
    }
}
