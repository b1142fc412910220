//! Vertex connectivity via unit-capacity max-flow (Menger), disjoint path
//! extraction, and biconnected components.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Dense, Graph, Vertex};

struct FlowNet {
    to: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, u: usize, v: usize, c: i32) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Edmonds–Karp, stopping once `limit` units are routed.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut pred = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            pred[s] = usize::MAX - 1;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &a in &self.adj[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && pred[v] == usize::MAX {
                        pred[v] = a;
                        queue.push_back(v);
                    }
                }
            }
            if pred[t] == usize::MAX {
                break;
            }
            let mut v = t;
            while v != s {
                let a = pred[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Arcs `u -> v` (original direction, even index) that carry flow.
    fn saturated_from(&self, u: usize) -> Vec<usize> {
        self.adj[u]
            .iter()
            .filter(|&&a| a % 2 == 0 && self.cap[a ^ 1] > 0)
            .map(|&a| self.to[a])
            .collect()
    }
}

#[inline]
fn vin(v: usize) -> usize {
    2 * v
}

#[inline]
fn vout(v: usize) -> usize {
    2 * v + 1
}

fn split_network(d: &Dense, extra: usize) -> FlowNet {
    let n = d.len();
    let mut net = FlowNet::new(2 * n + extra);
    for v in 0..n {
        net.arc(vin(v), vout(v), 1);
    }
    for (u, nbrs) in d.adj.iter().enumerate() {
        for &w in nbrs {
            net.arc(vout(u), vin(w), n as i32 + 1);
        }
    }
    net
}

/// Traces unit flow paths from `start` through the split network, returning
/// dense vertex sequences.
fn trace_paths(net: &FlowNet, starts: &[usize], stop: impl Fn(usize) -> bool, n: usize) -> Vec<Vec<usize>> {
    let mut used = vec![false; net.to.len()];
    let mut paths = Vec::new();
    for &start in starts {
        let mut path = Vec::new();
        let mut node = start;
        loop {
            if node < 2 * n {
                let v = node / 2;
                if node % 2 == 0 {
                    path.push(v);
                    if stop(v) {
                        break;
                    }
                }
            }
            let next = net.adj[node]
                .iter()
                .find(|&&a| a % 2 == 0 && net.cap[a ^ 1] > 0 && !used[a])
                .copied();
            match next {
                Some(a) => {
                    used[a] = true;
                    node = net.to[a];
                }
                None => break,
            }
        }
        paths.push(path);
    }
    paths
}

/// Maximum number of internally disjoint `s`–`t` paths for non-adjacent
/// `s`, `t`, together with a minimum separating vertex set.
pub fn local_vertex_connectivity(g: &Graph, s: Vertex, t: Vertex) -> (usize, BTreeSet<Vertex>) {
    let d = g.dense();
    let (si, ti) = (d.index[&s], d.index[&t]);
    let mut net = split_network(&d, 0);
    let flow = net.max_flow(vout(si), vin(ti), usize::MAX);
    let reach = net.residual_reachable(vout(si));
    let cut = (0..d.len())
        .filter(|&v| v != si && v != ti && reach[vin(v)] && !reach[vout(v)])
        .map(|v| d.ids[v])
        .collect();
    (flow, cut)
}

/// Internally disjoint `s`–`t` paths (at most `limit`) for non-adjacent `s`, `t`.
pub fn internally_disjoint_paths(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> Vec<Vec<Vertex>> {
    let d = g.dense();
    let (si, ti) = (d.index[&s], d.index[&t]);
    let mut net = split_network(&d, 0);
    net.max_flow(vout(si), vin(ti), limit);
    let starts: Vec<usize> = net.saturated_from(vout(si));
    trace_paths(&net, &starts, |v| v == ti, d.len())
        .into_iter()
        .map(|p| std::iter::once(s).chain(p.into_iter().map(|v| d.ids[v])).collect())
        .collect()
}

/// Vertex connectivity: the least number of vertices whose removal
/// disconnects the graph, or `n - 1` for complete graphs.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.order();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    let d = g.dense();
    let mut best = n - 1;
    for &deg in d.adj.iter().map(|a| a.len()).collect::<Vec<_>>().iter() {
        best = best.min(deg);
    }
    let mut i = 0;
    while i <= best && i < n {
        for j in 0..n {
            if j == i || d.adj[i].contains(&j) {
                continue;
            }
            let mut net = split_network(&d, 0);
            let flow = net.max_flow(vout(i), vin(j), best);
            best = best.min(flow);
        }
        i += 1;
    }
    best
}

pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    g.order() > k && vertex_connectivity(g) >= k
}

/// Up to `limit` pairwise vertex-disjoint paths from `a` to `b`. Each path
/// meets `a` only in its first vertex and `b` only in its last.
pub fn disjoint_set_paths(g: &Graph, a: &BTreeSet<Vertex>, b: &BTreeSet<Vertex>, limit: usize) -> Vec<Vec<Vertex>> {
    let d = g.dense();
    let n = d.len();
    let (src, snk) = (2 * n, 2 * n + 1);
    let mut net = split_network(&d, 2);
    for v in a {
        net.arc(src, vin(d.index[v]), 1);
    }
    for v in b {
        net.arc(vout(d.index[v]), snk, 1);
    }
    net.max_flow(src, snk, limit);
    let starts = net.saturated_from(src);
    let in_b: Vec<bool> = (0..n).map(|v| b.contains(&d.ids[v])).collect();
    trace_paths(&net, &starts, |v| in_b[v], n)
        .into_iter()
        .map(|p| {
            let p: Vec<Vertex> = p.into_iter().map(|v| d.ids[v]).collect();
            // trim to a proper A-B path
            let last_a = p.iter().rposition(|v| a.contains(v)).unwrap_or(0);
            let p = &p[last_a..];
            let first_b = p.iter().position(|v| b.contains(v)).unwrap_or(p.len() - 1);
            p[..=first_b].to_vec()
        })
        .collect()
}

/// Biconnected components and cutvertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    /// Vertex sets of the blocks: maximal 2-connected subgraphs, bridges
    /// (two vertices) and isolated vertices (one vertex).
    pub blocks: Vec<BTreeSet<Vertex>>,
    pub cutvertices: BTreeSet<Vertex>,
}

/// Hopcroft–Tarjan biconnected components, iterative.
pub fn biconnected_components(g: &Graph) -> BlockStructure {
    let d = g.dense();
    let n = d.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    let mut cut = BTreeSet::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if d.adj[root].is_empty() {
            disc[root] = time;
            time += 1;
            blocks.push(BTreeSet::from([d.ids[root]]));
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if *idx < d.adj[u].len() {
                let w = d.adj[u][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        if p != root {
                            cut.insert(d.ids[p]);
                        }
                        let mut block = BTreeSet::new();
                        while let Some((x, y)) = edge_stack.pop() {
                            block.insert(d.ids[x]);
                            block.insert(d.ids[y]);
                            if (x, y) == (p, u) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            cut.insert(d.ids[root]);
        }
    }
    BlockStructure {
        blocks,
        cutvertices: cut,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, wheel};

    #[test]
    fn connectivity_examples() {
        assert_eq!(vertex_connectivity(&cycle(5)), 2);
        assert_eq!(vertex_connectivity(&wheel(4)), 3);
        assert_eq!(vertex_connectivity(&Graph::with_vertices([0, 1])), 0);
        assert_eq!(vertex_connectivity(&complete(5)), 4);
        assert_eq!(vertex_connectivity(&complete_bipartite(3, 4)), 3);
    }

    #[test]
    fn local_cut_separates() {
        let g = cycle(6);
        let (k, cut) = local_vertex_connectivity(&g, 0, 3);
        assert_eq!(k, 2);
        assert_eq!(cut.len(), 2);
        let rest = g.without_vertices(&cut);
        assert!(!rest.reachable_from(0, &BTreeSet::new()).contains(&3));
        let paths = internally_disjoint_paths(&g, 0, 3, 5);
        assert_eq!(paths.len(), 2);
        for p in &paths {
            assert!(g.is_path(p));
            assert_eq!((p[0], *p.last().unwrap()), (0, 3));
        }
    }

    #[test]
    fn set_paths_on_k4() {
        let g = complete(4);
        let a = BTreeSet::from([0, 1]);
        let b = BTreeSet::from([2, 3]);
        let paths = disjoint_set_paths(&g, &a, &b, 2);
        assert_eq!(paths.len(), 2);
        for p in &paths {
            assert_eq!(p.len(), 2);
        }
    }

    #[test]
    fn blocks_of_triangle_with_pendant() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let bs = biconnected_components(&g);
        assert_eq!(bs.blocks.len(), 2);
        assert_eq!(bs.cutvertices, BTreeSet::from([2]));
        let bs = biconnected_components(&crate::families::path(3));
        assert_eq!(bs.blocks.len(), 3);
        assert_eq!(bs.cutvertices, BTreeSet::from([1, 2]));
    }
}
