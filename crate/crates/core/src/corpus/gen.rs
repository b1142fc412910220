//! Seeded generators for the property corpora.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::connectivity::is_k_connected;
use crate::decomposition::TreeDecomposition;
use crate::families::{cycle, wheel};
use crate::graph::{ColoredGraph, Graph, Vertex};

pub type Rng8 = ChaCha8Rng;

/// Uniform random recursive tree on `n` vertices `0..n`.
pub fn random_tree(rng: &mut Rng8, n: usize) -> Graph {
    let mut g = Graph::with_vertices(0..n as Vertex);
    for v in 1..n as Vertex {
        g.add_edge(rng.gen_range(0..v), v);
    }
    g
}

/// A connected series–parallel graph on at most `max_order` vertices:
/// series and parallel compositions grown from one edge, with pendant
/// vertices mixed in.
pub fn random_series_parallel(rng: &mut Rng8, max_order: usize) -> Graph {
    let target = rng.gen_range(2..=max_order.max(2));
    let mut g = Graph::from_edges(2, &[(0, 1)]);
    while g.order() < target {
        let es: Vec<(Vertex, Vertex)> = g.edges().collect();
        let (u, v) = *es.choose(rng).unwrap();
        let w = g.next_vertex_id();
        match rng.gen_range(0..3) {
            0 => {
                g.remove_edge(u, v);
                g.add_edge(u, w);
                g.add_edge(w, v);
            }
            1 => {
                g.add_edge(u, w);
                g.add_edge(w, v);
            }
            _ => {
                g.add_edge(if rng.gen() { u } else { v }, w);
            }
        }
    }
    g
}

/// A connected graph whose blocks are edges or triangles.
pub fn random_cactus(rng: &mut Rng8, max_order: usize) -> Graph {
    let target = rng.gen_range(1..=max_order.max(1));
    let mut g = Graph::with_vertices([0]);
    while g.order() < target {
        let vs: Vec<Vertex> = g.vertices().collect();
        let at = *vs.choose(rng).unwrap();
        let w = g.next_vertex_id();
        g.add_edge(at, w);
        if g.order() < target && rng.gen_bool(0.5) {
            g.add_edge(at, w + 1);
            g.add_edge(w, w + 1);
        }
    }
    g
}

/// A 2-connected graph containing the path `0, 1, …, len`, made 2-connected
/// by chords of bounded span and a few extra ears. Returns the graph and the
/// path.
pub fn random_two_connected_with_path(rng: &mut Rng8, len: usize) -> (Graph, Vec<Vertex>) {
    let path: Vec<Vertex> = (0..=len as Vertex).collect();
    let mut g = Graph::from_edges(len + 1, &[]);
    for w in path.windows(2) {
        g.add_edge(w[0], w[1]);
    }
    let span = rng.gen_range(2..=len.clamp(2, 6));
    for _ in 0..rng.gen_range(0..3) {
        let a = rng.gen_range(0..=len as Vertex);
        let b = rng.gen_range(0..=len as Vertex);
        if a != b {
            let x = g.next_vertex_id();
            g.add_edge(a, x);
            g.add_edge(x, b);
        }
    }
    while !is_k_connected(&g, 2) {
        let a = rng.gen_range(0..len as Vertex);
        let b = (a as usize + rng.gen_range(2..=span)).min(len) as Vertex;
        if a + 1 < b {
            g.add_edge(a, b);
        }
        if rng.gen_bool(0.05) {
            g.add_edge(0, len as Vertex);
        }
    }
    (g, path)
}

/// A graph built from small parts glued along complete vertex sets of size
/// at most `adhesion`, one part carrying a copy of `pattern`. Returns the
/// graph and the decomposition into parts.
pub fn random_glued(rng: &mut Rng8, pattern: &Graph, adhesion: usize) -> (Graph, TreeDecomposition) {
    let parts = rng.gen_range(3..=6);
    let planted = rng.gen_range(0..parts);
    let mut g = Graph::new();
    let mut tree = Graph::new();
    let mut bags = std::collections::BTreeMap::new();
    for t in 0..parts as u32 {
        let glue: Vec<Vertex> = if t == 0 {
            Vec::new()
        } else {
            let parent = rng.gen_range(0..t);
            tree.add_edge(parent, t);
            let pb: Vec<Vertex> = bags
                .get(&parent)
                .map(|b: &BTreeSet<Vertex>| b.iter().copied().collect())
                .unwrap();
            let size = rng.gen_range(1..=adhesion.min(2));
            let mut pick: Vec<Vertex> = if size == 2 {
                let es: Vec<(Vertex, Vertex)> = g.induced_subgraph(&pb).edges().collect();
                match es.choose(rng) {
                    Some(&(a, b)) => vec![a, b],
                    None => vec![*pb.choose(rng).unwrap()],
                }
            } else {
                vec![*pb.choose(rng).unwrap()]
            };
            pick.sort_unstable();
            pick
        };
        tree.add_vertex(t);
        let extra = rng.gen_range(2..=4);
        let base = g.next_vertex_id();
        let mut bag: Vec<Vertex> = glue.clone();
        bag.extend(base..base + extra as Vertex);
        if t as usize == planted {
            let need = pattern.order().saturating_sub(bag.len());
            let start = g.next_vertex_id().max(base + extra as Vertex);
            bag.extend(start..start + need as Vertex);
            let mut order = bag.clone();
            order.shuffle(rng);
            for (a, b) in pattern.edges() {
                g.add_edge(order[a as usize], order[b as usize]);
            }
        }
        for &v in &bag {
            g.add_vertex(v);
        }
        for i in 1..bag.len() {
            if !bag[..i].iter().any(|&u| g.has_edge(u, bag[i])) {
                let u = bag[rng.gen_range(0..i)];
                g.add_edge(u, bag[i]);
            }
        }
        for _ in 0..rng.gen_range(0..=bag.len()) {
            let a = *bag.choose(rng).unwrap();
            let b = *bag.choose(rng).unwrap();
            if a != b {
                g.add_edge(a, b);
            }
        }
        bags.insert(t, bag.into_iter().collect::<BTreeSet<Vertex>>());
    }
    (g, TreeDecomposition { tree, bags })
}

/// The planted patterns for minor location.
pub fn locate_patterns() -> [(Graph, usize); 2] {
    [(cycle(4), 1), (wheel(3), 2)]
}

/// A graph of tree-width below `w` containing the path `0..=len`, with a
/// decomposition of width below `w` whose tree branches: pendant trees hang
/// off the path and, for `w >= 3`, triangles ear onto path edges and chords
/// span two path edges.
pub fn random_low_width(rng: &mut Rng8, w: usize, len: usize) -> (Graph, TreeDecomposition, Vec<Vertex>) {
    let path: Vec<Vertex> = (0..=len as Vertex).collect();
    let mut g = Graph::with_vertices(path.iter().copied());
    for p in path.windows(2) {
        g.add_edge(p[0], p[1]);
    }
    let mut bags: Vec<BTreeSet<Vertex>> = path.windows(2).map(|p| p.iter().copied().collect()).collect();
    let mut tree = Graph::with_vertices(0..bags.len() as u32);
    for i in 1..bags.len() as u32 {
        tree.add_edge(i - 1, i);
    }
    if w >= 3 {
        for (i, bag) in bags.iter_mut().enumerate().take(len.saturating_sub(1)) {
            if rng.gen_bool(0.3) {
                let (a, c) = (i as Vertex, i as Vertex + 2);
                g.add_edge(a, c);
                bag.insert(c);
            }
        }
    }
    for _ in 0..rng.gen_range(0..=len / 2) {
        let host = rng.gen_range(0..bags.len());
        let x = g.next_vertex_id();
        let anchor: Vec<Vertex> = if w >= 3 && rng.gen_bool(0.5) {
            let e: Vec<Vertex> = bags[host].iter().copied().collect();
            let pairs: Vec<(Vertex, Vertex)> = (0..e.len())
                .flat_map(|i| (i + 1..e.len()).map(move |j| (i, j)))
                .map(|(i, j)| (e[i], e[j]))
                .filter(|&(a, b)| g.has_edge(a, b))
                .collect();
            let &(a, b) = pairs.choose(rng).unwrap();
            vec![a, b]
        } else {
            vec![*bags[host].iter().collect::<Vec<_>>().choose(rng).copied().unwrap()]
        };
        for &a in &anchor {
            g.add_edge(a, x);
        }
        let mut bag: BTreeSet<Vertex> = anchor.iter().copied().collect();
        bag.insert(x);
        let id = bags.len() as u32;
        bags.push(bag);
        tree.add_edge(host as u32, id);
    }
    let td = TreeDecomposition {
        tree,
        bags: bags.into_iter().enumerate().map(|(i, b)| (i as u32, b)).collect(),
    };
    (g, td, path)
}

/// A random 2-connected graph on `n` vertices: a Hamiltonian cycle in random
/// order plus random chords.
pub fn random_two_connected(rng: &mut Rng8, n: usize) -> Graph {
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    order.shuffle(rng);
    let mut g = Graph::with_vertices(0..n as Vertex);
    for i in 0..n {
        g.add_edge(order[i], order[(i + 1) % n]);
    }
    for _ in 0..rng.gen_range(0..=n) {
        let a = rng.gen_range(0..n as Vertex);
        let b = rng.gen_range(0..n as Vertex);
        if a != b {
            g.add_edge(a, b);
        }
    }
    g
}

/// A random graph on at most `max_order` vertices with edge probability `p`.
pub fn random_graph(rng: &mut Rng8, max_order: usize, p: f64) -> Graph {
    let n = rng.gen_range(1..=max_order);
    let mut g = Graph::with_vertices(0..n as Vertex);
    for a in 0..n as Vertex {
        for b in a + 1..n as Vertex {
            if rng.gen_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Random vertex and edge colours over a `(c, d)` palette.
pub fn random_coloring(rng: &mut Rng8, g: &Graph, c: u32, d: u32) -> ColoredGraph {
    let mut h = ColoredGraph::empty(c, d).expect("palette is positive");
    for v in g.vertices() {
        h.add_vertex(v, rng.gen_range(0..d)).expect("in palette");
    }
    for (u, v) in g.edges() {
        h.add_edge(u, v, rng.gen_range(0..c)).expect("in palette");
    }
    h
}

/// A connected graph without a path of three edges: a star or a triangle,
/// randomly coloured with `c <= 2`, `d <= 2`.
pub fn random_short_path_guest(rng: &mut Rng8, max_order: usize) -> ColoredGraph {
    let c = rng.gen_range(1..=2);
    let d = rng.gen_range(1..=2);
    let g = if rng.gen_bool(0.2) {
        cycle(3)
    } else {
        let leaves = rng.gen_range(0..max_order.max(1));
        let mut s = Graph::with_vertices([0]);
        for v in 1..=leaves as Vertex {
            s.add_edge(0, v);
        }
        s
    };
    random_coloring(rng, &g, c, d)
}

/// A random coloured graph together with a path in it, found by a random
/// self-avoiding walk.
pub fn random_pinned(rng: &mut Rng8) -> (ColoredGraph, Vec<Vertex>) {
    let c = rng.gen_range(1..=3);
    let d = rng.gen_range(1..=3);
    let g = random_graph(rng, 9, 0.35);
    let h = random_coloring(rng, &g, c, d);
    let start = rng.gen_range(0..g.order() as Vertex);
    let mut path = vec![start];
    let want = rng.gen_range(1..=4);
    while path.len() < want {
        let last = *path.last().unwrap();
        let next: Vec<Vertex> = g.neighbors(last).filter(|v| !path.contains(v)).collect();
        match next.choose(rng) {
            Some(&v) => path.push(v),
            None => break,
        }
    }
    (h, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_k_connected;
    use crate::decomposition::verify_decomposition;
    use crate::series_parallel::is_k4_minor_free;
    use rand::SeedableRng;

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = Rng8::seed_from_u64(7);
        for _ in 0..30 {
            let t = random_tree(&mut rng, 20);
            assert!(t.is_connected() && t.size() + 1 == t.order());
            let sp = random_series_parallel(&mut rng, 20);
            assert!(sp.is_connected() && is_k4_minor_free(&sp) && sp.order() <= 20);
            let (g, p) = random_two_connected_with_path(&mut rng, 9);
            assert!(is_k_connected(&g, 2) && g.is_path(&p));
            for w in [2, 3] {
                let (g, td, p) = random_low_width(&mut rng, w, 12);
                let r = verify_decomposition(&g, &td);
                assert!(r.valid && r.width < w, "{r:?}");
                assert!(g.is_path(&p));
            }
            for (pat, adh) in locate_patterns() {
                let (g, td) = random_glued(&mut rng, &pat, adh);
                let r = verify_decomposition(&g, &td);
                assert!(r.valid && r.adhesion <= adh && r.adhesion_sets_complete_in_g, "{r:?}");
                assert!(g.is_connected());
            }
        }
    }
}
