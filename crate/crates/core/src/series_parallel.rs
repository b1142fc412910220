//! Recognition of graphs without a `K_4` minor by series–parallel reduction.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Graph, Vertex};

/// True iff `g` has no `K_4` minor. Repeatedly deletes vertices of degree at
/// most one and suppresses vertices of degree two (parallel edges merge);
/// the graph is `K_4`-minor-free iff this empties it.
pub fn is_k4_minor_free(g: &Graph) -> bool {
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = g.vertices().map(|v| (v, g.neighbor_set(v).clone())).collect();
    let mut stack: Vec<Vertex> = adj.iter().filter(|(_, n)| n.len() <= 2).map(|(&v, _)| v).collect();
    while let Some(v) = stack.pop() {
        let Some(nbrs) = adj.get(&v) else { continue };
        if nbrs.len() > 2 {
            continue;
        }
        let nbrs: Vec<Vertex> = nbrs.iter().copied().collect();
        adj.remove(&v);
        for &w in &nbrs {
            adj.get_mut(&w).unwrap().remove(&v);
        }
        if let [a, b] = nbrs[..] {
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        for w in nbrs {
            if adj[&w].len() <= 2 {
                stack.push(w);
            }
        }
    }
    adj.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, two_cycles, wheel};

    #[test]
    fn classic_cases() {
        assert!(is_k4_minor_free(&cycle(7)));
        assert!(is_k4_minor_free(&two_cycles(4, 5)));
        assert!(is_k4_minor_free(&complete_bipartite(2, 5)));
        assert!(!is_k4_minor_free(&complete(4)));
        assert!(!is_k4_minor_free(&wheel(5)));
        assert!(!is_k4_minor_free(&complete_bipartite(3, 3)));
    }
}
