//! Block and Tutte decompositions of a small 2-connected graph, with the
//! independent verifier.

use univgraph::decomposition::{blocks, torso, tutte_decomposition, verify_tutte};
use univgraph::families::{cycle, wheel};
use univgraph::{Graph, Result};

fn main() -> Result<()> {
    // A W4 and a 5-cycle glued along the edge 0-1, plus a pendant triangle.
    let mut g = wheel(4);
    let c = cycle(5);
    let shift = |v: u32| if v < 2 { v } else { v + 3 };
    for (u, v) in c.edges() {
        g.add_edge(shift(u), shift(v));
    }
    g = g.union(&Graph::from_edges(10, &[(7, 8), (8, 9), (9, 7)]));

    let b = blocks(&g);
    println!("{} blocks, cutvertices {:?}", b.blocks.len(), b.cutvertices);

    let block = g.induced_subgraph(&b.blocks.iter().max_by_key(|s| s.len()).cloned().unwrap_or_default());
    let t = tutte_decomposition(&block);
    let report = verify_tutte(&block, &t);
    assert!(report.is_valid());
    for node in t.td.tree.vertices() {
        let h = torso(&block, &t.td, node)?;
        println!("node {node}: {:?} torso on {} vertices", t.torso_kind[&node], h.order());
    }
    Ok(())
}
