//! Saturates a coloured guest against all colourings of a short path and
//! unfolds the result into a finite graph.

use univgraph::iso::find_induced_embedding;
use univgraph::universal::{contains_colored_subgraph, path_colorings, saturate, SaturationLimits};
use univgraph::{ColoredGraph, Graph, Result, DEFAULT_BUDGET};

fn main() -> Result<()> {
    let star = Graph::from_edges(7, &(1..7).map(|v| (0, v)).collect::<Vec<_>>());
    let guest = ColoredGraph::uniform(&star, 1, 1);
    let forbidden = path_colorings(3, 1, 1)?;
    let omega = saturate(&guest, &forbidden, 3, &SaturationLimits::default())?;
    println!("{} nodes, {} omega entries", omega.node_count(), omega.omega_entries());

    let expanded = omega.expand(3)?;
    for f in &forbidden {
        assert!(!contains_colored_subgraph(f, &expanded, DEFAULT_BUDGET)?);
    }
    let hosted = find_induced_embedding(&guest, &expanded, DEFAULT_BUDGET).is_found();
    println!(
        "expansion on {} vertices hosts the guest induced: {hosted}",
        expanded.graph().order()
    );
    Ok(())
}
