//! Generates named families and moves them between graph6, edge lists, DOT
//! and JSON.

use univgraph::families::{generate, FamilySpec};
use univgraph::io;
use univgraph::{ColoredGraph, Result};

fn main() -> Result<()> {
    let w5 = generate(&FamilySpec::Wheel { k: 5 })?;
    let g6 = io::to_graph6(&w5);
    println!("W5 as graph6: {g6}");
    assert_eq!(io::from_graph6(&g6)?, w5);

    let edges = io::to_edge_list(&w5);
    assert_eq!(io::from_edge_list(&edges)?, w5);

    let o4 = generate(&FamilySpec::parse_tokens(&["O".into(), "4".into()])?)?;
    let coloured = ColoredGraph::monochrome(&o4);
    println!("{}", io::to_dot(&coloured));
    let json = io::to_json(&coloured);
    assert_eq!(io::from_json(&json)?, coloured);
    println!(
        "O4: {} vertices, {} edges, {} bytes of JSON",
        o4.order(),
        o4.size(),
        json.len()
    );
    Ok(())
}
