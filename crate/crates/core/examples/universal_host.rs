//! Grows universal graphs for C4-minor-free and K4-minor-free graphs, embeds
//! guests, and audits the materialised host.

use univgraph::families::FamilySpec;
use univgraph::paths::circumference;
use univgraph::series_parallel::is_k4_minor_free;
use univgraph::universal::{build_host, materialize, verify_host, Backend};
use univgraph::{Graph, Result};

fn main() -> Result<()> {
    let mut host = build_host(&FamilySpec::Cycle { n: 4 }, Backend::Adaptive)?;
    let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
    let cert = host.embed(&bowtie)?;
    println!("bowtie -> {:?}", cert.map);
    if let Err(e) = host.embed(&Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])) {
        println!("C4 rejected: {e}");
    }
    let window = materialize(&host, 200);
    assert!(cert.verify_against(&window));
    println!(
        "truncation on {} vertices, circumference {}",
        window.order(),
        circumference(&window)
    );

    let mut wheel_host = build_host(&FamilySpec::Wheel { k: 3 }, Backend::Adaptive)?;
    let theta = Graph::from_edges(6, &[(0, 1), (1, 5), (0, 2), (2, 5), (0, 3), (3, 4), (4, 5)]);
    wheel_host.embed(&theta)?;
    let window = materialize(&wheel_host, 500);
    println!(
        "W3 host truncation on {} vertices, K4-minor-free: {}",
        window.order(),
        is_k4_minor_free(&window)
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&verify_host(&wheel_host, 500)?).unwrap_or_default()
    );
    Ok(())
}
