//! Extracts long cycles, two cycles sharing an edge and wheels, each with a
//! certificate that is checked against the host.

use univgraph::families::{generate, FamilySpec};
use univgraph::paths::path_of_length_at_least;
use univgraph::unavoidable::{check_reduction_facts, find_cycle_pair_minor, find_long_cycle, find_wheel_minor};
use univgraph::{Result, DEFAULT_BUDGET};

fn main() -> Result<()> {
    let o8 = generate(&FamilySpec::CircularLadder { k: 8 })?;
    let path = path_of_length_at_least(&o8, 9, DEFAULT_BUDGET).found();
    let c = find_long_cycle(&o8, 3, path.as_deref(), DEFAULT_BUDGET)?;
    println!("cycle of length {} in O8", c.cycle.len());

    let cert = find_cycle_pair_minor(&o8, 3, 3, DEFAULT_BUDGET)?;
    assert!(cert.verify(&o8));
    println!("C(3,3) in O8 via {:?}", cert.route);

    let k44 = generate(&FamilySpec::CompleteBipartite { a: 4, b: 4 })?;
    if let Some(cert) = find_wheel_minor(&k44, 4, DEFAULT_BUDGET)?.found() {
        assert!(cert.verify(&k44));
        println!("W4 in K4,4 via {:?}", cert.route);
    }

    let facts = check_reduction_facts(3, DEFAULT_BUDGET)?;
    println!("reduction facts for k = 3 hold: {}", facts.all_true());
    Ok(())
}
