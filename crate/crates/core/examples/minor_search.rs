//! Searches for minors and topological minors and checks the certificates.

use univgraph::families::{complete, cycle, generate, wheel, FamilySpec};
use univgraph::minor::{find_minor_model, find_subdivision, verify_model};
use univgraph::{Result, SearchOutcome, DEFAULT_BUDGET};

fn main() -> Result<()> {
    let petersen_like = generate(&FamilySpec::MoebiusLadder { k: 5 })?;
    match find_minor_model(&complete(4), &petersen_like, DEFAULT_BUDGET)? {
        SearchOutcome::Found(m) => {
            assert!(verify_model(&m).is_valid());
            println!("K4 in M5, branch sets {:?}", m.branch_sets);
        }
        other => println!("K4 in M5: {other:?}"),
    }

    let o6 = generate(&FamilySpec::CircularLadder { k: 6 })?;
    if let Some(s) = find_subdivision(&wheel(3), &o6, DEFAULT_BUDGET)?.found() {
        assert!(s.verify(&o6));
        println!("W3 subdivision in O6 with branch vertices {:?}", s.branch_vertices);
    }

    // A wheel is planar, so K5 is absent; a long cycle is absent from a short one.
    println!(
        "K5 in W6: {:?}",
        find_minor_model(&complete(5), &wheel(6), DEFAULT_BUDGET)?.is_absent()
    );
    println!(
        "C7 in C6: {:?}",
        find_minor_model(&cycle(7), &cycle(6), DEFAULT_BUDGET)?.is_absent()
    );
    Ok(())
}
