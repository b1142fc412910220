//! A long path in a graph of small tree-width forces a long path in the
//! decomposition tree; a planted minor lives in a single part.

use rand::SeedableRng;
use univgraph::corpus::gen::{locate_patterns, random_glued, random_low_width, Rng8};
use univgraph::decomposition::{ell, lift_long_path, locate_minor_part};
use univgraph::minor::find_minor_model;
use univgraph::{Result, DEFAULT_BUDGET};

fn main() -> Result<()> {
    let mut rng = Rng8::seed_from_u64(7);
    let (w, k) = (3, 3);
    let len = ell(w, k)? as usize;
    let (g, td, path) = random_low_width(&mut rng, w as usize, len);
    let lifted = lift_long_path(&g, &td, w, k, Some(&path))?;
    println!("ell({w}, {k}) = {len}; tree path with {} nodes", lifted.tree_path.len());

    let (pattern, adhesion) = &locate_patterns()[1];
    let (g, td) = random_glued(&mut rng, pattern, *adhesion);
    if let Some(model) = find_minor_model(pattern, &g, DEFAULT_BUDGET)?.found() {
        let located = locate_minor_part(&g, &td, pattern, &model)?;
        println!("W3 lives in bag {} {:?}", located.node, td.bag(located.node));
    }
    Ok(())
}
