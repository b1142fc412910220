use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::connectivity::biconnected_components;
use crate::graph::{Graph, Vertex};

/// Blocks in an order where every prefix (within a component) is connected
/// and each later block meets its prefix in exactly one cutvertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<BTreeSet<Vertex>>,
    pub cutvertices: BTreeSet<Vertex>,
    /// `attachments[j]` is the vertex block `j` shares with earlier blocks,
    /// `None` for the first block of each component.
    pub attachments: Vec<Option<Vertex>>,
}

pub fn blocks(g: &Graph) -> BlockDecomposition {
    let bs = biconnected_components(g);
    let mut pool: Vec<BTreeSet<Vertex>> = bs.blocks;
    pool.sort_by_key(|b| b.iter().next().copied());
    let mut done = vec![false; pool.len()];
    let mut blocks = Vec::with_capacity(pool.len());
    let mut attachments = Vec::with_capacity(pool.len());
    for start in 0..pool.len() {
        if done[start] {
            continue;
        }
        done[start] = true;
        let mut queue = VecDeque::from([(start, None)]);
        while let Some((i, att)) = queue.pop_front() {
            blocks.push(pool[i].clone());
            attachments.push(att);
            for &v in &pool[i] {
                if !bs.cutvertices.contains(&v) {
                    continue;
                }
                for (j, other) in pool.iter().enumerate() {
                    if !done[j] && other.contains(&v) {
                        done[j] = true;
                        queue.push_back((j, Some(v)));
                    }
                }
            }
        }
    }
    BlockDecomposition {
        blocks,
        cutvertices: bs.cutvertices,
        attachments,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{path, two_cycles};

    #[test]
    fn examples() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let b = blocks(&g);
        assert_eq!(b.blocks.len(), 2);
        assert_eq!(b.cutvertices.len(), 1);
        assert_eq!(blocks(&path(3)).blocks.len(), 3);
        assert_eq!(blocks(&two_cycles(3, 3)).blocks.len(), 1);
    }

    #[test]
    fn prefix_property() {
        let b = blocks(&path(5));
        let mut prefix: BTreeSet<Vertex> = b.blocks[0].clone();
        for (blk, att) in b.blocks.iter().zip(&b.attachments).skip(1) {
            let meet: BTreeSet<Vertex> = blk.intersection(&prefix).copied().collect();
            assert_eq!(meet, BTreeSet::from([att.unwrap()]));
            prefix.extend(blk);
        }
    }
}
