use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::saturate::{contains_colored_subgraph, saturate, OmegaGraph, SaturationLimits};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, Vertex};
use crate::iso::{canonical_form, CanonicalLabel};
use crate::oracle::graphs_up_to_iso;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogLimits {
    /// Guests are enumerated up to this many vertices.
    pub max_order: usize,
    /// Refuse when more coloured candidate graphs than this would be examined.
    pub max_candidates: u64,
    pub saturation: SaturationLimits,
}

impl Default for CatalogLimits {
    fn default() -> Self {
        CatalogLimits {
            max_order: 5,
            max_candidates: 200_000,
            saturation: SaturationLimits::default(),
        }
    }
}

/// Pairwise non-isomorphic presentations covering every connected
/// forbidden-free guest up to `covered_order` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub members: Vec<OmegaGraph>,
    pub guests: usize,
    pub covered_order: usize,
}

fn colorings(g: &Graph, c: u32, d: u32) -> Result<Vec<ColoredGraph>> {
    let vs: Vec<Vertex> = g.vertices().collect();
    let es: Vec<(Vertex, Vertex)> = g.edges().collect();
    let total = (d as u64).pow(vs.len() as u32) * (c as u64).pow(es.len() as u32);
    let mut out: BTreeMap<CanonicalLabel, ColoredGraph> = BTreeMap::new();
    for mut code in 0..total {
        let mut h = ColoredGraph::empty(c, d)?;
        for &v in &vs {
            h.add_vertex(v, (code % d as u64) as u32)?;
            code /= d as u64;
        }
        for &(u, v) in &es {
            h.add_edge(u, v, (code % c as u64) as u32)?;
            code /= c as u64;
        }
        out.entry(canonical_form(&h)?).or_insert(h);
    }
    Ok(out.into_values().collect())
}

/// Saturates every connected forbidden-free `(c, d)`-graph up to
/// `limits.max_order` vertices and keeps one presentation per structure.
pub fn build_catalog(forbidden: &[ColoredGraph], c: u32, d: u32, n: usize, limits: &CatalogLimits) -> Result<Catalog> {
    let mut shapes = Vec::new();
    let mut candidates: u64 = 0;
    for order in 1..=limits.max_order {
        for g in graphs_up_to_iso(order) {
            if !g.is_connected() {
                continue;
            }
            candidates = (d as u64)
                .checked_pow(order as u32)
                .and_then(|x| x.checked_mul((c as u64).checked_pow(g.size() as u32)?))
                .and_then(|x| x.checked_add(candidates))
                .unwrap_or(u64::MAX);
            if candidates > limits.max_candidates {
                return Err(Error::LimitExceeded(format!(
                    "catalog enumeration passes {} coloured candidates at order {order}; only orders below {order} would be covered",
                    limits.max_candidates
                )));
            }
            shapes.push(g);
        }
    }
    let mut members: BTreeMap<String, OmegaGraph> = BTreeMap::new();
    let mut guests = 0;
    for g in shapes {
        'guest: for h in colorings(&g, c, d)? {
            for x in forbidden {
                if contains_colored_subgraph(x, &h, limits.saturation.budget)? {
                    continue 'guest;
                }
            }
            guests += 1;
            let s = saturate(&h, forbidden, n, &limits.saturation)?;
            members.entry(s.key()).or_insert(s);
        }
    }
    Ok(Catalog {
        members: members.into_values().collect(),
        guests,
        covered_order: limits.max_order,
    })
}

/// Memo of catalogs keyed by the forbidden set's canonical forms and the
/// parameters.
#[derive(Debug, Default)]
pub struct CatalogCache {
    entries: BTreeMap<(BTreeSet<CanonicalLabel>, u32, u32, usize, usize), Catalog>,
}

impl CatalogCache {
    pub fn get_or_build(
        &mut self,
        forbidden: &[ColoredGraph],
        c: u32,
        d: u32,
        n: usize,
        limits: &CatalogLimits,
    ) -> Result<&Catalog> {
        let labels = forbidden.iter().map(canonical_form).collect::<Result<BTreeSet<_>>>()?;
        let key = (labels, c, d, n, limits.max_order);
        if !self.entries.contains_key(&key) {
            let cat = build_catalog(forbidden, c, d, n, limits)?;
            self.entries.insert(key.clone(), cat);
        }
        Ok(&self.entries[&key])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_induced_embedding;
    use crate::search::DEFAULT_BUDGET;
    use crate::universal::saturate::path_colorings;

    #[test]
    fn base_level_is_single_vertices() {
        let forbidden = path_colorings(1, 1, 2).unwrap();
        let cat = build_catalog(&forbidden, 1, 2, 1, &CatalogLimits::default()).unwrap();
        assert_eq!(cat.members.len(), 2);
        assert!(cat.members.iter().all(|m| m.expand(0).unwrap().graph().order() == 1));
    }

    #[test]
    fn no_two_edge_paths() {
        let forbidden = path_colorings(2, 1, 1).unwrap();
        let cat = build_catalog(&forbidden, 1, 1, 2, &CatalogLimits::default()).unwrap();
        assert_eq!(cat.guests, 2);
        let orders: BTreeSet<usize> = cat
            .members
            .iter()
            .map(|m| m.expand(1).unwrap().graph().order())
            .collect();
        assert_eq!(orders, BTreeSet::from([1, 2]));
        let k2 = ColoredGraph::monochrome(&crate::families::path(1));
        assert!(cat
            .members
            .iter()
            .any(|m| find_induced_embedding(&k2, &m.expand(1).unwrap(), DEFAULT_BUDGET).is_found()));
    }

    #[test]
    fn members_are_forbidden_free() {
        let mut forbidden = path_colorings(3, 1, 1).unwrap();
        forbidden.push(ColoredGraph::monochrome(&crate::families::cycle(3)));
        let cat = build_catalog(&forbidden, 1, 1, 3, &CatalogLimits::default()).unwrap();
        for m in &cat.members {
            let e = m.expand(3).unwrap();
            for x in &forbidden {
                assert!(!contains_colored_subgraph(x, &e, DEFAULT_BUDGET).unwrap());
            }
        }
    }

    #[test]
    fn limits_refuse_loudly() {
        let forbidden = path_colorings(3, 2, 2).unwrap();
        let limits = CatalogLimits {
            max_order: 6,
            max_candidates: 1000,
            ..CatalogLimits::default()
        };
        assert!(matches!(
            build_catalog(&forbidden, 2, 2, 3, &limits),
            Err(Error::LimitExceeded(_))
        ));
    }
}
