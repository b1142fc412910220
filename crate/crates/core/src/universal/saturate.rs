use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::transform::{transform_t, transform_t_inv, PinnedTransform};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Vertex};
use crate::iso::{canonical_form, find_embedding, CanonicalLabel, EmbedOptions};
use crate::paths::path_of_length_at_least;
use crate::search::{SearchOutcome, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Finite(u32),
    Omega,
}

/// Components of one isomorphism class. With `omega` set, countably many
/// further copies of the first member are present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaEntry {
    pub class: CanonicalLabel,
    pub members: Vec<OmegaGraph>,
    pub omega: bool,
}

impl OmegaEntry {
    pub fn multiplicity(&self) -> Multiplicity {
        if self.omega {
            Multiplicity::Omega
        } else {
            Multiplicity::Finite(self.members.len() as u32)
        }
    }
}

/// Finite presentation of a countable coloured graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OmegaGraph {
    Finite {
        graph: ColoredGraph,
    },
    /// `t̊` of the disjoint union of `parts`.
    Pinned {
        transform: PinnedTransform,
        parts: Vec<OmegaEntry>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationLimits {
    /// Largest vertex palette `d'` allowed at any level.
    pub max_colors: u32,
    /// Largest number of presentation nodes.
    pub max_nodes: usize,
    pub budget: u64,
}

impl Default for SaturationLimits {
    fn default() -> Self {
        SaturationLimits {
            max_colors: 1 << 24,
            max_nodes: 100_000,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl OmegaGraph {
    fn max_seed_vertex(&self) -> Option<Vertex> {
        match self {
            OmegaGraph::Finite { graph } => graph.graph().max_vertex(),
            OmegaGraph::Pinned { transform, parts } => parts
                .iter()
                .flat_map(|e| e.members.iter().filter_map(OmegaGraph::max_seed_vertex))
                .chain(transform.pin.graph().max_vertex())
                .max(),
        }
    }

    /// Number of nodes in the presentation.
    pub fn node_count(&self) -> usize {
        match self {
            OmegaGraph::Finite { .. } => 1,
            OmegaGraph::Pinned { parts, .. } => {
                1 + parts
                    .iter()
                    .flat_map(|e| &e.members)
                    .map(OmegaGraph::node_count)
                    .sum::<usize>()
            }
        }
    }

    /// Number of entries with multiplicity omega, at any depth.
    pub fn omega_entries(&self) -> usize {
        match self {
            OmegaGraph::Finite { .. } => 0,
            OmegaGraph::Pinned { parts, .. } => parts
                .iter()
                .map(|e| e.omega as usize + e.members.iter().map(OmegaGraph::omega_entries).sum::<usize>())
                .sum(),
        }
    }

    /// The finite graph obtained by replacing every omega with `unfold`
    /// extra copies. Vertices of the seed keep their identifiers, copies get
    /// fresh ones above the largest seed identifier.
    pub fn expand(&self, unfold: usize) -> Result<ColoredGraph> {
        let mut next = self.max_seed_vertex().map_or(0, |v| v + 1);
        self.build(unfold, &mut next)
    }

    fn build(&self, unfold: usize, next: &mut Vertex) -> Result<ColoredGraph> {
        match self {
            OmegaGraph::Finite { graph } => Ok(graph.clone()),
            OmegaGraph::Pinned { transform, parts } => {
                let mut union = ColoredGraph::empty(transform.c(), transform.d_prime()?)?;
                for e in parts {
                    for m in &e.members {
                        union = union.union(&m.build(unfold, next)?)?;
                    }
                    if e.omega {
                        for _ in 0..unfold {
                            let copy = e.members[0].build(unfold, next)?;
                            let map: BTreeMap<Vertex, Vertex> = copy
                                .graph()
                                .vertices()
                                .map(|v| {
                                    *next += 1;
                                    (v, *next - 1)
                                })
                                .collect();
                            union = union.union(&copy.relabel(&map))?;
                        }
                    }
                }
                transform_t_inv(&union, transform)
            }
        }
    }

    /// Structural key: equal keys give isomorphic presentations.
    pub fn key(&self) -> String {
        match self {
            OmegaGraph::Finite { graph } => format!("F{:?}", canonical_form(graph).map(|l| l.0).unwrap_or_default()),
            OmegaGraph::Pinned { transform, parts } => {
                let p = &transform.path;
                let colors: Vec<u32> = p.iter().map(|&v| transform.pin.vertex_color(v).unwrap()).collect();
                let mut chords = Vec::new();
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        if let Some(col) = transform.pin.edge_color(p[i], p[j]) {
                            chords.push((i, j, col));
                        }
                    }
                }
                let mut inner: Vec<String> = parts
                    .iter()
                    .map(|e| {
                        let mut ms: Vec<String> = e.members.iter().map(OmegaGraph::key).collect();
                        ms.sort();
                        format!("{}{}", ms.join(","), if e.omega { "*" } else { "" })
                    })
                    .collect();
                inner.sort();
                format!("P{}:{:?}{:?}[{}]", transform.d(), colors, chords, inner.join(";"))
            }
        }
    }
}

/// Every `c`-edge-, `d`-vertex-colouring of the path with `n` edges, one per
/// isomorphism class.
pub fn path_colorings(n: usize, c: u32, d: u32) -> Result<Vec<ColoredGraph>> {
    let vertices = n + 1;
    let total = (d as u64)
        .checked_pow(vertices as u32)
        .and_then(|x| x.checked_mul((c as u64).checked_pow(n as u32)?))
        .filter(|&t| t <= 1_000_000)
        .ok_or_else(|| Error::LimitExceeded(format!("too many colourings of P_{n} with c={c}, d={d}")))?;
    let mut seen: BTreeMap<CanonicalLabel, ColoredGraph> = BTreeMap::new();
    for mut code in 0..total {
        let mut g = ColoredGraph::empty(c, d)?;
        for v in 0..vertices {
            g.add_vertex(v as Vertex, (code % d as u64) as u32)?;
            code /= d as u64;
        }
        for v in 0..n {
            g.add_edge(v as Vertex, v as Vertex + 1, (code % c as u64) as u32)?;
            code /= c as u64;
        }
        seen.entry(canonical_form(&g)?).or_insert(g);
    }
    Ok(seen.into_values().collect())
}

/// Whether `host` contains a (not necessarily induced) copy of `pattern`.
pub fn contains_colored_subgraph(pattern: &ColoredGraph, host: &ColoredGraph, budget: u64) -> Result<bool> {
    let opts = EmbedOptions {
        induced: false,
        budget,
        ..EmbedOptions::default()
    };
    match find_embedding(pattern, host, &opts) {
        SearchOutcome::Found(_) => Ok(true),
        SearchOutcome::Absent => Ok(false),
        SearchOutcome::Inconclusive { .. } => Err(Error::BudgetExhausted { budget }),
    }
}

/// The presentation of `Γ_G` for a connected forbidden-free `g`, where
/// `forbidden` contains every colouring of `P_n`.
pub fn saturate(
    g: &ColoredGraph,
    forbidden: &[ColoredGraph],
    n: usize,
    limits: &SaturationLimits,
) -> Result<OmegaGraph> {
    if g.graph().is_empty() || !g.graph().is_connected() {
        return Err(Error::Precondition("guest must be connected and non-empty".into()));
    }
    if let Some(x) = forbidden.iter().find(|x| !x.graph().is_connected()) {
        return Err(Error::Precondition(format!(
            "forbidden graphs must be connected; one on {} vertices is not",
            x.graph().order()
        )));
    }
    let labels: BTreeSet<CanonicalLabel> = forbidden.iter().map(canonical_form).collect::<Result<_>>()?;
    for p in path_colorings(n, g.c(), g.d())? {
        if !labels.contains(&canonical_form(&p)?) {
            return Err(Error::Precondition(format!(
                "forbidden set misses a colouring of P_{n}"
            )));
        }
    }
    for x in forbidden {
        if contains_colored_subgraph(x, g, limits.budget)? {
            return Err(Error::Precondition(format!(
                "guest contains a forbidden subgraph on {} vertices",
                x.graph().order()
            )));
        }
    }
    let k = forbidden.iter().map(|x| x.graph().order()).max().unwrap_or(1);
    saturate_with(g, n, k, limits)
}

/// The construction itself, trusting the caller that `g` is connected, has no
/// path of length `n`, and that `k` bounds the forbidden graphs' orders.
pub fn saturate_with(g: &ColoredGraph, n: usize, k: usize, limits: &SaturationLimits) -> Result<OmegaGraph> {
    let mut nodes = 0usize;
    build(g, n, k, limits, &mut nodes)
}

fn build(g: &ColoredGraph, n: usize, k: usize, limits: &SaturationLimits, nodes: &mut usize) -> Result<OmegaGraph> {
    *nodes += 1;
    if *nodes > limits.max_nodes {
        return Err(Error::LimitExceeded(format!(
            "presentation exceeds {} nodes (at level n = {n})",
            limits.max_nodes
        )));
    }
    if n <= 1 {
        if g.graph().order() != 1 {
            return Err(Error::CounterexampleCandidate(format!(
                "connected graph on {} vertices reached the base level",
                g.graph().order()
            )));
        }
        return Ok(OmegaGraph::Finite { graph: g.clone() });
    }
    let path = match path_of_length_at_least(g.graph(), n - 1, limits.budget) {
        SearchOutcome::Found(p) => p,
        SearchOutcome::Absent => return build(g, n - 1, k, limits, nodes),
        SearchOutcome::Inconclusive { .. } => return Err(Error::BudgetExhausted { budget: limits.budget }),
    };
    if path.len() > n {
        return Err(Error::Precondition(format!(
            "graph has a path of length {} >= n = {n}",
            path.len() - 1
        )));
    }
    let pt = PinnedTransform::from_path(g, &path)?;
    let d_prime = pt.d_prime()?;
    if d_prime > limits.max_colors {
        return Err(Error::LimitExceeded(format!(
            "d' = {d_prime} exceeds {} at level n = {n} (|P| = {})",
            limits.max_colors,
            path.len()
        )));
    }
    let rest = transform_t(g, &pt)?;
    let mut classes: BTreeMap<CanonicalLabel, Vec<OmegaGraph>> = BTreeMap::new();
    for comp in rest.graph().components() {
        let c = rest.induced_subgraph(&comp);
        let star = build(&c, n - 1, k, limits, nodes)?;
        classes.entry(canonical_form(&c)?).or_default().push(star);
    }
    let parts = classes
        .into_iter()
        .map(|(class, members)| OmegaEntry {
            omega: members.len() >= k,
            class,
            members,
        })
        .collect();
    Ok(OmegaGraph::Pinned { transform: pt, parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::complete_bipartite;
    use crate::graph::Graph;
    use crate::iso::{find_induced_embedding, verify_embedding};

    fn p3_colorings() -> Vec<ColoredGraph> {
        path_colorings(3, 1, 1).unwrap()
    }

    #[test]
    fn colouring_counts() {
        assert_eq!(path_colorings(3, 1, 1).unwrap().len(), 1);
        assert_eq!(path_colorings(1, 2, 1).unwrap().len(), 2);
        assert_eq!(path_colorings(1, 1, 2).unwrap().len(), 3);
    }

    #[test]
    fn single_vertex_base_case() {
        let g = ColoredGraph::monochrome(&Graph::with_vertices([4]));
        let forbidden = path_colorings(1, 1, 1).unwrap();
        let s = saturate(&g, &forbidden, 1, &SaturationLimits::default()).unwrap();
        assert_eq!(s, OmegaGraph::Finite { graph: g });
    }

    #[test]
    fn star_gets_omega_leaves() {
        let g = ColoredGraph::monochrome(&complete_bipartite(1, 6));
        let s = saturate(&g, &p3_colorings(), 3, &SaturationLimits::default()).unwrap();
        assert_eq!(s.omega_entries(), 1);
        for unfold in 0..=3 {
            let e = s.expand(unfold).unwrap();
            assert_eq!(e.graph().order(), 7 + unfold);
            let id: BTreeMap<Vertex, Vertex> = g.graph().vertices().map(|v| (v, v)).collect();
            assert!(verify_embedding(&g, &e, &id, true));
            for x in p3_colorings() {
                assert!(!contains_colored_subgraph(&x, &e, DEFAULT_BUDGET).unwrap());
            }
        }
    }

    #[test]
    fn small_star_has_no_omega() {
        let g = ColoredGraph::monochrome(&complete_bipartite(1, 5));
        let s = saturate(&g, &p3_colorings(), 3, &SaturationLimits::default()).unwrap();
        assert_eq!(s.omega_entries(), 0);
        let e = s.expand(3).unwrap();
        assert!(find_induced_embedding(&g, &e, DEFAULT_BUDGET).is_found());
    }

    #[test]
    fn guest_with_forbidden_subgraph_rejected() {
        let g = ColoredGraph::monochrome(&crate::families::path(4));
        assert!(matches!(
            saturate(&g, &p3_colorings(), 3, &SaturationLimits::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let g = ColoredGraph::monochrome(&complete_bipartite(1, 6));
        let s = saturate(&g, &p3_colorings(), 3, &SaturationLimits::default()).unwrap();
        let back: OmegaGraph = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.key(), s.key());
    }
}
