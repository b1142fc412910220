use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::models::enumerate_forbidden_models;
use super::saturate::{path_colorings, saturate, SaturationLimits};
use crate::decomposition::{blocks, tutte_decomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::families::{generate, FamilySpec};
use crate::graph::{edge, ColoredGraph, Edge, Graph, Vertex};
use crate::iso::{canonical_form, find_embedding, verify_embedding, CanonicalLabel, EmbedOptions};
use crate::minor::{find_minor_model, model_from_sets, MinorModel, MINOR_HOST_CAP};
use crate::paths::{circumference_at_least, longest_path, path_of_length_at_least};
use crate::search::SearchOutcome;
use crate::series_parallel::is_k4_minor_free;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HostMode {
    /// Pieces glued at single vertices; excludes `C_n` or `C_{n,m}`.
    CycleHost,
    /// Pieces glued at a vertex or an edge of matching colour; excludes `W_k`.
    WheelHost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Pieces are expansions of saturated presentations.
    Catalog,
    /// Every block or torso becomes its own fresh piece.
    Adaptive,
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "catalog" => Ok(Backend::Catalog),
            "adaptive" => Ok(Backend::Adaptive),
            _ => Err(Error::Parse(format!("unknown backend `{s}` (catalog or adaptive)"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Catalog => "catalog",
            Backend::Adaptive => "adaptive",
        })
    }
}

/// Where a piece meets the material present before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Glue {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
}

impl Glue {
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        match *self {
            Glue::Vertex(v) => BTreeSet::from([v]),
            Glue::Edge(u, v) => BTreeSet::from([u, v]),
        }
    }
}

/// A copy of (a finite part of) `Δ_n`, in host vertex identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub id: usize,
    /// The `n` of the `Δ_n` this piece is drawn from.
    pub origin_n: usize,
    pub glue: Glue,
    pub graph: ColoredGraph,
}

/// A lazily grown universal graph: a single root vertex plus pieces, each
/// glued to the earlier material. Pieces are only ever appended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostDescription {
    pub forbidden: FamilySpec,
    pub mode: HostMode,
    pub backend: Backend,
    pub root: Vertex,
    pub pieces: Vec<Piece>,
    /// Colour-1 edges contributed by decompositions of embedded guests.
    #[serde(default)]
    pub virtual_edges: BTreeSet<Edge>,
    pub next_vertex: Vertex,
    #[serde(default)]
    pub limits: SaturationLimits,
}

/// An induced embedding of `guest` into a truncation of a host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub guest: Graph,
    pub host_truncation: Graph,
    pub map: BTreeMap<Vertex, Vertex>,
    pub induced: bool,
    /// Host edges standing for virtual edges of the guest's decomposition.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub virtual_edges: BTreeSet<Edge>,
}

impl EmbeddingCertificate {
    pub fn verify(&self) -> bool {
        self.verify_against(&self.host_truncation)
    }

    /// Replays the map against another truncation, e.g. a later, larger one.
    pub fn verify_against(&self, truncation: &Graph) -> bool {
        self.induced
            && verify_embedding(
                &ColoredGraph::monochrome(&self.guest),
                &ColoredGraph::monochrome(truncation),
                &self.map,
                true,
            )
    }
}

/// Outcome of an exclusion test on one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Verdict {
    Free,
    Contains { detail: String, model: Option<MinorModel> },
    Inconclusive(String),
}

fn cycle_model(n: usize, host: &Graph, cyc: &[Vertex]) -> Option<MinorModel> {
    let mut sets: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for (i, &v) in cyc.iter().enumerate() {
        sets.entry(i.min(n - 1) as Vertex).or_default().insert(v);
    }
    model_from_sets(&crate::families::cycle(n), host, sets)
}

/// Tests `g` for an `x` minor block by block; every supported `x` is
/// 2-connected, so a model lives in a single block.
fn exclusion(spec: &FamilySpec, x: &Graph, g: &Graph, budget: u64) -> Result<Verdict> {
    for blk in blocks(g).blocks {
        if blk.len() < 3 {
            continue;
        }
        let b = g.induced_subgraph(&blk);
        match *spec {
            FamilySpec::Cycle { n } => {
                if let Some(c) = circumference_at_least(&b, n) {
                    return Ok(Verdict::Contains {
                        detail: format!("cycle of length {} through {:?}", c.len(), c),
                        model: cycle_model(n, g, &c),
                    });
                }
            }
            FamilySpec::Wheel { k: 3 } if is_k4_minor_free(&b) => {}
            _ if b.order() > MINOR_HOST_CAP => {
                return Ok(Verdict::Inconclusive(format!(
                    "block on {} vertices is beyond the minor search cap",
                    b.order()
                )))
            }
            _ => match find_minor_model(x, &b, budget)? {
                SearchOutcome::Found(m) => {
                    let model = model_from_sets(x, g, m.branch_sets.clone());
                    return Ok(Verdict::Contains {
                        detail: format!("{} minor in a block on {} vertices", spec, b.order()),
                        model,
                    });
                }
                SearchOutcome::Absent => {}
                SearchOutcome::Inconclusive { explored } => {
                    return Ok(Verdict::Inconclusive(format!(
                        "minor search stopped after {explored} nodes in a block on {} vertices",
                        b.order()
                    )))
                }
            },
        }
    }
    Ok(Verdict::Free)
}

/// Number of vertices of a longest path, which is the least `n` with `g`
/// free of `P_n`.
fn path_order(g: &Graph) -> Result<usize> {
    Ok(longest_path(g)?.len().max(1))
}

/// A block or torso of the guest, with the guest vertices it shares with the
/// units before it.
struct Unit {
    graph: ColoredGraph,
    shared: Vec<Vertex>,
    virtual_edges: BTreeSet<Edge>,
}

pub fn build_host(forbidden: &FamilySpec, backend: Backend) -> Result<HostDescription> {
    forbidden.validate()?;
    let mode = match forbidden {
        FamilySpec::Cycle { .. } | FamilySpec::TwoCycles { .. } => HostMode::CycleHost,
        FamilySpec::Wheel { .. } => HostMode::WheelHost,
        other => {
            return Err(Error::Unsupported(format!(
                "universal hosts exist here for C_n, C_n,m and W_k only, not {other}"
            )))
        }
    };
    Ok(HostDescription {
        forbidden: forbidden.clone(),
        mode,
        backend,
        root: 0,
        pieces: Vec::new(),
        virtual_edges: BTreeSet::new(),
        next_vertex: 1,
        limits: SaturationLimits::default(),
    })
}

/// Embeds `g` induced into `host`, growing it as needed.
pub fn embed(g: &Graph, host: &mut HostDescription) -> Result<EmbeddingCertificate> {
    host.embed(g)
}

impl HostDescription {
    pub fn x(&self) -> Result<Graph> {
        generate(&self.forbidden)
    }

    /// Edge palette: a second colour marks virtual edges in wheel hosts.
    pub fn c(&self) -> u32 {
        match self.mode {
            HostMode::CycleHost => 1,
            HostMode::WheelHost => 2,
        }
    }

    /// `Γ*`: the root together with every piece, all edge colours.
    pub fn material(&self) -> ColoredGraph {
        let mut g = ColoredGraph::empty(self.c(), 1).expect("palette is positive");
        g.add_vertex(self.root, 0).expect("colour 0 exists");
        for p in &self.pieces {
            for (&v, &col) in p.graph.vertex_colors() {
                let _ = g.add_vertex(v, col);
            }
            for (&(u, v), &col) in p.graph.edge_colors() {
                let _ = g.add_edge(u, v, col);
            }
        }
        g
    }

    /// Whether `g` lies in the class this host is universal for. Rejections
    /// carry a minor model where one was found.
    pub fn check_member(&self, g: &Graph) -> Result<()> {
        if g.is_empty() || !g.is_connected() {
            return Err(Error::Precondition("guest must be connected and non-empty".into()));
        }
        let x = self.x()?;
        if let FamilySpec::Wheel { k: 3 } = self.forbidden {
            if is_k4_minor_free(g) {
                return Ok(());
            }
        }
        match exclusion(&self.forbidden, &x, g, self.limits.budget)? {
            Verdict::Free => Ok(()),
            Verdict::Contains { detail, model } => Err(Error::NotInClass {
                reason: detail,
                model: model.map(Box::new),
            }),
            Verdict::Inconclusive(why) => Err(Error::Precondition(format!("membership undecided: {why}"))),
        }
    }

    fn units(&self, g: &Graph) -> Result<Vec<Unit>> {
        let mut out = Vec::new();
        match self.mode {
            HostMode::CycleHost => {
                let bd = blocks(g);
                for (blk, att) in bd.blocks.iter().zip(&bd.attachments) {
                    out.push(Unit {
                        graph: ColoredGraph::monochrome(&g.induced_subgraph(blk)),
                        shared: att.iter().copied().collect(),
                        virtual_edges: BTreeSet::new(),
                    });
                }
            }
            HostMode::WheelHost => {
                let t = tutte_decomposition(g);
                let td = &t.td;
                let Some(start) = td.tree.vertices().next() else {
                    return Ok(out);
                };
                let mut seen = BTreeSet::from([start]);
                let mut queue = VecDeque::from([(start, None)]);
                while let Some((node, parent)) = queue.pop_front() {
                    let bag = td.bag(node);
                    let virt = t.virtual_edges.get(&node).cloned().unwrap_or_default();
                    let mut h = ColoredGraph::empty(2, 1)?;
                    for &v in bag {
                        h.add_vertex(v, 0)?;
                    }
                    for (u, v) in g.induced_subgraph(bag).edges() {
                        h.add_edge(u, v, 0)?;
                    }
                    for &(u, v) in &virt {
                        h.add_edge(u, v, 1)?;
                    }
                    let shared: Vec<Vertex> = match parent {
                        Some(p) => td.adhesion_set(p, node).into_iter().collect(),
                        None => Vec::new(),
                    };
                    if parent.is_some() && !(1..=2).contains(&shared.len()) {
                        return Err(Error::InvalidGraph(format!(
                            "decomposition node {node} meets its parent in {} vertices",
                            shared.len()
                        )));
                    }
                    out.push(Unit {
                        graph: h,
                        shared,
                        virtual_edges: virt,
                    });
                    for s in td.tree.neighbors(node) {
                        if seen.insert(s) {
                            queue.push_back((s, Some(node)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Every colouring of the forbidden models and of `P_n`, in the host
    /// palette.
    fn forbidden_colored(&self, n: usize) -> Result<Vec<ColoredGraph>> {
        let c = self.c();
        let mut out = path_colorings(n, c, 1)?;
        let models = enumerate_forbidden_models(&self.x()?, n, 10_000)
            .map_err(|e| Error::LimitExceeded(format!("{e}; use the adaptive backend")))?;
        for m in models {
            let es: Vec<Edge> = m.edges().collect();
            let total = (c as u64)
                .checked_pow(es.len() as u32)
                .filter(|&t| t <= 1 << 12)
                .ok_or_else(|| {
                    Error::LimitExceeded(format!(
                        "a forbidden model with {} edges has too many colourings; use the adaptive backend",
                        es.len()
                    ))
                })?;
            let mut seen: BTreeSet<CanonicalLabel> = BTreeSet::new();
            for mut code in 0..total {
                let mut h = ColoredGraph::uniform(&m, c, 1);
                for &(u, v) in &es {
                    h.add_edge(u, v, (code % c as u64) as u32)?;
                    code /= c as u64;
                }
                if seen.insert(canonical_form(&h)?) {
                    out.push(h);
                }
            }
        }
        Ok(out)
    }

    fn fresh(&mut self) -> Vertex {
        self.next_vertex += 1;
        self.next_vertex - 1
    }

    /// Tries to place `unit` inside an existing piece, keeping the image
    /// induced with respect to the vertices already used by this guest.
    fn reuse(
        &self,
        unit: &ColoredGraph,
        fixed: &[(Vertex, Vertex)],
        used: &BTreeSet<Vertex>,
        material: &ColoredGraph,
    ) -> Option<BTreeMap<Vertex, Vertex>> {
        let anchors: BTreeSet<Vertex> = fixed.iter().map(|&(_, h)| h).collect();
        for p in &self.pieces {
            if !anchors.iter().all(|&a| p.graph.graph().contains(a)) {
                continue;
            }
            let allowed: BTreeSet<Vertex> = p
                .graph
                .graph()
                .vertices()
                .filter(|v| anchors.contains(v) || !used.contains(v))
                .collect();
            let opts = EmbedOptions {
                induced: true,
                fixed: fixed.to_vec(),
                allowed: Some(allowed),
                budget: self.limits.budget,
            };
            let SearchOutcome::Found(map) = find_embedding(unit, &p.graph, &opts) else {
                continue;
            };
            let clean = map.values().filter(|v| !anchors.contains(v)).all(|&x| {
                material
                    .graph()
                    .neighbors(x)
                    .all(|y| anchors.contains(&y) || !used.contains(&y) || map.values().any(|&z| z == y))
            });
            if clean {
                return Some(map);
            }
        }
        None
    }

    fn add_piece(&mut self, origin_n: usize, glue: Glue, graph: ColoredGraph) {
        let id = self.pieces.len();
        if let Some(m) = graph.graph().max_vertex() {
            self.next_vertex = self.next_vertex.max(m + 1);
        }
        self.pieces.push(Piece {
            id,
            origin_n,
            glue,
            graph,
        });
    }

    pub fn embed(&mut self, g: &Graph) -> Result<EmbeddingCertificate> {
        self.check_member(g)?;
        let mut map: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut virtual_edges = BTreeSet::new();
        if g.order() == 1 {
            map.insert(g.vertices().next().unwrap(), self.root);
        }
        let mut material = self.material();
        for unit in self.units(g)? {
            let ug = unit.graph.graph();
            let fixed: Vec<(Vertex, Vertex)> = if unit.shared.is_empty() {
                vec![(ug.vertices().next().unwrap(), self.root)]
            } else {
                unit.shared.iter().map(|&v| (v, map[&v])).collect()
            };
            let glue = match fixed[..] {
                [(_, a)] => Glue::Vertex(a),
                [(_, a), (_, b)] => {
                    let (a, b) = edge(a, b);
                    Glue::Edge(a, b)
                }
                _ => unreachable!("units share one or two vertices"),
            };
            let n = path_order(ug)?;
            let used: BTreeSet<Vertex> = map.values().copied().collect();
            let placed = match self.backend {
                Backend::Adaptive => None,
                Backend::Catalog => self.reuse(&unit.graph, &fixed, &used, &material),
            };
            let local = match placed {
                Some(m) => m,
                None => {
                    let source = match self.backend {
                        Backend::Adaptive => unit.graph.clone(),
                        Backend::Catalog => {
                            let forbidden = self.forbidden_colored(n)?;
                            saturate(&unit.graph, &forbidden, n, &self.limits)
                                .and_then(|s| s.expand(1))
                                .map_err(|e| match e {
                                    Error::LimitExceeded(why) => {
                                        Error::LimitExceeded(format!("{why}; use the adaptive backend"))
                                    }
                                    other => other,
                                })?
                        }
                    };
                    let pinned: BTreeMap<Vertex, Vertex> = fixed.iter().copied().collect();
                    let relabel: BTreeMap<Vertex, Vertex> = source
                        .graph()
                        .vertices()
                        .map(|v| (v, pinned.get(&v).copied().unwrap_or_else(|| self.fresh())))
                        .collect();
                    let piece = source.relabel(&relabel);
                    self.add_piece(n, glue, piece.clone());
                    for (&v, &col) in piece.vertex_colors() {
                        let _ = material.add_vertex(v, col);
                    }
                    for (&(u, v), &col) in piece.edge_colors() {
                        let _ = material.add_edge(u, v, col);
                    }
                    ug.vertices().map(|v| (v, relabel[&v])).collect()
                }
            };
            for &(u, v) in &unit.virtual_edges {
                virtual_edges.insert(edge(local[&u], local[&v]));
            }
            map.extend(local);
        }
        self.virtual_edges.extend(virtual_edges.iter().copied());
        let cert = EmbeddingCertificate {
            guest: g.clone(),
            host_truncation: materialize(self, 0),
            map,
            induced: true,
            virtual_edges,
        };
        if !cert.verify() {
            return Err(Error::CounterexampleCandidate(
                "the embedding produced is not induced in the truncation".into(),
            ));
        }
        Ok(cert)
    }

    /// Tree-decomposition of `Γ*` whose parts are the root and the pieces:
    /// node 0 holds the root, node `i + 1` piece `i`, attached to the first
    /// earlier part containing its glue set.
    pub fn piece_decomposition(&self) -> TreeDecomposition {
        let mut tree = Graph::with_vertices([0]);
        let mut bags = BTreeMap::from([(0, BTreeSet::from([self.root]))]);
        for (i, p) in self.pieces.iter().enumerate() {
            let node = i as u32 + 1;
            let glue = p.glue.vertices();
            let parent = (0..node).find(|t| glue.is_subset(&bags[t])).unwrap_or(0);
            tree.add_vertex(node);
            tree.add_edge(parent, node);
            bags.insert(node, p.graph.graph().vertex_set());
        }
        TreeDecomposition { tree, bags }
    }
}

/// `Γ*` padded with further copies of existing pieces (or of `K_2` when
/// there are none) until another copy would pass `size_budget` vertices.
/// Copies go round-robin over the piece shapes by least canonical label and
/// over attachment points in vertex order; wheel hosts alternate vertex and
/// edge glues.
pub fn materialize_star(host: &HostDescription, size_budget: usize) -> ColoredGraph {
    let mut g = host.material();
    if g.graph().order() >= size_budget {
        return g;
    }
    let mut shapes: BTreeMap<CanonicalLabel, ColoredGraph> = BTreeMap::new();
    for p in &host.pieces {
        if let Ok(label) = canonical_form(&p.graph) {
            shapes.entry(label).or_insert_with(|| p.graph.clone());
        }
    }
    if shapes.is_empty() {
        let mut k2 = ColoredGraph::empty(host.c(), 1).expect("palette is positive");
        k2.add_edge(0, 1, 0).expect("colour 0 exists");
        shapes.insert(canonical_form(&k2).expect("tiny graph"), k2);
    }
    let shapes: Vec<ColoredGraph> = shapes.into_values().collect();
    let points: Vec<Vertex> = g.graph().vertices().collect();
    let lines: BTreeMap<u32, Vec<Edge>> = g.edge_colors().iter().fold(BTreeMap::new(), |mut acc, (&e, &col)| {
        acc.entry(col).or_insert_with(Vec::new).push(e);
        acc
    });
    let mut next = g.graph().next_vertex_id();
    let mut stalled = 0;
    for i in 0usize.. {
        if stalled >= shapes.len() {
            break;
        }
        let shape = &shapes[i % shapes.len()];
        let sg = shape.graph();
        let mut pinned: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let first_edge = sg.edges().next();
        let edge_glue = host.mode == HostMode::WheelHost && i % 2 == 1;
        match first_edge.filter(|_| edge_glue) {
            Some((a, b)) => {
                let col = shape.edge_color(a, b).unwrap();
                match lines.get(&col).filter(|l| !l.is_empty()) {
                    Some(l) => {
                        let (u, v) = l[(i / 2) % l.len()];
                        pinned.insert(a, u);
                        pinned.insert(b, v);
                    }
                    None => {
                        pinned.insert(a, points[i % points.len()]);
                    }
                }
            }
            None => {
                let a = sg.vertices().next().unwrap();
                pinned.insert(a, points[i % points.len()]);
            }
        }
        let added = sg.order() - pinned.len();
        if added == 0 {
            stalled += 1;
            continue;
        }
        if g.graph().order() + added > size_budget {
            break;
        }
        stalled = 0;
        let relabel: BTreeMap<Vertex, Vertex> = sg
            .vertices()
            .map(|v| {
                let to = pinned.get(&v).copied().unwrap_or_else(|| {
                    next += 1;
                    next - 1
                });
                (v, to)
            })
            .collect();
        let copy = shape.relabel(&relabel);
        for (&v, &col) in copy.vertex_colors() {
            if !g.graph().contains(v) {
                g.add_vertex(v, col).expect("palette matches");
            }
        }
        for (&(u, v), &col) in copy.edge_colors() {
            g.add_edge(u, v, col).expect("palette matches");
        }
    }
    g
}

/// The truncation `Γ`: colour-0 edges of [`materialize_star`], all vertices kept.
pub fn materialize(host: &HostDescription, size_budget: usize) -> Graph {
    materialize_star(host, size_budget).edge_color_class(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HostViolation {
    /// A piece contains the excluded minor or a path with `origin_n` edges.
    PieceNotFree {
        piece: usize,
        detail: String,
    },
    /// A piece meets the earlier material in something other than its glue.
    GlueMismatch {
        piece: usize,
        glue: Vec<Vertex>,
        meets: Vec<Vertex>,
    },
    /// An edge glue whose edge is missing or differently coloured on one side.
    GlueEdge {
        piece: usize,
        u: Vertex,
        v: Vertex,
    },
    /// An edge glue in a host that glues at vertices only.
    EdgeGlueInCycleHost {
        piece: usize,
    },
    Palette {
        piece: usize,
    },
    /// Colour-1 edges of `Γ*` differ from the recorded virtual edges.
    VirtualEdges {
        missing: Vec<Edge>,
        extra: Vec<Edge>,
    },
    TruncationNotFree {
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostReport {
    pub pieces: usize,
    pub truncation_order: usize,
    pub violations: Vec<HostViolation>,
    /// Checks that ran out of budget or hit a size cap.
    pub inconclusive: Vec<String>,
}

impl HostReport {
    pub fn is_free(&self) -> bool {
        self.violations.is_empty() && self.inconclusive.is_empty()
    }
}

/// Checks each piece for freeness, the gluing structure, and the padded
/// truncation for the excluded minor.
pub fn verify_host(host: &HostDescription, size_budget: usize) -> Result<HostReport> {
    let x = host.x()?;
    let budget = host.limits.budget;
    let mut violations = Vec::new();
    let mut inconclusive = Vec::new();

    for p in &host.pieces {
        let pg = p.graph.graph();
        match path_of_length_at_least(pg, p.origin_n, budget) {
            SearchOutcome::Found(path) => violations.push(HostViolation::PieceNotFree {
                piece: p.id,
                detail: format!("path {path:?} has at least {} edges", p.origin_n),
            }),
            SearchOutcome::Absent => {}
            SearchOutcome::Inconclusive { .. } => inconclusive.push(format!("piece {}: path search", p.id)),
        }
        match exclusion(&host.forbidden, &x, pg, budget)? {
            Verdict::Free => {}
            Verdict::Contains { detail, .. } => violations.push(HostViolation::PieceNotFree { piece: p.id, detail }),
            Verdict::Inconclusive(why) => inconclusive.push(format!("piece {}: {why}", p.id)),
        }
    }

    let mut seen = ColoredGraph::empty(host.c(), 1)?;
    seen.add_vertex(host.root, 0)?;
    for p in &host.pieces {
        if p.graph.c() != host.c() || p.graph.d() != 1 {
            violations.push(HostViolation::Palette { piece: p.id });
            continue;
        }
        let glue = p.glue.vertices();
        let meets: BTreeSet<Vertex> = p
            .graph
            .graph()
            .vertices()
            .filter(|&v| seen.graph().contains(v))
            .collect();
        if meets != glue {
            violations.push(HostViolation::GlueMismatch {
                piece: p.id,
                glue: glue.into_iter().collect(),
                meets: meets.into_iter().collect(),
            });
        }
        if let Glue::Edge(u, v) = p.glue {
            if host.mode == HostMode::CycleHost {
                violations.push(HostViolation::EdgeGlueInCycleHost { piece: p.id });
            }
            let here = p.graph.edge_color(u, v);
            if here.is_none() || here != seen.edge_color(u, v) {
                violations.push(HostViolation::GlueEdge { piece: p.id, u, v });
            }
        }
        for (&v, &col) in p.graph.vertex_colors() {
            let _ = seen.add_vertex(v, col);
        }
        for (&(u, v), &col) in p.graph.edge_colors() {
            let _ = seen.add_edge(u, v, col);
        }
    }

    if host.mode == HostMode::WheelHost {
        let colored: BTreeSet<Edge> = seen
            .edge_colors()
            .iter()
            .filter(|(_, &c)| c == 1)
            .map(|(&e, _)| e)
            .collect();
        let missing: Vec<Edge> = host.virtual_edges.difference(&colored).copied().collect();
        let extra: Vec<Edge> = match host.backend {
            Backend::Adaptive => colored.difference(&host.virtual_edges).copied().collect(),
            Backend::Catalog => Vec::new(),
        };
        if !missing.is_empty() || !extra.is_empty() {
            violations.push(HostViolation::VirtualEdges { missing, extra });
        }
    }

    let truncation = materialize(host, size_budget);
    match exclusion(&host.forbidden, &x, &truncation, budget)? {
        Verdict::Free => {}
        Verdict::Contains { detail, .. } => violations.push(HostViolation::TruncationNotFree { detail }),
        Verdict::Inconclusive(why) => inconclusive.push(format!("truncation: {why}")),
    }
    Ok(HostReport {
        pieces: host.pieces.len(),
        truncation_order: truncation.order(),
        violations,
        inconclusive,
    })
}

impl Default for HostDescription {
    fn default() -> Self {
        build_host(&FamilySpec::Cycle { n: 3 }, Backend::Adaptive).expect("C_3 is supported")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::verify_decomposition;
    use crate::families::{complete, cycle, path, wheel};
    use crate::paths::circumference;

    fn c(n: usize) -> FamilySpec {
        FamilySpec::Cycle { n }
    }

    #[test]
    fn fresh_hosts() {
        let h = build_host(&c(3), Backend::Adaptive).unwrap();
        assert_eq!(h.mode, HostMode::CycleHost);
        assert_eq!(materialize(&h, 0).order(), 1);
        let w = build_host(&FamilySpec::Wheel { k: 3 }, Backend::Adaptive).unwrap();
        assert_eq!(w.mode, HostMode::WheelHost);
        assert!(matches!(
            build_host(&FamilySpec::Complete { n: 5 }, Backend::Adaptive),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn single_edge_uses_two_host_vertices() {
        let mut h = build_host(&c(3), Backend::Adaptive).unwrap();
        let cert = h.embed(&path(1)).unwrap();
        assert!(cert.verify());
        assert_eq!(cert.host_truncation.order(), 2);
    }

    #[test]
    fn trees_into_forest_host() {
        let mut h = build_host(&c(3), Backend::Adaptive).unwrap();
        let mut tree = path(6);
        for (u, v) in [(3, 7), (7, 8), (7, 9), (0, 10)] {
            tree.add_edge(u, v);
        }
        let a = h.embed(&tree).unwrap();
        let b = h.embed(&path(4)).unwrap();
        let t = materialize(&h, 500);
        assert!(t.order() > 490 && t.order() <= 500);
        assert_eq!(circumference(&t), 0);
        assert!(a.verify_against(&t) && b.verify_against(&t));
        assert!(verify_host(&h, 500).unwrap().is_free());
    }

    #[test]
    fn rejection_carries_a_model() {
        let mut h = build_host(&c(3), Backend::Adaptive).unwrap();
        match h.embed(&cycle(5)) {
            Err(Error::NotInClass { model: Some(m), .. }) => {
                assert!(crate::minor::verify_model(&m).is_valid())
            }
            other => panic!("{other:?}"),
        }
        let mut w = build_host(&FamilySpec::Wheel { k: 3 }, Backend::Adaptive).unwrap();
        match w.embed(&complete(4)) {
            Err(Error::NotInClass { model: Some(m), .. }) => {
                assert_eq!(m.pattern, wheel(3));
                assert!(crate::minor::verify_model(&m).is_valid())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn triangle_cactus_into_c4_host() {
        let mut h = build_host(&c(4), Backend::Adaptive).unwrap();
        let mut g = cycle(3);
        for (u, v) in [(2, 3), (3, 4), (2, 4), (4, 5)] {
            g.add_edge(u, v);
        }
        let cert = h.embed(&g).unwrap();
        assert!(cert.verify());
        let report = verify_host(&h, 300).unwrap();
        assert!(report.is_free(), "{report:?}");
    }

    #[test]
    fn series_parallel_into_w3_host() {
        let mut h = build_host(&FamilySpec::Wheel { k: 3 }, Backend::Adaptive).unwrap();
        let mut g = cycle(6);
        g.add_edge(0, 3);
        g.add_edge(3, 6);
        g.add_edge(6, 7);
        g.add_edge(7, 3);
        let cert = h.embed(&g).unwrap();
        assert!(cert.verify());
        assert!(!cert.virtual_edges.is_empty() || h.pieces.len() >= 2);
        let star = materialize_star(&h, 400);
        assert!(is_k4_minor_free(&star.graph().clone()));
        assert!(is_k4_minor_free(&materialize(&h, 400)));
        let td = h.piece_decomposition();
        let r = verify_decomposition(h.material().graph(), &td);
        assert!(r.valid && r.adhesion <= 2 && r.adhesion_sets_complete_in_g);
        let report = verify_host(&h, 400).unwrap();
        assert!(report.is_free(), "{report:?}");
    }

    #[test]
    fn corrupted_host_is_reported() {
        let mut h = build_host(&c(3), Backend::Adaptive).unwrap();
        h.embed(&path(3)).unwrap();
        let mut bad = ColoredGraph::empty(1, 1).unwrap();
        bad.add_edge(0, 50, 0).unwrap();
        bad.add_edge(50, 1, 0).unwrap();
        h.pieces.push(Piece {
            id: h.pieces.len(),
            origin_n: 3,
            glue: Glue::Vertex(0),
            graph: bad,
        });
        let report = verify_host(&h, 0).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, HostViolation::GlueMismatch { .. })));
        assert!(!report.is_free());
    }

    #[test]
    fn catalog_backend_on_small_guests() {
        let mut h = build_host(&c(3), Backend::Catalog).unwrap();
        let a = h.embed(&path(2)).unwrap();
        let pieces = h.pieces.len();
        let b = h.embed(&path(1)).unwrap();
        assert_eq!(h.pieces.len(), pieces, "a second edge fits an existing piece");
        let t = materialize(&h, 0);
        assert!(a.verify_against(&t) && b.verify_against(&t));
        assert!(verify_host(&h, 100).unwrap().is_free());
    }

    #[test]
    fn state_roundtrips_through_json() {
        let mut h = build_host(&FamilySpec::Wheel { k: 3 }, Backend::Adaptive).unwrap();
        h.embed(&cycle(4)).unwrap();
        let text = serde_json::to_string(&h).unwrap();
        let back: HostDescription = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
        let cert = back.clone().embed(&path(2)).unwrap();
        let again: EmbeddingCertificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        assert!(again.verify());
    }
}
