use std::collections::BTreeSet;
use std::sync::OnceLock;

use rand::Rng;

use super::gen::{
    locate_patterns, random_cactus, random_glued, random_graph, random_low_width, random_pinned,
    random_series_parallel, random_short_path_guest, random_tree, random_two_connected, random_two_connected_with_path,
};
use super::{fail, from_error, pass, run_indexed, Check, Record, RunConfig, Status, Suite, SuiteReport};
use crate::connectivity::biconnected_components;
use crate::decomposition::{
    ell, lift_long_path, locate_minor_part, torso, tutte_decomposition, verify_decomposition, verify_tutte, TorsoKind,
};
use crate::families::{complete, cycle, generate, wheel, FamilySpec};
use crate::graph::{ColoredGraph, Graph, Vertex};
use crate::iso::{find_induced_embedding, verify_embedding};
use crate::minor::{find_minor_model, MinorModel};
use crate::oracle;
use crate::search::SearchOutcome;
use crate::series_parallel::is_k4_minor_free;
use crate::unavoidable::{check_reduction_facts, find_cycle_pair_minor, find_long_cycle, find_wheel_minor};
use crate::universal::{
    build_host, contains_colored_subgraph, materialize, materialize_star, path_colorings, saturate, transform_t,
    transform_t_inv, verify_host, Backend, ClassChecker, EmbeddingCertificate, PinnedTransform, SaturationLimits,
};

/// All graphs on at most seven vertices, one per isomorphism class.
fn small_graphs() -> &'static [Graph] {
    static CELL: OnceLock<Vec<Graph>> = OnceLock::new();
    CELL.get_or_init(|| (1..=7).flat_map(oracle::graphs_up_to_iso).collect())
}

pub fn run_suite(suite: Suite, config: &RunConfig) -> SuiteReport {
    let records = match suite {
        Suite::Ell => ell_suite(config),
        Suite::LemmaLongpath => longpath(config),
        Suite::LemmaLocate => locate(config),
        Suite::MinorOracle => minor_oracle(config),
        Suite::LemmaCycle => lemma_cycle(config),
        Suite::Lemma2Con => lemma_2con(config),
        Suite::ReductionFacts => run_indexed(suite, 3, |i| {
            let k = i + 3;
            match check_reduction_facts(k, config.budget) {
                Ok(r) if r.all_true() && !config.mutant => pass(format!("k = {k}: {} facts", r.facts.len())),
                Ok(r) => fail(format!(
                    "k = {k}: {:?}",
                    r.facts.iter().map(|f| f.holds).collect::<Vec<_>>()
                )),
                Err(e) => from_error(e),
            }
        }),
        Suite::Tutte => tutte(config),
        Suite::CorollaryEquivalence => corollary(config),
        Suite::Saturation => saturation(config),
        Suite::CycleHost => cycle_host(config),
        Suite::WheelHost => wheel_host(config),
        Suite::WheelExtraction => wheel_extraction(config),
    };
    SuiteReport::new(suite, config.seed, records)
}

fn ell_suite(config: &RunConfig) -> Vec<Record> {
    let mut cases: Vec<(u64, u64, u128)> = (1..=10).map(|w| (w, 1, 1)).collect();
    cases.push((2, 2, 7));
    cases.push((3, 3, 46));
    run_indexed(Suite::Ell, cases.len(), |i| {
        let (w, k, want) = cases[i];
        match ell(w, k).map(|v| v + config.mutant as u128) {
            Ok(v) if v == want => pass(format!("ell({w}, {k}) = {v}")),
            Ok(v) => fail(format!("ell({w}, {k}) = {v}, expected {want}")),
            Err(e) => from_error(e),
        }
    })
}

fn longpath(config: &RunConfig) -> Vec<Record> {
    run_indexed(Suite::LemmaLongpath, 200, |i| {
        let mut rng = config.rng(Suite::LemmaLongpath, i);
        let (w, k) = (2 + (i % 2) as u64, 2 + ((i / 2) % 2) as u64);
        let len = match ell(w, k) {
            Ok(l) => l as usize,
            Err(e) => return from_error(e),
        };
        let (g, td, path) = random_low_width(&mut rng, w as usize, len);
        match lift_long_path(&g, &td, w, k, Some(&path)) {
            Ok(mut lifted) => {
                if config.mutant {
                    lifted.tree_path.truncate(1);
                }
                let tp = &lifted.tree_path;
                let distinct: BTreeSet<_> = tp.iter().collect();
                let is_path = distinct.len() == tp.len() && tp.windows(2).all(|s| td.tree.has_edge(s[0], s[1]));
                if is_path && lifted.length() as u64 >= k {
                    pass(format!(
                        "w = {w}, k = {k}, {} vertices, tree path {}",
                        g.order(),
                        lifted.length()
                    ))
                } else {
                    fail(format!("w = {w}, k = {k}: tree path {tp:?}"))
                }
            }
            Err(e) => from_error(e),
        }
    })
}

fn locate(config: &RunConfig) -> Vec<Record> {
    run_indexed(Suite::LemmaLocate, 100, |i| {
        let mut rng = config.rng(Suite::LemmaLocate, i);
        let (pattern, adhesion) = locate_patterns()[i % 2].clone();
        let (g, td) = random_glued(&mut rng, &pattern, adhesion);
        let model = match find_minor_model(&pattern, &g, config.budget) {
            Ok(SearchOutcome::Found(m)) => m,
            Ok(SearchOutcome::Absent) => return fail("planted pattern not found"),
            Ok(SearchOutcome::Inconclusive { .. }) => return (Status::Inconclusive, "minor search budget".into()),
            Err(e) => return from_error(e),
        };
        match locate_minor_part(&g, &td, &pattern, &model) {
            Ok(found) => {
                let bag = td.bag(found.node);
                let part = g.induced_subgraph(bag);
                let mut sets = found.model.branch_sets.clone();
                if config.mutant {
                    if let Some(s) = sets.values_mut().next() {
                        s.clear();
                    }
                }
                let restricted = MinorModel {
                    pattern: pattern.clone(),
                    host: part.clone(),
                    branch_sets: sets.clone(),
                    edge_witnesses: found.model.edge_witnesses.clone(),
                };
                let inside = sets.values().flatten().all(|v| bag.contains(v));
                let brute = part.order() > oracle::ORACLE_CAP || oracle::is_minor(&pattern, &part);
                if inside && brute && oracle::model_is_valid(&restricted) {
                    pass(format!(
                        "{} vertices, part {} of {}",
                        g.order(),
                        found.node,
                        td.bags.len()
                    ))
                } else {
                    fail(format!("part {} with bag {bag:?} does not carry the model", found.node))
                }
            }
            Err(e) => from_error(e),
        }
    })
}

fn minor_oracle(config: &RunConfig) -> Vec<Record> {
    let patterns = [cycle(3), cycle(4), complete(4), wheel(3)];
    run_indexed(Suite::MinorOracle, 300, |i| {
        let mut rng = config.rng(Suite::MinorOracle, i);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, 8, p);
        for (j, pat) in patterns.iter().enumerate() {
            let brute = oracle::is_minor(pat, &g);
            let engine = match find_minor_model(pat, &g, config.budget) {
                Ok(SearchOutcome::Found(m)) => Some(m),
                Ok(SearchOutcome::Absent) => None,
                Ok(SearchOutcome::Inconclusive { .. }) => {
                    return (Status::Inconclusive, format!("pattern {j}: budget"))
                }
                Err(e) => return from_error(e),
            };
            let engine = if config.mutant { None } else { engine };
            match (&engine, brute) {
                (Some(m), true) if oracle::model_is_valid(m) => {}
                (None, false) => {}
                _ => {
                    return fail(format!(
                        "pattern {j} on {:?}: engine {}, brute force {brute}",
                        g.edges().collect::<Vec<_>>(),
                        engine.is_some()
                    ))
                }
            }
        }
        pass(format!("{} vertices, {} edges", g.order(), g.size()))
    })
}

fn lemma_cycle(config: &RunConfig) -> Vec<Record> {
    run_indexed(Suite::LemmaCycle, 100, |i| {
        let mut rng = config.rng(Suite::LemmaCycle, i);
        let n = 3 + i % 2;
        let (g, path) = random_two_connected_with_path(&mut rng, n * n);
        match find_long_cycle(&g, n, Some(&path), config.budget) {
            Ok(mut lc) => {
                if config.mutant {
                    lc.cycle.pop();
                }
                if lc.cycle.len() >= n && g.is_cycle(&lc.cycle) {
                    pass(format!(
                        "n = {n}, {} vertices, cycle of length {}",
                        g.order(),
                        lc.cycle.len()
                    ))
                } else {
                    fail(format!("n = {n}: {:?} is not a cycle of length >= {n}", lc.cycle))
                }
            }
            Err(e) => from_error(e),
        }
    })
}

fn theta(lengths: [usize; 3]) -> Graph {
    let mut g = Graph::with_vertices([0, 1]);
    for len in lengths {
        let mut prev = 0;
        for _ in 1..len {
            let v = g.next_vertex_id();
            g.add_edge(prev, v);
            prev = v;
        }
        g.add_edge(prev, 1);
    }
    g
}

/// Wheels, circular ladders and theta graphs for the two-cycle extraction.
pub fn two_cycle_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for k in 6..=9 {
        out.push((format!("W{k}"), wheel(k)));
    }
    for k in 6..=9 {
        out.push((format!("O{k}"), generate(&FamilySpec::CircularLadder { k }).unwrap()));
    }
    for t in [
        [1, 2, 2],
        [2, 2, 2],
        [1, 3, 4],
        [2, 3, 5],
        [3, 3, 3],
        [2, 4, 6],
        [3, 5, 7],
        [4, 6, 9],
    ] {
        out.push((format!("theta{t:?}"), theta(t)));
    }
    out
}

fn lemma_2con(config: &RunConfig) -> Vec<Record> {
    let corpus = two_cycle_corpus();
    run_indexed(Suite::Lemma2Con, corpus.len(), |i| {
        let (name, g) = &corpus[i];
        match find_cycle_pair_minor(g, 3, 3, config.budget) {
            Ok(mut cert) => {
                if config.mutant {
                    cert.model.branch_sets.clear();
                }
                if cert.verify(g) && oracle::model_is_valid(&cert.model) {
                    pass(format!("{name}: {:?}", cert.route))
                } else {
                    fail(format!("{name}: certificate does not verify"))
                }
            }
            Err(e) => from_error(e),
        }
    })
}

fn check_tutte(g: &Graph, mutant: bool) -> Check {
    let mut t = tutte_decomposition(g);
    if mutant {
        if let Some(kind) = t.torso_kind.values_mut().next() {
            *kind = match kind {
                TorsoKind::Cycle => TorsoKind::ThreeConnected,
                _ => TorsoKind::Cycle,
            };
        }
    }
    let report = verify_tutte(g, &t);
    if !report.is_valid() || report.decomposition.adhesion > 2 {
        return fail(format!("invalid decomposition: {:?}", report.problems));
    }
    for node in t.td.tree.vertices() {
        let h = match torso(g, &t.td, node) {
            Ok(h) => h,
            Err(e) => return from_error(e),
        };
        let ok = match t.torso_kind.get(&node) {
            Some(TorsoKind::ThreeConnected) => h.order() >= 4 && oracle::connectivity(&h) >= 3,
            Some(TorsoKind::Cycle) => h.order() >= 3 && h.is_connected() && h.vertices().all(|v| h.degree(v) == 2),
            Some(TorsoKind::K1) => h.order() == 1,
            Some(TorsoKind::K2) => h.order() == 2 && h.size() == 1,
            None => false,
        };
        if !ok {
            return fail(format!("torso of node {node} is not a {:?}", t.torso_kind.get(&node)));
        }
        let bag = t.td.bag(node);
        for &(u, v) in t.virtual_edges.get(&node).into_iter().flatten() {
            let Some(p) = t.path_witnesses.get(&(node, (u, v))) else {
                return fail(format!("virtual edge {u}-{v} of node {node} has no witness"));
            };
            let ends = (p.first(), p.last());
            let ends_ok = ends == (Some(&u), Some(&v)) || ends == (Some(&v), Some(&u));
            if !ends_ok || !g.is_path(p) || p[1..p.len() - 1].iter().any(|x| bag.contains(x)) {
                return fail(format!("witness {p:?} for {u}-{v} at node {node} is not valid"));
            }
        }
    }
    pass(format!("{} vertices, {} nodes", g.order(), t.td.bags.len()))
}

fn tutte(config: &RunConfig) -> Vec<Record> {
    let exhaustive: Vec<&Graph> = small_graphs()
        .iter()
        .filter(|g| g.order() >= 3 && oracle::connectivity(g) >= 2)
        .collect();
    let fixed = exhaustive.len();
    run_indexed(Suite::Tutte, fixed + 100, |i| {
        if i < fixed {
            return check_tutte(exhaustive[i], config.mutant);
        }
        let mut rng = config.rng(Suite::Tutte, i);
        let n = rng.gen_range(3..=9);
        check_tutte(&random_two_connected(&mut rng, n), config.mutant)
    })
}

fn corollary(config: &RunConfig) -> Vec<Record> {
    let mut checkers = Vec::new();
    for x in [cycle(3), cycle(4)] {
        for n in [3, 4] {
            match ClassChecker::new(&x, n, config.budget) {
                Ok(c) => checkers.push(c),
                Err(e) => {
                    let (status, detail) = from_error(e);
                    return vec![Record {
                        suite: Suite::CorollaryEquivalence,
                        index: 0,
                        status,
                        detail,
                    }];
                }
            }
        }
    }
    let graphs = small_graphs();
    run_indexed(Suite::CorollaryEquivalence, graphs.len(), |i| {
        let g = &graphs[i];
        for c in &checkers {
            match c.check(g) {
                Ok(e) if e.equal && !config.mutant => {}
                Ok(e) => {
                    return fail(format!(
                        "x on {} vertices, n = {}, graph {:?}: {e:?}",
                        c.x.order(),
                        c.n,
                        g.edges().collect::<Vec<_>>()
                    ))
                }
                Err(e) => return from_error(e),
            }
        }
        pass(format!("{} vertices, {} edges", g.order(), g.size()))
    })
}

fn saturation(config: &RunConfig) -> Vec<Record> {
    let limits = SaturationLimits {
        budget: config.budget,
        ..SaturationLimits::default()
    };
    run_indexed(Suite::Saturation, 230, |i| {
        let mut rng = config.rng(Suite::Saturation, i);
        if i >= 30 {
            let (h, path) = random_pinned(&mut rng);
            let pt = match PinnedTransform::from_path(&h, &path) {
                Ok(pt) => pt,
                Err(e) => return from_error(e),
            };
            let roundtrip = transform_t(&h, &pt).and_then(|t| Ok((transform_t_inv(&t, &pt)?, t)));
            return match roundtrip {
                Ok((mut back, t)) => {
                    if config.mutant {
                        back.remove_vertex(path[0]);
                    }
                    let again = transform_t(&back, &pt);
                    if back == h && again.as_ref() == Ok(&t) {
                        pass(format!("|P| = {}, {} vertices", path.len(), h.graph().order()))
                    } else {
                        fail(format!("roundtrip differs for pin {path:?}"))
                    }
                }
                Err(e) => from_error(e),
            };
        }
        let g = random_short_path_guest(&mut rng, 12);
        let forbidden = match path_colorings(3, g.c(), g.d()) {
            Ok(f) => f,
            Err(e) => return from_error(e),
        };
        let expansion = saturate(&g, &forbidden, 3, &limits).and_then(|s| s.expand(3));
        let e = match expansion {
            Ok(e) => e,
            Err(e) => return from_error(e),
        };
        for x in &forbidden {
            match contains_colored_subgraph(x, &e, config.budget) {
                Ok(false) => {}
                Ok(true) => return fail("expansion contains a forbidden path"),
                Err(err) => return from_error(err),
            }
        }
        let e = if config.mutant {
            ColoredGraph::empty(e.c(), e.d()).unwrap()
        } else {
            e
        };
        match find_induced_embedding(&g, &e, config.budget) {
            SearchOutcome::Found(map) if verify_embedding(&g, &e, &map, true) => pass(format!(
                "guest on {} vertices (c = {}, d = {}), expansion on {}",
                g.graph().order(),
                g.c(),
                g.d(),
                e.graph().order()
            )),
            SearchOutcome::Inconclusive { .. } => (Status::Inconclusive, "embedding search budget".into()),
            _ => fail("guest does not embed induced"),
        }
    })
}

fn corrupt(cert: &mut EmbeddingCertificate) {
    let keys: Vec<Vertex> = cert.map.keys().copied().collect();
    if let [a, b, ..] = keys[..] {
        let (x, y) = (cert.map[&a], cert.map[&b]);
        cert.map.insert(a, y);
        cert.map.insert(b, x);
    } else if let Some(&a) = keys.first() {
        cert.map.insert(a, u32::MAX);
    }
}

/// Embeds `guests` one after another into one host, then replays every
/// certificate against the final padded truncation and runs `final_checks`.
fn host_run(
    suite: Suite,
    config: &RunConfig,
    spec: FamilySpec,
    guests: Vec<Graph>,
    pad: usize,
    truncation_ok: impl Fn(&Graph) -> Option<String>,
) -> Vec<Record> {
    let mut host = match build_host(&spec, Backend::Adaptive) {
        Ok(h) => h,
        Err(e) => {
            let (status, detail) = from_error(e);
            return vec![Record {
                suite,
                index: 0,
                status,
                detail,
            }];
        }
    };
    host.limits.budget = config.budget;
    let certs: Vec<Result<EmbeddingCertificate, crate::Error>> = guests.iter().map(|g| host.embed(g)).collect();
    let truncation = materialize(&host, pad);
    let mut records = Vec::new();
    for (index, cert) in certs.into_iter().enumerate() {
        let (status, detail) = match cert {
            Ok(mut c) => {
                if config.mutant {
                    corrupt(&mut c);
                }
                if c.verify() && c.verify_against(&truncation) {
                    pass(format!("{}: guest on {} vertices", spec, c.guest.order()))
                } else {
                    fail(format!("{}: certificate {index} does not replay", spec))
                }
            }
            Err(e) => from_error(e),
        };
        records.push(Record {
            suite,
            index: records.len(),
            status,
            detail,
        });
    }
    let mut push = |check: Check| {
        records.push(Record {
            suite,
            index: records.len(),
            status: check.0,
            detail: check.1,
        })
    };
    push(match truncation_ok(&truncation) {
        None => pass(format!(
            "{spec}: truncation on {} vertices is in the class",
            truncation.order()
        )),
        Some(why) => fail(format!("{spec}: {why}")),
    });
    push(match verify_host(&host, pad) {
        Ok(r) if r.is_free() => pass(format!("{spec}: host with {} pieces verifies", r.pieces)),
        Ok(r) if r.violations.is_empty() => (Status::Inconclusive, format!("{spec}: {:?}", r.inconclusive)),
        Ok(r) => fail(format!("{spec}: {:?}", r.violations)),
        Err(e) => from_error(e),
    });
    if host.mode == crate::universal::HostMode::WheelHost {
        let star = materialize_star(&host, 0);
        let r = verify_decomposition(star.graph(), &host.piece_decomposition());
        push(if r.valid && r.adhesion <= 2 && r.adhesion_sets_complete_in_g {
            pass(format!(
                "{spec}: piece decomposition of adhesion {} with complete adhesion sets",
                r.adhesion
            ))
        } else {
            fail(format!("{spec}: piece decomposition {r:?}"))
        });
    }
    records
}

fn blocks_at_most(g: &Graph, size: usize) -> bool {
    biconnected_components(g).blocks.iter().all(|b| b.len() <= size)
}

fn cycle_host(config: &RunConfig) -> Vec<Record> {
    let trees: Vec<Graph> = (0..50)
        .map(|i| {
            let mut rng = config.rng(Suite::CycleHost, i);
            let n = rng.gen_range(1..=40);
            random_tree(&mut rng, n)
        })
        .collect();
    let cacti: Vec<Graph> = (50..100)
        .map(|i| {
            let mut rng = config.rng(Suite::CycleHost, i);
            random_cactus(&mut rng, 30)
        })
        .collect();
    let mut records = host_run(Suite::CycleHost, config, FamilySpec::Cycle { n: 3 }, trees, 500, |t| {
        let components = t.components().len();
        (t.size() + components != t.order()).then(|| "truncation has a cycle".to_string())
    });
    let offset = records.len();
    let more = host_run(Suite::CycleHost, config, FamilySpec::Cycle { n: 4 }, cacti, 500, |t| {
        (!blocks_at_most(t, 3)).then(|| "truncation has a block on four or more vertices".to_string())
    });
    records.extend(more.into_iter().map(|mut r| {
        r.index += offset;
        r
    }));
    records
}

fn wheel_host(config: &RunConfig) -> Vec<Record> {
    let guests: Vec<Graph> = (0..50)
        .map(|i| {
            let mut rng = config.rng(Suite::WheelHost, i);
            random_series_parallel(&mut rng, 20)
        })
        .collect();
    host_run(
        Suite::WheelHost,
        config,
        FamilySpec::Wheel { k: 3 },
        guests,
        2000,
        |t| (!is_k4_minor_free(t)).then(|| "truncation has a K4 minor".to_string()),
    )
}

fn wheel_extraction(config: &RunConfig) -> Vec<Record> {
    let named: Vec<(String, Graph, usize)> = [
        FamilySpec::DoubleWheel { k: 5 },
        FamilySpec::CircularLadder { k: 5 },
        FamilySpec::MoebiusLadder { k: 5 },
        FamilySpec::CompleteBipartite { a: 4, b: 4 },
        FamilySpec::RayWithTwoApexes { m: 6 },
    ]
    .into_iter()
    .map(|s| (s.to_string(), generate(&s).unwrap(), 4))
    .chain(
        small_graphs()
            .iter()
            .filter(|g| g.order() >= 4 && oracle::connectivity(g) >= 3)
            .map(|g| (format!("{:?}", g.edges().collect::<Vec<_>>()), g.clone(), 3)),
    )
    .collect();
    run_indexed(Suite::WheelExtraction, named.len(), |i| {
        let (name, g, k) = &named[i];
        match find_wheel_minor(g, *k, config.budget) {
            Ok(SearchOutcome::Found(mut cert)) => {
                if config.mutant {
                    cert.model.branch_sets.clear();
                }
                if cert.verify(g) && oracle::model_is_valid(&cert.model) {
                    pass(format!("W{k} in {name}"))
                } else {
                    fail(format!("W{k} certificate for {name} does not verify"))
                }
            }
            Ok(SearchOutcome::Absent) => fail(format!("no W{k} found in {name}")),
            Ok(SearchOutcome::Inconclusive { .. }) => (Status::Inconclusive, format!("W{k} in {name}: budget")),
            Err(e) => from_error(e),
        }
    })
}
