use proptest::prelude::*;
use rand::SeedableRng;

use univgraph::corpus::gen::{random_coloring, random_pinned, random_series_parallel, random_tree, Rng8};
use univgraph::decomposition::{ell, tutte_decomposition, verify_tutte};
use univgraph::families::{complete, cycle, wheel, FamilySpec};
use univgraph::iso::{canonical_form, isomorphic};
use univgraph::minor::find_minor_model;
use univgraph::paths::circumference;
use univgraph::series_parallel::is_k4_minor_free;
use univgraph::universal::{
    build_host, materialize, transform_t, transform_t_inv, verify_host, Backend, PinnedTransform,
};
use univgraph::{io, oracle, ColoredGraph, Graph, SearchOutcome, DEFAULT_BUDGET};

fn graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::with_vertices(0..n as u32);
            let pairs = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
            for ((u, v), on) in pairs.zip(bits) {
                if on {
                    g.add_edge(u, v);
                }
            }
            g
        })
    })
}

fn permuted(g: &Graph, seed: u64) -> Graph {
    use rand::seq::SliceRandom;
    let mut rng = Rng8::seed_from_u64(seed);
    let vs: Vec<u32> = g.vertices().collect();
    let mut images = vs.clone();
    images.shuffle(&mut rng);
    g.relabel(&vs.into_iter().zip(images).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_and_edge_lists_roundtrip(g in graph(12)) {
        prop_assert_eq!(io::from_graph6(&io::to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(io::from_edge_list(&io::to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn coloured_json_roundtrips(g in graph(9), seed: u64, c in 1u32..4, d in 1u32..4) {
        let h = random_coloring(&mut Rng8::seed_from_u64(seed), &g, c, d);
        prop_assert_eq!(io::from_json(&io::to_json(&h)).unwrap(), h);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(8), seed: u64) {
        let p = permuted(&g, seed);
        let (a, b) = (ColoredGraph::monochrome(&g), ColoredGraph::monochrome(&p));
        prop_assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        prop_assert!(isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn minor_engine_matches_brute_force(g in graph(7)) {
        for pattern in [cycle(3), cycle(5), complete(4), wheel(4)] {
            let brute = oracle::is_minor(&pattern, &g);
            match find_minor_model(&pattern, &g, DEFAULT_BUDGET).unwrap() {
                SearchOutcome::Found(m) => prop_assert!(brute && oracle::model_is_valid(&m)),
                SearchOutcome::Absent => prop_assert!(!brute),
                SearchOutcome::Inconclusive { .. } => prop_assert!(false, "budget exhausted on 7 vertices"),
            }
        }
    }

    #[test]
    fn minor_search_is_label_invariant(g in graph(7), seed: u64) {
        let p = permuted(&g, seed);
        for pattern in [cycle(4), complete(4)] {
            let a = find_minor_model(&pattern, &g, DEFAULT_BUDGET).unwrap().is_found();
            let b = find_minor_model(&pattern, &p, DEFAULT_BUDGET).unwrap().is_found();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn fast_oracles_agree_with_minor_oracle(g in graph(7)) {
        prop_assert_eq!(is_k4_minor_free(&g), !oracle::is_minor(&complete(4), &g));
        prop_assert_eq!(circumference(&g), oracle::circumference(&g));
    }

    #[test]
    fn tutte_decompositions_verify(g in graph(8)) {
        prop_assume!(g.order() >= 3 && oracle::connectivity(&g) >= 2);
        let t = tutte_decomposition(&g);
        let r = verify_tutte(&g, &t);
        prop_assert!(r.is_valid(), "{:?}", r.problems);
        prop_assert!(r.decomposition.adhesion <= 2);
    }

    #[test]
    fn ell_grows_in_both_arguments(w in 1u64..6, k in 1u64..4) {
        let base = ell(w, k).unwrap();
        prop_assert!(ell(w + 1, k).unwrap() >= base);
        prop_assert!(ell(w, k + 1).unwrap() > base);
    }

    #[test]
    fn pinned_transform_inverts(seed: u64) {
        let (h, path) = random_pinned(&mut Rng8::seed_from_u64(seed));
        let pt = PinnedTransform::from_path(&h, &path).unwrap();
        let t = transform_t(&h, &pt).unwrap();
        prop_assert_eq!(transform_t_inv(&t, &pt).unwrap(), h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trees_embed_into_the_triangle_free_host(seeds in proptest::collection::vec(any::<u64>(), 1..5)) {
        let mut host = build_host(&FamilySpec::Cycle { n: 3 }, Backend::Adaptive).unwrap();
        let mut certs = Vec::new();
        for s in seeds {
            let mut rng = Rng8::seed_from_u64(s);
            let n = 1 + (s % 25) as usize;
            certs.push(host.embed(&random_tree(&mut rng, n)).unwrap());
        }
        let window = materialize(&host, 300);
        prop_assert_eq!(circumference(&window), 0);
        for c in &certs {
            prop_assert!(c.verify_against(&window));
        }
        prop_assert!(verify_host(&host, 300).unwrap().is_free());
    }

    #[test]
    fn series_parallel_graphs_embed_into_the_wheel_host(seed: u64) {
        let mut rng = Rng8::seed_from_u64(seed);
        let g = random_series_parallel(&mut rng, 14);
        let mut host = build_host(&FamilySpec::Wheel { k: 3 }, Backend::Adaptive).unwrap();
        let cert = host.embed(&g).unwrap();
        let window = materialize(&host, 400);
        prop_assert!(cert.verify_against(&window));
        prop_assert!(is_k4_minor_free(&window));
        prop_assert!(verify_host(&host, 400).unwrap().is_free());
    }
}
