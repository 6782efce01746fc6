use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use packing_core::color::{apply_permutation, ColorPermutation, PackingColor};
use packing_core::colorer::{color_graph, color_graph_report};
use packing_core::families::{
    gen_random_clawfree_cubic, gen_substituted, random_cubic_multigraph, RandomParams, SubstitutionPlan,
};
use packing_core::graph::{edge_distance, line_graph, Distance, EdgeId, MultiGraph, VertexId};
use packing_core::matching::{is_valid_two_factor, two_factor_containing};
use packing_core::recognition::{brute_force_bridges, find_bridges, find_claw, is_cubic};
use packing_core::structure::{oum_decompose, OumDecomposition};
use packing_core::verify::{is_valid, PackingSpec};

fn arb_graph() -> impl Strategy<Value = MultiGraph> {
    (2u32..16, proptest::collection::vec((0u32..16, 0u32..16), 0..40)).prop_map(|(n, raw)| {
        let mut g = MultiGraph::new();
        for v in 0..n {
            g.ensure_vertex(VertexId(v));
        }
        for (a, b) in raw {
            let (a, b) = (a % n, b % n);
            if a != b {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
        g
    })
}

fn on_triangle(g: &MultiGraph, e: EdgeId) -> bool {
    let (a, b) = g.endpoints(e).unwrap();
    g.neighbor_set(a).intersection(&g.neighbor_set(b)).next().is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_distance_is_line_graph_distance(g in arb_graph()) {
        let lg = line_graph(&g);
        for e in g.edge_ids() {
            let dist = lg.bfs_distances(VertexId(e.0));
            for f in g.edge_ids() {
                let expected = dist.get(&VertexId(f.0)).map_or(Distance::Infinite, |&d| Distance::Finite(d));
                prop_assert_eq!(edge_distance(&g, e, f).unwrap(), expected);
            }
        }
    }

    #[test]
    fn bridges_match_brute_force(g in arb_graph()) {
        prop_assert_eq!(find_bridges(&g), brute_force_bridges(&g));
    }

    #[test]
    fn random_graphs_color_validly(seed in 0u64..10_000, bridged in any::<bool>()) {
        let g = gen_random_clawfree_cubic(seed, &RandomParams::default(), bridged).unwrap();
        prop_assert!(is_cubic(&g) && find_claw(&g).is_none() && g.is_connected());
        let r = color_graph_report(&g).unwrap();
        prop_assert!(is_valid(&g, &r.coloring, &PackingSpec::default()));
        for (&e, &c) in &r.coloring {
            if c == PackingColor::A3 {
                prop_assert!(!on_triangle(&g, e));
            }
        }
        for p in ColorPermutation::all() {
            prop_assert!(is_valid(&g, &apply_permutation(&r.coloring, p), &PackingSpec::default()));
        }
    }

    #[test]
    fn coloring_is_deterministic(seed in 0u64..10_000) {
        let g = gen_random_clawfree_cubic(seed, &RandomParams::default(), true).unwrap();
        prop_assert_eq!(color_graph(&g).unwrap(), color_graph(&g).unwrap());
    }

    #[test]
    fn substitution_round_trips(seed in 0u64..10_000, n in 1usize..6, len in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_cubic_multigraph(&mut rng, 2 * n).unwrap();
        let strings = h.edge_ids().take(2).map(|e| (e, len)).filter(|&(_, k)| k > 0).collect();
        let (g, truth) = gen_substituted(&SubstitutionPlan { h: h.clone(), strings }).unwrap();
        let OumDecomposition::Substituted(truth) = truth else { unreachable!() };
        prop_assert_eq!(g.vertex_count(), 3 * h.vertex_count() + 4 * truth.total_diamonds());
        match oum_decompose(&g).unwrap() {
            OumDecomposition::Substituted(sub) => {
                prop_assert_eq!(sub.h.vertex_count(), h.vertex_count());
                prop_assert_eq!(sub.total_diamonds(), truth.total_diamonds());
            }
            other => prop_assert!(false, "unexpected {}", other.variant_name()),
        }
    }

    #[test]
    fn every_edge_lies_on_a_two_factor(seed in 0u64..10_000, n in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_cubic_multigraph(&mut rng, 2 * n).unwrap();
        for e in h.edge_ids() {
            let f = two_factor_containing(&h, &BTreeSet::from([e])).unwrap();
            prop_assert!(is_valid_two_factor(&h, &f));
            prop_assert!(!f.complement.contains(&e));
        }
    }
}
