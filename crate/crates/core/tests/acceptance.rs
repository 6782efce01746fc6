//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use packing_core::color::{class_sizes, PackingColor};
use packing_core::colorer::{color_graph, color_graph_report, three_a_edges};
use packing_core::families::{
    build_corpus, gen_leaf7_pair, gen_petersen, gen_ring, gen_tietze, two_edge_connected_cubic_multigraphs,
    CorpusEntry, CorpusParams,
};
use packing_core::graph::{edge_distance, line_graph, Distance, EdgeId, MultiGraph, VertexId};
use packing_core::iso::{are_isomorphic_small, fingerprint, ISO_VERTEX_LIMIT};
use packing_core::matching::two_factor_containing;
use packing_core::oracle::{oracle_search, OracleOptions, OracleOutcome, DEFAULT_BUDGET};
use packing_core::recognition::{find_bridges, is_claw_free, is_cubic};
use packing_core::structure::{oum_decompose, reconstruct};
use packing_core::verify::{verify, PackingSpec};

const CORPUS_SIZE_MIN: usize = 500;
const CORPUS_BRIDGED_MIN: usize = 100;
const CORPUS_TIME_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_BUDGET: u64 = DEFAULT_BUDGET;
const SMALL_VERTICES: usize = 14;
const H_MAX_VERTICES: usize = 8;
const DISTANCE_GRAPHS: usize = 50;
const DISTANCE_MAX_VERTICES: u32 = 30;
const THREE_A_MIN_DISTANCE: usize = 4;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn spec(text: &str) -> PackingSpec {
    text.parse().expect("static spec")
}

fn criterion_1(corpus: &[CorpusEntry], backtracks: &mut usize) -> Outcome {
    let rings: BTreeSet<usize> = (2..=10)
        .filter(|k| corpus.iter().any(|e| e.name == format!("ring-{k}")))
        .collect();
    let substituted = corpus.iter().filter(|e| e.family == "substituted").count();
    let bridged = corpus.iter().filter(|e| !find_bridges(&e.graph).is_empty()).count();
    let start = Instant::now();
    let mut failures = Vec::new();
    for e in corpus {
        match color_graph_report(&e.graph) {
            Ok(r) => {
                *backtracks += r.backtracks;
                if !matches!(verify(&e.graph, &r.coloring, &PackingSpec::default()), Ok(v) if v.is_empty()) {
                    failures.push(format!("{}: invalid", e.name));
                }
            }
            Err(err) => failures.push(format!("{}: {err}", e.name)),
        }
    }
    let elapsed = start.elapsed();
    let ok = corpus.len() >= CORPUS_SIZE_MIN
        && rings.len() == 9
        && substituted > 0
        && bridged >= CORPUS_BRIDGED_MIN
        && failures.is_empty()
        && elapsed < CORPUS_TIME_LIMIT;
    outcome(
        ok,
        format!(
            "{} graphs ({} substituted, {} with bridges, rings {:?}), {} failures {:?}, {:.2}s (limit {}s)",
            corpus.len(),
            substituted,
            bridged,
            rings,
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>(),
            elapsed.as_secs_f64(),
            CORPUS_TIME_LIMIT.as_secs()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, g) in [("petersen", gen_petersen()), ("tietze", gen_tietze())] {
        let start = Instant::now();
        let r = oracle_search(
            &g,
            &PackingSpec::default(),
            OracleOptions {
                budget: ORACLE_BUDGET,
                ..OracleOptions::default()
            },
        );
        let t = start.elapsed();
        ok &= r.outcome == OracleOutcome::Infeasible && t < ORACLE_TIME_LIMIT && r.nodes <= ORACLE_BUDGET;
        parts.push(format!("{name}: {:?} in {} nodes, {:.2}s", r.outcome, r.nodes, t.as_secs_f64()));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for k in 2..=10 {
        let g = gen_ring(k).expect("k >= 2");
        match color_graph(&g) {
            Ok(c) if class_sizes(&c) == [2 * k, 2 * k, 2 * k, 0] => {}
            Ok(c) => bad.push(format!("k={k}: {:?}", class_sizes(&c))),
            Err(e) => bad.push(format!("k={k}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("k=2..10, class sizes (2k,2k,2k,0); mismatches {bad:?}"))
}

fn small_cubic(corpus: &[CorpusEntry]) -> Vec<(String, MultiGraph)> {
    corpus
        .iter()
        .filter(|e| e.graph.vertex_count() <= SMALL_VERTICES && is_cubic(&e.graph))
        .map(|e| (e.name.clone(), e.graph.clone()))
        .collect()
}

fn criterion_4(corpus: &[CorpusEntry]) -> Outcome {
    let mut graphs = small_cubic(corpus);
    graphs.push(("petersen".into(), gen_petersen()));
    graphs.push(("tietze".into(), gen_tietze()));
    let s = spec("1,1,1,2");
    let bad: Vec<String> = graphs
        .iter()
        .filter(|(_, g)| !oracle_search(g, &s, OracleOptions::default()).outcome.is_feasible())
        .map(|(n, _)| n.clone())
        .collect();
    outcome(
        bad.is_empty(),
        format!("{} graphs with <= {SMALL_VERTICES} vertices, (1,1,1,2) infeasible or undecided on {bad:?}", graphs.len()),
    )
}

fn criterion_5() -> Outcome {
    let hs = two_edge_connected_cubic_multigraphs(H_MAX_VERTICES);
    let mut pairs = 0;
    let mut failures = 0;
    for h in &hs {
        let ids: Vec<EdgeId> = h.edge_ids().collect();
        for (i, &e) in ids.iter().enumerate() {
            for &f in &ids[i + 1..] {
                pairs += 1;
                if two_factor_containing(h, &BTreeSet::from([e, f])).is_err() {
                    failures += 1;
                }
            }
        }
    }
    outcome(
        failures == 0 && !hs.is_empty(),
        format!("{} multigraphs, {pairs} edge pairs, {failures} failures", hs.len()),
    )
}

fn criterion_6(corpus: &[CorpusEntry]) -> Outcome {
    let graphs: Vec<(String, MultiGraph)> = small_cubic(corpus)
        .into_iter()
        .filter(|(_, g)| is_claw_free(g))
        .collect();
    let mut disagree = Vec::new();
    for (name, g) in &graphs {
        let oracle = oracle_search(g, &PackingSpec::default(), OracleOptions::default()).outcome;
        let colored = color_graph(g).is_ok();
        if !oracle.is_feasible() || !colored {
            disagree.push(format!("{name}: oracle {oracle:?}, colorer ok={colored}"));
        }
    }
    outcome(
        disagree.is_empty() && !graphs.is_empty(),
        format!("{} claw-free graphs with <= {SMALL_VERTICES} vertices, disagreements {disagree:?}", graphs.len()),
    )
}

fn same_graph(a: &MultiGraph, b: &MultiGraph) -> bool {
    if a.vertex_count() <= ISO_VERTEX_LIMIT && b.vertex_count() <= ISO_VERTEX_LIMIT {
        are_isomorphic_small(a, b).unwrap_or(false)
    } else {
        fingerprint(a) == fingerprint(b)
    }
}

fn criterion_7(corpus: &[CorpusEntry]) -> Outcome {
    let mut checked = 0;
    let mut exact = 0;
    let mut bad = Vec::new();
    for e in corpus.iter().filter(|e| e.family == "substituted") {
        let Some(truth) = &e.truth else {
            bad.push(format!("{}: no ground truth", e.name));
            continue;
        };
        checked += 1;
        if e.graph.vertex_count() <= ISO_VERTEX_LIMIT {
            exact += 1;
        }
        match oum_decompose(&e.graph) {
            Ok(d) => {
                let rebuilt = reconstruct(&d).expect("decomposition rebuilds");
                let from_truth = reconstruct(truth).expect("ground truth rebuilds");
                if d.variant_name() != truth.variant_name()
                    || !same_graph(&rebuilt, &e.graph)
                    || !same_graph(&from_truth, &e.graph)
                {
                    bad.push(e.name.clone());
                }
            }
            Err(err) => bad.push(format!("{}: {err}", e.name)),
        }
    }
    outcome(
        bad.is_empty() && checked > 0,
        format!("{checked} substituted graphs ({exact} exact iso, rest fingerprint), mismatches {bad:?}"),
    )
}

fn random_graph(rng: &mut ChaCha8Rng) -> MultiGraph {
    let n = rng.gen_range(2..=DISTANCE_MAX_VERTICES);
    let p = rng.gen_range(0.05..0.3);
    let mut g = MultiGraph::new();
    for v in 0..n {
        g.ensure_vertex(VertexId(v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(a), VertexId(b)).expect("distinct ends");
            }
        }
    }
    g
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0usize;
    let mut mismatches = 0usize;
    for _ in 0..DISTANCE_GRAPHS {
        let g = random_graph(&mut rng);
        let lg = line_graph(&g);
        for e in g.edge_ids() {
            let dist = lg.bfs_distances(VertexId(e.0));
            for f in g.edge_ids() {
                pairs += 1;
                let expected = dist.get(&VertexId(f.0)).map_or(Distance::Infinite, |&d| Distance::Finite(d));
                if edge_distance(&g, e, f).ok() != Some(expected) {
                    mismatches += 1;
                }
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{DISTANCE_GRAPHS} graphs up to {DISTANCE_MAX_VERTICES} vertices, {pairs} edge pairs, {mismatches} mismatches"),
    )
}

fn criterion_9() -> Outcome {
    let g = gen_leaf7_pair();
    let bridge = EdgeId(20);
    match color_graph(&g) {
        Ok(c) => {
            let a3: Vec<EdgeId> = three_a_edges(&c).into_iter().collect();
            let far = a3.len() == 2
                && edge_distance(&g, a3[0], a3[1]).is_ok_and(|d| d >= Distance::Finite(THREE_A_MIN_DISTANCE));
            let valid = matches!(verify(&g, &c, &PackingSpec::default()), Ok(v) if v.is_empty());
            let bridge_color = c.get(&bridge).copied();
            outcome(
                far && valid && bridge_color == Some(PackingColor::C1),
                format!("3a edges {a3:?}, bridge {bridge} colored {bridge_color:?}, valid={valid}"),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() -> ExitCode {
    let corpus = match build_corpus(&CorpusParams::default()) {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL corpus construction: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut backtracks = 0;
    let results = vec![
        ("1 corpus colored and verified", criterion_1(&corpus, &mut backtracks)),
        ("2 Petersen and Tietze infeasible for (1,1,1,3)", criterion_2()),
        ("3 rings of diamonds use three matchings", criterion_3()),
        ("4 (1,1,1,2) feasible on small cubic graphs", criterion_4(&corpus)),
        ("5 two edges always extend to a 2-factor", criterion_5()),
        ("6 oracle agrees on small claw-free graphs", criterion_6(&corpus)),
        ("7 decomposition round trip", criterion_7(&corpus)),
        ("8 edge distance matches the line graph", criterion_8()),
        ("9 leaf7 pair worked instance", criterion_9()),
        (
            "10 corpus backtracks reported",
            outcome(true, format!("{backtracks} verify-and-retry backtracks over the corpus")),
        ),
    ];
    let mut all = true;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        all &= o.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
