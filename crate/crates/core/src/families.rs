//! Graph generators: named graphs, substituted and bridged constructions,
//! seeded random claw-free cubic graphs, small cubic multigraphs and the test
//! corpus built from them.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, GraphError, MultiGraph, VertexId};
use crate::iso::{are_isomorphic_small, fingerprint};
use crate::recognition::{find_claw, is_cubic, is_two_edge_connected};
use crate::structure::{
    build_tilde, component_boundary, ring_of_diamonds, substitute, OumDecomposition, StructureError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("count {0} is too small")]
    BadCount(usize),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const MAX_RETRIES: usize = 1000;

pub fn gen_k4() -> MultiGraph {
    MultiGraph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("static edge list")
}

pub fn gen_ring(k: usize) -> Result<MultiGraph, FamilyError> {
    if k < 2 {
        return Err(FamilyError::BadCount(k));
    }
    Ok(ring_of_diamonds(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionPlan {
    pub h: MultiGraph,
    /// String length per replaced `H` edge.
    pub strings: BTreeMap<EdgeId, usize>,
}

impl SubstitutionPlan {
    pub fn plain(h: MultiGraph) -> Self {
        SubstitutionPlan {
            h,
            strings: BTreeMap::new(),
        }
    }

    fn check(&self) -> Result<(), FamilyError> {
        if !is_cubic(&self.h) {
            return Err(FamilyError::InvalidPlan("H is not cubic".into()));
        }
        if self.h.edges().any(|(_, u, v)| u == v) {
            return Err(FamilyError::InvalidPlan("H has a loop".into()));
        }
        if !is_two_edge_connected(&self.h) {
            return Err(FamilyError::InvalidPlan("H is not 2-edge-connected".into()));
        }
        for (&e, &k) in &self.strings {
            if !self.h.contains_edge(e) {
                return Err(FamilyError::InvalidPlan(format!("{e} is not an edge of H")));
            }
            if k == 0 {
                return Err(FamilyError::InvalidPlan(format!("string on {e} has length 0")));
            }
        }
        Ok(())
    }
}

pub fn gen_substituted(plan: &SubstitutionPlan) -> Result<(MultiGraph, OumDecomposition), FamilyError> {
    plan.check()?;
    let (g, sub) = substitute(&plan.h, &plan.strings)?;
    Ok((g, OumDecomposition::Substituted(sub)))
}

/// Kneser graph on the 2-subsets of a 5-set.
pub fn gen_petersen() -> MultiGraph {
    let pairs: Vec<(u32, u32)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((i as u32, j as u32));
            }
        }
    }
    MultiGraph::from_edges(&edges).expect("static edge list")
}

/// Replaces a degree-3 vertex by a triangle, one corner per former neighbor.
pub fn blow_up_vertex(g: &MultiGraph, x: VertexId) -> Result<MultiGraph, FamilyError> {
    let nb: Vec<VertexId> = g.incident(x).iter().map(|&e| g.other_end(e, x)).collect::<Result<_, _>>()?;
    if nb.len() != 3 || nb.contains(&x) {
        return Err(FamilyError::InvalidPlan(format!("{x} is not a loopless degree-3 vertex")));
    }
    let mut out = g.clone();
    out.remove_vertex(x)?;
    let t = [out.add_vertex(), out.add_vertex(), out.add_vertex()];
    out.add_edge(t[0], t[1])?;
    out.add_edge(t[1], t[2])?;
    out.add_edge(t[0], t[2])?;
    for (c, y) in t.into_iter().zip(nb) {
        out.add_edge(c, y)?;
    }
    Ok(out)
}

/// Petersen graph with one vertex replaced by a triangle.
pub fn gen_tietze() -> MultiGraph {
    blow_up_vertex(&gen_petersen(), VertexId(0)).expect("Petersen is cubic")
}

/// `v=0 u=1 w=2 s=3 b=4 z1=5 z2=6`
const LEAF7: [(u32, u32); 10] = [(1, 0), (0, 2), (1, 2), (1, 3), (2, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)];

pub fn gen_leaf7() -> MultiGraph {
    MultiGraph::from_edges(&LEAF7).expect("static edge list")
}

/// Two leaf7 copies joined by a bridge between their degree-2 vertices
/// (`0` and `7`, edge `20`).
pub fn gen_leaf7_pair() -> MultiGraph {
    let mut edges = LEAF7.to_vec();
    edges.extend(LEAF7.iter().map(|&(a, b)| (a + 7, b + 7)));
    edges.push((0, 7));
    MultiGraph::from_edges(&edges).expect("static edge list")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentRecipe {
    K3,
    Diamond,
    /// `base` is a 2-edge-connected claw-free cubic graph; each edge in
    /// `pendant` is split by a triangle whose third corner is left at
    /// degree 2. The edges must lie on no triangle unless `base` is `K4`
    /// and only one is split.
    Big { base: MultiGraph, pendant: Vec<EdgeId> },
}

impl ComponentRecipe {
    fn ports(&self) -> usize {
        match self {
            ComponentRecipe::K3 => 3,
            ComponentRecipe::Diamond => 2,
            ComponentRecipe::Big { pendant, .. } => pendant.len(),
        }
    }
}

/// Components on a tree; `parent[0]` is `None`, every other node names an
/// earlier node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgedPlan {
    pub components: Vec<ComponentRecipe>,
    pub parent: Vec<Option<usize>>,
}

/// Splits each listed edge `s b` into `s u`, `w b` plus the triangle `u v w`.
/// Returns the graph and the new degree-2 vertices.
pub fn split_with_pendants(base: &MultiGraph, edges: &[EdgeId]) -> Result<(MultiGraph, Vec<VertexId>), FamilyError> {
    let mut g = base.clone();
    let mut apexes = Vec::with_capacity(edges.len());
    for &e in edges {
        let (s, b) = g.remove_edge(e)?;
        let [u, v, w] = [g.add_vertex(), g.add_vertex(), g.add_vertex()];
        for (x, y) in [(s, u), (u, v), (v, w), (u, w), (w, b)] {
            g.add_edge(x, y)?;
        }
        apexes.push(v);
    }
    Ok((g, apexes))
}

/// Builds a recipe's component and its ports, checking big components
/// against the boundary and tilde conditions.
fn build_component(recipe: &ComponentRecipe) -> Result<(MultiGraph, Vec<VertexId>), FamilyError> {
    match recipe {
        ComponentRecipe::K3 => {
            let g = MultiGraph::from_edges(&[(0, 1), (1, 2), (0, 2)])?;
            Ok((g, vec![VertexId(0), VertexId(1), VertexId(2)]))
        }
        ComponentRecipe::Diamond => {
            let g = MultiGraph::from_edges(&[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])?;
            Ok((g, vec![VertexId(0), VertexId(3)]))
        }
        ComponentRecipe::Big { base, pendant } => {
            if pendant.is_empty() {
                return Err(FamilyError::InvalidPlan("big component without degree-2 vertices".into()));
            }
            let (g, apexes) = split_with_pendants(base, pendant)?;
            if find_claw(&g).is_some() || !is_two_edge_connected(&g) {
                return Err(FamilyError::InvalidPlan("big component is not claw-free and 2-edge-connected".into()));
            }
            let boundary = component_boundary(&g, None)?;
            build_tilde(&g, &boundary)?;
            Ok((g, apexes))
        }
    }
}

pub fn gen_bridged(plan: &BridgedPlan) -> Result<MultiGraph, FamilyError> {
    let n = plan.components.len();
    if n == 0 || plan.parent.len() != n || plan.parent[0].is_some() {
        return Err(FamilyError::InvalidPlan("malformed tree".into()));
    }
    let mut degree = vec![0usize; n];
    for (i, p) in plan.parent.iter().enumerate().skip(1) {
        match *p {
            Some(p) if p < i => {
                degree[i] += 1;
                degree[p] += 1;
            }
            _ => return Err(FamilyError::InvalidPlan(format!("node {i} has no earlier parent"))),
        }
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut free_ports: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut offset = 0u32;
    for (i, recipe) in plan.components.iter().enumerate() {
        if recipe.ports() != degree[i] {
            return Err(FamilyError::InvalidPlan(format!(
                "node {i} has {} ports but {} tree edges",
                recipe.ports(),
                degree[i]
            )));
        }
        let (g, ports) = build_component(recipe)?;
        let index = g.vertex_index();
        edges.extend(
            g.edges()
                .map(|(_, a, b)| (offset + index[&a] as u32, offset + index[&b] as u32)),
        );
        free_ports.push(ports.iter().rev().map(|p| offset + index[p] as u32).collect());
        offset += g.vertex_count() as u32;
    }
    for (i, p) in plan.parent.iter().enumerate().skip(1) {
        let p = p.expect("checked");
        let a = free_ports[p].pop().expect("port count checked");
        let b = free_ports[i].pop().expect("port count checked");
        edges.push((a, b));
    }
    Ok(MultiGraph::from_edges(&edges)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RandomParams {
    /// Vertex count range of `H`, even values only.
    pub h_vertices: (usize, usize),
    pub max_strings: usize,
    pub max_string_len: usize,
    /// Component count range for bridged graphs.
    pub components: (usize, usize),
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            h_vertices: (2, 8),
            max_strings: 3,
            max_string_len: 3,
            components: (2, 5),
        }
    }
}

/// 2-regular multigraph from a random permutation plus a random perfect
/// matching; loops and bridges are rejected.
pub fn random_cubic_multigraph(rng: &mut impl Rng, n: usize) -> Result<MultiGraph, FamilyError> {
    if n < 2 || n % 2 == 1 {
        return Err(FamilyError::BadCount(n));
    }
    for _ in 0..MAX_RETRIES {
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(rng);
        if perm.iter().enumerate().any(|(i, &p)| p == i as u32) {
            continue;
        }
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.shuffle(rng);
        let mut edges: Vec<(u32, u32)> = perm.iter().enumerate().map(|(i, &p)| (i as u32, p)).collect();
        edges.extend(order.chunks(2).map(|c| (c[0], c[1])));
        if edges.iter().any(|(a, b)| a == b) {
            continue;
        }
        let h = MultiGraph::from_edges(&edges)?;
        if is_two_edge_connected(&h) {
            return Ok(h);
        }
    }
    Err(FamilyError::GenerationFailed { attempts: MAX_RETRIES })
}

fn random_plan(rng: &mut impl Rng, params: &RandomParams) -> Result<SubstitutionPlan, FamilyError> {
    let (lo, hi) = params.h_vertices;
    let evens: Vec<usize> = (lo.max(2)..=hi).filter(|n| n % 2 == 0).collect();
    let &n = evens
        .choose(rng)
        .ok_or_else(|| FamilyError::InvalidPlan(format!("no even size in {lo}..={hi}")))?;
    let h = random_cubic_multigraph(rng, n)?;
    let mut ids: Vec<EdgeId> = h.edge_ids().collect();
    ids.shuffle(rng);
    let count = rng.gen_range(0..=params.max_strings.min(ids.len()));
    let strings = ids
        .into_iter()
        .take(count)
        .map(|e| (e, rng.gen_range(1..=params.max_string_len.max(1))))
        .collect();
    Ok(SubstitutionPlan { h, strings })
}

fn random_bridgeless(rng: &mut impl Rng, params: &RandomParams) -> Result<MultiGraph, FamilyError> {
    if rng.gen_bool(0.1) {
        return gen_ring(rng.gen_range(2..=6));
    }
    Ok(gen_substituted(&random_plan(rng, params)?)?.0)
}

fn off_triangle_edges(g: &MultiGraph) -> Vec<EdgeId> {
    g.edges()
        .filter(|&(_, a, b)| g.neighbor_set(a).intersection(&g.neighbor_set(b)).next().is_none())
        .map(|(e, _, _)| e)
        .collect()
}

fn random_big(rng: &mut impl Rng, params: &RandomParams, ports: usize) -> Result<ComponentRecipe, FamilyError> {
    if ports == 1 && rng.gen_bool(0.25) {
        let base = gen_k4();
        let e = EdgeId(rng.gen_range(0..6));
        return Ok(ComponentRecipe::Big { base, pendant: vec![e] });
    }
    for _ in 0..MAX_RETRIES {
        let base = random_bridgeless(rng, params)?;
        let mut free = off_triangle_edges(&base);
        if free.len() < ports {
            continue;
        }
        free.shuffle(rng);
        free.truncate(ports);
        return Ok(ComponentRecipe::Big { base, pendant: free });
    }
    Err(FamilyError::GenerationFailed { attempts: MAX_RETRIES })
}

pub fn random_bridged_plan(rng: &mut impl Rng, params: &RandomParams) -> Result<BridgedPlan, FamilyError> {
    let (lo, hi) = params.components;
    if hi < 2 || lo > hi {
        return Err(FamilyError::InvalidPlan(format!("component range {lo}..={hi}")));
    }
    let n = rng.gen_range(lo.max(2)..=hi);
    let parent: Vec<Option<usize>> = (0..n).map(|i| (i > 0).then(|| rng.gen_range(0..i))).collect();
    let mut degree = vec![0usize; n];
    for (i, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            degree[i] += 1;
            degree[p] += 1;
        }
    }
    let components = degree
        .iter()
        .map(|&d| match d {
            3 if rng.gen_bool(0.3) => Ok(ComponentRecipe::K3),
            2 if rng.gen_bool(0.3) => Ok(ComponentRecipe::Diamond),
            _ => random_big(rng, params, d),
        })
        .collect::<Result<_, _>>()?;
    Ok(BridgedPlan { components, parent })
}

/// Seeded random connected claw-free cubic graph; with `bridged` it has at
/// least one bridge, otherwise none.
pub fn gen_random_clawfree_cubic(seed: u64, params: &RandomParams, bridged: bool) -> Result<MultiGraph, FamilyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let g = if bridged {
            match gen_bridged(&random_bridged_plan(&mut rng, params)?) {
                Ok(g) => g,
                Err(FamilyError::InvalidPlan(_) | FamilyError::Structure(_)) => continue,
                Err(e) => return Err(e),
            }
        } else {
            random_bridgeless(&mut rng, params)?
        };
        if is_cubic(&g) && g.is_connected() && find_claw(&g).is_none() && is_two_edge_connected(&g) != bridged {
            return Ok(g);
        }
    }
    Err(FamilyError::GenerationFailed { attempts: MAX_RETRIES })
}

/// Connected loopless cubic multigraphs on `n` vertices, one per
/// isomorphism class.
pub fn cubic_multigraphs(n: usize) -> Vec<MultiGraph> {
    if n < 2 || n % 2 == 1 || n > crate::iso::ISO_VERTEX_LIMIT {
        return Vec::new();
    }
    let mut e = Enumeration {
        n,
        rem: vec![3; n],
        edges: Vec::new(),
        labelled: 1,
        found: Vec::new(),
    };
    e.fill(0, 1);
    e.found.into_iter().map(|(g, _)| g).collect()
}

/// Multiplicity assignments in BFS order: vertex `j` may first be reached
/// only when `0..j` are already reached, so every labelling is a BFS
/// labelling of a connected graph.
struct Enumeration {
    n: usize,
    rem: Vec<u8>,
    edges: Vec<(u32, u32)>,
    /// vertices `0..labelled` have been reached
    labelled: usize,
    found: Vec<(MultiGraph, crate::iso::Fingerprint)>,
}

impl Enumeration {
    fn fill(&mut self, i: usize, j: usize) {
        let n = self.n;
        if i == n {
            let g = MultiGraph::with_vertices(n as u32, &self.edges).expect("valid edge list");
            let fp = fingerprint(&g);
            let seen = self
                .found
                .iter()
                .any(|(f, ffp)| *ffp == fp && are_isomorphic_small(f, &g).expect("small"));
            if !seen {
                self.found.push((g, fp));
            }
            return;
        }
        if j == n {
            // the next row must already be reached
            if self.rem[i] == 0 && (i + 1 == n || i + 1 < self.labelled) {
                self.fill(i + 1, i + 2);
            }
            return;
        }
        if j > self.labelled {
            // unreached and not next in line: skip to row end
            if self.rem[i] == 0 {
                self.fill(i, n);
            }
            return;
        }
        let top = self.rem[i].min(self.rem[j]);
        for m in 0..=top {
            if m > 0 && j == self.labelled {
                self.labelled += 1;
            }
            self.rem[i] -= m;
            self.rem[j] -= m;
            self.edges.extend(std::iter::repeat((i as u32, j as u32)).take(m as usize));
            self.fill(i, j + 1);
            self.edges.truncate(self.edges.len() - m as usize);
            self.rem[i] += m;
            self.rem[j] += m;
            if m > 0 && j + 1 == self.labelled && self.rem[j] == 3 {
                self.labelled -= 1;
            }
        }
    }
}

/// The `H` graphs: 2-edge-connected loopless cubic multigraphs on up to
/// `max_n` vertices.
pub fn two_edge_connected_cubic_multigraphs(max_n: usize) -> Vec<MultiGraph> {
    (2..=max_n)
        .step_by(2)
        .flat_map(cubic_multigraphs)
        .filter(is_two_edge_connected)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub family: String,
    pub graph: MultiGraph,
    /// Decomposition the generator used, when it built one.
    pub truth: Option<OumDecomposition>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusParams {
    pub seed: u64,
    pub max_h_vertices: usize,
    pub random_bridgeless: usize,
    pub random_bridged: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            seed: 1,
            max_h_vertices: 8,
            random_bridgeless: 150,
            random_bridged: 200,
        }
    }
}

/// Connected claw-free cubic graphs: `K4`, rings of 2 to 10 diamonds, every
/// small `H` substituted with 0 to 3 strings of length 1 to 3, the leaf7
/// examples and seeded random graphs with and without bridges.
pub fn build_corpus(params: &CorpusParams) -> Result<Vec<CorpusEntry>, FamilyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::new();
    let mut push = |name: String, family: &str, graph: MultiGraph, truth: Option<OumDecomposition>| {
        out.push(CorpusEntry {
            name,
            family: family.to_string(),
            graph,
            truth,
        })
    };
    push("k4".into(), "k4", gen_k4(), Some(OumDecomposition::IsK4));
    for k in 2..=10 {
        push(format!("ring-{k}"), "ring", gen_ring(k)?, Some(OumDecomposition::RingOfDiamonds(k)));
    }
    for (i, h) in two_edge_connected_cubic_multigraphs(params.max_h_vertices).into_iter().enumerate() {
        let n = h.vertex_count();
        let ids: Vec<EdgeId> = h.edge_ids().collect();
        let mut variants: Vec<BTreeMap<EdgeId, usize>> = vec![BTreeMap::new()];
        for count in 1..=3usize.min(ids.len()) {
            for len in 1..=3 {
                let chosen: Vec<EdgeId> = ids.choose_multiple(&mut rng, count).copied().collect();
                variants.push(chosen.into_iter().map(|e| (e, len)).collect());
            }
        }
        for (j, strings) in variants.into_iter().enumerate() {
            let (g, d) = gen_substituted(&SubstitutionPlan { h: h.clone(), strings })?;
            push(format!("sub-n{n}-h{i}-{j}"), "substituted", g, Some(d));
        }
    }
    push("leaf7-pair".into(), "bridged", gen_leaf7_pair(), None);
    let rp = RandomParams::default();
    for i in 0..params.random_bridgeless {
        let seed = params.seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        push(format!("random-{i}"), "random", gen_random_clawfree_cubic(seed, &rp, false)?, None);
    }
    for i in 0..params.random_bridged {
        let seed = params.seed.wrapping_mul(1_000_033).wrapping_add(i as u64);
        push(format!("bridged-{i}"), "bridged", gen_random_clawfree_cubic(seed, &rp, true)?, None);
    }
    Ok(out)
}

/// Number of triangles.
pub fn triangle_count(g: &MultiGraph) -> usize {
    let mut seen: BTreeSet<[VertexId; 3]> = BTreeSet::new();
    for (_, a, b) in g.edges() {
        for c in g.neighbor_set(a).intersection(&g.neighbor_set(b)) {
            if *c != a && *c != b {
                let mut t = [a, b, *c];
                t.sort();
                seen.insert(t);
            }
        }
    }
    seen.len()
}
