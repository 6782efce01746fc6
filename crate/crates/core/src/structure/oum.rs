//! Decomposition of 2-edge-connected claw-free cubic graphs into `K4`, a ring
//! of diamonds, or a cubic multigraph `H` whose vertices were blown up into
//! triangles and some of whose edges were replaced by diamond strings.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::diamonds::{find_diamonds, group_strings, ring_of_diamonds, Diamond, DiamondString, StringGrouping};
use super::StructureError;
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::recognition::{is_cubic, is_two_edge_connected};

/// How one edge of `H` appears in `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Realization {
    Plain(EdgeId),
    String(DiamondString),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HEdge {
    /// `(H endpoint, triangle vertex of G it attaches to)`; for strings
    /// `ends[0]` is the string's left attachment.
    pub ends: [(VertexId, VertexId); 2],
    pub realization: Realization,
}

impl HEdge {
    /// The triangle vertex this edge uses at H-vertex `h`.
    pub fn attach_at(&self, h: VertexId) -> VertexId {
        if self.ends[0].0 == h {
            self.ends[0].1
        } else {
            debug_assert_eq!(self.ends[1].0, h);
            self.ends[1].1
        }
    }

    pub fn string_len(&self) -> usize {
        match &self.realization {
            Realization::Plain(_) => 0,
            Realization::String(s) => s.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub h: MultiGraph,
    /// H vertex -> its triangle in G (ascending vertex ids).
    pub triangle_of: BTreeMap<VertexId, [VertexId; 3]>,
    pub realization_of: BTreeMap<EdgeId, HEdge>,
}

impl Substitution {
    pub fn total_diamonds(&self) -> usize {
        self.realization_of.values().map(HEdge::string_len).sum()
    }

    /// String lengths per H edge, zero entries omitted.
    pub fn string_lengths(&self) -> BTreeMap<EdgeId, usize> {
        self.realization_of
            .iter()
            .filter(|(_, r)| r.string_len() > 0)
            .map(|(&e, r)| (e, r.string_len()))
            .collect()
    }

    /// Triangle edge of `G` joining two vertices of the triangle of `h`.
    pub fn triangle_edge(&self, g: &MultiGraph, a: VertexId, b: VertexId) -> Result<EdgeId, StructureError> {
        g.edge_between(a, b)
            .ok_or_else(|| StructureError::NotDecomposable(format!("triangle edge {a}-{b} missing")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OumDecomposition {
    IsK4,
    RingOfDiamonds(usize),
    Substituted(Substitution),
}

impl OumDecomposition {
    pub fn variant_name(&self) -> &'static str {
        match self {
            OumDecomposition::IsK4 => "k4",
            OumDecomposition::RingOfDiamonds(_) => "ring",
            OumDecomposition::Substituted(_) => "substituted",
        }
    }
}

pub fn is_k4(g: &MultiGraph) -> bool {
    g.vertex_count() == 4 && g.edge_count() == 6 && g.is_simple() && is_cubic(g)
}

fn fail<T>(msg: impl Into<String>) -> Result<T, StructureError> {
    Err(StructureError::NotDecomposable(msg.into()))
}

pub fn oum_decompose(g: &MultiGraph) -> Result<OumDecomposition, StructureError> {
    if !is_cubic(g) {
        return fail("graph is not cubic");
    }
    if !g.is_simple() {
        return fail("graph has parallel edges");
    }
    if !is_two_edge_connected(g) {
        return fail("graph is not 2-edge-connected");
    }
    if is_k4(g) {
        return Ok(OumDecomposition::IsK4);
    }
    let diamonds = find_diamonds(g);
    let strings = match group_strings(g, &diamonds)? {
        StringGrouping::Ring => {
            let covered: usize = diamonds.len() * 4;
            if covered != g.vertex_count() {
                return fail("closed chain of diamonds does not cover the graph");
            }
            return Ok(OumDecomposition::RingOfDiamonds(diamonds.len()));
        }
        StringGrouping::Strings(s) => s,
    };

    // contract each string to a fresh edge between its attachments
    let mut reduced = g.clone();
    let mut contracted: BTreeMap<EdgeId, DiamondString> = BTreeMap::new();
    for s in &strings {
        if s.attach_left == s.attach_right {
            return fail(format!("string closes on vertex {}", s.attach_left));
        }
        for v in s.vertices() {
            reduced.remove_vertex(v)?;
        }
        let e = reduced.add_edge(s.attach_left, s.attach_right)?;
        contracted.insert(e, s.clone());
    }

    // every remaining vertex must lie in exactly one triangle
    let mut triangle_at: BTreeMap<VertexId, [VertexId; 3]> = BTreeMap::new();
    for v in reduced.vertices() {
        let nb: Vec<VertexId> = reduced.neighbor_set(v).into_iter().collect();
        let mut found = Vec::new();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if reduced.has_edge(nb[i], nb[j]) {
                    let mut t = [v, nb[i], nb[j]];
                    t.sort();
                    found.push(t);
                }
            }
        }
        match found.as_slice() {
            [t] => {
                triangle_at.insert(v, *t);
            }
            [] => return fail(format!("vertex {v} lies on no triangle")),
            _ => return fail(format!("vertex {v} lies on {} triangles", found.len())),
        }
    }
    let triangles: BTreeSet<[VertexId; 3]> = triangle_at.values().copied().collect();
    for t in &triangles {
        if t.iter().any(|x| triangle_at[x] != *t) {
            return fail("triangles overlap");
        }
    }

    let mut h = MultiGraph::new();
    let mut triangle_of = BTreeMap::new();
    let mut node_of: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for t in &triangles {
        let hv = h.add_vertex();
        triangle_of.insert(hv, *t);
        for &x in t {
            node_of.insert(x, hv);
        }
    }
    let mut realization_of = BTreeMap::new();
    for (e, a, b) in reduced.edges() {
        let (ha, hb) = (node_of[&a], node_of[&b]);
        if ha == hb {
            if reduced.edges_between(a, b).len() > 1 {
                return fail(format!("edge {e} doubles a triangle edge"));
            }
            continue;
        }
        let (realization, ends) = match contracted.get(&e) {
            Some(s) => {
                let ends = [(node_of[&s.attach_left], s.attach_left), (node_of[&s.attach_right], s.attach_right)];
                (Realization::String(s.clone()), ends)
            }
            None => (Realization::Plain(e), [(ha, a), (hb, b)]),
        };
        let he = h.add_edge(ends[0].0, ends[1].0)?;
        realization_of.insert(he, HEdge { ends, realization });
    }

    if !is_cubic(&h) || !is_two_edge_connected(&h) {
        return fail("contracted multigraph is not a 2-edge-connected cubic multigraph");
    }
    Ok(OumDecomposition::Substituted(Substitution {
        h,
        triangle_of,
        realization_of,
    }))
}

/// Blows every vertex of `h` up into a triangle and replaces each edge listed
/// in `lengths` by a string of that many diamonds. Returns the graph and the
/// substitution that produced it.
pub fn substitute(
    h: &MultiGraph,
    lengths: &BTreeMap<EdgeId, usize>,
) -> Result<(MultiGraph, Substitution), StructureError> {
    if !is_cubic(h) {
        return fail("H is not cubic");
    }
    let mut g = MultiGraph::new();
    let mut triangle_of = BTreeMap::new();
    // free triangle corners per H vertex, handed out in edge order
    let mut free: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for hv in h.vertices() {
        let t = [g.add_vertex(), g.add_vertex(), g.add_vertex()];
        g.add_edge(t[0], t[1])?;
        g.add_edge(t[1], t[2])?;
        g.add_edge(t[0], t[2])?;
        triangle_of.insert(hv, t);
        free.insert(hv, t.iter().rev().copied().collect());
    }
    let mut realization_of = BTreeMap::new();
    for (he, ha, hb) in h.edges() {
        let a = free.get_mut(&ha).and_then(Vec::pop).expect("cubic H");
        let b = free.get_mut(&hb).and_then(Vec::pop).expect("cubic H");
        let k = lengths.get(&he).copied().unwrap_or(0);
        let realization = if k == 0 {
            Realization::Plain(g.add_edge(a, b)?)
        } else {
            let mut diamonds = Vec::with_capacity(k);
            let mut connectors = Vec::with_capacity(k + 1);
            let mut prev = a;
            for _ in 0..k {
                let [l, z, w, r] = [g.add_vertex(), g.add_vertex(), g.add_vertex(), g.add_vertex()];
                connectors.push(g.add_edge(prev, l)?);
                let lz = g.add_edge(l, z)?;
                let lw = g.add_edge(l, w)?;
                let zw = g.add_edge(z, w)?;
                let rz = g.add_edge(r, z)?;
                let rw = g.add_edge(r, w)?;
                diamonds.push(Diamond {
                    internal: [z, w],
                    external: [l, r],
                    internal_edge: zw,
                    external_edges: [[lz, lw], [rz, rw]],
                });
                prev = r;
            }
            connectors.push(g.add_edge(prev, b)?);
            Realization::String(DiamondString {
                diamonds,
                connectors,
                attach_left: a,
                attach_right: b,
            })
        };
        realization_of.insert(he, HEdge { ends: [(ha, a), (hb, b)], realization });
    }
    Ok((g, Substitution { h: h.clone(), triangle_of, realization_of }))
}

/// Rebuilds a graph from a decomposition. The result is isomorphic to the
/// decomposed graph but uses fresh ids.
pub fn reconstruct(d: &OumDecomposition) -> Result<MultiGraph, StructureError> {
    match d {
        OumDecomposition::IsK4 => Ok(ring_of_diamonds(1)),
        OumDecomposition::RingOfDiamonds(k) => Ok(ring_of_diamonds(*k)),
        OumDecomposition::Substituted(s) => Ok(substitute(&s.h, &s.string_lengths())?.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic_small;

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_and_rings() {
        assert_eq!(oum_decompose(&k4()).unwrap(), OumDecomposition::IsK4);
        assert_eq!(oum_decompose(&ring_of_diamonds(3)).unwrap(), OumDecomposition::RingOfDiamonds(3));
    }

    #[test]
    fn truncated_k4_round_trip() {
        let (g, truth) = substitute(&k4(), &BTreeMap::new()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 18));
        let OumDecomposition::Substituted(s) = oum_decompose(&g).unwrap() else {
            panic!("expected substituted");
        };
        assert_eq!(s.h.vertex_count(), 4);
        assert_eq!(s.h.edge_count(), 6);
        assert!(s.realization_of.values().all(|r| matches!(r.realization, Realization::Plain(_))));
        assert!(are_isomorphic_small(&s.h, &truth.h).unwrap());
        let back = reconstruct(&OumDecomposition::Substituted(s)).unwrap();
        assert!(are_isomorphic_small(&back, &g).unwrap());
    }

    #[test]
    fn string_on_k4_edge() {
        let lengths = BTreeMap::from([(EdgeId(0), 1)]);
        let (g, _) = substitute(&k4(), &lengths).unwrap();
        assert_eq!(g.vertex_count(), 16);
        let OumDecomposition::Substituted(s) = oum_decompose(&g).unwrap() else {
            panic!("expected substituted");
        };
        assert_eq!(s.total_diamonds(), 1);
        assert_eq!(g.vertex_count(), 3 * s.h.vertex_count() + 4 * s.total_diamonds());
        let back = reconstruct(&OumDecomposition::Substituted(s)).unwrap();
        assert!(are_isomorphic_small(&back, &g).unwrap());
    }

    #[test]
    fn dipole_substitution_is_the_prism() {
        let dipole = MultiGraph::from_edges(&[(0, 1); 3]).unwrap();
        let (g, _) = substitute(&dipole, &BTreeMap::new()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));
        assert!(crate::recognition::is_claw_free(&g));
        let OumDecomposition::Substituted(s) = oum_decompose(&g).unwrap() else {
            panic!("expected substituted");
        };
        assert_eq!(s.h.edges_between(VertexId(0), VertexId(1)).len(), 3);
    }

    #[test]
    fn triangle_free_input_is_not_decomposable() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let petersen = MultiGraph::from_edges(&edges).unwrap();
        assert!(matches!(oum_decompose(&petersen), Err(StructureError::NotDecomposable(_))));
    }
}
