use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graph::{EdgeId, GraphError, MultiGraph, VertexId};

/// An induced `K4` minus an edge. `internal` are the two degree-3 vertices of
/// the diamond, `external` the two vertices it meets the rest of the graph at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub internal: [VertexId; 2],
    pub external: [VertexId; 2],
    pub internal_edge: EdgeId,
    /// `external_edges[i][j]` joins `external[i]` and `internal[j]`.
    pub external_edges: [[EdgeId; 2]; 2],
}

impl Diamond {
    /// The two perfect matchings of the external edges: `side` 0 is
    /// `{e0-i0, e1-i1}`, `side` 1 is `{e0-i1, e1-i0}`.
    pub fn external_matching(&self, side: usize) -> [EdgeId; 2] {
        let ee = &self.external_edges;
        if side == 0 {
            [ee[0][0], ee[1][1]]
        } else {
            [ee[0][1], ee[1][0]]
        }
    }

    pub fn edges(&self) -> [EdgeId; 5] {
        let ee = &self.external_edges;
        [self.internal_edge, ee[0][0], ee[0][1], ee[1][0], ee[1][1]]
    }

    pub fn vertices(&self) -> [VertexId; 4] {
        [self.external[0], self.internal[0], self.internal[1], self.external[1]]
    }

    /// Same diamond with the external roles swapped.
    pub fn flipped(&self) -> Diamond {
        let ee = &self.external_edges;
        Diamond {
            internal: self.internal,
            external: [self.external[1], self.external[0]],
            internal_edge: self.internal_edge,
            external_edges: [ee[1], ee[0]],
        }
    }

    /// The edge leaving `external[i]` towards the rest of a cubic graph.
    pub fn outside_edge(&self, g: &MultiGraph, i: usize) -> Option<EdgeId> {
        let own = self.edges();
        g.incident(self.external[i])
            .iter()
            .copied()
            .find(|e| !own.contains(e))
    }
}

/// All induced diamonds of a cubic graph, ordered by internal pair.
///
/// In a cubic graph diamonds are pairwise vertex-disjoint, so every vertex
/// belongs to at most one of them.
pub fn find_diamonds(g: &MultiGraph) -> Vec<Diamond> {
    let mut out = Vec::new();
    for (e, z, w) in g.edges() {
        if g.edges_between(z, w).len() != 1 || g.degree(z) != 3 || g.degree(w) != 3 {
            continue;
        }
        let nz = g.neighbor_set(z);
        let nw = g.neighbor_set(w);
        if nz.len() != 3 || nw.len() != 3 {
            continue;
        }
        let common: Vec<VertexId> = nz.intersection(&nw).copied().collect();
        if common.len() != 2 {
            continue;
        }
        let (a, b) = (common[0], common[1]);
        if g.has_edge(a, b) {
            continue;
        }
        let edge = |x, y| g.edge_between(x, y).expect("adjacent");
        out.push(Diamond {
            internal: [z, w],
            external: [a, b],
            internal_edge: e,
            external_edges: [[edge(a, z), edge(a, w)], [edge(b, z), edge(b, w)]],
        });
    }
    out
}

/// `k` diamonds joined external-to-external by single edges, oriented from
/// `attach_left` to `attach_right`.
///
/// `diamonds[i].external[0]` faces left and `external[1]` faces right.
/// `connectors[0]` joins `attach_left` to the first diamond, `connectors[i]`
/// joins diamond `i - 1` to diamond `i`, and `connectors[k]` joins the last
/// diamond to `attach_right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondString {
    pub diamonds: Vec<Diamond>,
    pub connectors: Vec<EdgeId>,
    pub attach_left: VertexId,
    pub attach_right: VertexId,
}

impl DiamondString {
    pub fn len(&self) -> usize {
        self.diamonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diamonds.is_empty()
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out = self.connectors.clone();
        for d in &self.diamonds {
            out.extend(d.edges());
        }
        out
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.diamonds.iter().flat_map(|d| d.vertices()).collect()
    }

    /// The string read from the other end.
    pub fn reversed(&self) -> DiamondString {
        let mut connectors = self.connectors.clone();
        connectors.reverse();
        DiamondString {
            diamonds: self.diamonds.iter().rev().map(Diamond::flipped).collect(),
            connectors,
            attach_left: self.attach_right,
            attach_right: self.attach_left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StringGrouping {
    /// Every diamond lies on a closed chain: the graph is a ring.
    Ring,
    Strings(Vec<DiamondString>),
}

/// Chains diamonds that share connector edges into maximal strings.
pub fn group_strings(g: &MultiGraph, diamonds: &[Diamond]) -> Result<StringGrouping, GraphError> {
    // external vertex -> (diamond, side)
    let mut slot: BTreeMap<VertexId, (usize, usize)> = BTreeMap::new();
    for (i, d) in diamonds.iter().enumerate() {
        slot.insert(d.external[0], (i, 0));
        slot.insert(d.external[1], (i, 1));
    }
    // for each (diamond, side): outside edge and its far end
    let mut outside = vec![[(EdgeId(0), VertexId(0)); 2]; diamonds.len()];
    for (i, d) in diamonds.iter().enumerate() {
        for side in 0..2 {
            let e = d
                .outside_edge(g, side)
                .ok_or(GraphError::UnknownVertex(d.external[side]))?;
            outside[i][side] = (e, g.other_end(e, d.external[side])?);
        }
    }

    let mut used = vec![false; diamonds.len()];
    let mut strings = Vec::new();
    for start in 0..diamonds.len() {
        if used[start] {
            continue;
        }
        // walk left from `start` to find the chain's end
        let (mut cur, mut exit_side) = (start, 0usize);
        let mut steps = 0;
        loop {
            let (_, far) = outside[cur][exit_side];
            match slot.get(&far) {
                Some(&(next, side)) => {
                    cur = next;
                    exit_side = 1 - side;
                    steps += 1;
                    if steps > diamonds.len() {
                        return Ok(StringGrouping::Ring);
                    }
                }
                None => break,
            }
        }
        // `cur` is an end diamond, `exit_side` faces outside the chain
        let mut chain = Vec::new();
        let mut connectors = vec![outside[cur][exit_side].0];
        let attach_a = outside[cur][exit_side].1;
        let (mut d, mut in_side) = (cur, exit_side);
        let attach_b;
        loop {
            used[d] = true;
            let oriented = if in_side == 0 {
                diamonds[d].clone()
            } else {
                diamonds[d].flipped()
            };
            chain.push(oriented);
            let out_side = 1 - in_side;
            let (e, far) = outside[d][out_side];
            connectors.push(e);
            match slot.get(&far) {
                Some(&(next, side)) => {
                    d = next;
                    in_side = side;
                }
                None => {
                    attach_b = far;
                    break;
                }
            }
        }
        let s = DiamondString {
            diamonds: chain,
            connectors,
            attach_left: attach_a,
            attach_right: attach_b,
        };
        strings.push(if s.attach_left <= s.attach_right { s } else { s.reversed() });
    }
    Ok(StringGrouping::Strings(strings))
}

/// Every vertex in a diamond and the graph connected, claw-free and cubic:
/// returns the number of diamonds. `K4` is reported as `None`.
pub fn detect_ring_of_diamonds(g: &MultiGraph) -> Option<usize> {
    let diamonds = find_diamonds(g);
    let covered: BTreeSet<VertexId> = diamonds.iter().flat_map(|d| d.vertices()).collect();
    if diamonds.len() < 2 || covered.len() != g.vertex_count() || !g.is_connected() {
        return None;
    }
    Some(diamonds.len())
}

/// Ring of `k >= 1` diamonds on vertices `0..4k`; diamond `i` uses
/// `4i` (left external), `4i+1`, `4i+2` (internal), `4i+3` (right external).
pub fn ring_of_diamonds(k: usize) -> MultiGraph {
    let mut edges = Vec::new();
    let k = k as u32;
    for i in 0..k {
        let b = 4 * i;
        edges.extend([(b, b + 1), (b, b + 2), (b + 1, b + 2), (b + 1, b + 3), (b + 2, b + 3)]);
    }
    for i in 0..k {
        edges.push((4 * i + 3, (4 * (i + 1)) % (4 * k)));
    }
    MultiGraph::from_edges(&edges).expect("no loops for k >= 1")
}
