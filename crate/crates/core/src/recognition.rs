//! Structural preconditions: cubicity, claw-freeness and bridges.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{EdgeId, MultiGraph, VertexId};

/// An induced `K_{1,3}`: `center` adjacent to all leaves, leaves pairwise
/// non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClawWitness {
    pub center: VertexId,
    pub leaves: [VertexId; 3],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BridgeSet {
    pub bridges: BTreeSet<EdgeId>,
}

impl BridgeSet {
    pub fn is_empty(&self) -> bool {
        self.bridges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bridges.len()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.bridges.contains(&e)
    }
}

pub fn is_cubic(g: &MultiGraph) -> bool {
    g.vertices().all(|v| g.degree(v) == 3)
}

pub fn find_claw(g: &MultiGraph) -> Option<ClawWitness> {
    for center in g.vertices() {
        let nb: Vec<VertexId> = g.neighbor_set(center).into_iter().collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if g.has_edge(nb[i], nb[j]) {
                    continue;
                }
                for k in j + 1..nb.len() {
                    if !g.has_edge(nb[i], nb[k]) && !g.has_edge(nb[j], nb[k]) {
                        return Some(ClawWitness {
                            center,
                            leaves: [nb[i], nb[j], nb[k]],
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &MultiGraph) -> bool {
    find_claw(g).is_none()
}

/// Bridges by iterative DFS with lowpoints. The tree edge is skipped by id,
/// so a parallel copy of it counts as a back edge.
pub fn find_bridges(g: &MultiGraph) -> BridgeSet {
    let index = g.vertex_index();
    let n = index.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut bridges = BTreeSet::new();
    let mut time = 0;
    let verts: Vec<VertexId> = g.vertices().collect();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, edge used to enter it, next incident position)
        let mut stack: Vec<(usize, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (x, via, ref mut pos)) = stack.last_mut() {
            let inc = g.incident(verts[x]);
            if *pos < inc.len() {
                let e = inc[*pos];
                *pos += 1;
                if Some(e) == via {
                    continue;
                }
                let y = index[&g.other_end(e, verts[x]).expect("incident edge")];
                if disc[y] == usize::MAX {
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    stack.push((y, Some(e), 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(parent, _, _))) = (via, stack.last()) {
                    low[parent] = low[parent].min(low[x]);
                    if low[x] > disc[parent] {
                        bridges.insert(e);
                    }
                }
            }
        }
    }
    BridgeSet { bridges }
}

pub fn is_two_edge_connected(g: &MultiGraph) -> bool {
    g.vertex_count() >= 2 && g.is_connected() && find_bridges(g).is_empty()
}

/// Component count after deleting each edge separately; the test oracle for
/// [`find_bridges`].
pub fn brute_force_bridges(g: &MultiGraph) -> BridgeSet {
    let base = g.components().len();
    let bridges = g
        .edge_ids()
        .filter(|&e| {
            let without = g.without_edges(&BTreeSet::from([e]));
            without.components().len() > base
        })
        .collect();
    BridgeSet { bridges }
}
