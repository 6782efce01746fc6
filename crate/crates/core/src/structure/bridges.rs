//! Bridge tree of a connected claw-free cubic graph, component
//! classification, boundary data of big components and the tilde graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::oum::is_k4;
use super::StructureError;
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::recognition::{find_bridges, is_claw_free, is_cubic, is_two_edge_connected, BridgeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UpEdge {
    /// Endpoint inside the child component.
    pub p: VertexId,
    /// Endpoint inside the parent component.
    pub q: VertexId,
    pub bridge: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeDecomposition {
    pub bridges: BridgeSet,
    /// Components of `g - bridges`, ordered by smallest vertex; ids are those
    /// of `g`.
    pub components: Vec<MultiGraph>,
    pub component_of: BTreeMap<VertexId, usize>,
    pub tree: Vec<BTreeSet<usize>>,
    pub root: usize,
    pub levels: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub up_edge: BTreeMap<usize, UpEdge>,
    pub bfs_order: Vec<usize>,
}

fn bfs_tree(tree: &[BTreeSet<usize>], src: usize) -> (Vec<usize>, Vec<Option<usize>>, Vec<usize>) {
    let mut level = vec![usize::MAX; tree.len()];
    let mut parent = vec![None; tree.len()];
    let mut order = Vec::with_capacity(tree.len());
    level[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        order.push(x);
        for &y in &tree[x] {
            if level[y] == usize::MAX {
                level[y] = level[x] + 1;
                parent[y] = Some(x);
                q.push_back(y);
            }
        }
    }
    (level, parent, order)
}

/// Farthest node from `src`; ties go to the smallest index.
fn farthest(tree: &[BTreeSet<usize>], src: usize) -> usize {
    let (level, _, _) = bfs_tree(tree, src);
    let max = level.iter().copied().filter(|&l| l != usize::MAX).max().unwrap_or(0);
    level.iter().position(|&l| l == max).unwrap_or(src)
}

pub fn bridge_decompose(g: &MultiGraph) -> Result<BridgeDecomposition, StructureError> {
    let bridges = find_bridges(g);
    if bridges.is_empty() {
        return Err(StructureError::NoBridges);
    }
    let rest = g.without_edges(&bridges.bridges);
    let mut components = Vec::new();
    let mut component_of = BTreeMap::new();
    for (i, vs) in rest.components().into_iter().enumerate() {
        for &v in &vs {
            component_of.insert(v, i);
        }
        components.push(rest.induced_subgraph(&vs));
    }
    let mut tree = vec![BTreeSet::new(); components.len()];
    for &b in &bridges.bridges {
        let (u, v) = g.endpoints(b)?;
        let (cu, cv) = (component_of[&u], component_of[&v]);
        tree[cu].insert(cv);
        tree[cv].insert(cu);
    }
    let a = farthest(&tree, 0);
    let b = farthest(&tree, a);
    let root = a.min(b);
    let (levels, parent, bfs_order) = bfs_tree(&tree, root);
    if bfs_order.len() != components.len() {
        return Err(StructureError::NotDecomposable("graph is disconnected".into()));
    }
    let mut up_edge = BTreeMap::new();
    for &e in &bridges.bridges {
        let (u, v) = g.endpoints(e)?;
        let (cu, cv) = (component_of[&u], component_of[&v]);
        let (child, p, q) = if parent[cu] == Some(cv) { (cu, u, v) } else { (cv, v, u) };
        up_edge.insert(child, UpEdge { p, q, bridge: e });
    }
    Ok(BridgeDecomposition {
        bridges,
        components,
        component_of,
        tree,
        root,
        levels,
        parent,
        up_edge,
        bfs_order,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentClass {
    IsK3,
    IsDiamond,
    Big,
}

pub fn classify_component(gi: &MultiGraph) -> Result<ComponentClass, StructureError> {
    let n = gi.vertex_count();
    let mut degrees: Vec<usize> = gi.vertices().map(|v| gi.degree(v)).collect();
    degrees.sort_unstable();
    if gi.is_simple() && n == 3 && gi.edge_count() == 3 {
        return Ok(ComponentClass::IsK3);
    }
    if gi.is_simple() && n == 4 && gi.edge_count() == 5 && degrees == [2, 2, 3, 3] {
        let low: Vec<VertexId> = gi.vertices().filter(|&v| gi.degree(v) == 2).collect();
        if !gi.has_edge(low[0], low[1]) {
            return Ok(ComponentClass::IsDiamond);
        }
    }
    if n >= 5 && gi.max_degree() <= 3 && is_two_edge_connected(gi) {
        return Ok(ComponentClass::Big);
    }
    Err(StructureError::ClassificationFailed(format!(
        "{n} vertices, {} edges, degrees {degrees:?}",
        gi.edge_count()
    )))
}

/// A degree-2 vertex `v` of a big component with its triangle `v u w`
/// (`u < w`) and the outer neighbors `s` of `u` and `b` of `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryVertex {
    pub v: VertexId,
    pub u: VertexId,
    pub w: VertexId,
    pub s: VertexId,
    pub b: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentBoundary {
    pub degree2: Vec<BoundaryVertex>,
}

impl ComponentBoundary {
    pub fn r(&self) -> usize {
        self.degree2.len()
    }
}

fn violation(claim: &str, witness: String) -> StructureError {
    StructureError::ClaimViolation {
        claim: claim.to_string(),
        witness,
    }
}

fn third_neighbor(gi: &MultiGraph, x: VertexId, a: VertexId, b: VertexId) -> Option<VertexId> {
    let others: Vec<VertexId> = gi.neighbor_set(x).into_iter().filter(|&y| y != a && y != b).collect();
    match others.as_slice() {
        [y] => Some(*y),
        _ => None,
    }
}

pub fn component_boundary(gi: &MultiGraph, up_vertex: Option<VertexId>) -> Result<ComponentBoundary, StructureError> {
    let mut low: Vec<VertexId> = gi.vertices().filter(|&v| gi.degree(v) == 2).collect();
    if let Some(up) = up_vertex {
        let pos = low
            .iter()
            .position(|&v| v == up)
            .ok_or_else(|| violation("up-vertex", format!("{up} is not a degree-2 vertex")))?;
        let first = low.remove(pos);
        low.insert(0, first);
    }
    for (i, &x) in low.iter().enumerate() {
        for &y in &low[i + 1..] {
            if gi.has_edge(x, y) {
                return Err(violation("independent-set", format!("{x} and {y} are adjacent")));
            }
        }
    }
    let mut degree2 = Vec::with_capacity(low.len());
    for &v in &low {
        let nb: Vec<VertexId> = gi.neighbor_set(v).into_iter().collect();
        if nb.len() != 2 || !gi.has_edge(nb[0], nb[1]) {
            return Err(violation("boundary-triangle", format!("{v} lies on no triangle")));
        }
        let (u, w) = (nb[0], nb[1]);
        let s = third_neighbor(gi, u, v, w);
        let b = third_neighbor(gi, w, u, v);
        let (Some(s), Some(b)) = (s, b) else {
            return Err(violation("outer-neighbors", format!("triangle {v} {u} {w} has no outer neighbors")));
        };
        if s == b || gi.degree(s) != 3 || gi.degree(b) != 3 {
            return Err(violation("outer-neighbors", format!("at {v}: s={s} b={b}")));
        }
        degree2.push(BoundaryVertex { v, u, w, s, b });
    }
    Ok(ComponentBoundary { degree2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddRemoval {
    pub removed: [VertexId; 3],
    /// The added edge `s1 b1`.
    pub anchor: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TildeConstruction {
    pub tilde: MultiGraph,
    pub parity: Parity,
    pub added_pair_edges: Vec<EdgeId>,
    pub removed: Option<OddRemoval>,
}

pub fn build_tilde(gi: &MultiGraph, boundary: &ComponentBoundary) -> Result<TildeConstruction, StructureError> {
    let r = boundary.r();
    let mut tilde = gi.clone();
    let mut added_pair_edges = Vec::new();
    let (parity, removed, paired) = if r % 2 == 0 {
        (Parity::Even, None, &boundary.degree2[..])
    } else {
        let first = boundary.degree2[0];
        if gi.has_edge(first.s, first.b) {
            return Err(violation("outer-neighbors", format!("{} {} already adjacent", first.s, first.b)));
        }
        for x in [first.v, first.u, first.w] {
            tilde.remove_vertex(x)?;
        }
        let anchor = tilde.add_edge(first.s, first.b)?;
        let removal = OddRemoval {
            removed: [first.v, first.u, first.w],
            anchor,
        };
        (Parity::Odd, Some(removal), &boundary.degree2[1..])
    };
    for pair in paired.chunks(2) {
        added_pair_edges.push(tilde.add_edge(pair[0].v, pair[1].v)?);
    }
    if !is_cubic(&tilde) || !is_two_edge_connected(&tilde) || !is_claw_free(&tilde) {
        return Err(violation(
            "tilde",
            format!("{} vertices, not a 2-edge-connected claw-free cubic graph", tilde.vertex_count()),
        ));
    }
    if let Some(rm) = &removed {
        let (s, b) = tilde.endpoints(rm.anchor)?;
        let on_triangle = tilde.neighbor_set(s).intersection(&tilde.neighbor_set(b)).next().is_some();
        if on_triangle && !is_k4(&tilde) {
            return Err(violation("anchor", format!("{s}{b} lies on a triangle")));
        }
    }
    Ok(TildeConstruction {
        tilde,
        parity,
        added_pair_edges,
        removed,
    })
}
