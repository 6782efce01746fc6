//! Loopless undirected multigraphs with stable vertex and edge identifiers.
//!
//! Every edge carries its own [`EdgeId`], so parallel edges can be colored,
//! matched and walked individually. Identifiers are never reused inside one
//! graph lineage: subgraphs inherit the id counters of their parent, and any
//! edge added later receives an id above everything the parent ever issued.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop rejected at vertex {0}")]
    LoopRejected(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge id {0} already in use")]
    DuplicateEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("graph too large for exhaustive comparison: {vertices} vertices (limit {limit})")]
    TooLarge { vertices: usize, limit: usize },
}

/// Distance between two vertices or edges; `Infinite` when they lie in
/// different connected components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    incidence: BTreeMap<VertexId, Vec<EdgeId>>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    next_vertex: u32,
    next_edge: u32,
}

impl Serialize for MultiGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MultiGraph", 2)?;
        st.serialize_field("vertices", &self.vertices().collect::<Vec<_>>())?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

/// Builds a graph with one edge per list entry, ids `0..len` in list order.
pub fn build_graph(edge_list: &[(VertexId, VertexId)]) -> Result<MultiGraph, GraphError> {
    let mut g = MultiGraph::new();
    for &(u, v) in edge_list {
        g.ensure_vertex(u);
        g.ensure_vertex(v);
        g.add_edge(u, v)?;
    }
    Ok(g)
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with the given edges (ids in list order).
    pub fn with_vertices(n: u32, edge_list: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = MultiGraph::new();
        for v in 0..n {
            g.ensure_vertex(VertexId(v));
        }
        for &(u, v) in edge_list {
            let (u, v) = (VertexId(u), VertexId(v));
            g.ensure_vertex(u);
            g.ensure_vertex(v);
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Convenience wrapper over [`build_graph`] for raw integer labels.
    pub fn from_edges(edge_list: &[(u32, u32)]) -> Result<Self, GraphError> {
        let pairs: Vec<_> = edge_list
            .iter()
            .map(|&(u, v)| (VertexId(u), VertexId(v)))
            .collect();
        build_graph(&pairs)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.ensure_vertex(v);
        v
    }

    /// Inserts `v` if absent; keeps the vertex counter above every id seen.
    pub fn ensure_vertex(&mut self, v: VertexId) {
        self.incidence.entry(v).or_default();
        self.next_vertex = self.next_vertex.max(v.0 + 1);
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let id = EdgeId(self.next_edge);
        self.insert_edge(id, u, v)?;
        Ok(id)
    }

    /// Inserts an edge under a caller-chosen id (used by document readers).
    pub fn insert_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::LoopRejected(u));
        }
        if !self.incidence.contains_key(&u) {
            return Err(GraphError::UnknownVertex(u));
        }
        if !self.incidence.contains_key(&v) {
            return Err(GraphError::UnknownVertex(v));
        }
        if self.edges.contains_key(&id) {
            return Err(GraphError::DuplicateEdge(id));
        }
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.insert(id, key);
        for w in [u, v] {
            let list = self.incidence.get_mut(&w).expect("checked above");
            let pos = list.partition_point(|&e| e < id);
            list.insert(pos, id);
        }
        self.next_edge = self.next_edge.max(id.0 + 1);
        Ok(())
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        let (u, v) = self.edges.remove(&e).ok_or(GraphError::UnknownEdge(e))?;
        for w in [u, v] {
            if let Some(list) = self.incidence.get_mut(&w) {
                list.retain(|&x| x != e);
            }
        }
        Ok((u, v))
    }

    /// Removes `v` and all its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let incident = self
            .incidence
            .get(&v)
            .cloned()
            .ok_or(GraphError::UnknownVertex(v))?;
        for e in incident {
            self.remove_edge(e)?;
        }
        self.incidence.remove(&v);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence.keys().copied()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    /// `(id, u, v)` with `u < v`, ascending by id.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.incidence.contains_key(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        self.edges.get(&e).copied().ok_or(GraphError::UnknownEdge(e))
    }

    /// Endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Result<VertexId, GraphError> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Ok(b)
        } else if b == v {
            Ok(a)
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    /// Incident edge ids in ascending order; empty for unknown vertices.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.incidence.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbors with multiplicity, in incident-edge order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().map(move |&e| {
            let (a, b) = self.edges[&e];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    /// Distinct neighbors, ascending.
    pub fn neighbor_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.neighbors(v).collect()
    }

    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.incident(u)
            .iter()
            .copied()
            .filter(|&e| {
                let (a, b) = self.edges[&e];
                (a == u && b == v) || (a == v && b == u)
            })
            .collect()
    }

    /// Smallest edge id joining `u` and `v`, if any.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edges_between(u, v).into_iter().next()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.values().all(|&pair| seen.insert(pair))
    }

    /// Next id `add_edge` would hand out.
    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.next_edge)
    }

    pub fn next_vertex_id(&self) -> VertexId {
        VertexId(self.next_vertex)
    }

    /// Raises the id counters so later insertions never collide with ids
    /// issued by `other`.
    pub fn reserve_ids_of(&mut self, other: &MultiGraph) {
        self.next_edge = self.next_edge.max(other.next_edge);
        self.next_vertex = self.next_vertex.max(other.next_vertex);
    }

    /// Induced subgraph; ids and id counters are preserved.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> MultiGraph {
        let mut sub = MultiGraph {
            next_vertex: self.next_vertex,
            next_edge: self.next_edge,
            ..MultiGraph::default()
        };
        for &v in keep {
            if self.contains_vertex(v) {
                sub.incidence.insert(v, Vec::new());
            }
        }
        for (&e, &(u, v)) in &self.edges {
            if sub.incidence.contains_key(&u) && sub.incidence.contains_key(&v) {
                sub.insert_edge(e, u, v).expect("endpoints present");
            }
        }
        sub
    }

    /// Copy without the given edges; vertices are kept.
    pub fn without_edges(&self, drop: &BTreeSet<EdgeId>) -> MultiGraph {
        let mut g = self.clone();
        for &e in drop {
            let _ = g.remove_edge(e);
        }
        g
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![v];
            seen.insert(v);
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for y in self.neighbors(x) {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS hop counts from `src` to every reachable vertex.
    pub fn bfs_distances(&self, src: VertexId) -> BTreeMap<VertexId, usize> {
        let mut dist = BTreeMap::new();
        if !self.contains_vertex(src) {
            return dist;
        }
        dist.insert(src, 0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            for y in self.neighbors(x) {
                if !dist.contains_key(&y) {
                    dist.insert(y, d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Dense `0..n` index of the vertex set, ascending by id.
    pub fn vertex_index(&self) -> BTreeMap<VertexId, usize> {
        self.vertices().enumerate().map(|(i, v)| (v, i)).collect()
    }
}

/// Edge distance: 0 for the same edge, otherwise one more than the shortest
/// vertex distance between an endpoint of `e` and an endpoint of `f`.
pub fn edge_distance(g: &MultiGraph, e: EdgeId, f: EdgeId) -> Result<Distance, GraphError> {
    let (a, b) = g.endpoints(e)?;
    let (c, d) = g.endpoints(f)?;
    if e == f {
        return Ok(Distance::Finite(0));
    }
    let best = [a, b]
        .iter()
        .flat_map(|&x| {
            let dist = g.bfs_distances(x);
            [c, d].map(|y| dist.get(&y).copied())
        })
        .flatten()
        .min();
    Ok(match best {
        Some(m) => Distance::Finite(m + 1),
        None => Distance::Infinite,
    })
}

/// Line graph: vertex `VertexId(e.0)` for every edge `e`, adjacent iff the
/// edges share an endpoint. Parallel edges produce a single adjacency.
pub fn line_graph(g: &MultiGraph) -> MultiGraph {
    let mut lg = MultiGraph::new();
    for e in g.edge_ids() {
        lg.ensure_vertex(VertexId(e.0));
    }
    let mut pairs = BTreeSet::new();
    for v in g.vertices() {
        let inc = g.incident(v);
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                pairs.insert((e.min(f), e.max(f)));
            }
        }
    }
    for (e, f) in pairs {
        lg.add_edge(VertexId(e.0), VertexId(f.0))
            .expect("distinct edges");
    }
    lg
}

/// All-pairs vertex distances over a dense index, for repeated edge-distance
/// queries on one graph.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    index: BTreeMap<VertexId, usize>,
    n: usize,
    dist: Vec<u32>,
}

const UNREACHED: u32 = u32::MAX;

impl DistanceTable {
    pub fn new(g: &MultiGraph) -> Self {
        let index = g.vertex_index();
        let n = index.len();
        let adj: Vec<Vec<usize>> = g
            .vertices()
            .map(|v| g.neighbors(v).map(|w| index[&w]).collect())
            .collect();
        let mut dist = vec![UNREACHED; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let d = row[x];
                for &y in &adj[x] {
                    if row[y] == UNREACHED {
                        row[y] = d + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        DistanceTable { index, n, dist }
    }

    pub fn vertex_distance(&self, u: VertexId, v: VertexId) -> Distance {
        match (self.index.get(&u), self.index.get(&v)) {
            (Some(&i), Some(&j)) => match self.dist[i * self.n + j] {
                UNREACHED => Distance::Infinite,
                d => Distance::Finite(d as usize),
            },
            _ => Distance::Infinite,
        }
    }

    /// Edge distance between two edges given by their endpoint pairs.
    pub fn edge_distance(
        &self,
        e: EdgeId,
        ends_e: (VertexId, VertexId),
        f: EdgeId,
        ends_f: (VertexId, VertexId),
    ) -> Distance {
        if e == f {
            return Distance::Finite(0);
        }
        let best = [ends_e.0, ends_e.1]
            .iter()
            .flat_map(|&x| [ends_f.0, ends_f.1].map(|y| self.vertex_distance(x, y)))
            .min()
            .unwrap_or(Distance::Infinite);
        match best {
            Distance::Finite(d) => Distance::Finite(d + 1),
            Distance::Infinite => Distance::Infinite,
        }
    }

    /// Edge distance for edges of `g` (the graph this table was built from).
    pub fn edge_distance_in(&self, g: &MultiGraph, e: EdgeId, f: EdgeId) -> Result<Distance, GraphError> {
        Ok(self.edge_distance(e, g.endpoints(e)?, f, g.endpoints(f)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn empty_edge_list_gives_empty_graph() {
        let g = build_graph(&[]).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn triangle_and_parallel_edges() {
        let k3 = build_graph(&[(v(0), v(1)), (v(1), v(2)), (v(2), v(0))]).unwrap();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (3, 3));

        let dipole = build_graph(&[(v(0), v(1)); 3]).unwrap();
        assert_eq!(dipole.vertex_count(), 2);
        assert_eq!(dipole.edge_count(), 3);
        assert_eq!(dipole.degree(v(0)), 3);
        assert_eq!(dipole.degree(v(1)), 3);
        assert_eq!(dipole.edges_between(v(0), v(1)).len(), 3);
        assert!(!dipole.is_simple());
    }

    #[test]
    fn loops_are_rejected() {
        let err = build_graph(&[(v(0), v(1)), (v(2), v(2))]).unwrap_err();
        assert_eq!(err, GraphError::LoopRejected(v(2)));
    }

    #[test]
    fn edge_ids_follow_list_order() {
        let g = MultiGraph::from_edges(&[(3, 1), (1, 2), (3, 1)]).unwrap();
        let ids: Vec<_> = g.edges().collect();
        assert_eq!(ids[0], (EdgeId(0), v(1), v(3)));
        assert_eq!(ids[2], (EdgeId(2), v(1), v(3)));
    }

    #[test]
    fn edge_distance_small_cases() {
        let path = MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(edge_distance(&path, EdgeId(0), EdgeId(0)).unwrap(), Distance::Finite(0));
        assert_eq!(edge_distance(&path, EdgeId(0), EdgeId(1)).unwrap(), Distance::Finite(1));
        assert_eq!(edge_distance(&path, EdgeId(0), EdgeId(2)).unwrap(), Distance::Finite(2));
        let two = MultiGraph::from_edges(&[(0, 1), (2, 3)]).unwrap();
        assert_eq!(edge_distance(&two, EdgeId(0), EdgeId(1)).unwrap(), Distance::Infinite);
        assert_eq!(
            edge_distance(&two, EdgeId(0), EdgeId(9)),
            Err(GraphError::UnknownEdge(EdgeId(9)))
        );
    }

    #[test]
    fn line_graph_small_cases() {
        let k3 = MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 0)]).unwrap();
        let lk3 = line_graph(&k3);
        assert_eq!((lk3.vertex_count(), lk3.edge_count()), (3, 3));

        let p4 = MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 3)]).unwrap();
        let lp = line_graph(&p4);
        assert_eq!((lp.vertex_count(), lp.edge_count()), (3, 2));

        // octahedron: 6 vertices, all of degree 4, 12 edges
        let k4 = MultiGraph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let lk4 = line_graph(&k4);
        assert_eq!(lk4.vertex_count(), 6);
        assert_eq!(lk4.edge_count(), 12);
        assert!(lk4.vertices().all(|x| lk4.degree(x) == 4));
        // each edge is non-adjacent only to its opposite edge
        for (e, a, b) in k4.edges() {
            for (f, c, d) in k4.edges() {
                let shares = e != f && (a == c || a == d || b == c || b == d);
                assert_eq!(lk4.has_edge(VertexId(e.0), VertexId(f.0)), shares);
            }
        }
    }

    #[test]
    fn subgraph_keeps_ids_and_counters() {
        let g = MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let keep: BTreeSet<_> = [v(0), v(1), v(2)].into();
        let mut sub = g.induced_subgraph(&keep);
        assert_eq!(sub.edge_count(), 3);
        assert!(!sub.contains_edge(EdgeId(3)));
        let fresh = sub.add_edge(v(0), v(1)).unwrap();
        assert_eq!(fresh, EdgeId(4));
    }

    #[test]
    fn distance_table_matches_bfs() {
        let g = MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (5, 6)]).unwrap();
        let table = DistanceTable::new(&g);
        for e in g.edge_ids() {
            for f in g.edge_ids() {
                assert_eq!(
                    table.edge_distance_in(&g, e, f).unwrap(),
                    edge_distance(&g, e, f).unwrap()
                );
            }
        }
    }
}
