//! Perfect matchings and 2-factors of cubic multigraphs.
//!
//! A 2-factor through a set of edges is the complement of a perfect matching
//! avoiding them, so everything reduces to maximum matching, computed with
//! Edmonds' blossom algorithm on the simple graph of allowed adjacencies.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, MultiGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("no 2-factor contains the required edges {0:?}")]
    PlesnikViolated(Vec<EdgeId>),
}

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        NONE
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.adj.len();
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                    self.mate[v] = u;
                    self.mate[u] = v;
                }
            }
        }
        for v in 0..n {
            if self.mate[v] != NONE {
                continue;
            }
            let mut x = self.find_path(v);
            while x != NONE {
                let px = self.parent[x];
                let next = self.mate[px];
                self.mate[x] = px;
                self.mate[px] = x;
                x = next;
            }
        }
        self.mate
    }
}

/// A perfect matching of `h` using no edge of `forbidden`, or `None`.
/// Between parallel edges the smallest allowed id is used.
pub fn perfect_matching_avoiding(h: &MultiGraph, forbidden: &BTreeSet<EdgeId>) -> Option<BTreeSet<EdgeId>> {
    let index = h.vertex_index();
    let verts: Vec<VertexId> = h.vertices().collect();
    let n = verts.len();
    if n % 2 == 1 {
        return None;
    }
    let mut pick: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
    for (e, u, v) in h.edges() {
        if forbidden.contains(&e) {
            continue;
        }
        let (i, j) = (index[&u], index[&v]);
        pick.entry((i.min(j), i.max(j))).or_insert(e);
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in pick.keys() {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mate = Blossom::new(&adj).run();
    let mut out = BTreeSet::new();
    for (i, &j) in mate.iter().enumerate() {
        if j == NONE {
            return None;
        }
        if i < j {
            out.insert(pick[&(i, j)]);
        }
    }
    Some(out)
}

/// Every perfect matching avoiding `forbidden`, by backtracking on the
/// lowest unmatched vertex; stops after `limit` results. Test oracle for the
/// blossom search.
pub fn enumerate_perfect_matchings(
    h: &MultiGraph,
    forbidden: &BTreeSet<EdgeId>,
    limit: usize,
) -> Vec<BTreeSet<EdgeId>> {
    fn go(
        h: &MultiGraph,
        forbidden: &BTreeSet<EdgeId>,
        free: &mut BTreeSet<VertexId>,
        current: &mut Vec<EdgeId>,
        out: &mut Vec<BTreeSet<EdgeId>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let Some(&v) = free.iter().next() else {
            out.push(current.iter().copied().collect());
            return;
        };
        free.remove(&v);
        for &e in h.incident(v) {
            if forbidden.contains(&e) {
                continue;
            }
            let w = h.other_end(e, v).expect("incident");
            if !free.remove(&w) {
                continue;
            }
            current.push(e);
            go(h, forbidden, free, current, out, limit);
            current.pop();
            free.insert(w);
        }
        free.insert(v);
    }
    let mut free: BTreeSet<VertexId> = h.vertices().collect();
    let mut out = Vec::new();
    go(h, forbidden, &mut free, &mut Vec::new(), &mut out, limit);
    out
}

/// `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoFactor {
    pub cycles: Vec<Cycle>,
    pub complement: BTreeSet<EdgeId>,
}

impl TwoFactor {
    /// Walks the 2-regular graph left after deleting `matching`. Each cycle
    /// starts at its smallest vertex and leaves towards the smaller neighbor,
    /// smaller edge id first.
    pub fn from_matching(h: &MultiGraph, matching: BTreeSet<EdgeId>) -> TwoFactor {
        let rest = h.without_edges(&matching);
        let mut visited = BTreeSet::new();
        let mut cycles = Vec::new();
        for start in rest.vertices() {
            if visited.contains(&start) {
                continue;
            }
            let first = *rest
                .incident(start)
                .iter()
                .min_by_key(|&&e| (rest.other_end(e, start).expect("incident"), e))
                .expect("2-regular");
            let mut vertices = vec![start];
            let mut edges = vec![first];
            visited.insert(start);
            let (mut at, mut via) = (rest.other_end(first, start).expect("incident"), first);
            while at != start {
                visited.insert(at);
                vertices.push(at);
                let next = *rest
                    .incident(at)
                    .iter()
                    .find(|&&e| e != via)
                    .expect("2-regular");
                edges.push(next);
                at = rest.other_end(next, at).expect("incident");
                via = next;
            }
            cycles.push(Cycle { vertices, edges });
        }
        TwoFactor {
            cycles,
            complement: matching,
        }
    }

    pub fn cycle_edges(&self) -> BTreeSet<EdgeId> {
        self.cycles.iter().flat_map(|c| c.edges.iter().copied()).collect()
    }
}

pub fn two_factor_containing(h: &MultiGraph, required: &BTreeSet<EdgeId>) -> Result<TwoFactor, MatchingError> {
    two_factor_avoiding_in_complement(h, required, &BTreeSet::new())
}

/// 2-factor containing `required` whose complementary matching also avoids
/// `also_required`; used to enumerate alternative 2-factors.
pub fn two_factor_avoiding_in_complement(
    h: &MultiGraph,
    required: &BTreeSet<EdgeId>,
    also_required: &BTreeSet<EdgeId>,
) -> Result<TwoFactor, MatchingError> {
    let forbidden: BTreeSet<EdgeId> = required.union(also_required).copied().collect();
    let m = perfect_matching_avoiding(h, &forbidden)
        .ok_or_else(|| MatchingError::PlesnikViolated(forbidden.iter().copied().collect()))?;
    Ok(TwoFactor::from_matching(h, m))
}

/// Checks the 2-factor shape: cycles cover every vertex once and the
/// complement is a perfect matching of the remaining edges.
pub fn is_valid_two_factor(h: &MultiGraph, f: &TwoFactor) -> bool {
    let mut seen = BTreeSet::new();
    for c in &f.cycles {
        if c.vertices.len() != c.edges.len() || c.edges.len() < 2 {
            return false;
        }
        for (i, &e) in c.edges.iter().enumerate() {
            let a = c.vertices[i];
            let b = c.vertices[(i + 1) % c.vertices.len()];
            match h.endpoints(e) {
                Ok((x, y)) if (x, y) == (a.min(b), a.max(b)) => {}
                _ => return false,
            }
        }
        for &v in &c.vertices {
            if !seen.insert(v) {
                return false;
            }
        }
    }
    if seen.len() != h.vertex_count() {
        return false;
    }
    let cycle_edges = f.cycle_edges();
    let mut covered = BTreeSet::new();
    for e in h.edge_ids() {
        let in_cycle = cycle_edges.contains(&e);
        if in_cycle == f.complement.contains(&e) {
            return false;
        }
        if !in_cycle {
            let (x, y) = h.endpoints(e).expect("edge");
            if !covered.insert(x) || !covered.insert(y) {
                return false;
            }
        }
    }
    covered.len() == h.vertex_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn petersen() -> MultiGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        MultiGraph::from_edges(&edges).unwrap()
    }

    fn ids(v: &[u32]) -> BTreeSet<EdgeId> {
        v.iter().map(|&i| EdgeId(i)).collect()
    }

    fn is_perfect_matching(h: &MultiGraph, m: &BTreeSet<EdgeId>) -> bool {
        let mut covered = BTreeSet::new();
        for &e in m {
            let (a, b) = h.endpoints(e).unwrap();
            if !covered.insert(a) || !covered.insert(b) {
                return false;
            }
        }
        covered.len() == h.vertex_count()
    }

    #[test]
    fn k4_avoiding_one_edge() {
        let g = k4();
        // e0 = 01 is in the matching {01, 23}; avoiding e0 leaves two choices
        assert_eq!(enumerate_perfect_matchings(&g, &BTreeSet::new(), 10).len(), 3);
        let all = enumerate_perfect_matchings(&g, &ids(&[0]), 10);
        assert_eq!(all.len(), 2);
        let m = perfect_matching_avoiding(&g, &ids(&[0])).unwrap();
        assert!(all.contains(&m));
        assert!(perfect_matching_avoiding(&g, &ids(&[0, 1, 2])).is_none());
    }

    #[test]
    fn dipole() {
        let g = MultiGraph::from_edges(&[(0, 1); 3]).unwrap();
        let m = perfect_matching_avoiding(&g, &ids(&[0])).unwrap();
        assert!(m == ids(&[1]) || m == ids(&[2]));
        let f = two_factor_containing(&g, &ids(&[0])).unwrap();
        assert_eq!(f.cycles.len(), 1);
        assert_eq!(f.cycles[0].len(), 2);
        assert!(f.cycles[0].edges.contains(&EdgeId(0)));
        assert_eq!(f.complement.len(), 1);
        assert!(is_valid_two_factor(&g, &f));
    }

    #[test]
    fn petersen_has_six_matchings_each_leaving_two_pentagons() {
        let g = petersen();
        let all = enumerate_perfect_matchings(&g, &BTreeSet::new(), 100);
        assert_eq!(all.len(), 6);
        for m in all {
            let f = TwoFactor::from_matching(&g, m);
            assert!(is_valid_two_factor(&g, &f));
            let mut lens: Vec<usize> = f.cycles.iter().map(Cycle::len).collect();
            lens.sort();
            assert_eq!(lens, vec![5, 5]);
        }
        let f = two_factor_containing(&g, &BTreeSet::new()).unwrap();
        assert_eq!(f.cycles.len(), 2);
    }

    #[test]
    fn petersen_nonadjacent_pair() {
        let g = petersen();
        // e0 = 01 and e6 = 23 share no endpoint
        let forbidden = ids(&[0, 6]);
        let m = perfect_matching_avoiding(&g, &forbidden).unwrap();
        assert_eq!(m.len(), 5);
        assert!(m.is_disjoint(&forbidden));
        assert!(enumerate_perfect_matchings(&g, &forbidden, 100).contains(&m));
    }

    #[test]
    fn k4_two_factor_is_a_four_cycle() {
        let g = k4();
        let f = two_factor_containing(&g, &ids(&[0])).unwrap();
        assert_eq!(f.cycles.len(), 1);
        assert_eq!(f.cycles[0].len(), 4);
        assert_eq!(f.complement.len(), 2);
        assert_eq!(f.cycles[0].vertices[0], VertexId(0));
        assert_eq!(f.cycles[0].vertices[1], VertexId(1));
        assert!(is_valid_two_factor(&g, &f));
    }

    #[test]
    fn blossom_agrees_with_enumeration_on_odd_cycles() {
        // two triangles joined by a path of length 3 via a matching edge: the
        // blossom case
        let g = MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let m = perfect_matching_avoiding(&g, &BTreeSet::new()).unwrap();
        assert!(is_perfect_matching(&g, &m));
        assert_eq!(enumerate_perfect_matchings(&g, &BTreeSet::new(), 10).len(), 1);
    }

    #[test]
    fn odd_order_has_no_perfect_matching() {
        let g = MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(perfect_matching_avoiding(&g, &BTreeSet::new()).is_none());
        assert!(matches!(
            two_factor_containing(&g, &BTreeSet::new()),
            Err(MatchingError::PlesnikViolated(_))
        ));
    }
}
