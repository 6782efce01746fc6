//! Exhaustive isomorphism test for small multigraphs.
//!
//! Color refinement prunes candidates, then a backtracking search extends a
//! partial vertex map while checking edge multiplicities against every
//! previously mapped vertex.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{GraphError, MultiGraph};

pub const ISO_VERTEX_LIMIT: usize = 16;

struct Dense {
    n: usize,
    mult: Vec<u8>,
    adj: Vec<Vec<usize>>,
}

impl Dense {
    fn new(g: &MultiGraph) -> Self {
        let index = g.vertex_index();
        let n = index.len();
        let mut mult = vec![0u8; n * n];
        for (_, u, v) in g.edges() {
            let (i, j) = (index[&u], index[&v]);
            mult[i * n + j] += 1;
            mult[j * n + i] += 1;
        }
        let adj = (0..n)
            .map(|i| (0..n).filter(|&j| mult[i * n + j] > 0).collect())
            .collect();
        Dense { n, mult, adj }
    }

    fn m(&self, i: usize, j: usize) -> u8 {
        self.mult[i * self.n + j]
    }
}

/// Refines both graphs with a shared palette so colors are comparable.
fn joint_refinement(a: &Dense, b: &Dense) -> Option<(Vec<usize>, Vec<usize>)> {
    let degree = |d: &Dense| -> Vec<usize> {
        (0..d.n)
            .map(|i| d.adj[i].iter().map(|&j| d.m(i, j) as usize).sum())
            .collect()
    };
    let mut ca = degree(a);
    let mut cb = degree(b);
    loop {
        let sig = |d: &Dense, c: &[usize]| -> Vec<(usize, Vec<(usize, u8)>)> {
            (0..d.n)
                .map(|i| {
                    let mut nb: Vec<_> = d.adj[i].iter().map(|&j| (c[j], d.m(i, j))).collect();
                    nb.sort_unstable();
                    (c[i], nb)
                })
                .collect()
        };
        let sa = sig(a, &ca);
        let sb = sig(b, &cb);
        let mut palette = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            let next = palette.len();
            palette.entry(s.clone()).or_insert(next);
        }
        let na: Vec<usize> = sa.iter().map(|s| palette[s]).collect();
        let nb: Vec<usize> = sb.iter().map(|s| palette[s]).collect();
        let mut ha = na.clone();
        let mut hb = nb.clone();
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return None;
        }
        let classes = |c: &[usize]| {
            let mut v = c.to_vec();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        let stable = classes(&na) == classes(&ca);
        ca = na;
        cb = nb;
        if stable {
            return Some((ca, cb));
        }
    }
}

pub fn are_isomorphic_small(g1: &MultiGraph, g2: &MultiGraph) -> Result<bool, GraphError> {
    for g in [g1, g2] {
        if g.vertex_count() > ISO_VERTEX_LIMIT {
            return Err(GraphError::TooLarge {
                vertices: g.vertex_count(),
                limit: ISO_VERTEX_LIMIT,
            });
        }
    }
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let a = Dense::new(g1);
    let b = Dense::new(g2);
    let Some((ca, cb)) = joint_refinement(&a, &b) else {
        return Ok(false);
    };

    // BFS order over g1 keeps each new vertex adjacent to a mapped one.
    let mut order = Vec::with_capacity(a.n);
    let mut placed = vec![false; a.n];
    for s in 0..a.n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            order.push(x);
            for &y in &a.adj[x] {
                if !placed[y] {
                    placed[y] = true;
                    q.push_back(y);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    Ok(extend(&a, &b, &ca, &cb, &order, 0, &mut map, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Dense,
    b: &Dense,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..b.n {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&p| a.m(x, p) == b.m(y, map[p]));
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// Cheap invariants used where exact comparison is too expensive: vertex and
/// edge counts, degree sequence, triangle count and a refinement histogram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub vertices: usize,
    pub edges: usize,
    pub degrees: Vec<usize>,
    pub triangles: usize,
    pub class_sizes: Vec<usize>,
}

pub fn fingerprint(g: &MultiGraph) -> Fingerprint {
    let mut degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    let d = Dense::new(g);
    let mut triangles = 0;
    for i in 0..d.n {
        for &j in d.adj[i].iter().filter(|&&j| j > i) {
            for &k in d.adj[j].iter().filter(|&&k| k > j) {
                if d.m(i, k) > 0 {
                    triangles += 1;
                }
            }
        }
    }
    let (colors, _) = joint_refinement(&d, &d).expect("identical graphs refine identically");
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &colors {
        *hist.entry(c).or_default() += 1;
    }
    let mut class_sizes: Vec<usize> = hist.into_values().collect();
    class_sizes.sort_unstable();
    Fingerprint {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        degrees,
        triangles,
        class_sizes,
    }
}
