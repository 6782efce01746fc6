//! Graphs with bridges: per-component colorings glued along the bridge tree.

use std::collections::BTreeMap;

use super::{candidates_2ec, color_2ec_report, CandidateIter, ColorError, ColoringReport};
use crate::color::{apply_permutation, ColorPermutation, EdgeColoring, PackingColor};
use crate::graph::{Distance, DistanceTable, EdgeId, MultiGraph, VertexId};
use crate::recognition::{find_claw, is_cubic};
use crate::structure::{
    bridge_decompose, build_tilde, classify_component, component_boundary, find_diamonds, BoundaryVertex,
    ComponentBoundary, ComponentClass, StructureError,
};
use crate::verify::{is_valid, verify, PackingSpec};

use PackingColor::*;

/// Rounds of the glue-and-verify loop before giving up.
const MAX_GLOBAL_ATTEMPTS: usize = 256;

/// Colorings of one component, each verified on the component itself.
struct ComponentSource {
    gi: MultiGraph,
    candidates: CandidateIter,
    tried: usize,
}

impl ComponentSource {
    fn next_valid(&mut self, backtracks: &mut usize) -> Result<EdgeColoring, ColorError> {
        let spec = PackingSpec::default();
        for c in self.candidates.by_ref() {
            let c = c?;
            self.tried += 1;
            if is_valid(&self.gi, &c, &spec) {
                return Ok(c);
            }
            *backtracks += 1;
        }
        Err(ColorError::Exhausted { attempts: self.tried })
    }
}

fn single(c: EdgeColoring) -> CandidateIter {
    Box::new(std::iter::once(Ok(c)))
}

fn k3_coloring(gi: &MultiGraph) -> EdgeColoring {
    gi.edge_ids().zip(PackingColor::ONES).collect()
}

fn diamond_coloring(gi: &MultiGraph) -> Result<EdgeColoring, ColorError> {
    let d = find_diamonds(gi)
        .into_iter()
        .next()
        .ok_or_else(|| StructureError::ClassificationFailed("diamond component without a diamond".into()))?;
    let mut col = EdgeColoring::new();
    col.insert(d.internal_edge, C1);
    for e in d.external_matching(0) {
        col.insert(e, A1);
    }
    for e in d.external_matching(1) {
        col.insert(e, B1);
    }
    Ok(col)
}

fn min_distance_to(table: &DistanceTable, gi: &MultiGraph, e: EdgeId, targets: &[EdgeId]) -> Distance {
    targets
        .iter()
        .filter_map(|&t| table.edge_distance_in(gi, e, t).ok())
        .min()
        .unwrap_or(Distance::Infinite)
}

/// Extends a coloring of the odd tilde graph back over the removed triangle.
fn extend_odd(gi: &MultiGraph, table: &DistanceTable, bv: BoundaryVertex, tilde_col: &EdgeColoring) -> EdgeColoring {
    let mut col: EdgeColoring = tilde_col
        .iter()
        .filter(|(e, _)| gi.contains_edge(**e))
        .map(|(&e, &c)| (e, c))
        .collect();
    let three_a: Vec<EdgeId> = col.iter().filter(|(_, &c)| c == A3).map(|(&e, _)| e).collect();
    let edge = |x: VertexId, y: VertexId| gi.edge_between(x, y).expect("boundary edge");
    let BoundaryVertex { v, mut u, mut w, mut s, mut b } = bv;
    // 3a goes on whichever outer edge is farther from the existing 3a edges
    let d_bw = min_distance_to(table, gi, edge(b, w), &three_a);
    let d_su = min_distance_to(table, gi, edge(s, u), &three_a);
    if d_su > d_bw {
        std::mem::swap(&mut u, &mut w);
        std::mem::swap(&mut s, &mut b);
    }
    col.insert(edge(s, u), A1);
    col.insert(edge(u, v), B1);
    col.insert(edge(v, w), A1);
    col.insert(edge(u, w), C1);
    col.insert(edge(w, b), A3);
    col
}

fn big_candidates(gi: &MultiGraph, boundary: &ComponentBoundary) -> Result<CandidateIter, ColorError> {
    let tc = build_tilde(gi, boundary)?;
    let owned = gi.clone();
    match tc.removed {
        None => {
            let (it, _) = candidates_2ec(&tc.tilde, None)?;
            Ok(Box::new(it.map(move |c| {
                c.map(|c| c.into_iter().filter(|(e, _)| owned.contains_edge(*e)).collect())
            })))
        }
        Some(rm) => {
            let (it, _) = candidates_2ec(&tc.tilde, Some(rm.anchor))?;
            let table = DistanceTable::new(gi);
            let bv = boundary.degree2[0];
            Ok(Box::new(it.map(move |c| c.map(|c| extend_odd(&owned, &table, bv, &c)))))
        }
    }
}

/// Coloring of a big component: restricted from its tilde graph when the
/// number of degree-2 vertices is even, otherwise extended from an anchored
/// coloring of the tilde graph with `3a` on one outer edge of the first
/// boundary triangle.
pub fn color_component(gi: &MultiGraph, boundary: &ComponentBoundary) -> Result<EdgeColoring, ColorError> {
    let mut src = ComponentSource {
        gi: gi.clone(),
        candidates: big_candidates(gi, boundary)?,
        tried: 0,
    };
    src.next_valid(&mut 0)
}

pub fn color_graph(g: &MultiGraph) -> Result<EdgeColoring, ColorError> {
    color_graph_report(g).map(|r| r.coloring)
}

fn check_input(g: &MultiGraph) -> Result<(), ColorError> {
    if !is_cubic(g) {
        return Err(ColorError::NotCubic);
    }
    if !g.is_simple() {
        return Err(ColorError::NotSimple);
    }
    if !g.is_connected() {
        return Err(ColorError::NotConnected);
    }
    if let Some(w) = find_claw(g) {
        return Err(ColorError::NotClawFree(w));
    }
    Ok(())
}

/// First `1`-color absent from the already colored edges at `x`.
fn missing_at(g: &MultiGraph, x: VertexId, col: &EdgeColoring) -> PackingColor {
    PackingColor::ONES
        .into_iter()
        .find(|c| !g.incident(x).iter().any(|e| col.get(e) == Some(c)))
        .unwrap_or(C1)
}

pub fn color_graph_report(g: &MultiGraph) -> Result<ColoringReport, ColorError> {
    check_input(g)?;
    if crate::recognition::is_two_edge_connected(g) {
        return color_2ec_report(g);
    }
    let bd = bridge_decompose(g)?;
    let mut backtracks = 0;
    let mut sources = Vec::with_capacity(bd.components.len());
    let mut current = Vec::with_capacity(bd.components.len());
    for (i, gi) in bd.components.iter().enumerate() {
        let candidates = match classify_component(gi)? {
            ComponentClass::IsK3 => single(k3_coloring(gi)),
            ComponentClass::IsDiamond => single(diamond_coloring(gi)?),
            ComponentClass::Big => {
                let up = bd.up_edge.get(&i).map(|u| u.p);
                big_candidates(gi, &component_boundary(gi, up)?)?
            }
        };
        let mut src = ComponentSource {
            gi: gi.clone(),
            candidates,
            tried: 0,
        };
        current.push(src.next_valid(&mut backtracks)?);
        sources.push(src);
    }
    let bfs_pos: BTreeMap<usize, usize> = bd.bfs_order.iter().enumerate().map(|(p, &c)| (c, p)).collect();
    let child_of_bridge: BTreeMap<EdgeId, usize> = bd.up_edge.iter().map(|(&c, u)| (u.bridge, c)).collect();
    let owner = |e: EdgeId| -> usize {
        if let Some(&c) = child_of_bridge.get(&e) {
            return c;
        }
        let (a, _) = g.endpoints(e).expect("edge of g");
        bd.component_of[&a]
    };
    let spec = PackingSpec::default();
    for _ in 0..MAX_GLOBAL_ATTEMPTS {
        let mut col = EdgeColoring::new();
        for &i in &bd.bfs_order {
            let mut ci = current[i].clone();
            if let Some(up) = bd.up_edge.get(&i) {
                let want = missing_at(g, up.q, &col);
                let have = missing_at(g, up.p, &ci);
                if want != have {
                    ci = apply_permutation(&ci, ColorPermutation::swap(have, want));
                }
                col.insert(up.bridge, want);
            }
            col.extend(ci);
        }
        let violations = verify(g, &col, &spec)?;
        let Some(worst) = violations
            .iter()
            .flat_map(|v| [owner(v.edges.0), owner(v.edges.1)])
            .max_by_key(|c| bfs_pos[c])
        else {
            return Ok(ColoringReport::new(col, "bridged", backtracks));
        };
        backtracks += 1;
        current[worst] = sources[worst].next_valid(&mut backtracks)?;
    }
    Err(ColorError::Exhausted {
        attempts: MAX_GLOBAL_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::class_sizes;

    const LEAF7: [(u32, u32); 10] = [(1, 0), (0, 2), (1, 2), (1, 3), (2, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)];

    fn leaf7_pair() -> MultiGraph {
        let mut edges: Vec<(u32, u32)> = LEAF7.to_vec();
        edges.extend(LEAF7.iter().map(|&(a, b)| (a + 7, b + 7)));
        edges.push((0, 7));
        MultiGraph::from_edges(&edges).unwrap()
    }

    #[test]
    fn leaf7_pair_has_two_far_three_a_edges() {
        let g = leaf7_pair();
        let r = color_graph_report(&g).unwrap();
        assert_eq!(r.variant, "bridged");
        assert!(is_valid(&g, &r.coloring, &PackingSpec::default()));
        assert_eq!(r.three_a, 2);
        let a3: Vec<EdgeId> = super::super::three_a_edges(&r.coloring).into_iter().collect();
        let d = crate::graph::edge_distance(&g, a3[0], a3[1]).unwrap();
        assert!(d >= Distance::Finite(4));
        assert_eq!(r.coloring[&EdgeId(20)], C1);
    }

    #[test]
    fn star_with_k3_center() {
        let mut edges = vec![(0, 1), (1, 2), (2, 0)];
        for i in 0..3u32 {
            let off = 3 + 7 * i;
            edges.extend(LEAF7.iter().map(|&(a, b)| (a + off, b + off)));
            edges.push((i, off));
        }
        let g = MultiGraph::from_edges(&edges).unwrap();
        let c = color_graph(&g).unwrap();
        assert!(is_valid(&g, &c, &PackingSpec::default()));
        assert_eq!(class_sizes(&c)[3], 3);
    }

    #[test]
    fn diamond_between_two_leaves() {
        // leaf7 - diamond - leaf7
        let mut edges: Vec<(u32, u32)> = LEAF7.to_vec();
        edges.extend(LEAF7.iter().map(|&(a, b)| (a + 7, b + 7)));
        edges.extend([(14, 15), (14, 16), (15, 16), (15, 17), (16, 17), (0, 14), (7, 17)]);
        let g = MultiGraph::from_edges(&edges).unwrap();
        let r = color_graph_report(&g).unwrap();
        assert!(is_valid(&g, &r.coloring, &PackingSpec::default()));
    }

    #[test]
    fn odd_component_extension() {
        let gi = MultiGraph::from_edges(&LEAF7).unwrap();
        let boundary = component_boundary(&gi, None).unwrap();
        let c = color_component(&gi, &boundary).unwrap();
        assert!(is_valid(&gi, &c, &PackingSpec::default()));
        assert_eq!(c.len(), 10);
        assert_eq!(class_sizes(&c)[3], 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let path = MultiGraph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(color_graph(&path), Err(ColorError::NotCubic));
        let k33 = MultiGraph::from_edges(&[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert!(matches!(color_graph(&k33), Err(ColorError::NotClawFree(_))));
        let two_k4 = MultiGraph::from_edges(&[
            (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
            (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7),
        ])
        .unwrap();
        assert_eq!(color_graph(&two_k4), Err(ColorError::NotConnected));
        let dipole = MultiGraph::from_edges(&[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(color_graph(&dipole), Err(ColorError::NotSimple));
    }
}
