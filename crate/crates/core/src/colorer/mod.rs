//! `(1,1,1,3)`-packing edge-colorings of connected claw-free cubic graphs.
//!
//! Bridgeless graphs are colored from their decomposition: `K4` and rings
//! of diamonds with three matchings, triangle-substituted graphs through a
//! 2-factor of the contracted multigraph. Graphs with bridges are split along
//! the bridge tree, every component is colored on its own and the pieces are
//! glued in BFS order, permuting `1a, 1b, 1c` so each bridge can take the
//! color missing at both of its ends.
//!
//! Where the construction leaves a choice open the default is tried first;
//! if the verifier rejects the result the next candidate in a fixed order is
//! used. Rejections are counted as backtracks in [`ColoringReport`].

pub mod basic;
mod bridged;
mod substituted;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

pub use crate::color::{apply_permutation, ColorPermutation, EdgeColoring, PackingColor};
pub use basic::{color_cycle, color_k4, color_k4_anchored, color_ring, color_string, StringContext, StringEnd};
pub use bridged::{color_component, color_graph, color_graph_report};

use crate::color::class_sizes;
use crate::graph::{EdgeId, MultiGraph};
use crate::matching::MatchingError;
use crate::recognition::ClawWitness;
use crate::structure::oum::{oum_decompose, OumDecomposition};
use crate::structure::StructureError;
use crate::verify::{is_valid, PackingSpec, VerifyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("graph is not K4")]
    NotK4,
    #[error("graph is not a ring of diamonds of the given size")]
    NotRing,
    #[error("bad anchor: {0}")]
    BadAnchor(String),
    #[error("bad context: {0}")]
    BadContext(String),
    #[error("anchor {0} lies on a triangle")]
    AnchorOnTriangle(EdgeId),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph is not claw-free (claw at {})", .0.center)]
    NotClawFree(ClawWitness),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has parallel edges")]
    NotSimple,
    #[error("no candidate coloring verified after {attempts} attempts")]
    Exhausted { attempts: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringReport {
    pub coloring: EdgeColoring,
    /// `k4`, `ring`, `substituted` or `bridged`
    pub variant: String,
    /// Candidates rejected by the verifier before one was accepted.
    pub backtracks: usize,
    pub three_a: usize,
}

impl ColoringReport {
    fn new(coloring: EdgeColoring, variant: &str, backtracks: usize) -> Self {
        let three_a = class_sizes(&coloring)[3];
        ColoringReport {
            coloring,
            variant: variant.to_string(),
            backtracks,
            three_a,
        }
    }
}

pub(crate) type CandidateIter = Box<dyn Iterator<Item = Result<EdgeColoring, ColorError>> + Send>;

/// First candidate accepted by `accept`; every rejection bumps `backtracks`.
pub(crate) fn first_accepted(
    candidates: &mut CandidateIter,
    accept: impl Fn(&EdgeColoring) -> bool,
    backtracks: &mut usize,
) -> Result<EdgeColoring, ColorError> {
    let mut attempts = 0;
    for c in candidates {
        let c = c?;
        attempts += 1;
        if accept(&c) {
            return Ok(c);
        }
        *backtracks += 1;
    }
    Err(ColorError::Exhausted { attempts })
}

fn on_triangle(g: &MultiGraph, e: EdgeId) -> Result<bool, ColorError> {
    let (a, b) = g.endpoints(e).map_err(StructureError::from)?;
    Ok(g.neighbor_set(a).intersection(&g.neighbor_set(b)).next().is_some())
}

/// Candidate colorings of a bridgeless graph in retry order, with the
/// decomposition variant.
pub(crate) fn candidates_2ec(
    g: &MultiGraph,
    anchor: Option<EdgeId>,
) -> Result<(CandidateIter, &'static str), ColorError> {
    let d = oum_decompose(g)?;
    let variant = d.variant_name();
    let it: CandidateIter = match d {
        OumDecomposition::IsK4 => {
            let c = match anchor {
                Some(a) => color_k4_anchored(g, a)?,
                None => color_k4(g)?,
            };
            Box::new(std::iter::once(Ok(c)))
        }
        OumDecomposition::RingOfDiamonds(k) => {
            let mut c = color_ring(g, k)?;
            if let Some(a) = anchor {
                if on_triangle(g, a)? {
                    return Err(ColorError::AnchorOnTriangle(a));
                }
                // connectors are 1c
                c = apply_permutation(&c, ColorPermutation::swap(PackingColor::A1, PackingColor::C1));
            }
            Box::new(std::iter::once(Ok(c)))
        }
        OumDecomposition::Substituted(sub) => {
            let required = match anchor {
                Some(a) => {
                    if on_triangle(g, a)? {
                        return Err(ColorError::AnchorOnTriangle(a));
                    }
                    Some(
                        substituted::anchor_hedge(&sub, a)
                            .ok_or_else(|| ColorError::BadAnchor(format!("{a} is not a connector")))?,
                    )
                }
                None => None,
            };
            Box::new(substituted::Candidates::new(g, &sub, required)?)
        }
    };
    Ok((it, variant))
}

/// Anchor in `1a` and no `3a` edge touching either end of it.
pub(crate) fn anchor_respected(g: &MultiGraph, c: &EdgeColoring, anchor: EdgeId) -> bool {
    let Ok((a, b)) = g.endpoints(anchor) else {
        return false;
    };
    c.get(&anchor) == Some(&PackingColor::A1)
        && [a, b]
            .iter()
            .flat_map(|&v| g.incident(v).iter())
            .all(|e| c.get(e) != Some(&PackingColor::A3))
}

pub fn color_2ec(g: &MultiGraph) -> Result<EdgeColoring, ColorError> {
    color_2ec_report(g).map(|r| r.coloring)
}

pub fn color_2ec_report(g: &MultiGraph) -> Result<ColoringReport, ColorError> {
    let (mut it, variant) = candidates_2ec(g, None)?;
    let spec = PackingSpec::default();
    let mut backtracks = 0;
    let c = first_accepted(&mut it, |c| is_valid(g, c, &spec), &mut backtracks)?;
    Ok(ColoringReport::new(c, variant, backtracks))
}

/// Coloring with `anchor` in `1a` and no `3a` at its ends. `anchor` must not
/// lie on a triangle unless `g` is `K4`.
pub fn color_2ec_anchored(g: &MultiGraph, anchor: EdgeId) -> Result<EdgeColoring, ColorError> {
    let (mut it, _) = candidates_2ec(g, Some(anchor))?;
    let spec = PackingSpec::default();
    let mut backtracks = 0;
    first_accepted(
        &mut it,
        |c| is_valid(g, c, &spec) && anchor_respected(g, c, anchor),
        &mut backtracks,
    )
}

/// Edges colored `3a`.
pub fn three_a_edges(c: &EdgeColoring) -> BTreeSet<EdgeId> {
    c.iter().filter(|(_, &x)| x == PackingColor::A3).map(|(&e, _)| e).collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::color::class_sizes;
    use crate::matching::two_factor_containing;
    use crate::structure::oum::substitute;
    use crate::structure::ring_of_diamonds;
    use PackingColor::*;

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn prism_h() -> MultiGraph {
        MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn truncated_k4_needs_no_three_a() {
        let (g, _) = substitute(&k4(), &BTreeMap::new()).unwrap();
        let r = color_2ec_report(&g).unwrap();
        assert_eq!(r.coloring.len(), 18);
        assert_eq!(r.three_a, 0);
        assert_eq!(r.variant, "substituted");
        assert!(is_valid(&g, &r.coloring, &PackingSpec::default()));
    }

    fn petersen_h() -> MultiGraph {
        MultiGraph::from_edges(&[
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ])
        .unwrap()
    }

    #[test]
    fn one_three_a_per_odd_cycle() {
        for (h, odd) in [(k4(), 0), (prism_h(), 0), (petersen_h(), 2)] {
            let (g, sub) = substitute(&h, &BTreeMap::new()).unwrap();
            let r = color_2ec_report(&g).unwrap();
            assert!(is_valid(&g, &r.coloring, &PackingSpec::default()));
            assert_eq!(r.backtracks, 0);
            let f = two_factor_containing(&sub.h, &BTreeSet::new()).unwrap();
            let per = substituted::three_a_per_cycle(&g, &sub, &f, &r.coloring).unwrap();
            for (len, n) in &per {
                assert_eq!(*n, len % 2);
            }
            let expected = f.cycles.iter().filter(|c| c.len() % 2 == 1).count();
            assert_eq!(r.three_a, expected);
            if odd > 0 {
                assert_eq!(expected, odd);
            }
        }
    }

    #[test]
    fn ring_of_four_has_no_three_a() {
        let g = ring_of_diamonds(4);
        let r = color_2ec_report(&g).unwrap();
        assert_eq!(r.variant, "ring");
        assert_eq!(class_sizes(&r.coloring), [8, 8, 8, 0]);
    }

    #[test]
    fn strings_on_every_type() {
        // prism with strings on a triangle edge (odd cycle) and a rung
        for lens in [vec![(0, 1)], vec![(6, 2)], vec![(0, 1), (1, 2), (2, 3), (6, 1)], vec![(0, 3), (3, 3)]] {
            let lengths: BTreeMap<EdgeId, usize> = lens.iter().map(|&(e, k)| (EdgeId(e), k)).collect();
            let (g, _) = substitute(&prism_h(), &lengths).unwrap();
            let r = color_2ec_report(&g).unwrap();
            assert!(is_valid(&g, &r.coloring, &PackingSpec::default()), "{lens:?}");
        }
    }

    #[test]
    fn anchored_colorings() {
        for e in 0..6 {
            let c = color_2ec_anchored(&k4(), EdgeId(e)).unwrap();
            assert_eq!(c[&EdgeId(e)], A1);
        }
        let ring = ring_of_diamonds(3);
        // connector e15 joins 3 and 4
        let c = color_2ec_anchored(&ring, EdgeId(15)).unwrap();
        assert_eq!(c[&EdgeId(15)], A1);
        assert_eq!(color_2ec_anchored(&ring, EdgeId(0)), Err(ColorError::AnchorOnTriangle(EdgeId(0))));

        let (g, sub) = substitute(&prism_h(), &BTreeMap::from([(EdgeId(1), 1)])).unwrap();
        for (_, r) in &sub.realization_of {
            let anchors: Vec<EdgeId> = match &r.realization {
                crate::structure::Realization::Plain(e) => vec![*e],
                crate::structure::Realization::String(s) => s.connectors.clone(),
            };
            for a in anchors {
                let c = color_2ec_anchored(&g, a).unwrap();
                assert!(anchor_respected(&g, &c, a));
                assert!(is_valid(&g, &c, &PackingSpec::default()));
            }
        }
        let tri = g.edge_between(sub.triangle_of[&crate::graph::VertexId(0)][0], sub.triangle_of[&crate::graph::VertexId(0)][1]).unwrap();
        assert_eq!(color_2ec_anchored(&g, tri), Err(ColorError::AnchorOnTriangle(tri)));
    }

    #[test]
    fn permutations_preserve_validity() {
        let (g, _) = substitute(&prism_h(), &BTreeMap::from([(EdgeId(6), 1)])).unwrap();
        let c = color_2ec(&g).unwrap();
        for p in ColorPermutation::all() {
            let q = apply_permutation(&c, p);
            assert!(is_valid(&g, &q, &PackingSpec::default()));
            assert_eq!(three_a_edges(&q), three_a_edges(&c));
        }
    }

    #[test]
    fn retry_skips_rejected_candidates() {
        let bad: EdgeColoring = [(EdgeId(0), A1), (EdgeId(1), A1)].into();
        let good: EdgeColoring = [(EdgeId(0), A1), (EdgeId(1), B1)].into();
        let mut it: CandidateIter = Box::new(vec![Ok(bad.clone()), Ok(bad), Ok(good.clone())].into_iter());
        let g = MultiGraph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        let mut backtracks = 0;
        let got = first_accepted(&mut it, |c| is_valid(&g, c, &PackingSpec::default()), &mut backtracks).unwrap();
        assert_eq!(got, good);
        assert_eq!(backtracks, 2);
        let mut empty: CandidateIter = Box::new(std::iter::empty());
        assert_eq!(
            first_accepted(&mut empty, |_| true, &mut backtracks),
            Err(ColorError::Exhausted { attempts: 0 })
        );
    }
}
