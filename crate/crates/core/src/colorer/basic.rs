//! Building blocks: `K4`, rings of diamonds, single expanded cycles and
//! diamond strings.

use std::collections::BTreeSet;

use super::ColorError;
use crate::color::{EdgeColoring, PackingColor};
use crate::graph::{EdgeId, MultiGraph};
use crate::structure::diamonds::{find_diamonds, DiamondString};
use crate::structure::oum::is_k4;
use crate::structure::detect_ring_of_diamonds;

use PackingColor::*;

/// `1a <-> 1b`; other colors unchanged.
pub fn other(c: PackingColor) -> PackingColor {
    match c {
        A1 => B1,
        B1 => A1,
        c => c,
    }
}

/// The three perfect matchings of `K4`, each as a pair of edges, ordered by
/// smallest edge id.
fn k4_matchings(g: &MultiGraph) -> Vec<[EdgeId; 2]> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (e, a, b) in g.edges() {
        if seen.contains(&e) {
            continue;
        }
        let f = g
            .edges()
            .find(|&(_, c, d)| c != a && c != b && d != a && d != b)
            .map(|(f, _, _)| f)
            .expect("K4 has an opposite edge");
        seen.insert(e);
        seen.insert(f);
        out.push([e, f]);
    }
    out
}

pub fn color_k4(g: &MultiGraph) -> Result<EdgeColoring, ColorError> {
    if !is_k4(g) {
        return Err(ColorError::NotK4);
    }
    let mut col = EdgeColoring::new();
    for (pm, c) in k4_matchings(g).into_iter().zip(PackingColor::ONES) {
        for e in pm {
            col.insert(e, c);
        }
    }
    Ok(col)
}

/// `K4` coloring with the perfect matching through `anchor` in `1a`.
pub fn color_k4_anchored(g: &MultiGraph, anchor: EdgeId) -> Result<EdgeColoring, ColorError> {
    if !is_k4(g) {
        return Err(ColorError::NotK4);
    }
    let mut pms = k4_matchings(g);
    let i = pms
        .iter()
        .position(|pm| pm.contains(&anchor))
        .ok_or(ColorError::BadAnchor(format!("{anchor} is not an edge")))?;
    let first = pms.remove(i);
    pms.insert(0, first);
    let mut col = EdgeColoring::new();
    for (pm, c) in pms.into_iter().zip(PackingColor::ONES) {
        for e in pm {
            col.insert(e, c);
        }
    }
    Ok(col)
}

/// One external matching of each diamond in `1a`, the other in `1b`,
/// everything else in `1c`.
pub fn color_ring(g: &MultiGraph, k: usize) -> Result<EdgeColoring, ColorError> {
    if detect_ring_of_diamonds(g) != Some(k) {
        return Err(ColorError::NotRing);
    }
    let mut col: EdgeColoring = g.edge_ids().map(|e| (e, C1)).collect();
    for d in find_diamonds(g) {
        for e in d.external_matching(0) {
            col.insert(e, A1);
        }
        for e in d.external_matching(1) {
            col.insert(e, B1);
        }
    }
    Ok(col)
}

/// Colors of an expanded cycle of `len = 3m` edges, position `3j + 2` being
/// the `j`-th connector. Even `m`: alternate from `start` at position 0.
/// Odd `m`: `3a` at `anchor`, then alternate from `start` on the edge after
/// it.
pub fn color_cycle(len: usize, anchor: Option<usize>, start: PackingColor) -> Result<Vec<PackingColor>, ColorError> {
    if len < 6 || len % 3 != 0 {
        return Err(ColorError::BadContext(format!("cycle length {len} is not 3m with m >= 2")));
    }
    if start != A1 && start != B1 {
        return Err(ColorError::BadContext(format!("cycle cannot start with {start}")));
    }
    let m = len / 3;
    let pick = |i: usize| if i % 2 == 0 { start } else { other(start) };
    if m % 2 == 0 {
        if let Some(p) = anchor {
            return Err(ColorError::BadAnchor(format!("even cycle takes no 3a anchor (got position {p})")));
        }
        return Ok((0..len).map(pick).collect());
    }
    let p = match anchor {
        Some(p) if p < len && p % 3 == 2 => p,
        Some(p) => return Err(ColorError::BadAnchor(format!("position {p} is not a connector"))),
        None => return Err(ColorError::BadAnchor("odd cycle needs a 3a anchor".into())),
    };
    let mut out = vec![A3; len];
    for i in 0..len - 1 {
        out[(p + 1 + i) % len] = pick(i);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StringEnd {
    Left,
    Right,
}

/// How a diamond string is colored, by what its contracted edge would get.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StringContext {
    /// Replaces an edge of the complementary matching.
    Type1,
    /// Replaces a cycle edge colored `1a`.
    Type2_1,
    /// Replaces a cycle edge colored `1b`.
    Type2_2,
    /// Replaces a cycle edge colored `3a`: the connector at `end` gets `3a`,
    /// the other non-external edges `fill`.
    Type2_3 { end: StringEnd, fill: PackingColor },
}

pub fn color_string(s: &DiamondString, ctx: StringContext) -> Result<EdgeColoring, ColorError> {
    if s.is_empty() || s.connectors.len() != s.len() + 1 {
        return Err(ColorError::BadContext("malformed diamond string".into()));
    }
    let (p, q, rest) = match ctx {
        StringContext::Type1 => (A1, B1, C1),
        StringContext::Type2_1 => (B1, C1, A1),
        StringContext::Type2_2 => (A1, C1, B1),
        StringContext::Type2_3 { fill, .. } => {
            if fill != A1 && fill != B1 {
                return Err(ColorError::BadContext(format!("fill color {fill}")));
            }
            (C1, other(fill), fill)
        }
    };
    let mut col = EdgeColoring::new();
    for &e in &s.connectors {
        col.insert(e, rest);
    }
    for d in &s.diamonds {
        col.insert(d.internal_edge, rest);
        for e in d.external_matching(0) {
            col.insert(e, p);
        }
        for e in d.external_matching(1) {
            col.insert(e, q);
        }
    }
    if let StringContext::Type2_3 { end, .. } = ctx {
        let e = match end {
            StringEnd::Left => s.connectors[0],
            StringEnd::Right => s.connectors[s.len()],
        };
        col.insert(e, A3);
    }
    Ok(col)
}
