//! Independent validity check for S-packing edge-colorings.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::EdgeColoring;
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Non-decreasing sequence of positive distances; class `i` needs pairwise
/// edge distance at least `s[i] + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingSpec {
    s: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("spec is empty")]
    Empty,
    #[error("spec entries must be positive")]
    NonPositive,
    #[error("spec must be non-decreasing")]
    NotSorted,
    #[error("bad spec entry {0:?}")]
    Parse(String),
}

impl PackingSpec {
    pub fn new(s: Vec<usize>) -> Result<Self, SpecError> {
        if s.is_empty() {
            return Err(SpecError::Empty);
        }
        if s.contains(&0) {
            return Err(SpecError::NonPositive);
        }
        if s.windows(2).any(|w| w[0] > w[1]) {
            return Err(SpecError::NotSorted);
        }
        Ok(PackingSpec { s })
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn required(&self, class: usize) -> usize {
        self.s[class] + 1
    }
}

impl Default for PackingSpec {
    fn default() -> Self {
        PackingSpec { s: vec![1, 1, 1, 3] }
    }
}

impl FromStr for PackingSpec {
    type Err = SpecError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s = text
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| SpecError::Parse(p.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        PackingSpec::new(s)
    }
}

impl fmt::Display for PackingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.s.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub class_index: usize,
    pub edges: (EdgeId, EdgeId),
    pub distance: usize,
    pub required: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "class {}: {} and {} at distance {} (need {})",
            self.class_index, self.edges.0, self.edges.1, self.distance, self.required
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("edge {0} is unassigned")]
    PartialColoring(EdgeId),
    #[error("coloring names edge {0}, which is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("edge {edge} uses class {class}, but the spec has {classes} classes")]
    ClassOutOfRange { edge: EdgeId, class: usize, classes: usize },
}

/// `Ok(vec![])` means valid.
pub type Verdict = Result<Vec<Violation>, VerifyError>;

/// Checks a labelled coloring; `1a, 1b, 1c, 3a` are classes `0..4` of `spec`.
pub fn verify(g: &MultiGraph, coloring: &EdgeColoring, spec: &PackingSpec) -> Verdict {
    let classes: BTreeMap<EdgeId, usize> = coloring.iter().map(|(&e, c)| (e, c.class_index())).collect();
    verify_classes(g, &classes, spec)
}

pub fn is_valid(g: &MultiGraph, coloring: &EdgeColoring, spec: &PackingSpec) -> bool {
    matches!(verify(g, coloring, spec), Ok(v) if v.is_empty())
}

/// Checks an assignment of class indices. Every same-class pair closer than
/// `s_i + 1` is reported once, ordered by class then edge pair.
pub fn verify_classes(g: &MultiGraph, classes: &BTreeMap<EdgeId, usize>, spec: &PackingSpec) -> Verdict {
    for &e in classes.keys() {
        if !g.contains_edge(e) {
            return Err(VerifyError::UnknownEdge(e));
        }
    }
    let mut members: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); spec.len()];
    for e in g.edge_ids() {
        let &c = classes.get(&e).ok_or(VerifyError::PartialColoring(e))?;
        if c >= spec.len() {
            return Err(VerifyError::ClassOutOfRange {
                edge: e,
                class: c,
                classes: spec.len(),
            });
        }
        members[c].insert(e);
    }
    let mut out = Vec::new();
    for (c, set) in members.iter().enumerate() {
        let s = spec.s()[c];
        for &e in set {
            // vertices within distance s - 1 of e; any same-class edge touching
            // one of them is closer than s + 1
            let near = ball(g, e, s - 1);
            let mut hits: BTreeMap<EdgeId, usize> = BTreeMap::new();
            for (&x, &d) in &near {
                for &f in g.incident(x) {
                    if f > e && set.contains(&f) {
                        let entry = hits.entry(f).or_insert(usize::MAX);
                        *entry = (*entry).min(d + 1);
                    }
                }
            }
            for (f, distance) in hits {
                out.push(Violation {
                    class_index: c,
                    edges: (e, f),
                    distance,
                    required: s + 1,
                });
            }
        }
    }
    Ok(out)
}

/// Vertex distances from the nearer endpoint of `e`, up to `radius`.
fn ball(g: &MultiGraph, e: EdgeId, radius: usize) -> BTreeMap<VertexId, usize> {
    let (a, b) = g.endpoints(e).expect("edge present");
    let mut dist = BTreeMap::from([(a, 0), (b, 0)]);
    let mut queue = VecDeque::from([a, b]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for y in g.neighbors(x) {
            if !dist.contains_key(&y) {
                dist.insert(y, d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}
