//! Exhaustive S-packing edge-coloring search for small graphs.
//!
//! Edges are assigned in a fixed most-constrained-first order with forward
//! checking on class domains. Classes with equal `s_i` are interchangeable,
//! so a class may only be opened once every earlier class of its group is in
//! use.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::color::{EdgeColoring, PackingColor};
use crate::graph::{DistanceTable, EdgeId, MultiGraph, VertexId};
use crate::verify::{verify_classes, PackingSpec};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OracleOutcome {
    /// Class index per edge.
    Feasible(BTreeMap<EdgeId, usize>),
    Infeasible,
    BudgetExceeded,
}

impl OracleOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, OracleOutcome::Feasible(_))
    }

    /// The witness as labels, when the spec has at most four classes.
    pub fn as_coloring(&self) -> Option<EdgeColoring> {
        match self {
            OracleOutcome::Feasible(classes) => classes
                .iter()
                .map(|(&e, &c)| PackingColor::from_class_index(c).map(|p| (e, p)))
                .collect(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub outcome: OracleOutcome,
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub budget: u64,
    pub symmetry_breaking: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: DEFAULT_BUDGET,
            symmetry_breaking: true,
        }
    }
}

pub fn oracle_color(g: &MultiGraph, spec: &PackingSpec, budget: u64) -> OracleOutcome {
    oracle_search(
        g,
        spec,
        OracleOptions {
            budget,
            ..OracleOptions::default()
        },
    )
    .outcome
}

struct Search {
    k: usize,
    /// conflicts[c][i]: positions that may not share class `c` with position `i`
    conflicts: Vec<Vec<Vec<usize>>>,
    /// first class of each class's equal-s group
    group_start: Vec<usize>,
    domain: Vec<u32>,
    assigned: Vec<Option<usize>>,
    class_used: Vec<usize>,
    symmetry: bool,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search {
    fn run(&mut self, pos: usize) -> Step {
        if pos == self.assigned.len() {
            return Step::Found;
        }
        for c in 0..self.k {
            if self.domain[pos] & (1 << c) == 0 {
                continue;
            }
            if self.symmetry && c > self.group_start[c] && self.class_used[c - 1] == 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            let mut trail = Vec::new();
            let mut wiped = false;
            for &j in &self.conflicts[c][pos] {
                if self.assigned[j].is_none() && self.domain[j] & (1 << c) != 0 {
                    self.domain[j] &= !(1 << c);
                    trail.push(j);
                    if self.domain[j] == 0 {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped {
                self.assigned[pos] = Some(c);
                self.class_used[c] += 1;
                match self.run(pos + 1) {
                    Step::Exhausted => {}
                    done => return done,
                }
                self.class_used[c] -= 1;
                self.assigned[pos] = None;
            }
            for j in trail {
                self.domain[j] |= 1 << c;
            }
        }
        Step::Exhausted
    }
}

pub fn oracle_search(g: &MultiGraph, spec: &PackingSpec, options: OracleOptions) -> OracleReport {
    let k = spec.len();
    assert!(k <= 32, "at most 32 classes");
    let edges: Vec<(EdgeId, (VertexId, VertexId))> = g.edges().map(|(e, u, v)| (e, (u, v))).collect();
    let m = edges.len();
    let table = DistanceTable::new(g);
    let max_s = *spec.s().last().expect("nonempty spec");
    // pairwise distances, capped
    let mut near: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            if let Some(d) = table.edge_distance(edges[i].0, edges[i].1, edges[j].0, edges[j].1).finite() {
                if d <= max_s {
                    near[i].push((j, d));
                }
            }
        }
    }
    // most constrained first: how many edges clash with it in some class
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(near[i].len()), edges[i].0));
    let mut position = vec![0; m];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let conflicts: Vec<Vec<Vec<usize>>> = spec
        .s()
        .iter()
        .map(|&s| {
            order
                .iter()
                .map(|&i| near[i].iter().filter(|&&(_, d)| d <= s).map(|&(j, _)| position[j]).collect())
                .collect()
        })
        .collect();
    let group_start: Vec<usize> = (0..k)
        .map(|c| spec.s().iter().position(|&s| s == spec.s()[c]).expect("present"))
        .collect();
    let mut search = Search {
        k,
        conflicts,
        group_start,
        domain: vec![if k == 32 { u32::MAX } else { (1u32 << k) - 1 }; m],
        assigned: vec![None; m],
        class_used: vec![0; k],
        symmetry: options.symmetry_breaking,
        nodes: 0,
        budget: options.budget,
    };
    let outcome = match search.run(0) {
        Step::Found => {
            let classes: BTreeMap<EdgeId, usize> = order
                .iter()
                .enumerate()
                .map(|(p, &i)| (edges[i].0, search.assigned[p].expect("complete")))
                .collect();
            let verdict = verify_classes(g, &classes, spec);
            assert!(matches!(&verdict, Ok(v) if v.is_empty()), "oracle produced an invalid coloring");
            OracleOutcome::Feasible(classes)
        }
        Step::Exhausted => OracleOutcome::Infeasible,
        Step::OutOfBudget => OracleOutcome::BudgetExceeded,
    };
    OracleReport {
        outcome,
        nodes: search.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn spec(s: &[usize]) -> PackingSpec {
        PackingSpec::new(s.to_vec()).unwrap()
    }

    #[test]
    fn k4_is_three_edge_colorable() {
        assert!(oracle_color(&k4(), &spec(&[1, 1, 1]), DEFAULT_BUDGET).is_feasible());
        assert_eq!(oracle_color(&k4(), &spec(&[1, 1]), DEFAULT_BUDGET), OracleOutcome::Infeasible);
    }

    #[test]
    fn budget_is_a_distinct_outcome() {
        assert_eq!(oracle_color(&k4(), &spec(&[1, 1]), 1), OracleOutcome::BudgetExceeded);
    }

    #[test]
    fn symmetry_breaking_keeps_verdicts() {
        let c5 = MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        for s in [vec![1, 1], vec![1, 1, 1], vec![1, 2], vec![1, 1, 3], vec![2, 2]] {
            for g in [&k4(), &c5] {
                let on = oracle_search(g, &spec(&s), OracleOptions::default());
                let off = oracle_search(
                    g,
                    &spec(&s),
                    OracleOptions {
                        symmetry_breaking: false,
                        ..OracleOptions::default()
                    },
                );
                assert_eq!(on.outcome.is_feasible(), off.outcome.is_feasible(), "spec {s:?}");
            }
        }
    }

    #[test]
    fn odd_cycle_needs_a_third_class() {
        let c5 = MultiGraph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(oracle_color(&c5, &spec(&[1, 1]), DEFAULT_BUDGET), OracleOutcome::Infeasible);
        assert!(oracle_color(&c5, &spec(&[1, 1, 3]), DEFAULT_BUDGET).is_feasible());
        // a single edge in the last class never conflicts with itself
        assert!(oracle_color(&c5, &spec(&[1, 1, 4]), DEFAULT_BUDGET).is_feasible());
    }
}
