//! Colorings of triangle-substituted graphs through a 2-factor of `H`.
//!
//! Every 2-factor cycle `h_0 .. h_{m-1}` of `H` expands to the cycle
//! `x_j c_j y_j | connector j | x_{j+1} ...` of `G`, where `c_j` is the
//! triangle corner carrying the matching edge. Slot `3j` is `x_j c_j`, slot
//! `3j + 1` is `c_j y_j` and slot `3j + 2` the connector realizing `f_j`.
//! Chords `x_j y_j` and matching edges take `1c`.

use std::collections::BTreeSet;

use super::basic::{color_cycle, color_string, other, StringContext, StringEnd};
use super::ColorError;
use crate::color::{EdgeColoring, PackingColor};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::matching::{two_factor_avoiding_in_complement, TwoFactor};
use crate::structure::oum::{Realization, Substitution};
use crate::structure::DiamondString;

use PackingColor::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Edge(EdgeId),
    /// A connector realized by the diamond string of this `H` edge.
    String(EdgeId),
}

/// Free choices for one cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CycleChoice {
    /// connector index carrying `3a` (odd cycles only)
    three_a: Option<usize>,
    start: PackingColor,
    /// `3a` of a Type 2.3 string at its right (`x_{t+1}`) end instead of left
    flip: bool,
}

struct CyclePlan {
    slots: Vec<Slot>,
    chords: Vec<EdgeId>,
    /// `y_j`, the left end of connector `j`
    ys: Vec<VertexId>,
    options: Vec<CycleChoice>,
}

struct FactorPlan {
    cycles: Vec<CyclePlan>,
    complement: Vec<EdgeId>,
}

/// Smallest `G` edge id on a connector, used to pick default positions.
fn connector_key(sub: &Substitution, he: EdgeId) -> EdgeId {
    match &sub.realization_of[&he].realization {
        Realization::Plain(e) => *e,
        Realization::String(s) => *s.connectors.iter().min().expect("nonempty"),
    }
}

fn is_string(sub: &Substitution, he: EdgeId) -> bool {
    matches!(sub.realization_of[&he].realization, Realization::String(_))
}

fn edge(g: &MultiGraph, a: VertexId, b: VertexId) -> Result<EdgeId, ColorError> {
    g.edge_between(a, b)
        .ok_or_else(|| ColorError::BadContext(format!("expected an edge {a}-{b}")))
}

fn plan_factor(
    g: &MultiGraph,
    sub: &Substitution,
    factor: &TwoFactor,
    anchor: Option<EdgeId>,
) -> Result<FactorPlan, ColorError> {
    let mut cycles = Vec::new();
    for cyc in &factor.cycles {
        let m = cyc.len();
        let mut slots = Vec::with_capacity(3 * m);
        let mut chords = Vec::with_capacity(m);
        let mut ys = Vec::with_capacity(m);
        for j in 0..m {
            let h = cyc.vertices[j];
            let (f_in, f_out) = (cyc.edges[(j + m - 1) % m], cyc.edges[j]);
            let x = sub.realization_of[&f_in].attach_at(h);
            let y = sub.realization_of[&f_out].attach_at(h);
            let c = *sub.triangle_of[&h]
                .iter()
                .find(|&&t| t != x && t != y)
                .ok_or_else(|| ColorError::BadContext(format!("triangle of {h} reused")))?;
            slots.push(Slot::Edge(edge(g, x, c)?));
            slots.push(Slot::Edge(edge(g, c, y)?));
            slots.push(match &sub.realization_of[&f_out].realization {
                Realization::Plain(e) => Slot::Edge(*e),
                Realization::String(_) => Slot::String(f_out),
            });
            chords.push(edge(g, x, y)?);
            ys.push(y);
        }
        let options = cycle_options(sub, &cyc.edges, anchor);
        cycles.push(CyclePlan {
            slots,
            chords,
            ys,
            options,
        });
    }
    Ok(FactorPlan {
        cycles,
        complement: factor.complement.iter().copied().collect(),
    })
}

/// Ordered choices for one cycle; the first entry is the default.
fn cycle_options(sub: &Substitution, hedges: &[EdgeId], anchor: Option<EdgeId>) -> Vec<CycleChoice> {
    let m = hedges.len();
    let anchor_at = anchor.and_then(|a| hedges.iter().position(|&e| e == a));
    let first = (0..m).min_by_key(|&j| connector_key(sub, hedges[j])).expect("nonempty cycle");
    let flips = |t: usize| if is_string(sub, hedges[t]) { vec![false, true] } else { vec![false] };
    if m % 2 == 0 {
        // slot 3t + 2 gets `start` iff t is even
        let start_for = |t: usize, want: PackingColor| if t % 2 == 0 { want } else { other(want) };
        return match anchor_at {
            Some(t) => vec![CycleChoice {
                three_a: None,
                start: start_for(t, A1),
                flip: false,
            }],
            None => [A1, B1]
                .into_iter()
                .map(|want| CycleChoice {
                    three_a: None,
                    start: start_for(first, want),
                    flip: false,
                })
                .collect(),
        };
    }
    let positions: Vec<usize> = match anchor_at {
        Some(te) => {
            let mut v = vec![(te + m - 1) % m, (te + 1) % m];
            v.extend((2..m).map(|d| (te + d) % m));
            let mut seen = BTreeSet::new();
            v.into_iter().filter(|&t| t != te && seen.insert(t)).collect()
        }
        None => (0..m).map(|d| (first + d) % m).collect(),
    };
    let mut out = Vec::new();
    for t in positions {
        let starts = match anchor_at {
            // path index of the anchor slot counted from the slot after 3a
            Some(te) => {
                let i = ((3 * te + 2) + 3 * m - (3 * t + 3)) % (3 * m);
                vec![if i % 2 == 0 { A1 } else { B1 }]
            }
            None => vec![A1, B1],
        };
        for &flip in &flips(t) {
            for &start in &starts {
                out.push(CycleChoice {
                    three_a: Some(t),
                    start,
                    flip,
                });
            }
        }
    }
    out
}

fn oriented(s: &DiamondString, left: VertexId) -> DiamondString {
    if s.attach_left == left {
        s.clone()
    } else {
        s.reversed()
    }
}

fn render(sub: &Substitution, plan: &FactorPlan, choice: &[usize]) -> Result<EdgeColoring, ColorError> {
    let mut col = EdgeColoring::new();
    for (cyc, &ci) in plan.cycles.iter().zip(choice) {
        let ch = cyc.options[ci];
        let colors = color_cycle(cyc.slots.len(), ch.three_a.map(|t| 3 * t + 2), ch.start)?;
        for (p, slot) in cyc.slots.iter().enumerate() {
            match *slot {
                Slot::Edge(e) => {
                    col.insert(e, colors[p]);
                }
                Slot::String(he) => {
                    let Realization::String(s) = &sub.realization_of[&he].realization else {
                        unreachable!("string slot");
                    };
                    let s = oriented(s, cyc.ys[p / 3]);
                    let ctx = match colors[p] {
                        A1 => StringContext::Type2_1,
                        B1 => StringContext::Type2_2,
                        A3 if ch.flip => StringContext::Type2_3 {
                            end: StringEnd::Right,
                            fill: ch.start,
                        },
                        A3 => StringContext::Type2_3 {
                            end: StringEnd::Left,
                            fill: other(ch.start),
                        },
                        C1 => return Err(ColorError::BadContext("cycle edge colored 1c".into())),
                    };
                    col.extend(color_string(&s, ctx)?);
                }
            }
        }
        for &e in &cyc.chords {
            col.insert(e, C1);
        }
    }
    for he in &plan.complement {
        match &sub.realization_of[he].realization {
            Realization::Plain(e) => {
                col.insert(*e, C1);
            }
            Realization::String(s) => col.extend(color_string(s, StringContext::Type1)?),
        }
    }
    Ok(col)
}

/// Candidate colorings in a fixed order: for each 2-factor (the default one,
/// then those whose matching also avoids one edge of the default matching),
/// first all cycles at their default choice, then each cycle in turn moved
/// through its remaining choices with the others at default.
pub(crate) struct Candidates {
    g: MultiGraph,
    sub: Substitution,
    /// `H` edge that must lie on the 2-factor
    required: Option<EdgeId>,
    factors: Vec<TwoFactor>,
    pending_avoid: Vec<EdgeId>,
    factor_index: usize,
    plan: Option<FactorPlan>,
    /// `(cycle, option)` deviations of the loaded plan
    deviations: Vec<(usize, usize)>,
    /// 0 is the default choice, `i > 0` is `deviations[i - 1]`
    step: usize,
}

impl Candidates {
    pub(crate) fn new(g: &MultiGraph, sub: &Substitution, required: Option<EdgeId>) -> Result<Self, ColorError> {
        let req: BTreeSet<EdgeId> = required.into_iter().collect();
        let first = two_factor_avoiding_in_complement(&sub.h, &req, &BTreeSet::new())?;
        let pending_avoid = first.complement.iter().rev().copied().collect();
        Ok(Candidates {
            g: g.clone(),
            sub: sub.clone(),
            required,
            factors: vec![first],
            pending_avoid,
            factor_index: 0,
            plan: None,
            deviations: Vec::new(),
            step: 0,
        })
    }

    /// Loads the 2-factor at `factor_index`, finding more on demand; `None`
    /// once no further 2-factor exists.
    fn ensure_factor(&mut self) -> Option<Result<(), ColorError>> {
        while self.factor_index >= self.factors.len() {
            let e = self.pending_avoid.pop()?;
            let req: BTreeSet<EdgeId> = self.required.into_iter().collect();
            if let Ok(f) = two_factor_avoiding_in_complement(&self.sub.h, &req, &BTreeSet::from([e])) {
                if !self.factors.iter().any(|x| x.complement == f.complement) {
                    self.factors.push(f);
                }
            }
        }
        if self.plan.is_none() {
            let plan = match plan_factor(&self.g, &self.sub, &self.factors[self.factor_index], self.required) {
                Ok(p) => p,
                Err(e) => return Some(Err(e)),
            };
            self.deviations = plan
                .cycles
                .iter()
                .enumerate()
                .flat_map(|(c, cyc)| (1..cyc.options.len()).map(move |o| (c, o)))
                .collect();
            self.plan = Some(plan);
            self.step = 0;
        }
        Some(Ok(()))
    }
}

impl Iterator for Candidates {
    type Item = Result<EdgeColoring, ColorError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Err(e) = self.ensure_factor()? {
                return Some(Err(e));
            }
            if self.step > self.deviations.len() {
                self.factor_index += 1;
                self.plan = None;
                continue;
            }
            let plan = self.plan.as_ref().expect("loaded");
            let mut choice = vec![0; plan.cycles.len()];
            if self.step > 0 {
                let (c, o) = self.deviations[self.step - 1];
                choice[c] = o;
            }
            self.step += 1;
            return Some(render(&self.sub, plan, &choice));
        }
    }
}

/// The `H` edge whose realization contains `anchor` as a plain edge or a
/// string connector.
pub(crate) fn anchor_hedge(sub: &Substitution, anchor: EdgeId) -> Option<EdgeId> {
    sub.realization_of.iter().find_map(|(&he, r)| match &r.realization {
        Realization::Plain(e) if *e == anchor => Some(he),
        Realization::String(s) if s.connectors.contains(&anchor) => Some(he),
        _ => None,
    })
}

/// 3a edges per expanded cycle, for property checks.
#[cfg(test)]
pub(crate) fn three_a_per_cycle(
    g: &MultiGraph,
    sub: &Substitution,
    factor: &TwoFactor,
    col: &EdgeColoring,
) -> Result<Vec<(usize, usize)>, ColorError> {
    let plan = plan_factor(g, sub, factor, None)?;
    let mut out = Vec::new();
    for (cyc, f) in plan.cycles.iter().zip(&factor.cycles) {
        let mut edges = BTreeSet::new();
        for slot in &cyc.slots {
            match *slot {
                Slot::Edge(e) => {
                    edges.insert(e);
                }
                Slot::String(he) => {
                    if let Realization::String(s) = &sub.realization_of[&he].realization {
                        edges.extend(s.edges());
                    }
                }
            }
        }
        let n = edges.iter().filter(|e| col.get(e) == Some(&A3)).count();
        out.push((f.len(), n));
    }
    Ok(out)
}
