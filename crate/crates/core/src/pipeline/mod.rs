// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The main construction: split `V(G_1)` into halves, color the inside
//! multigraph `Q_AB`, grow the color classes along alternating paths, add new
//! classes for the uncolored leftovers and finish with a bipartite extension.

mod color;
mod construct;
mod finish;
mod paths;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chromatics::{ColoringError, PartialEdgeColoring};
use crate::graph::{EdgeId, EdgeSet, Graph, Multigraph};
use crate::reduction::{build_augmented, AugmentedGraph, CaseAssignment, CaseKind, ReductionError};
use crate::tools::ToolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every inequality of the construction must hold; the first failure aborts.
    Strict,
    /// Failed inequalities become warnings and the run continues.
    #[default]
    BestEffort,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PipelineParams {
    pub eps: f64,
    pub xi: f64,
    /// Palette of the first phase.
    pub k: usize,
    /// `k` as given by the asymptotic formula.
    pub k_formula: usize,
    pub s: f64,
    pub r: usize,
    pub t: f64,
    /// New colors of the third phase, `p` of them for uncolored `M` edges.
    pub ell: usize,
    pub p: usize,
    /// Edges added at `v_1` while building `Q`.
    pub q1: usize,
    /// Colors of the final bipartite extension.
    pub c: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub step: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TraceEvent {
    pub step: &'static str,
    pub color: usize,
    pub kind: &'static str,
    pub path: Vec<usize>,
    /// Edges uncolored by the switch, as vertex pairs.
    pub r_added: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StepSnapshot {
    pub step: &'static str,
    pub colored: usize,
    pub uncolored: usize,
    pub r_a: usize,
    pub r_b: usize,
    pub m1: Vec<(usize, usize)>,
    pub palette: usize,
}

/// Sides of a two-colored pair that an MCC-pair can straddle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairKind {
    Crossing,
    SameSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MccPair {
    pub color: usize,
    pub a: usize,
    pub b: usize,
    pub kind: PairKind,
}

#[derive(Debug, Clone, Error)]
pub enum PipelineError {
    #[error("check `{name}` failed in {step}: {lhs} vs {rhs}")]
    Check { name: String, step: &'static str, lhs: f64, rhs: f64 },
    #[error("{step}: {detail}")]
    Search { step: &'static str, detail: String },
    #[error("palette: {0}")]
    Palette(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Tool(#[from] ToolError),
}

#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    pub mode: Mode,
    pub seed: u64,
    pub trace: bool,
}

/// Everything a run produced, whether or not it reached a coloring.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub result: Result<PartialEdgeColoring, PipelineError>,
    pub ag: AugmentedGraph,
    pub params: PipelineParams,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub trace: Vec<TraceEvent>,
    pub snapshots: Vec<StepSnapshot>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EdgeKind {
    Base,
    M,
    Ex,
    /// Added while building `Q` or merging `U*`; dropped at the end.
    Aux,
}

/// Mutable state threaded through the seven steps.
pub struct PipelineState {
    pub(crate) ag: AugmentedGraph,
    pub(crate) case: CaseKind,
    pub(crate) mode: Mode,
    pub(crate) seed: u64,
    pub(crate) n: usize,
    pub(crate) delta: usize,
    pub(crate) x: usize,
    pub(crate) odd: bool,
    /// `|V(G_1)|`.
    pub(crate) m: usize,
    pub(crate) regular: bool,
    pub(crate) g1: Graph,
    pub(crate) h: Multigraph,
    pub(crate) kind: Vec<EdgeKind>,
    pub(crate) in_q: Vec<bool>,
    pub(crate) in_qab: Vec<bool>,
    pub(crate) v1: usize,
    pub(crate) d_g1: Vec<usize>,
    /// `Some(true)` for `A`, `Some(false)` for `B`, `None` off `V(Q)`.
    pub(crate) side: Vec<Option<bool>>,
    pub(crate) a: Vec<usize>,
    pub(crate) b: Vec<usize>,
    pub(crate) b0: Vec<usize>,
    pub(crate) s0: Vec<usize>,
    pub(crate) u: Vec<bool>,
    pub(crate) w: Vec<bool>,
    pub(crate) m1: EdgeSet,
    pub(crate) m2: EdgeSet,
    pub(crate) phi0: Vec<usize>,
    pub(crate) c: PartialEdgeColoring,
    pub(crate) r_deg: Vec<usize>,
    /// Threshold for good edges; starts at `r` and may widen in best-effort mode.
    pub(crate) r_eff: usize,
    pub(crate) params: PipelineParams,
    pub(crate) checks: Vec<Check>,
    pub(crate) warnings: Vec<String>,
    pub(crate) trace: Option<Vec<TraceEvent>>,
    pub(crate) snapshots: Vec<StepSnapshot>,
}

impl PipelineState {
    pub fn new(g: &Graph, assignment: &CaseAssignment, opts: &PipelineOptions) -> Result<Self, PipelineError> {
        let ag = build_augmented(g, &assignment.matching)?;
        let n = g.n();
        let h = ag.combined.clone();
        let mut kind = vec![EdgeKind::Base; h.edge_capacity()];
        for e in ag.m_ids.iter() {
            kind[e.index()] = EdgeKind::M;
        }
        for e in ag.ex_ids.iter() {
            kind[e.index()] = EdgeKind::Ex;
        }
        let c = PartialEdgeColoring::new(&h, 0);
        Ok(PipelineState {
            case: assignment.which,
            mode: opts.mode,
            seed: opts.seed,
            n,
            delta: g.max_degree(),
            x: n,
            odd: n % 2 == 1,
            m: if n % 2 == 1 { n + 1 } else { n },
            regular: g.is_regular(),
            g1: Graph::empty(0),
            kind,
            in_q: vec![false; h.edge_capacity()],
            in_qab: vec![false; h.edge_capacity()],
            v1: 0,
            d_g1: Vec::new(),
            side: vec![None; n + 1],
            a: Vec::new(),
            b: Vec::new(),
            b0: Vec::new(),
            s0: Vec::new(),
            u: vec![false; n + 1],
            w: vec![false; n + 1],
            m1: EdgeSet::new(),
            m2: EdgeSet::new(),
            phi0: vec![0; n + 1],
            c,
            r_deg: vec![0; n + 1],
            r_eff: 0,
            params: PipelineParams { eps: assignment.eps, xi: assignment.xi, ..PipelineParams::default() },
            checks: Vec::new(),
            warnings: Vec::new(),
            trace: opts.trace.then(Vec::new),
            snapshots: Vec::new(),
            h,
            ag,
        })
    }

    /// Records a check; in strict mode a failure aborts.
    pub(crate) fn check(&mut self, name: impl Into<String>, step: &'static str, lhs: f64, rhs: f64, holds: bool) -> Result<(), PipelineError> {
        let name = name.into();
        self.checks.push(Check { name: name.clone(), step, lhs, rhs, holds });
        if holds {
            return Ok(());
        }
        match self.mode {
            Mode::Strict => Err(PipelineError::Check { name, step, lhs, rhs }),
            Mode::BestEffort => {
                self.warnings.push(format!("{step}: `{name}` failed ({lhs} vs {rhs})"));
                Ok(())
            }
        }
    }

    pub(crate) fn warn(&mut self, msg: String) {
        self.warnings.push(msg);
    }

    pub(crate) fn strict(&self) -> bool {
        self.mode == Mode::Strict
    }

    pub(crate) fn add_aux(&mut self, u: usize, v: usize, in_qab: bool) -> EdgeId {
        let e = self.h.add_edge(u, v).expect("aux edge joins distinct vertices");
        self.kind.push(EdgeKind::Aux);
        self.in_q.push(true);
        self.in_qab.push(in_qab);
        debug_assert_eq!(self.kind.len(), e.index() + 1);
        self.c.sync(&self.h);
        e
    }

    pub(crate) fn is_special(&self, e: EdgeId) -> bool {
        matches!(self.kind[e.index()], EdgeKind::M | EdgeKind::Ex)
    }

    pub(crate) fn is_real(&self, e: EdgeId) -> bool {
        self.kind[e.index()] != EdgeKind::Aux
    }

    pub(crate) fn same_side(&self, e: EdgeId) -> bool {
        let (u, v) = self.h.endpoints(e);
        matches!((self.side[u], self.side[v]), (Some(a), Some(b)) if a == b)
    }

    pub(crate) fn crossing(&self, e: EdgeId) -> bool {
        let (u, v) = self.h.endpoints(e);
        matches!((self.side[u], self.side[v]), (Some(a), Some(b)) if a != b)
    }

    /// An uncolored edge of `Q[A, B]` outside `M ∪ E(x)`.
    pub(crate) fn free_cross(&self, e: EdgeId) -> bool {
        self.in_q[e.index()] && self.crossing(e) && !self.is_special(e) && !self.c.is_colored(e)
    }

    pub(crate) fn in_vq(&self, v: usize) -> bool {
        self.side[v].is_some()
    }

    /// Uncolored same-side edges: `R_A` when `side_a`, else `R_B`.
    pub(crate) fn r_edges(&self, side_a: bool) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .h
            .edge_ids()
            .filter(|&e| self.in_q[e.index()] && self.same_side(e) && !self.c.is_colored(e))
            .filter(|&e| self.side[self.h.endpoints(e).0] == Some(side_a))
            .collect();
        out.sort_by_key(|&e| self.h.handle(e));
        out
    }

    pub(crate) fn pair(&self, e: EdgeId) -> (usize, usize) {
        let (u, v) = self.h.endpoints(e);
        (u.min(v), u.max(v))
    }

    pub(crate) fn push_trace(&mut self, ev: TraceEvent) {
        if let Some(t) = self.trace.as_mut() {
            t.push(ev);
        }
    }

    pub(crate) fn snapshot(&mut self, step: &'static str) {
        let colored = self.h.edge_ids().filter(|&e| self.c.is_colored(e)).count();
        let uncolored = self.h.edge_ids().filter(|&e| self.is_real(e) && !self.c.is_colored(e)).count();
        let mut m1: Vec<_> = self.m1.iter().map(|e| self.pair(e)).collect();
        m1.sort_unstable();
        let (r_a, r_b) = if self.a.is_empty() { (0, 0) } else { (self.r_edges(true).len(), self.r_edges(false).len()) };
        self.snapshots.push(StepSnapshot { step, colored, uncolored, r_a, r_b, m1, palette: self.c.k() });
    }

    /// Colors of the first phase stay rainbow on `M_1`, `|M_1| = k`, and
    /// special edges outside `M_1 ∪ M_2` are uncolored.
    pub(crate) fn check_special(&self) -> Result<(), PipelineError> {
        let k = self.params.k;
        if self.m1.len() != k {
            return Err(PipelineError::Internal(format!("|M_1| = {} != k = {k}", self.m1.len())));
        }
        if let Some((a, b)) = self.c.rainbow_violation(self.m1.iter().chain(self.m2.iter())) {
            return Err(PipelineError::Internal(format!("{:?} and {:?} share a color", self.pair(a), self.pair(b))));
        }
        for e in self.h.edge_ids() {
            if self.is_special(e) && self.c.is_colored(e) && !self.m1.contains(e) && !self.m2.contains(e) {
                return Err(PipelineError::Internal(format!("special edge {:?} colored outside M_1 ∪ M_2", self.pair(e))));
            }
        }
        Ok(())
    }

    /// Each of the first `k` colors is missing at a number of vertices of
    /// `V(Q_AB)` with the parity of `|V(Q_AB)|`.
    pub(crate) fn parity_boundary(&mut self, step: &'static str) -> Result<(), PipelineError> {
        let k = self.params.k;
        let mut keep = EdgeSet::new();
        for e in self.h.edge_ids() {
            if matches!(self.c.color(e), Some(col) if col < k) {
                keep.insert(e);
            }
        }
        let view = self.h.restricted_to(&keep);
        let mut sub = PartialEdgeColoring::new(&view, k);
        for e in keep.iter() {
            sub.set(&view, e, self.c.color(e).unwrap())?;
        }
        let counts = crate::verify::parity_counts(&view, &sub);
        let verts: Vec<usize> = (0..=self.n).filter(|&v| self.in_vq(v) || self.s0.contains(&v)).collect();
        let outside = self.n + 1 - verts.len();
        let bad = counts.iter().position(|&cnt| (cnt - outside) % 2 != verts.len() % 2);
        let lhs = bad.map_or(0.0, |i| (counts[i] - outside) as f64);
        self.check(format!("parity at {step}"), step, lhs, verts.len() as f64, bad.is_none())
    }
}

/// Runs every step on `(G, M)` in the given case.
pub fn run_pipeline(g: &Graph, assignment: &CaseAssignment, opts: &PipelineOptions) -> PipelineReport {
    let mut st = match PipelineState::new(g, assignment, opts) {
        Ok(st) => st,
        Err(e) => {
            let ag = build_augmented(g, &[]).expect("empty matching is valid");
            return PipelineReport {
                result: Err(e),
                ag,
                params: PipelineParams::default(),
                checks: Vec::new(),
                warnings: Vec::new(),
                trace: Vec::new(),
                snapshots: Vec::new(),
            };
        }
    };
    let result = st.run_all();
    PipelineReport {
        result,
        ag: st.ag.clone(),
        params: st.params.clone(),
        checks: std::mem::take(&mut st.checks),
        warnings: std::mem::take(&mut st.warnings),
        trace: st.trace.take().unwrap_or_default(),
        snapshots: std::mem::take(&mut st.snapshots),
    }
}

impl PipelineState {
    fn run_all(&mut self) -> Result<PartialEdgeColoring, PipelineError> {
        self.cstep1_partition()?;
        self.snapshot("construct-1");
        self.cstep2_build_q()?;
        self.snapshot("construct-2");
        self.cstep3_select_m1()?;
        self.snapshot("construct-3");
        self.kstep1_color_qab()?;
        self.snapshot("color-1");
        self.kstep2_extend_classes()?;
        self.snapshot("color-2");
        self.kstep3_new_classes()?;
        self.snapshot("color-3");
        let out = self.kstep4_finish()?;
        self.snapshot("color-4");
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
