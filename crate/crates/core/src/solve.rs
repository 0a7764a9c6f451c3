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


//! The driver: classify, reduce, run the pipeline, lift, and fall back.

use std::time::Instant;

use serde::Serialize;

use crate::chromatics::PartialEdgeColoring;
use crate::graph::Graph;
use crate::pipeline::{run_pipeline, Check, Mode, PipelineOptions, PipelineParams, StepSnapshot, TraceEvent};
use crate::reduction::{
    build_augmented, classify_and_pick_matching, diagnostics, fallback_good_coloring, good_coloring_to_total, lift_coloring,
    peel_case2b, regularize_case2a, AugmentedGraph, CaseAssignment, CaseKind, FallbackOptions, Layer, PeelTerminal, Plan,
    ReductionError,
};
use crate::verify::{validate_good, validate_total, TotalColoring};

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub eps: f64,
    pub xi: f64,
    pub mode: Mode,
    pub seed: u64,
    /// Strict mode refuses graphs with fewer vertices.
    pub n_min: usize,
    pub trace: bool,
    pub timings: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            eps: 0.1,
            xi: default_xi(0.1),
            mode: Mode::BestEffort,
            seed: 0,
            n_min: 0,
            trace: false,
            timings: false,
        }
    }
}

/// `min(ε³, 0.01)`.
pub fn default_xi(eps: f64) -> f64 {
    (eps * eps * eps).min(0.01)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// A validated coloring was produced.
    Success,
    /// Every route failed; the report names why.
    Failure,
    /// The input violates a hypothesis the mode insists on.
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Failure => 2,
            Status::InputError => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub n: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub eps: f64,
    pub xi: f64,
    pub mode: Mode,
    pub seed: u64,
    /// `case1`, `case2`, `case2a`, `case2b` or `unclassified`.
    pub case: String,
    /// The steps taken, in order.
    pub route: Vec<String>,
    /// `pipeline`, `fallback-kempe` or `fallback-exhaustive` on success.
    pub method: Option<String>,
    pub matching_size: Option<usize>,
    pub layers: usize,
    pub params: Option<PipelineParams>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub snapshots: Vec<StepSnapshot>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEvent>>,
    /// First error met on the way; kept even when a fallback later succeeds.
    pub error: Option<String>,
    pub colors_used: Option<usize>,
    pub status: Status,
    /// Validator verdict on the emitted total coloring.
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<(String, f64)>,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub report: SolveReport,
    pub total: Option<TotalColoring>,
    /// The good coloring the total coloring was read from.
    pub good: Option<(AugmentedGraph, PartialEdgeColoring)>,
}

struct Run<'a> {
    g: &'a Graph,
    opts: &'a SolveOptions,
    report: SolveReport,
    clock: Instant,
}

impl<'a> Run<'a> {
    fn lap(&mut self, label: &str) {
        if self.opts.timings {
            let now = Instant::now();
            self.report.timings.push((label.to_string(), (now - self.clock).as_secs_f64()));
            self.clock = now;
        }
    }

    fn note_error(&mut self, e: impl ToString) {
        if self.report.error.is_none() {
            self.report.error = Some(e.to_string());
        }
    }

    /// Runs the pipeline on `inner` and absorbs its diagnostics.
    fn pipeline(&mut self, inner: &Graph, asg: &CaseAssignment) -> Option<(AugmentedGraph, PartialEdgeColoring)> {
        let popts = PipelineOptions { mode: self.opts.mode, seed: self.opts.seed, trace: self.opts.trace };
        let rep = run_pipeline(inner, asg, &popts);
        self.report.params = Some(rep.params);
        self.report.checks.extend(rep.checks);
        self.report.warnings.extend(rep.warnings);
        self.report.snapshots.extend(rep.snapshots);
        if self.opts.trace {
            self.report.trace.get_or_insert_with(Vec::new).extend(rep.trace);
        }
        self.lap("pipeline");
        match rep.result {
            Ok(c) => {
                self.report.method = Some("pipeline".into());
                Some((rep.ag, c))
            }
            Err(e) => {
                self.report.route.push("pipeline failed".into());
                self.note_error(e);
                None
            }
        }
    }

    /// The pipeline on `inner`, with the base case picked from its profile,
    /// lifted back through `layers`.
    fn reduced(&mut self, inner: &Graph, m: &[(usize, usize)], layers: &[Layer]) -> Option<(AugmentedGraph, PartialEdgeColoring)> {
        let o = self.opts;
        let d = diagnostics(inner, o.eps, o.xi);
        let which = if d.regular || (d.u_xi as f64) < o.xi * inner.n() as f64 { CaseKind::Case1 } else { CaseKind::Case2 };
        let asg = CaseAssignment { which, matching: m.to_vec(), eps: o.eps, xi: o.xi, diagnostics: d };
        let (inner_ag, c) = self.pipeline(inner, &asg)?;
        let outer = match build_augmented(self.g, m) {
            Ok(a) => a,
            Err(e) => {
                self.note_error(e);
                return None;
            }
        };
        match lift_coloring(&outer, &inner_ag, &c, layers) {
            Ok(c) => {
                self.report.route.push(format!("lift {} layers", layers.len()));
                Some((outer, c))
            }
            Err(e) => {
                self.report.route.push("lift failed".into());
                self.note_error(e);
                None
            }
        }
    }

    fn case2a(&mut self, g: &Graph, m: &[(usize, usize)], mut layers: Vec<Layer>) -> Option<(AugmentedGraph, PartialEdgeColoring)> {
        let o = self.opts;
        let out = match regularize_case2a(g, o.eps, o.xi, o.seed) {
            Ok(out) => out,
            Err(e) => {
                self.report.route.push("regularize failed".into());
                self.note_error(e);
                return None;
            }
        };
        self.lap("regularize");
        self.report.route.push(format!("regularize to degree {}", out.degree()));
        if let Some(f) = out.matching {
            layers.push(Layer::Matching(f));
        }
        layers.extend(out.forests.into_iter().map(Layer::Forest));
        self.report.layers = layers.len();
        self.reduced(&out.graph, m, &layers)
    }

    fn case2b(&mut self, m: &[(usize, usize)]) -> Option<(AugmentedGraph, PartialEdgeColoring)> {
        let o = self.opts;
        let out = match peel_case2b(self.g, o.eps, o.xi) {
            Ok(out) => out,
            Err(e) => {
                self.report.route.push("peel failed".into());
                self.note_error(e);
                return None;
            }
        };
        self.lap("peel");
        self.report.route.push(format!("peel {} matchings", out.matchings.len()));
        let layers: Vec<Layer> = out.matchings.into_iter().map(Layer::Matching).collect();
        self.report.layers = layers.len();
        match out.terminal {
            PeelTerminal::Case1 => self.reduced(&out.graph, m, &layers),
            PeelTerminal::Case2a => self.case2a(&out.graph, m, layers),
        }
    }

    fn fallback(&mut self, preferred: Option<&[(usize, usize)]>) -> Option<(AugmentedGraph, PartialEdgeColoring)> {
        let fopts = FallbackOptions { seed: self.opts.seed, ..FallbackOptions::default() };
        let res = fallback_good_coloring(self.g, preferred, &fopts);
        self.lap("fallback");
        match res {
            Ok(f) => {
                self.report.route.push(format!("fallback {} after {} attempts", f.method, f.attempts));
                self.report.method = Some(format!("fallback-{}", f.method));
                Some((f.ag, f.coloring))
            }
            Err(e) => {
                self.report.route.push("fallback failed".into());
                self.note_error(e);
                None
            }
        }
    }
}

fn strict_refusal(g: &Graph, opts: &SolveOptions) -> Option<String> {
    if opts.mode != Mode::Strict {
        return None;
    }
    if g.n() < opts.n_min {
        return Some(format!("n = {} below the strict threshold {}", g.n(), opts.n_min));
    }
    let cap = opts.eps.powi(3).min(0.01);
    if opts.xi > cap + 1e-12 {
        return Some(format!("ξ = {} exceeds min(ε³, 0.01) = {cap}", opts.xi));
    }
    None
}

/// Produces a validated total coloring of `g` with at most `Δ + 2` colors, or
/// a report saying why none was certified.
pub fn solve(g: &Graph, opts: &SolveOptions) -> SolveOutcome {
    let report = SolveReport {
        n: g.n(),
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        min_degree: g.min_degree(),
        eps: opts.eps,
        xi: opts.xi,
        mode: opts.mode,
        seed: opts.seed,
        case: "unclassified".into(),
        route: Vec::new(),
        method: None,
        matching_size: None,
        layers: 0,
        params: None,
        checks: Vec::new(),
        warnings: Vec::new(),
        snapshots: Vec::new(),
        trace: None,
        error: None,
        colors_used: None,
        status: Status::Failure,
        verdict: None,
        timings: Vec::new(),
    };
    let mut run = Run { g, opts, report, clock: Instant::now() };
    let strict = opts.mode == Mode::Strict;
    if let Some(why) = strict_refusal(g, opts) {
        run.report.error = Some(why);
        run.report.status = Status::InputError;
        return SolveOutcome { report: run.report, total: None, good: None };
    }
    let plan = classify_and_pick_matching(g, opts.eps, opts.xi);
    run.lap("classify");
    let found = match plan {
        Err(e) => {
            let input = matches!(e, ReductionError::Hypothesis { .. } | ReductionError::OutOfScope(_));
            run.note_error(&e);
            if strict {
                run.report.status = if input { Status::InputError } else { Status::Failure };
                return SolveOutcome { report: run.report, total: None, good: None };
            }
            run.report.route.push("classification failed".into());
            run.fallback(None)
        }
        Ok(plan) => {
            run.report.case = plan.label().into();
            run.report.matching_size = Some(plan.matching().len());
            let m = plan.matching().to_vec();
            let found = match plan {
                Plan::Direct(asg) => {
                    run.report.route.push("pipeline".into());
                    run.pipeline(g, &asg)
                }
                Plan::Case2a { .. } => run.case2a(g, &m, Vec::new()),
                Plan::Case2b { .. } => run.case2b(&m),
            };
            match found {
                Some(f) => Some(f),
                None if !strict => run.fallback(Some(&m)),
                None => None,
            }
        }
    };
    let Some((ag, c)) = found else {
        run.report.method = None;
        return SolveOutcome { report: run.report, total: None, good: None };
    };
    // independent re-validation before anything is emitted
    let total = validate_good(&ag, &c)
        .map_err(ReductionError::NotGood)
        .and_then(|_| good_coloring_to_total(&ag, &c));
    match total {
        Ok(tc) => match validate_total(g, &tc) {
            Ok(()) => {
                run.report.colors_used = Some(tc.colors_used());
                run.report.verdict = Some("ok".into());
                run.report.status = Status::Success;
                SolveOutcome { report: run.report, total: Some(tc), good: Some((ag, c)) }
            }
            Err(v) => {
                run.report.verdict = Some(v.to_string());
                SolveOutcome { report: run.report, total: None, good: None }
            }
        },
        Err(e) => {
            run.report.verdict = Some(e.to_string());
            SolveOutcome { report: run.report, total: None, good: None }
        }
    }
}
