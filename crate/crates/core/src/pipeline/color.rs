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

//! First two coloring steps: a `k`-edge-coloring of `Q_AB` with `M_1`
//! rainbow, then growing each of the `k` classes along alternating paths.

use super::paths::AltPath;
use super::{EdgeKind, PipelineError, PipelineState, TraceEvent};
use crate::chromatics::{
    equalize_with_rainbow, extend_rainbow_coloring_a, kempe_component, kempe_switch, ExtendConfig, ExtendEngine, PartialEdgeColoring,
};
use crate::graph::{degree_profile, EdgeSet, Multigraph};
use crate::reduction::CaseKind;

impl PipelineState {
    fn qab_set(&self) -> EdgeSet {
        let mut s = EdgeSet::new();
        s.extend(self.h.edge_ids().filter(|e| self.in_qab[e.index()]));
        s
    }

    /// Extends `pre` on `view`, keeping `j0` rainbow; falls back to the
    /// perturbing engine when the extension statement does not apply.
    fn extend_qab(&mut self, view: &Multigraph, j: &EdgeSet, pre: &PartialEdgeColoring, k: usize) -> Result<PartialEdgeColoring, PipelineError> {
        const STEP: &str = "color-1";
        match extend_rainbow_coloring_a(view, j, &self.m1, pre, k) {
            Ok((c, _)) => return Ok(c),
            Err(e) => self.warn(format!("{STEP}: extension lemma not applied ({e}); using the perturbing engine")),
        }
        let fixed = EdgeSet::new();
        let mut last = None;
        for attempt in 0..6u64 {
            let mut c = pre.clone();
            let cfg = ExtendConfig { seed: self.seed.wrapping_add(attempt), perturb: true, ..ExtendConfig::default() };
            match ExtendEngine::new(view, &fixed, &self.m1, cfg).run(&mut c) {
                Ok(_) => return Ok(c),
                Err(e) => last = Some(e),
            }
        }
        Err(last.expect("at least one attempt").into())
    }

    fn color_qab(&mut self, j: &EdgeSet) -> Result<PartialEdgeColoring, PipelineError> {
        let k = self.params.k;
        let view = self.h.restricted_to(&self.qab_set());
        let mut pre = PartialEdgeColoring::new(&view, k);
        let mut m1: Vec<_> = self.m1.iter().collect();
        m1.sort_by_key(|&e| self.h.handle(e));
        for (col, &e) in m1.iter().enumerate() {
            pre.set(&view, e, col)?;
        }
        let mut rest: Vec<_> = j.iter().filter(|&e| !self.m1.contains(e)).collect();
        rest.sort_by_key(|&e| self.h.handle(e));
        for e in rest {
            let (u, v) = view.endpoints(e);
            let col = pre.missing(u).first_common(pre.missing(v)).ok_or_else(|| PipelineError::Search {
                step: "color-1",
                detail: format!("no free color for J edge {u}-{v}"),
            })?;
            pre.set(&view, e, col)?;
        }
        let c = self.extend_qab(&view, j, &pre, k)?;
        let eq = equalize_with_rainbow(&view, &c, k, &self.m1)?;
        Ok(eq)
    }

    fn install_qab(&mut self, c0: &PartialEdgeColoring) -> Result<(), PipelineError> {
        for e in self.h.edge_ids().collect::<Vec<_>>() {
            self.c.unset(&self.h, e);
        }
        for e in self.qab_set().iter() {
            let col = c0.color(e).ok_or_else(|| PipelineError::Internal("Q_AB edge left uncolored".into()))?;
            self.c.set(&self.h, e, col)?;
        }
        Ok(())
    }

    pub(crate) fn kstep1_color_qab(&mut self) -> Result<(), PipelineError> {
        const STEP: &str = "color-1";
        let k = self.params.k;
        let (v1, xin) = (self.v1, self.xi_n());
        self.c = PartialEdgeColoring::new(&self.h, k);
        let mut j = self.m1.clone();
        let low_v1 = (self.d_g1[v1] as f64) < self.delta as f64 - 2.0 * xin;
        match self.case {
            CaseKind::Case1 if low_v1 => j.extend(self.v1_b_edges()),
            CaseKind::Case2 if self.odd => j.extend(self.v1_b_edges()),
            CaseKind::Case1 => j.extend(self.h.edge_ids().filter(|e| self.in_qab[e.index()] && self.kind[e.index()] == EdgeKind::Aux)),
            CaseKind::Case2 => {}
        }
        let c0 = self.color_qab(&j)?;
        self.install_qab(&c0)?;

        if self.case == CaseKind::Case2 {
            self.merge_u_star()?;
        }
        let sizes = self.c.class_sizes(&self.h);
        let spread = sizes[..k].iter().max().unwrap_or(&0) - sizes[..k].iter().min().unwrap_or(&0);
        self.check("class sizes within 2", STEP, spread as f64, 2.0, spread <= 2)?;

        let verts: Vec<usize> = (0..=self.n).filter(|&v| self.in_vq(v)).collect();
        let worst = (0..k).map(|i| verts.iter().filter(|&&v| self.c.is_missing(v, i)).count()).max().unwrap_or(0);
        let bound = match self.case {
            CaseKind::Case1 => 12.0 * xin,
            CaseKind::Case2 => 14.0 * self.n23(),
        };
        self.check("vertices missing a color", STEP, worst as f64, bound, (worst as f64) < bound)?;
        for v in 0..=self.n {
            if self.in_vq(v) || self.s0.contains(&v) {
                self.phi0[v] = k.saturating_sub(self.d_qab(v));
            }
        }
        let prof = degree_profile(&self.ag.base, self.params.xi);
        for &u in &prof.u_xi {
            self.u[u] = true;
            self.w[u] = match self.case {
                CaseKind::Case1 => true,
                CaseKind::Case2 => self.phi0[u] as f64 >= 3.4 * self.n23(),
            };
        }
        self.check_special()?;
        self.parity_boundary(STEP)
    }

    fn v1_b_edges(&self) -> Vec<crate::graph::EdgeId> {
        self.h
            .incident(self.v1)
            .iter()
            .copied()
            .filter(|&e| self.in_qab[e.index()] && self.side[self.h.other(e, self.v1)] == Some(false))
            .collect()
    }

    /// Joins pairs of low-degree vertices on one side that miss a common color.
    fn merge_u_star(&mut self) -> Result<(), PipelineError> {
        const STEP: &str = "color-1";
        let k = self.params.k;
        let thr = 3.5 * self.n23();
        let ustar: Vec<usize> = (0..=self.n).filter(|&v| self.in_vq(v) && (self.delta as f64 - self.d_q(v) as f64) >= thr).collect();
        let mut added = 0;
        loop {
            let mut hit = None;
            'outer: for (p, &u) in ustar.iter().enumerate() {
                for &v in &ustar[p + 1..] {
                    if self.side[u] != self.side[v] {
                        continue;
                    }
                    if let Some(col) = self.c.missing(u).first_common(self.c.missing(v)) {
                        if col < k {
                            hit = Some((u, v, col));
                            break 'outer;
                        }
                    }
                }
            }
            let Some((u, v, col)) = hit else { break };
            let e = self.add_aux(u, v, true);
            self.c.set(&self.h, e, col)?;
            added += 1;
        }
        if added > 0 {
            let view = self.h.restricted_to(&self.qab_set());
            let snapshot = PartialEdgeColoring::from_assignment(&view, k, self.qab_set().iter().map(|e| (e, self.c.color(e).unwrap())))?;
            let eq = equalize_with_rainbow(&view, &snapshot, k, &self.m1)?;
            self.install_qab(&eq)?;
        }
        for &u in &ustar {
            let d = self.d_q(u) as f64;
            let bound = self.delta as f64 - 0.2 * self.n23();
            self.check(format!("d_Q**({u}) for U*"), STEP, d, bound, d <= bound)?;
        }
        Ok(())
    }

    /// Tightness of a vertex for the final step: its degree in `Q`, plus one on `A`.
    pub(crate) fn tightness(&self) -> Vec<i64> {
        (0..=self.n).map(|v| self.d_q(v) as i64 + (self.side[v] == Some(true)) as i64).collect()
    }

    /// With `n` odd and `x` missing `i`: color an apex edge `x w_1` with `i`,
    /// free the good edge at `w_1` and move the `i`-edge of `M_1` out.
    fn apex_fix(&mut self, i: usize) -> Result<bool, PipelineError> {
        let x = self.x;
        let blocked = self.blocked(i);
        let mut cands: Vec<_> = self
            .h
            .incident(x)
            .iter()
            .copied()
            .filter(|&e| self.kind[e.index()] == EdgeKind::Ex && !self.c.is_colored(e) && self.crossing(e))
            .collect();
        cands.sort_by_key(|&e| self.h.other(e, x));
        for xw in cands {
            let w1 = self.h.other(xw, x);
            if blocked[w1] || self.c.is_missing(w1, i) {
                continue;
            }
            let Some((f, w2)) = self.good_at(w1, i, &blocked) else { continue };
            let ei = self.m1.iter().find(|&e| self.c.color(e) == Some(i)).expect("M_1 is rainbow on k colors");
            let same = self.same_side(ei);
            self.c.unset(&self.h, f);
            self.c.unset(&self.h, ei);
            self.c.set(&self.h, xw, i)?;
            self.r_deg[w1] += 1;
            self.r_deg[w2] += 1;
            let mut r_added = vec![self.pair(f)];
            if same {
                let (a, b) = self.h.endpoints(ei);
                self.r_deg[a] += 1;
                self.r_deg[b] += 1;
                r_added.push(self.pair(ei));
            }
            self.m1.remove(ei);
            self.m1.insert(xw);
            self.push_trace(TraceEvent { step: "color-2", color: i, kind: "apex", path: vec![x, w1, w2], r_added });
            return Ok(true);
        }
        Ok(false)
    }

    /// Moves a missing color off a vertex of `W` along `a b1 = b2`.
    fn w_move(&mut self, a: usize, i: usize) -> Result<bool, PipelineError> {
        let blocked = self.blocked(i);
        let Some(&(b1, e, f, b2)) = self.half_paths(a, i, &blocked).first() else { return Ok(false) };
        let p = AltPath { verts: vec![a, b1, b2], free: vec![e], good: vec![f] };
        self.apply_alt_path(i, &p, "color-2", "w-move")?;
        Ok(true)
    }

    /// Vertices whose `i`-class should be saturated.
    fn targets(&self) -> Vec<bool> {
        (0..=self.n)
            .map(|v| {
                let inq = self.in_vq(v) && !(self.odd && v == self.x);
                match (self.mode, self.case) {
                    (super::Mode::Strict, CaseKind::Case2) => inq && !(self.u[v] && !self.w[v]),
                    _ => inq,
                }
            })
            .collect()
    }

    /// Strict handling of an odd number of targets missing `i` in the second case.
    fn strict_parity_fix(&mut self, i: usize, missing: &mut Vec<usize>) -> Result<(), PipelineError> {
        if missing.len() % 2 == 0 {
            return Ok(());
        }
        let extra: Vec<usize> = (0..self.n).filter(|&v| self.u[v] && !self.w[v] && self.in_vq(v)).collect();
        if let Some(&u) = extra.iter().find(|&&u| self.c.is_missing(u, i)) {
            missing.push(u);
            return Ok(());
        }
        let Some(&u) = extra.first() else { return Ok(()) };
        let j = (0..self.params.k).find(|&j| j != i && self.c.is_missing(u, j));
        let Some(j) = j else { return Ok(()) };
        let p = kempe_component(&self.h, &self.c, u, i, j);
        kempe_switch(&self.h, &mut self.c, &p)?;
        if self.c.rainbow_violation(self.m1.iter()).is_some() {
            let back = kempe_component(&self.h, &self.c, u, i, j);
            kempe_switch(&self.h, &mut self.c, &back)?;
            self.warn(format!("color-2: parity switch at {u} for color {i} would break M_1; undone"));
            return Ok(());
        }
        self.push_trace(TraceEvent { step: "color-2", color: i, kind: "kempe", path: vec![p.start(), p.end()], r_added: Vec::new() });
        let t = self.targets();
        *missing = (0..=self.n).filter(|&v| t[v] && self.c.is_missing(v, i)).collect();
        if missing.len() % 2 == 1 && self.c.is_missing(u, i) {
            missing.push(u);
        }
        Ok(())
    }

    pub(crate) fn kstep2_extend_classes(&mut self) -> Result<(), PipelineError> {
        const STEP: &str = "color-2";
        let k = self.params.k;
        let eps = self.params.eps;
        let n1_bound = 0.25 * (1.0 + 0.5 * eps) * self.n as f64;
        let mut leftover = 0usize;
        let mut widened = false;
        let r_cap = self.delta.max(self.r_eff);
        for i in 0..k {
            if self.odd && self.c.is_missing(self.x, i) && !self.apex_fix(i)? {
                self.check(format!("apex edge for color {i}"), STEP, 0.0, 1.0, false)?;
            }
            let ws: Vec<usize> = (0..self.n).filter(|&v| self.w[v] && v != self.v1 && self.in_vq(v)).collect();
            for a in ws {
                if self.c.is_missing(a, i) && !self.w_move(a, i)? {
                    self.check(format!("N_1({a}) nonempty for color {i}"), STEP, 0.0, 1.0, false)?;
                }
            }
            let targets = self.targets();
            let mut missing: Vec<usize> = (0..=self.n).filter(|&v| targets[v] && self.c.is_missing(v, i)).collect();
            if self.strict() {
                if self.case == CaseKind::Case2 {
                    self.strict_parity_fix(i, &mut missing)?;
                }
                let pairs = self.mcc_pairs(&missing);
                for (a, b) in pairs {
                    let blocked = self.blocked(i);
                    let na = self.half_paths(a, i, &blocked).len().min(self.half_paths(b, i, &blocked).len());
                    if !self.w[a] && !self.w[b] {
                        self.check("|N_1| lower bound", STEP, na as f64, n1_bound, na as f64 > n1_bound)?;
                    }
                    let p = self.shaped_path(a, b, i).ok_or_else(|| PipelineError::Search {
                        step: STEP,
                        detail: format!("no alternating path for MCC-pair ({a}, {b}) in color {i}"),
                    })?;
                    let kind = if p.free.len() == 3 { "crossing" } else { "same-side" };
                    self.apply_alt_path(i, &p, STEP, kind)?;
                }
                leftover += self.still_missing(i);
                continue;
            }
            let prio = self.tightness();
            let mut mask = targets.clone();
            missing.sort_by_key(|&v| (std::cmp::Reverse(prio[v]), v));
            for &a in &missing {
                if !self.c.is_missing(a, i) {
                    continue;
                }
                mask[a] = false;
                let mut found = self.shortest_alt_path(a, i, &mask, &prio);
                while found.is_none() && self.r_eff < r_cap && self.rdeg_blocks(a, i) {
                    self.r_eff += 1;
                    widened = true;
                    found = self.shortest_alt_path(a, i, &mask, &prio);
                }
                mask[a] = targets[a];
                match found {
                    Some(p) => {
                        let kind = if p.free.len() == 1 { "direct" } else { "alternating" };
                        self.apply_alt_path(i, &p, STEP, kind)?;
                    }
                    None => {}
                }
            }
            leftover += self.still_missing(i);
        }
        if widened {
            self.warn(format!("{STEP}: good-edge threshold widened from r = {} to {}", self.params.r, self.r_eff));
        }
        let (ra, rb) = (self.r_edges(true).len(), self.r_edges(false).len());
        let s = self.params.s;
        self.check("(C1) e(R_A) <= s", STEP, ra as f64, s, ra as f64 <= s)?;
        self.check("(C1) e(R_B) <= s", STEP, rb as f64, s, rb as f64 <= s)?;
        if self.case == CaseKind::Case1 {
            self.check("(C1) e(R_A) = e(R_B)", STEP, ra as f64, rb as f64, ra == rb)?;
        }
        let rmax = self.r_deg.iter().copied().max().unwrap_or(0);
        self.check("(C2) Delta(R) < r", STEP, rmax as f64, self.params.r as f64, rmax < self.params.r)?;
        let mut worst: (f64, f64) = (0.0, 0.0);
        let mut c3 = true;
        for v in 0..=self.n {
            if !self.in_vq(v) {
                continue;
            }
            let cnt = self
                .h
                .incident(v)
                .iter()
                .filter(|&&e| self.in_q[e.index()] && self.crossing(e) && !self.in_qab[e.index()] && self.c.is_colored(e))
                .count() as f64;
            let cap = (self.phi0[v] + if self.w[v] { 0 } else { self.params.r }) as f64;
            if cnt > cap && c3 {
                c3 = false;
                worst = (cnt, cap);
            }
        }
        self.check("(C3) new crossing colors per vertex", STEP, worst.0, worst.1, c3)?;
        self.check("classes saturate targets", STEP, leftover as f64, 0.0, leftover == 0)?;
        self.check_special()?;
        self.parity_boundary(STEP)
    }

    fn still_missing(&self, i: usize) -> usize {
        let t = self.targets();
        (0..=self.n).filter(|&v| t[v] && self.c.is_missing(v, i)).count()
    }

    /// Some free crossing edge at `a` leads to an `i`-edge blocked only by `R`-degrees.
    fn rdeg_blocks(&self, a: usize, i: usize) -> bool {
        let lim = self.r_eff.saturating_sub(1);
        self.h.incident(a).iter().any(|&e| {
            if !self.free_cross(e) {
                return false;
            }
            let u = self.h.other(e, a);
            match self.c.edge_at(u, i) {
                Some(f) if !self.is_special(f) && self.same_side(f) => {
                    let w = self.h.other(f, u);
                    self.r_deg[u] >= lim || self.r_deg[w] >= lim
                }
                _ => false,
            }
        })
    }

    /// Pairs across the bisection first, then within a side.
    fn mcc_pairs(&self, missing: &[usize]) -> Vec<(usize, usize)> {
        let ma: Vec<usize> = missing.iter().copied().filter(|&v| self.side[v] == Some(true)).collect();
        let mb: Vec<usize> = missing.iter().copied().filter(|&v| self.side[v] == Some(false)).collect();
        let cross = ma.len().min(mb.len());
        let mut out: Vec<(usize, usize)> = ma.iter().copied().zip(mb.iter().copied()).collect();
        for rest in [&ma[cross..], &mb[cross..]] {
            out.extend(rest.chunks_exact(2).map(|c| (c[0], c[1])));
        }
        out
    }
}
