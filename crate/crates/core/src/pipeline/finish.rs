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

//! Last two coloring steps: new classes for the uncolored same-side edges,
//! each grown by a bipartite matching, then the bipartite extension on what
//! is left.

use super::{EdgeKind, PipelineError, PipelineState};
use crate::chromatics::{equalize, extend_rainbow_coloring_b, vizing_color, ExtendConfig, ExtendEngine, PartialEdgeColoring};
use crate::graph::{EdgeId, EdgeSet};
use crate::reduction::{CaseKind, ReductionError};
use crate::verify::{parity_check, validate_good};

/// Maximum matching grown by augmenting paths from left vertices in the given
/// order, so earlier vertices are never left unmatched in favor of later ones.
/// Each left vertex lists `(right, edge)` in preference order.
pub(crate) fn priority_matching(order: &[usize], adj: &[Vec<(usize, EdgeId)>], n_right: usize) -> Vec<(usize, usize, EdgeId)> {
    fn augment(
        u: usize,
        adj: &[Vec<(usize, EdgeId)>],
        seen: &mut [bool],
        mate_r: &mut [Option<(usize, EdgeId)>],
    ) -> bool {
        for &(r, e) in &adj[u] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let free = match mate_r[r] {
                None => true,
                Some((u2, _)) => augment(u2, adj, seen, mate_r),
            };
            if free {
                mate_r[r] = Some((u, e));
                return true;
            }
        }
        false
    }
    let mut mate_r: Vec<Option<(usize, EdgeId)>> = vec![None; n_right];
    let mut seen = vec![false; n_right];
    for &u in order {
        seen.iter_mut().for_each(|s| *s = false);
        augment(u, adj, &mut seen, &mut mate_r);
    }
    let mut out: Vec<_> = mate_r.iter().enumerate().filter_map(|(r, m)| m.map(|(u, e)| (u, r, e))).collect();
    out.sort_unstable();
    out
}

impl PipelineState {
    fn class_has_special(&self, col: usize) -> bool {
        self.m1.iter().chain(self.m2.iter()).any(|e| self.c.color(e) == Some(col))
    }

    fn covered(&self, col: usize) -> Vec<bool> {
        (0..=self.n).map(|v| !self.c.is_missing(v, col)).collect()
    }

    /// In the second case, puts an uncolored apex edge into a class without a special edge.
    fn route_apex(&mut self, col: usize) -> Result<bool, PipelineError> {
        if self.class_has_special(col) {
            return Ok(true);
        }
        let x = self.x;
        let cov = self.covered(col);
        let prio = self.tightness();
        let best = self
            .h
            .incident(x)
            .iter()
            .copied()
            .filter(|&e| self.kind[e.index()] == EdgeKind::Ex && !self.c.is_colored(e))
            .filter(|&e| !self.odd || self.crossing(e))
            .filter(|&e| !cov[self.h.other(e, x)])
            .max_by_key(|&e| {
                let w = self.h.other(e, x);
                (prio[w], std::cmp::Reverse(w))
            });
        match best {
            Some(e) => {
                self.c.set(&self.h, e, col)?;
                self.m2.insert(e);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Extends class `col` by a matching of uncolored crossing edges of `Q`
    /// outside `M` on the vertices it misses. Returns how many vertices that
    /// should be saturated are left out.
    fn fill_class(&mut self, col: usize) -> Result<usize, PipelineError> {
        let has_special = self.class_has_special(col);
        let cov = self.covered(col);
        let prio = self.tightness();
        let free_a: Vec<usize> = self.a.iter().copied().filter(|&v| !cov[v]).collect();
        let free_b: Vec<usize> = self.b.iter().copied().filter(|&v| !cov[v]).collect();
        let left_is_a = free_a.len() >= free_b.len();
        let (mut left, right) = if left_is_a { (free_a, free_b) } else { (free_b, free_a) };
        left.sort_by_key(|&v| (std::cmp::Reverse(prio[v]), v));
        let nv = self.n + 1;
        let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); nv];
        for &u in &left {
            for &e in self.h.incident(u) {
                let kind = self.kind[e.index()];
                if !self.in_q[e.index()] || !self.crossing(e) || self.c.is_colored(e) || kind == EdgeKind::M {
                    continue;
                }
                if kind == EdgeKind::Ex && has_special {
                    continue;
                }
                let w = self.h.other(e, u);
                if !cov[w] {
                    adj[u].push((w, e));
                }
            }
            adj[u].sort_by_key(|&(w, _)| (std::cmp::Reverse(prio[w]), w));
        }
        let matched = priority_matching(&left, &adj, nv);
        let mut special_used = false;
        for &(_, _, e) in &matched {
            if self.is_special(e) {
                if special_used || has_special {
                    continue;
                }
                special_used = true;
                self.m2.insert(e);
            }
            self.c.set(&self.h, e, col)?;
        }
        let slack_ok = |v: usize| match self.case {
            CaseKind::Case1 => false,
            CaseKind::Case2 => self.u[v],
        };
        let missed = left
            .iter()
            .chain(right.iter())
            .filter(|&&v| self.c.is_missing(v, col))
            .filter(|&&v| !slack_ok(v))
            .count();
        let surplus = left.len().abs_diff(right.len());
        Ok(missed.saturating_sub(if self.case == CaseKind::Case2 { surplus } else { 0 }))
    }

    /// Colors one side of `R` with as few colors as the multigraph bound allows.
    fn color_side(&self, edges: &[EdgeId]) -> Result<(crate::graph::Multigraph, PartialEdgeColoring, usize), PipelineError> {
        let mut set = EdgeSet::new();
        set.extend(edges.iter().copied());
        let view = self.h.restricted_to(&set);
        if edges.is_empty() {
            let c = PartialEdgeColoring::new(&view, 0);
            return Ok((view, c, 0));
        }
        let q = view.max_degree() + view.mu().max(1);
        let c = vizing_color(&view, q)?;
        Ok((view, c, q))
    }

    pub(crate) fn kstep3_new_classes(&mut self) -> Result<(), PipelineError> {
        const STEP: &str = "color-3";
        let k = self.params.k;
        let mut missed = 0usize;
        let mut unrouted = 0usize;
        let mut m_in_r: Vec<EdgeId> = self.r_edges(true).into_iter().chain(self.r_edges(false)).filter(|&e| self.kind[e.index()] == EdgeKind::M).collect();
        m_in_r.sort_by_key(|&e| self.h.handle(e));
        let p = m_in_r.len();
        self.params.p = p;
        let (ra, rb) = (self.r_edges(true).len(), self.r_edges(false).len());
        self.check("e(R_A), e(R_B) >= 2p", STEP, ra.min(rb) as f64, (2 * p) as f64, ra.min(rb) >= 2 * p)?;
        for e in m_in_r {
            let col = self.c.add_colors(1);
            let side_a = self.side[self.h.endpoints(e).0] == Some(true);
            let f = self.r_edges(!side_a).into_iter().find(|&f| !self.is_special(f));
            self.c.set(&self.h, e, col)?;
            self.m2.insert(e);
            match f {
                Some(f) => self.c.set(&self.h, f, col)?,
                None => self.check(format!("partner edge for M edge in color {col}"), STEP, 0.0, 1.0, false)?,
            }
            missed += self.fill_class(col)?;
        }

        let (ea, eb) = (self.r_edges(true), self.r_edges(false));
        let (va, ca, qa) = self.color_side(&ea)?;
        let (vb, cb, qb) = self.color_side(&eb)?;
        let q = if self.strict() { 2 * self.params.r } else { qa.max(qb) };
        if q < qa.max(qb) {
            return Err(PipelineError::Palette(format!("R needs {} colors, 2r = {q}", qa.max(qb))));
        }
        let ca = equalize(&va, &ca, q)?;
        let cb = equalize(&vb, &cb, q)?;
        let (sa, sb) = (ca.class_sizes(&va), cb.class_sizes(&vb));
        let mut oa: Vec<usize> = (0..q).collect();
        let mut ob: Vec<usize> = (0..q).collect();
        oa.sort_by_key(|&j| (std::cmp::Reverse(sa.get(j).copied().unwrap_or(0)), j));
        ob.sort_by_key(|&j| (std::cmp::Reverse(sb.get(j).copied().unwrap_or(0)), j));
        let mut perm_b = vec![0usize; q];
        for (&ja, &jb) in oa.iter().zip(&ob) {
            perm_b[jb] = ja;
        }
        let first = self.c.add_colors(q);
        for &e in &ea {
            self.c.set(&self.h, e, first + ca.color(e).expect("side coloring is total"))?;
        }
        for &e in &eb {
            self.c.set(&self.h, e, first + perm_b[cb.color(e).expect("side coloring is total")])?;
        }
        if self.case == CaseKind::Case1 {
            let equal = oa.iter().zip(&ob).all(|(&ja, &jb)| sa.get(ja) == sb.get(jb));
            self.check("new classes balanced on A and B", STEP, equal as u8 as f64, 1.0, equal)?;
        }
        for col in first..first + q {
            if self.case == CaseKind::Case2 && !self.route_apex(col)? {
                unrouted += 1;
            }
            missed += self.fill_class(col)?;
        }
        let ell = p + q;
        self.params.ell = ell;
        if self.case == CaseKind::Case2 {
            self.check("apex edge in every new class", STEP, unrouted as f64, 0.0, unrouted == 0)?;
        }
        self.check("H_i matchings saturate", STEP, missed as f64, 0.0, missed == 0)?;
        let total = self.delta + 2;
        self.check("k + ell <= Delta + 2", STEP, (k + ell) as f64, total as f64, k + ell <= total)?;
        if k + ell > total {
            return Err(PipelineError::Palette(format!("k + ell = {} exceeds Delta + 2 = {total}", k + ell)));
        }
        self.check_special_after_new()
    }

    /// Keeps every colored edge of `G^M` and extends on the whole graph with
    /// the full palette, `M ∪ E(x)` rainbow.
    fn global_repair(&mut self, total: usize) -> Result<PartialEdgeColoring, PipelineError> {
        self.warn(format!("color-4: finishing with the engine on all of G^M ({total} colors)"));
        let comb = &self.ag.combined;
        let special = self.ag.special();
        let start = PartialEdgeColoring::from_assignment(comb, total, comb.edge_ids().filter_map(|e| self.c.color(e).map(|col| (e, col))))?;
        let fixed = EdgeSet::new();
        let mut last = None;
        for attempt in 0..4u64 {
            let mut c = start.clone();
            let cfg = ExtendConfig { seed: self.seed.wrapping_add(100 + attempt), perturb: true, ..ExtendConfig::default() };
            match ExtendEngine::new(comb, &fixed, &special, cfg).run(&mut c) {
                Ok(_) => return Ok(c),
                Err(e) => last = Some(e),
            }
        }
        Err(last.expect("at least one attempt").into())
    }

    fn check_special_after_new(&self) -> Result<(), PipelineError> {
        if let Some((a, b)) = self.c.rainbow_violation(self.m1.iter().chain(self.m2.iter())) {
            return Err(PipelineError::Internal(format!("{:?} and {:?} share a color", self.pair(a), self.pair(b))));
        }
        Ok(())
    }

    pub(crate) fn kstep4_finish(&mut self) -> Result<PartialEdgeColoring, PipelineError> {
        const STEP: &str = "color-4";
        if self.h.edge_ids().any(|e| !self.is_real(e) && !self.c.is_colored(e)) {
            return Err(PipelineError::Internal("an added edge is still uncolored".into()));
        }
        let used = self.c.k();
        let total = self.delta + 2;
        let c4 = total.checked_sub(used).ok_or_else(|| PipelineError::Palette(format!("{used} colors used, Delta + 2 = {total}")))?;
        self.params.c = c4;
        let mut rset = EdgeSet::new();
        rset.extend(self.h.edge_ids().filter(|&e| self.is_real(e) && !self.c.is_colored(e)));
        let view = self.h.restricted_to(&rset);
        let x = self.x;
        let mut worst = (0.0, 0.0);
        let mut ok = true;
        for v in 0..=self.n {
            let d = view.degree(v);
            let cap = if self.side[v] == Some(true) && v != x { c4.saturating_sub(1) } else { c4 };
            if d > cap && ok {
                ok = false;
                worst = (d as f64, cap as f64);
            }
        }
        self.check("d_R within c (strictly on A)", STEP, worst.0, worst.1, ok)?;
        let mut j: Vec<EdgeId> = rset.iter().filter(|&e| self.is_special(e)).collect();
        j.sort_by_key(|&e| self.h.handle(e));
        self.check("|J| <= c", STEP, j.len() as f64, c4 as f64, j.len() <= c4)?;
        if j.len() > c4 {
            return Err(PipelineError::Palette(format!("{} uncolored special edges, {c4} colors left", j.len())));
        }
        let mut jset = EdgeSet::new();
        jset.extend(j.iter().copied());
        let mut pre = PartialEdgeColoring::new(&view, c4);
        for (col, &e) in j.iter().enumerate() {
            pre.set(&view, e, col)?;
        }
        let xs: Vec<usize> = self.a.iter().copied().filter(|&v| v != x).collect();
        let ys: Vec<usize> = self.b.iter().copied().filter(|&v| v != x).collect();
        let rc = match extend_rainbow_coloring_b(&view, &jset, &jset, &pre, c4, (&xs, &ys), x) {
            Ok((c, _)) => Some(c),
            Err(e) => {
                self.warn(format!("{STEP}: bipartite extension not applied ({e}); using the perturbing engine"));
                let fixed = EdgeSet::new();
                let mut out = None;
                let mut last = e;
                for attempt in 0..4u64 {
                    let mut c = pre.clone();
                    let cfg = ExtendConfig { seed: self.seed.wrapping_add(attempt), perturb: true, ..ExtendConfig::default() };
                    match ExtendEngine::new(&view, &fixed, &jset, cfg).run(&mut c) {
                        Ok(_) => {
                            out = Some(c);
                            break;
                        }
                        Err(e) => last = e,
                    }
                }
                if out.is_none() && self.strict() {
                    return Err(last.into());
                }
                out
            }
        };
        let fin = match rc {
            Some(rc) => {
                let comb = &self.ag.combined;
                let assignment: Vec<(EdgeId, usize)> = comb
                    .edge_ids()
                    .map(|e| match self.c.color(e) {
                        Some(col) => (e, col),
                        None => (e, used + rc.color(e).expect("extension is total")),
                    })
                    .collect();
                PartialEdgeColoring::from_assignment(comb, total, assignment)?
            }
            None => self.global_repair(total)?,
        };
        let comb = &self.ag.combined;
        validate_good(&self.ag, &fin).map_err(|v| PipelineError::Reduction(ReductionError::NotGood(v)))?;
        let parity = parity_check(comb, &fin);
        let lhs = parity.err().map_or(0.0, |(_, m)| m as f64);
        self.check("final parity", STEP, lhs, (comb.n() % 2) as f64, parity.is_ok())?;
        Ok(fin)
    }
}
