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

//! Construction phase: the bisection `(A, B)`, the multigraph `Q` and the
//! inside multigraph `Q_AB`.

use super::{EdgeKind, PipelineError, PipelineState};
use crate::graph::{degree_profile, EdgeId, EdgeSet, Graph};
use crate::reduction::CaseKind;
use crate::tools::{balanced_partition_with, PartitionOptions};

impl PipelineState {
    pub(crate) fn xi_n(&self) -> f64 {
        self.params.xi * self.n as f64
    }

    pub(crate) fn n23(&self) -> f64 {
        (self.n as f64).powf(2.0 / 3.0)
    }

    pub(crate) fn d_q(&self, v: usize) -> usize {
        self.h.incident(v).iter().filter(|e| self.in_q[e.index()]).count()
    }

    pub(crate) fn d_qab(&self, v: usize) -> usize {
        self.h.incident(v).iter().filter(|e| self.in_qab[e.index()]).count()
    }

    pub(crate) fn cstep1_partition(&mut self) -> Result<(), PipelineError> {
        const STEP: &str = "construct-1";
        let (n, m, x) = (self.n, self.m, self.x);
        let mut g1 = Graph::empty(m);
        for (u, v) in self.ag.base.edges() {
            g1.add_edge(u, v).expect("base edge");
        }
        for &(u, v) in &self.ag.matching {
            g1.add_edge(u, v).expect("matching avoids base edges");
        }
        if self.odd {
            for &w in &self.ag.ex {
                g1.add_edge(x, w).expect("apex edge");
            }
        }
        self.d_g1 = (0..=n).map(|v| if v < m { g1.degree(v) } else { 0 }).collect();
        let min_other = (0..n).map(|v| self.d_g1[v]).min().unwrap_or(0);
        self.v1 = if self.odd {
            let dx = self.d_g1[x];
            self.check("d_G1(x) minimal", STEP, dx as f64, min_other as f64, dx <= min_other)?;
            x
        } else {
            (0..n).min_by_key(|&v| (self.d_g1[v], v)).unwrap()
        };
        let v1 = self.v1;

        let prof = degree_profile(&self.ag.base, self.params.xi);
        let mut paired = vec![false; m];
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let push = |u: usize, v: usize, paired: &mut Vec<bool>, pairs: &mut Vec<(usize, usize)>| {
            paired[u] = true;
            paired[v] = true;
            pairs.push((u, v));
        };
        let prelim: Vec<usize> = match self.case {
            CaseKind::Case2 => {
                let cnt = 2 * (self.xi_n() / 2.0).floor() as usize;
                prof.u_xi.iter().copied().filter(|&u| u != v1).take(cnt).collect()
            }
            CaseKind::Case1 if !self.regular => prof.v_min.iter().copied().filter(|&u| u != v1).collect(),
            CaseKind::Case1 => Vec::new(),
        };
        if self.case == CaseKind::Case1 && !self.regular {
            let len = prelim.len();
            self.check("|V_delta - v1| even", STEP, len as f64, 0.0, len % 2 == 0)?;
        }
        for ch in prelim.chunks_exact(2) {
            push(ch[0], ch[1], &mut paired, &mut pairs);
        }
        for &(u, v) in &self.ag.matching {
            if !paired[u] && !paired[v] {
                push(u, v, &mut paired, &mut pairs);
            }
        }
        if !paired[v1] {
            let mate = (0..m)
                .filter(|&w| w != v1 && !paired[w])
                .min_by_key(|&w| (w >= n || self.ag.base.degree(w) != self.delta, w));
            if let Some(w) = mate {
                push(v1, w, &mut paired, &mut pairs);
            }
        }
        let rest: Vec<usize> = (0..m).filter(|&v| !paired[v]).collect();
        for ch in rest.chunks_exact(2) {
            push(ch[0], ch[1], &mut paired, &mut pairs);
        }
        let split = self
            .ag
            .matching
            .iter()
            .filter(|&&(u, v)| !pairs.contains(&(u, v)) && !pairs.contains(&(v, u)))
            .count();
        let xin = self.xi_n();
        self.check("unpartnered M edges <= xi n", STEP, split as f64, xin, split as f64 <= xin)?;

        let opts = PartitionOptions { seed: self.seed, ..PartitionOptions::default() };
        let part = balanced_partition_with(&g1, &pairs, &opts)?;
        let valid = part.validate(&g1);
        if let Err(msg) = &valid {
            self.warn(format!("{STEP}: partition: {msg}"));
        }
        self.check("partition (P1)-(P3)", STEP, valid.is_ok() as u8 as f64, 1.0, valid.is_ok())?;
        let (mut a, mut b) = (part.a, part.b);
        if a.contains(&v1) {
            std::mem::swap(&mut a, &mut b);
        }
        self.g1 = g1;
        self.set_sides(a, b);
        if self.case == CaseKind::Case1 {
            let diff = self.e_side(true) as f64 - self.e_side(false) as f64;
            if self.regular && !self.odd {
                self.check("e(G1[A]) = e(G1[B])", STEP, diff, 0.0, diff == 0.0)?;
            } else {
                let d1 = self.d_g1[v1] as f64;
                let dl = self.delta as f64;
                let lo = 0.5 * (dl - d1 - 2.0 * xin);
                let hi = 0.5 * (dl + 1.0 + 2.0 * xin - d1);
                self.check("e(G1[A]) - e(G1[B]) lower", STEP, diff, lo, diff >= lo)?;
                self.check("e(G1[A]) - e(G1[B]) upper", STEP, diff, hi, diff <= hi)?;
            }
        }
        Ok(())
    }

    pub(crate) fn set_sides(&mut self, a: Vec<usize>, b: Vec<usize>) {
        self.side = vec![None; self.n + 1];
        for &v in &a {
            self.side[v] = Some(true);
        }
        for &v in &b {
            self.side[v] = Some(false);
        }
        self.a = a;
        self.b = b;
        self.a.sort_unstable();
        self.b.sort_unstable();
    }

    /// Edges of `G_1` plus added edges inside one side.
    pub(crate) fn e_side(&self, side_a: bool) -> usize {
        self.h
            .edge_ids()
            .filter(|&e| self.in_g1_or_q(e) && self.same_side(e))
            .filter(|&e| self.side[self.h.endpoints(e).0] == Some(side_a))
            .count()
    }

    fn in_g1_or_q(&self, e: EdgeId) -> bool {
        if self.in_q.get(e.index()).copied().unwrap_or(false) {
            return true;
        }
        let (u, v) = self.h.endpoints(e);
        self.kind[e.index()] != EdgeKind::Aux && (self.odd || (u != self.x && v != self.x))
    }

    /// Vertices of `pool` ordered for use as endpoints of added edges: those
    /// not adjacent to `avoid`, then low degree, then low index.
    fn ranked(&self, pool: &[usize], avoid: Option<usize>) -> Vec<usize> {
        let mut out = pool.to_vec();
        out.sort_by_key(|&v| {
            let adj = avoid.is_some_and(|a| self.h.multiplicity(a, v) > 0);
            (adj, self.d_g1[v], v)
        });
        out
    }

    /// `cnt` disjoint pairs inside `pool`, preferring non-adjacent low-degree vertices.
    fn side_pairs(&self, pool: &[usize], cnt: usize) -> Vec<(usize, usize)> {
        let order = self.ranked(pool, None);
        let mut used = vec![false; self.n + 1];
        let mut out = Vec::new();
        for (i, &u) in order.iter().enumerate() {
            if out.len() == cnt {
                break;
            }
            if used[u] {
                continue;
            }
            let rest = order[i + 1..].iter().copied().filter(|&w| !used[w]);
            let w = rest.clone().find(|&w| self.h.multiplicity(u, w) == 0).or_else(|| rest.clone().next());
            if let Some(w) = w {
                used[u] = true;
                used[w] = true;
                out.push((u, w));
            }
        }
        out
    }

    pub(crate) fn cstep2_build_q(&mut self) -> Result<(), PipelineError> {
        const STEP: &str = "construct-2";
        let (x, v1) = (self.x, self.v1);
        for e in self.h.edge_ids().collect::<Vec<_>>() {
            let (u, v) = self.h.endpoints(e);
            self.in_q[e.index()] = self.odd || (u != x && v != x);
        }
        let xin = self.xi_n();
        let b_rest: Vec<usize> = self.b.iter().copied().filter(|&v| v != v1).collect();
        let diff = self.e_side(true) as i64 - self.e_side(false) as i64;
        let mut from_v1 = 0usize;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        match self.case {
            CaseKind::Case2 if self.odd => {
                let cnt = (self.delta.saturating_sub(self.d_g1[v1]) + 1) / 2;
                from_v1 = cnt;
            }
            CaseKind::Case2 => {}
            CaseKind::Case1 if self.regular && !self.odd => {}
            CaseKind::Case1 if self.odd || (self.d_g1[v1] as f64) < self.delta as f64 + 1.0 - 2.0 * xin => {
                if diff < 0 {
                    self.check("e(G1[A]) >= e(G1[B])", STEP, diff as f64, 0.0, false)?;
                    let a = self.a.clone();
                    let extra = self.side_pairs(&a, diff.unsigned_abs() as usize);
                    for (u, w) in extra {
                        self.add_aux(u, w, false);
                    }
                } else {
                    from_v1 = diff as usize;
                }
            }
            CaseKind::Case1 => {
                if diff < 0 {
                    let (a, b) = (std::mem::take(&mut self.a), std::mem::take(&mut self.b));
                    self.set_sides(b, a);
                }
                let pool = self.b.clone();
                pairs = self.side_pairs(&pool, diff.unsigned_abs() as usize);
            }
        }
        if from_v1 > b_rest.len() {
            self.check("|B0| <= |B| - 1", STEP, from_v1 as f64, b_rest.len() as f64, false)?;
            from_v1 = b_rest.len();
        }
        let b0: Vec<usize> = self.ranked(&b_rest, Some(v1)).into_iter().take(from_v1).collect();
        for &w in &b0 {
            self.add_aux(v1, w, false);
        }
        self.b0 = b0;
        let mut q1 = from_v1;
        for &(u, w) in &pairs {
            self.add_aux(u, w, false);
            self.b0.extend([u, w]);
            q1 += (u == v1 || w == v1) as usize;
        }
        self.params.q1 = q1;
        if self.case == CaseKind::Case1 {
            let (ea, eb) = (self.e_side(true), self.e_side(false));
            self.check("e(Q[A]) = e(Q[B])", STEP, ea as f64, eb as f64, ea == eb)?;
        }
        let dq = self.d_q(v1);
        self.check("d_Q(v1) <= Delta + 1", STEP, dq as f64, (self.delta + 1) as f64, dq <= self.delta + 1)?;
        Ok(())
    }

    fn k_formula(&self) -> usize {
        let half = self.delta as f64 / 2.0;
        match self.case {
            CaseKind::Case1 => (half + 1.1 * self.xi_n()).ceil() as usize + 4,
            CaseKind::Case2 => (half + self.n23()).ceil() as usize + 4,
        }
    }

    /// Candidates for `M_1` in priority order: same-side special edges of `Q`
    /// (which must all be taken), then `M` across, then `E(x)`.
    fn m1_candidates(&self) -> (Vec<EdgeId>, Vec<EdgeId>) {
        let mut forced = Vec::new();
        let mut cross_m = Vec::new();
        let mut ex = Vec::new();
        for e in self.h.edges_sorted() {
            match self.kind[e.index()] {
                EdgeKind::M if self.same_side(e) => forced.push(e),
                EdgeKind::M => cross_m.push(e),
                EdgeKind::Ex if self.in_q[e.index()] && self.same_side(e) => forced.push(e),
                EdgeKind::Ex => ex.push(e),
                _ => {}
            }
        }
        cross_m.extend(ex);
        (forced, cross_m)
    }

    fn select_m1(&self, k: usize) -> Option<EdgeSet> {
        let (forced, rest) = self.m1_candidates();
        if forced.len() > k || forced.len() + rest.len() < k {
            return None;
        }
        let mut s = EdgeSet::new();
        s.extend(forced.iter().copied());
        s.extend(rest.iter().copied().take(k - forced.len()));
        Some(s)
    }

    fn qab_degree(&self, m1: &EdgeSet) -> usize {
        let mut deg = vec![0usize; self.n + 1];
        for e in self.h.edge_ids() {
            if (self.in_q[e.index()] && self.same_side(e)) || m1.contains(e) {
                let (u, v) = self.h.endpoints(e);
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub(crate) fn cstep3_select_m1(&mut self) -> Result<(), PipelineError> {
        const STEP: &str = "construct-3";
        let kf = self.k_formula();
        self.params.k_formula = kf;
        let (forced, rest) = self.m1_candidates();
        let avail = forced.len() + rest.len();
        let (k, m1) = if self.strict() {
            let m1 = self.select_m1(kf).ok_or_else(|| PipelineError::Search {
                step: STEP,
                detail: format!("cannot pick M_1 of size {kf}: {} forced, {avail} available", forced.len()),
            })?;
            (kf, m1)
        } else {
            let mut k = forced.len().max(4);
            let mut found = None;
            for _ in 0..12 {
                let Some(m1) = self.select_m1(k) else { break };
                let need = self.qab_degree(&m1) + 4;
                if k >= need {
                    found = Some((k, m1));
                    break;
                }
                k = need;
            }
            let (k, m1) = found.ok_or_else(|| PipelineError::Search {
                step: STEP,
                detail: format!("no consistent M_1: {} forced, {avail} available", forced.len()),
            })?;
            if k != kf {
                self.warn(format!("{STEP}: k = {k} replaces the formula value {kf}"));
            }
            (k, m1)
        };
        self.params.k = k;
        let dqab = self.qab_degree(&m1);
        self.check("k >= Delta(Q_AB) + 4", STEP, k as f64, (dqab + 4) as f64, k >= dqab + 4)?;
        for e in self.h.edge_ids().collect::<Vec<_>>() {
            self.in_qab[e.index()] = (self.in_q[e.index()] && self.same_side(e)) || m1.contains(e);
        }
        self.s0 = if !self.odd && m1.iter().any(|e| self.kind[e.index()] == EdgeKind::Ex) { vec![self.x] } else { Vec::new() };
        self.m1 = m1;
        let n = self.n as f64;
        let (s, r, t) = match self.case {
            CaseKind::Case1 => (3.0 * self.params.xi * n * n, (self.params.xi.sqrt() * n).ceil() as usize, 1.1 * self.xi_n()),
            CaseKind::Case2 => (3.5 * n.powf(5.0 / 3.0), n.powf(5.0 / 6.0).ceil() as usize, self.n23()),
        };
        self.params.s = s;
        self.params.r = r;
        self.params.t = t;
        self.r_eff = if self.strict() { r } else { r.max(3) };
        Ok(())
    }
}
