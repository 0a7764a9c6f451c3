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

//! Alternating paths of uncolored crossing edges and good same-side edges of
//! one color.

use std::collections::HashMap;

use super::{PipelineError, PipelineState, TraceEvent};
use crate::graph::EdgeId;

/// A path `v_0 v_1 ... v_{2j+1}` whose odd edges `free` are uncolored and
/// whose even edges `good` carry the color being extended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct AltPath {
    pub verts: Vec<usize>,
    pub free: Vec<EdgeId>,
    pub good: Vec<EdgeId>,
}

/// One step `a - b1 = b2` of an alternating path: the uncolored edge `a b1`
/// and the good edge `b1 b2`.
type Half = (usize, EdgeId, EdgeId, usize);

impl PipelineState {
    /// Vertices that may not be interior to a path for color `i`.
    pub(crate) fn blocked(&self, i: usize) -> Vec<bool> {
        let mut out = self.w.clone();
        out[self.x] = true;
        if let Some(e) = self.m1.iter().find(|&e| self.c.color(e) == Some(i)) {
            let (u, v) = self.h.endpoints(e);
            out[u] = true;
            out[v] = true;
        }
        out
    }

    /// The good `i`-edge at `v` and its other end.
    pub(crate) fn good_at(&self, v: usize, i: usize, blocked: &[bool]) -> Option<(EdgeId, usize)> {
        let f = self.c.edge_at(v, i)?;
        if self.is_special(f) || !self.in_q[f.index()] || !self.same_side(f) {
            return None;
        }
        let w = self.h.other(f, v);
        let lim = self.r_eff.saturating_sub(1);
        if blocked[w] || self.r_deg[v] >= lim || self.r_deg[w] >= lim {
            return None;
        }
        Some((f, w))
    }

    pub(crate) fn free_between(&self, u: usize, v: usize) -> Option<EdgeId> {
        self.h.edges_between(u, v).iter().copied().find(|&e| self.free_cross(e))
    }

    /// `N_1(v)` with the matching `N_2(v)` vertex of each entry.
    pub(crate) fn half_paths(&self, v: usize, i: usize, blocked: &[bool]) -> Vec<Half> {
        let mut out = Vec::new();
        for &e in self.h.incident(v) {
            if !self.free_cross(e) {
                continue;
            }
            let b1 = self.h.other(e, v);
            if blocked[b1] || self.c.is_missing(b1, i) {
                continue;
            }
            if let Some((f, b2)) = self.good_at(b1, i, blocked) {
                out.push((b1, e, f, b2));
            }
        }
        out
    }

    /// Breadth-first search for a shortest alternating path from `a` to a
    /// vertex of `targets` missing `i`. Among the nearest targets the one with
    /// the highest `prio` wins.
    pub(crate) fn shortest_alt_path(&self, a: usize, i: usize, targets: &[bool], prio: &[i64]) -> Option<AltPath> {
        let blocked = self.blocked(i);
        let nv = self.n + 1;
        let mut visited = vec![false; nv];
        visited[a] = true;
        let mut parent: Vec<Option<(usize, EdgeId, EdgeId, usize)>> = vec![None; nv];
        let mut frontier = vec![a];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            let mut best: Option<(usize, EdgeId, usize)> = None;
            for &w in &frontier {
                for &e in self.h.incident(w) {
                    if !self.free_cross(e) {
                        continue;
                    }
                    let u = self.h.other(e, w);
                    if visited[u] {
                        continue;
                    }
                    if self.c.is_missing(u, i) {
                        if targets[u] {
                            let better = match best {
                                None => true,
                                Some((_, _, t)) => (prio[u], std::cmp::Reverse(u)) > (prio[t], std::cmp::Reverse(t)),
                            };
                            if better {
                                best = Some((w, e, u));
                            }
                        }
                        continue;
                    }
                    if blocked[u] || best.is_some() {
                        continue;
                    }
                    if let Some((f, u2)) = self.good_at(u, i, &blocked) {
                        if !visited[u2] {
                            visited[u] = true;
                            visited[u2] = true;
                            parent[u2] = Some((w, e, f, u));
                            next.push(u2);
                        }
                    }
                }
            }
            if let Some((w, e, t)) = best {
                let mut verts = vec![t, w];
                let mut free = vec![e];
                let mut good = Vec::new();
                let mut cur = w;
                while cur != a {
                    let (pw, e1, f, u) = parent[cur].expect("reached vertices have parents");
                    good.push(f);
                    free.push(e1);
                    verts.extend([u, pw]);
                    cur = pw;
                }
                verts.reverse();
                free.reverse();
                good.reverse();
                return Some(AltPath { verts, free, good });
            }
            frontier = next;
        }
        None
    }

    /// The fixed-shape path for an MCC-pair: five edges `a b1 b2 a2 a1 b`
    /// across the bisection, seven edges `a b1 b2 a2 a2* b2* b1* a*` within a side.
    pub(crate) fn shaped_path(&self, a: usize, b: usize, i: usize) -> Option<AltPath> {
        let blocked = self.blocked(i);
        let ha = self.half_paths(a, i, &blocked);
        let hb = self.half_paths(b, i, &blocked);
        let distinct = |vs: &[usize]| {
            let mut s = vs.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        if self.side[a] != self.side[b] {
            for &(b1, e1, f1, b2) in &ha {
                for &(a1, e3, f2, a2) in &hb {
                    if !distinct(&[a, b1, b2, a2, a1, b]) {
                        continue;
                    }
                    if let Some(e2) = self.free_between(b2, a2) {
                        return Some(AltPath { verts: vec![a, b1, b2, a2, a1, b], free: vec![e1, e2, e3], good: vec![f1, f2] });
                    }
                }
            }
            return None;
        }
        let mut cache: HashMap<usize, Vec<Half>> = HashMap::new();
        for &(b1s, e4, f3, b2s) in &hb {
            let mids = cache.entry(b2s).or_insert_with(|| self.half_paths(b2s, i, &blocked)).clone();
            for &(b1, e1, f1, b2) in &ha {
                for &(a2s, e3, f2, a2) in &mids {
                    let vs = [a, b1, b2, a2, a2s, b2s, b1s, b];
                    if !distinct(&vs) {
                        continue;
                    }
                    if let Some(e2) = self.free_between(b2, a2) {
                        return Some(AltPath { verts: vs.to_vec(), free: vec![e1, e2, e3, e4], good: vec![f1, f2, f3] });
                    }
                }
            }
        }
        None
    }

    /// Uncolors the good edges of `p` and gives its free edges color `i`.
    pub(crate) fn apply_alt_path(&mut self, i: usize, p: &AltPath, step: &'static str, kind: &'static str) -> Result<(), PipelineError> {
        let mut r_added = Vec::new();
        for &f in &p.good {
            self.c.unset(&self.h, f);
            let (u, v) = self.h.endpoints(f);
            self.r_deg[u] += 1;
            self.r_deg[v] += 1;
            r_added.push(self.pair(f));
        }
        for &e in &p.free {
            self.c.set(&self.h, e, i)?;
        }
        self.push_trace(TraceEvent { step, color: i, kind, path: p.verts.clone(), r_added });
        Ok(())
    }
}
