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

//! Extension of a precolored partial coloring to all edges while keeping a
//! designated edge set rainbow.
//!
//! One round takes an uncolored edge `uv`, grows a maximal multifan at `u`
//! that avoids the fixed edges `J`, and either shifts along a linear
//! sequence to a leaf sharing a missing color with `u`, or performs a Kempe
//! switch that creates such a leaf. Switches that would break the rainbow
//! property of `J0` are skipped.

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_multifan, kempe_component, kempe_switch, shift, Color, ColoringError, KempePath, Multifan, PartialEdgeColoring};
use crate::graph::{EdgeId, EdgeSet, Multigraph};

#[derive(Debug, Clone)]
pub struct ExtendConfig {
    /// Round cap; defaults to `n * k`.
    pub max_rounds: Option<usize>,
    /// Kempe candidates tried per uncolored edge and orientation.
    pub max_candidates: usize,
    /// Random J0-safe switches when every uncolored edge is stuck.
    pub perturb: bool,
    pub seed: u64,
    /// Preferred fan centers; `center_side[v]` marks `v` as a good center.
    pub center_side: Option<Vec<bool>>,
}

impl Default for ExtendConfig {
    fn default() -> Self {
        ExtendConfig {
            max_rounds: None,
            max_candidates: 400,
            perturb: true,
            seed: 0,
            center_side: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct ExtendStats {
    pub rounds: usize,
    pub colored: usize,
    pub shifts: usize,
    pub switches: usize,
    pub perturbations: usize,
}

pub struct ExtendEngine<'a> {
    g: &'a Multigraph,
    fixed: &'a EdgeSet,
    j0: Vec<EdgeId>,
    in_j0: Vec<bool>,
    cfg: ExtendConfig,
}

impl<'a> ExtendEngine<'a> {
    pub fn new(g: &'a Multigraph, fixed: &'a EdgeSet, j0: &EdgeSet, cfg: ExtendConfig) -> Self {
        let mut in_j0 = vec![false; g.edge_capacity()];
        for e in j0.iter() {
            in_j0[e.index()] = true;
        }
        ExtendEngine {
            g,
            fixed,
            j0: j0.iter().collect(),
            in_j0,
            cfg,
        }
    }

    fn j0_counts(&self, c: &PartialEdgeColoring) -> Vec<usize> {
        let mut cnt = vec![0; c.k()];
        for &e in &self.j0 {
            if let Some(col) = c.color(e) {
                cnt[col] += 1;
            }
        }
        cnt
    }

    /// Switching `p` keeps J0 rainbow.
    fn switch_safe(&self, c: &PartialEdgeColoring, p: &KempePath) -> bool {
        let (a, b) = (p.alpha, p.gamma);
        let (mut ia, mut ib) = (0, 0);
        for &e in &p.edges {
            if self.in_j0[e.index()] {
                if c.color(e) == Some(a) {
                    ia += 1;
                } else {
                    ib += 1;
                }
            }
        }
        if ia + ib == 0 {
            return true;
        }
        let cnt = self.j0_counts(c);
        cnt[a] + ib - ia <= 1 && cnt[b] + ia - ib <= 1
    }

    /// Lowest color in `cands` allowed on `e` by the J0 constraint.
    fn allowed(&self, c: &PartialEdgeColoring, e: EdgeId, cands: impl Iterator<Item = Color>) -> Option<Color> {
        if !self.in_j0[e.index()] {
            return cands.into_iter().next();
        }
        let cnt = self.j0_counts(c);
        cands.into_iter().find(|&col| cnt[col] == 0)
    }

    fn common(&self, c: &PartialEdgeColoring, e: EdgeId, u: usize, w: usize) -> Option<Color> {
        let (mu, mw) = (c.missing(u), c.missing(w));
        self.allowed(c, e, mu.iter().filter(|&col| mw.contains(col)))
    }

    /// Colors `e0` directly or through a single fan shift.
    fn direct(&self, c: &mut PartialEdgeColoring, e0: EdgeId, u: usize, stats: &mut ExtendStats) -> Option<Multifan> {
        let v = self.g.other(e0, u);
        if let Some(col) = self.common(c, e0, u, v) {
            c.set(self.g, e0, col).expect("common missing color");
            return None;
        }
        let fan = build_multifan(self.g, c, u, e0, self.fixed);
        let base = if self.j0.is_empty() { Vec::new() } else { self.j0_counts(c) };
        for i in 1..fan.len() {
            let e = fan.edges[i];
            let w = fan.leaves[i];
            let chain = fan.chain(i);
            let mut cnt = base.clone();
            if !cnt.is_empty() {
                // J0 counts after the shift, before `e` is recolored
                for j in 0..chain.len() - 1 {
                    let col = c.color(fan.edges[chain[j + 1]]).expect("colored fan edge");
                    if self.in_j0[fan.edges[chain[j]].index()] {
                        cnt[col] += 1;
                    }
                    if self.in_j0[fan.edges[chain[j + 1]].index()] {
                        cnt[col] -= 1;
                    }
                }
                if cnt.iter().any(|&x| x > 1) {
                    continue;
                }
            }
            let mu = c.missing(u);
            let mw = c.missing(w);
            let pick = mu
                .iter()
                .filter(|&col| mw.contains(col))
                .find(|&col| !self.in_j0[e.index()] || cnt[col] == 0);
            if let Some(col) = pick {
                shift(self.g, c, &fan, &chain, chain.len() - 1).expect("fan chain is valid");
                c.set(self.g, e, col).expect("shared missing color survives the shift");
                stats.shifts += 1;
                return None;
            }
        }
        Some(fan)
    }

    fn try_edge(&self, c: &mut PartialEdgeColoring, e0: EdgeId, u: usize, stats: &mut ExtendStats) -> bool {
        let fan = match self.direct(c, e0, u, stats) {
            None => return true,
            Some(f) => f,
        };
        let k = c.k();
        let mut mult = vec![0usize; k];
        let mut first_leaf = vec![usize::MAX; k];
        for (i, &w) in fan.leaves.iter().enumerate() {
            for col in c.missing(w).iter() {
                mult[col] += 1;
                if first_leaf[col] == usize::MAX {
                    first_leaf[col] = i;
                }
            }
        }
        let mut gammas: Vec<Color> = (0..k).filter(|&g| mult[g] > 0).collect();
        gammas.sort_by_key(|&g| (std::cmp::Reverse(mult[g]), g));
        let alphas: Vec<Color> = c.missing(u).iter().collect();
        let mut tried = 0;
        for &gamma in &gammas {
            for &alpha in &alphas {
                if alpha == gamma {
                    continue;
                }
                let mut starts = vec![u, fan.leaves[first_leaf[gamma]]];
                starts.extend(fan.leaves.iter().copied().filter(|&w| c.is_missing(w, gamma)));
                let mut seen_paths: Vec<(usize, usize)> = Vec::new();
                for s in starts {
                    if tried >= self.cfg.max_candidates {
                        return false;
                    }
                    let p = kempe_component(self.g, c, s, alpha, gamma);
                    if p.is_empty() || p.is_cycle {
                        continue;
                    }
                    let key = (p.start().min(p.end()), p.start().max(p.end()));
                    if seen_paths.contains(&key) || !self.switch_safe(c, &p) {
                        continue;
                    }
                    seen_paths.push(key);
                    tried += 1;
                    kempe_switch(self.g, c, &p).expect("maximal component");
                    if self.direct(c, e0, u, stats).is_none() {
                        stats.switches += 1;
                        return true;
                    }
                    // the switch is an involution on its component
                    let back = kempe_component(self.g, c, p.start(), alpha, gamma);
                    kempe_switch(self.g, c, &back).expect("maximal component");
                }
            }
        }
        false
    }

    fn orientations(&self, e: EdgeId) -> [usize; 2] {
        let (u, v) = self.g.endpoints(e);
        match &self.cfg.center_side {
            Some(side) if !side[u] && side[v] => [v, u],
            _ => [u, v],
        }
    }

    /// Colors every uncolored edge of `g`. Fixed edges are never uncolored or
    /// moved by a shift; J0 stays rainbow throughout.
    pub fn run(&self, c: &mut PartialEdgeColoring) -> Result<ExtendStats, ColoringError> {
        c.sync(self.g);
        if let Some((a, b)) = c.rainbow_violation(self.j0.iter().copied()) {
            return Err(ColoringError::NotRainbow(a, b));
        }
        let cap = self.cfg.max_rounds.unwrap_or((self.g.n() * c.k()).max(1));
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        let mut stats = ExtendStats::default();
        let mut pending = c.uncolored(self.g);
        pending.sort_by_key(|&e| self.g.handle(e));
        while !pending.is_empty() {
            if stats.rounds >= cap {
                return Err(ColoringError::Stalled {
                    rounds: stats.rounds,
                    uncolored: pending.len(),
                });
            }
            stats.rounds += 1;
            let mut done = None;
            'search: for (idx, &e) in pending.iter().enumerate() {
                for u in self.orientations(e) {
                    if self.try_edge(c, e, u, &mut stats) {
                        done = Some(idx);
                        break 'search;
                    }
                    if self.cfg.center_side.is_some() {
                        // the preferred orientation is the one the argument needs
                        break;
                    }
                }
            }
            match done {
                Some(idx) => {
                    pending.remove(idx);
                    stats.colored += 1;
                }
                None if self.cfg.perturb => {
                    self.perturb(c, &pending, &mut rng);
                    stats.perturbations += 1;
                }
                None => {
                    return Err(ColoringError::Stalled {
                        rounds: stats.rounds,
                        uncolored: pending.len(),
                    })
                }
            }
            c.debug_check(self.g);
        }
        debug_assert!(c.rainbow_violation(self.j0.iter().copied()).is_none());
        Ok(stats)
    }

    fn perturb(&self, c: &mut PartialEdgeColoring, pending: &[EdgeId], rng: &mut ChaCha8Rng) {
        let k = c.k();
        if k < 2 {
            return;
        }
        for _ in 0..32 {
            let e = *pending.choose(rng).unwrap();
            let (u, v) = self.g.endpoints(e);
            let w = if rng.gen_bool(0.5) { u } else { v };
            let a = rng.gen_range(0..k);
            let mut b = rng.gen_range(0..k - 1);
            if b >= a {
                b += 1;
            }
            let p = kempe_component(self.g, c, w, a, b);
            if !p.is_empty() && self.switch_safe(c, &p) {
                kempe_switch(self.g, c, &p).expect("maximal component");
                return;
            }
        }
    }
}

fn precondition(name: &'static str, detail: impl Into<String>) -> ColoringError {
    ColoringError::Precondition {
        name,
        detail: detail.into(),
    }
}

/// Common hypotheses of both extension statements. Returns the star center
/// of `j0`, if any.
fn check_common(
    g: &Multigraph,
    j: &EdgeSet,
    j0: &EdgeSet,
    c: &PartialEdgeColoring,
) -> Result<Option<usize>, ColoringError> {
    if g.mu() > 2 {
        return Err(precondition("multiplicity", format!("mu(G) = {} > 2", g.mu())));
    }
    if !j.all_live_in(g) || !j0.all_live_in(g) {
        return Err(precondition("edge sets", "J or J0 references a dead edge"));
    }
    if let Some(e) = j0.iter().find(|&e| !j.contains(e)) {
        return Err(precondition("J0 in J", format!("{:?} is in J0 but not J", g.handle(e))));
    }
    let mut j0deg = vec![0usize; g.n()];
    for e in j0.iter() {
        let (a, b) = g.endpoints(e);
        j0deg[a] += 1;
        j0deg[b] += 1;
    }
    let centers: Vec<usize> = (0..g.n()).filter(|&v| j0deg[v] >= 2).collect();
    let x = match centers.as_slice() {
        [] => None,
        [x] => Some(*x),
        more => {
            // a two-edge star looks like two centers only if they share an edge
            return Err(precondition(
                "J0 shape",
                format!("vertices {more:?} each meet several J0 edges"),
            ));
        }
    };
    if let Some(x) = x {
        if let Some(&e) = g.incident(x).iter().find(|&&e| !j0.contains(e)) {
            return Err(precondition(
                "J0 shape",
                format!("edge {:?} at the star center is not in J0", g.handle(e)),
            ));
        }
    }
    for u in 0..g.n() {
        if Some(u) == x {
            continue;
        }
        let doubles = {
            let mut nb: Vec<usize> = g
                .incident(u)
                .iter()
                .map(|&e| g.other(e, u))
                .filter(|&w| g.multiplicity(u, w) == 2)
                .collect();
            nb.sort_unstable();
            nb.dedup();
            nb
        };
        if doubles.len() > 1 {
            return Err(precondition("double edges", format!("vertex {u} has double edges to {doubles:?}")));
        }
    }
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        let outside = g.edges_between(a, b).iter().filter(|f| !j.contains(**f)).count();
        if outside > 1 {
            return Err(precondition("G - J simple", format!("pair {a}-{b} has parallel edges outside J")));
        }
    }
    if let Some(e) = j.iter().find(|&e| !c.is_colored(e)) {
        return Err(precondition("J colored", format!("{:?} is uncolored", g.handle(e))));
    }
    if let Some((a, b)) = c.rainbow_violation(j0.iter()) {
        return Err(ColoringError::NotRainbow(a, b));
    }
    Ok(x)
}

fn with_palette(g: &Multigraph, c: &PartialEdgeColoring, k: usize) -> Result<PartialEdgeColoring, ColoringError> {
    let mut out = c.clone();
    out.sync(g);
    if out.k() < k {
        out.add_colors(k - out.k());
    } else if out.k() > k {
        let sizes = out.class_sizes(g);
        if let Some(top) = (k..out.k()).rev().find(|&i| sizes[i] > 0) {
            return Err(ColoringError::PaletteTooSmall { k, bound: top + 1 });
        }
        let perm: Vec<Color> = (0..out.k()).map(|i| i.min(k.saturating_sub(1))).collect();
        out = out.recolored(g, &perm, k);
    }
    Ok(out)
}

/// Extends a coloring of `g[J]` with `J0` rainbow to a `k`-edge-coloring of
/// all of `g` with `J0` still rainbow, for `k >= Δ(g) + 4`.
pub fn extend_rainbow_coloring_a(
    g: &Multigraph,
    j: &EdgeSet,
    j0: &EdgeSet,
    coloring_of_j: &PartialEdgeColoring,
    k: usize,
) -> Result<(PartialEdgeColoring, ExtendStats), ColoringError> {
    check_common(g, j, j0, coloring_of_j)?;
    let bound = g.max_degree() + 4;
    if k < bound {
        return Err(precondition("k >= Delta + 4", format!("k = {k}, Delta + 4 = {bound}")));
    }
    let mut c = with_palette(g, coloring_of_j, k)?;
    let cfg = ExtendConfig {
        perturb: false,
        ..ExtendConfig::default()
    };
    let stats = ExtendEngine::new(g, j, j0, cfg).run(&mut c)?;
    Ok((c, stats))
}

/// The bipartite-plus-apex variant: `g - x` is simple and bipartite with
/// sides `(xs, ys)`, every vertex of `xs` has degree below `k`, and
/// `k >= Δ(g)`.
pub fn extend_rainbow_coloring_b(
    g: &Multigraph,
    j: &EdgeSet,
    j0: &EdgeSet,
    coloring_of_j: &PartialEdgeColoring,
    k: usize,
    sides: (&[usize], &[usize]),
    x: usize,
) -> Result<(PartialEdgeColoring, ExtendStats), ColoringError> {
    let center = check_common(g, j, j0, coloring_of_j)?;
    if let Some(cx) = center {
        if cx != x {
            return Err(precondition("J0 shape", format!("J0 star is centered at {cx}, not {x}")));
        }
    }
    let (xs, ys) = sides;
    let n = g.n();
    let mut side = vec![None; n];
    for &v in xs {
        side[v] = Some(false);
    }
    for &v in ys {
        if side[v].is_some() {
            return Err(precondition("bipartition", format!("vertex {v} on both sides")));
        }
        side[v] = Some(true);
    }
    for v in 0..n {
        if v != x && side[v].is_none() {
            return Err(precondition("bipartition", format!("vertex {v} on neither side")));
        }
    }
    if side[x].is_some() {
        return Err(precondition("bipartition", "apex listed on a side"));
    }
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        if a == x || b == x {
            continue;
        }
        if side[a] == side[b] {
            return Err(precondition("G - x bipartite", format!("edge {a}-{b} inside one side")));
        }
        if g.multiplicity(a, b) > 1 {
            return Err(precondition("G - x simple", format!("parallel edges {a}-{b}")));
        }
    }
    let mut jdeg = vec![0usize; n];
    for e in j.iter() {
        let (a, b) = g.endpoints(e);
        if a != x && b != x {
            jdeg[a] += 1;
            jdeg[b] += 1;
        }
    }
    if let Some(v) = (0..n).find(|&v| jdeg[v] > 1) {
        return Err(precondition("Delta(G[J] - x) <= 1", format!("vertex {v} meets {} J edges", jdeg[v])));
    }
    if let Some(&v) = xs.iter().find(|&&v| g.degree(v) >= k) {
        return Err(precondition("X degrees below k", format!("vertex {v} has degree {}", g.degree(v))));
    }
    if k < g.max_degree() {
        return Err(precondition("k >= Delta", format!("k = {k}, Delta = {}", g.max_degree())));
    }
    let mut c = with_palette(g, coloring_of_j, k)?;
    let mut center_side = vec![false; n];
    for &v in ys {
        center_side[v] = true;
    }
    let cfg = ExtendConfig {
        perturb: false,
        center_side: Some(center_side),
        ..ExtendConfig::default()
    };
    let stats = ExtendEngine::new(g, j, j0, cfg).run(&mut c)?;
    Ok((c, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn star_is_returned_unchanged() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap().to_multigraph();
        let j: EdgeSet = g.edge_ids().collect();
        let c0 = PartialEdgeColoring::from_assignment(&g, 4, g.edge_ids().zip(0..)).unwrap();
        let (c, stats) = extend_rainbow_coloring_a(&g, &j, &j, &c0, 8).unwrap();
        assert_eq!(stats.colored, 0);
        for e in g.edge_ids() {
            assert_eq!(c.color(e), c0.color(e));
        }
    }

    #[test]
    fn k5_with_pendant_star() {
        // K_5 on 0..5, apex 5 joined to 5 pendant leaves 6..10 and to nothing else
        let mut g = Graph::complete(5);
        let mut h = Graph::empty(11);
        for (u, v) in g.edges() {
            h.add_edge(u, v).unwrap();
        }
        for leaf in 6..11 {
            h.add_edge(5, leaf).unwrap();
        }
        g = h;
        let mg = g.to_multigraph();
        let j0: EdgeSet = mg.incident(5).iter().copied().collect();
        let c0 = PartialEdgeColoring::from_assignment(&mg, 5, j0.iter().zip(0..)).unwrap();
        let k = g.max_degree() + 4;
        let (c, _) = extend_rainbow_coloring_a(&mg, &j0, &j0, &c0, k).unwrap();
        assert!(c.is_total(&mg));
        assert!(c.is_rainbow(&j0));
        c.check_coherent(&mg).unwrap();
    }

    #[test]
    fn c4_with_apex() {
        // C_4 on 0..4 with sides {0,2} / {1,3}; apex 4 joined to 1 and 3
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 1), (4, 3)])
            .unwrap()
            .to_multigraph();
        let j0: EdgeSet = g.incident(4).iter().copied().collect();
        let c0 = PartialEdgeColoring::from_assignment(&g, 2, j0.iter().zip(0..)).unwrap();
        let k = g.max_degree();
        let (c, _) = extend_rainbow_coloring_b(&g, &j0, &j0, &c0, k, (&[0, 2], &[1, 3]), 4).unwrap();
        assert!(c.is_total(&g));
        assert!(c.is_rainbow(&j0));
    }

    #[test]
    fn names_violated_precondition() {
        let g = Graph::complete(4).to_multigraph();
        let c0 = PartialEdgeColoring::new(&g, 3);
        let err = extend_rainbow_coloring_a(&g, &EdgeSet::new(), &EdgeSet::new(), &c0, 5).unwrap_err();
        assert!(matches!(err, ColoringError::Precondition { name: "k >= Delta + 4", .. }));
    }

    #[test]
    fn total_input_returned_unchanged_b() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().to_multigraph();
        let j: EdgeSet = g.edge_ids().collect();
        let c0 = PartialEdgeColoring::from_assignment(&g, 2, g.edge_ids().zip(0..)).unwrap();
        // apex 1 joined to 0 and 2; G - x has sides {0} and {2}
        let (c, stats) = extend_rainbow_coloring_b(&g, &j, &j, &c0, 2, (&[0], &[2]), 1).unwrap();
        assert_eq!(stats.colored, 0);
        assert_eq!(c, c0);
    }
}
