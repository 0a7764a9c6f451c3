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

//! Regularizing a graph with many minimum-degree vertices by deleting
//! spanning linear forests whose path ends are prescribed by a degree-deficit
//! multigraph.

use super::ReductionError;
use crate::chromatics::{equalize, vizing_color};
use crate::graph::{degree_profile, Graph, Multigraph};
use crate::matching::{dirac_hamilton_cycle, linking_paths_with, LinkOptions};
use crate::tools::{hakimi_realize, HakimiOutcome};

#[derive(Debug, Clone)]
pub struct Case2aOutcome {
    /// The regular graph left after all deletions.
    pub graph: Graph,
    /// Near-perfect matching removed first when `Δ` and `n` are both odd.
    pub matching: Option<Vec<(usize, usize)>>,
    /// Deleted linear forests as vertex sequences, one entry per path.
    pub forests: Vec<Vec<Vec<usize>>>,
    /// `Δ` after the optional matching deletion.
    pub delta_prime: usize,
}

impl Case2aOutcome {
    pub fn degree(&self) -> usize {
        self.delta_prime - 2 * self.forests.len()
    }
}

/// Alternate edges of a Hamilton cycle, leaving `skip` unsaturated.
pub(crate) fn alternate_from(cycle: &[usize], skip: usize) -> Vec<(usize, usize)> {
    let len = cycle.len();
    let start = cycle.iter().position(|&v| v == skip).expect("skip lies on the cycle");
    let mut out = Vec::with_capacity(len / 2);
    let mut i = 1;
    while i + 1 < len {
        let (a, b) = (cycle[(start + i) % len], cycle[(start + i + 1) % len]);
        out.push((a.min(b), a.max(b)));
        i += 2;
    }
    out
}

fn link_err(detail: String) -> ReductionError {
    ReductionError::Precondition { name: "linking", detail }
}

pub fn regularize_case2a(g: &Graph, _eps: f64, xi: f64, seed: u64) -> Result<Case2aOutcome, ReductionError> {
    let n = g.n();
    let mut cur = g.clone();
    let mut delta = g.max_degree();
    let mut matching = None;
    if cur.is_regular() {
        return Ok(Case2aOutcome { graph: cur, matching, forests: Vec::new(), delta_prime: delta });
    }
    if delta % 2 == 1 && n % 2 == 1 {
        let cycle = dirac_hamilton_cycle(&cur)?;
        let low = degree_profile(&cur, xi).v_min[0];
        let f = alternate_from(&cycle, low);
        for &(u, v) in &f {
            cur.remove_edge(u, v).map_err(|e| ReductionError::Internal(e.to_string()))?;
        }
        delta -= 1;
        if cur.max_degree() != delta {
            return Err(ReductionError::Internal("matching deletion did not lower Δ".into()));
        }
        matching = Some(f);
    }
    let deficit: Vec<usize> = (0..n).map(|v| delta - cur.degree(v)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deficit[v]), v));
    let sorted: Vec<usize> = order.iter().map(|&v| deficit[v]).collect();
    let l_sorted = match hakimi_realize(&sorted)? {
        HakimiOutcome::Realized(l) => l,
        HakimiOutcome::Infeasible(why) => {
            return Err(ReductionError::Precondition { name: "hakimi", detail: format!("{why:?}") })
        }
    };
    let mut l = Multigraph::new(n);
    for e in l_sorted.edges_sorted() {
        let (a, b) = l_sorted.endpoints(e);
        l.add_edge(order[a], order[b]).expect("loopless");
    }
    let mut forests = Vec::new();
    if l.edge_count() > 0 {
        let base = vizing_color(&l, l.max_degree() + l.mu())?;
        let k0 = ((2.0 * xi * n as f64).ceil() as usize).max(base.colors_used(&l));
        let eq = equalize(&l, &base, k0)?;
        let cap = ((0.5 * xi.sqrt() * n as f64).floor() as usize).max(1);
        let mut chunks: Vec<Vec<(usize, usize)>> = Vec::new();
        for col in 0..k0 {
            let mut class: Vec<_> = l.edge_ids().filter(|&e| eq.color(e) == Some(col)).collect();
            class.sort_by_key(|&e| l.handle(e));
            for part in class.chunks(cap) {
                chunks.push(part.iter().map(|&e| l.endpoints(e)).collect());
            }
        }
        for (i, pairs) in chunks.iter().enumerate() {
            let opts = LinkOptions { seed: seed.wrapping_add(i as u64), ..LinkOptions::default() };
            let forest = linking_paths_with(&cur, pairs, &opts).map_err(|e| link_err(format!("chunk {i}: {e}")))?;
            for (u, v) in forest.edges() {
                cur.remove_edge(u, v).map_err(|e| ReductionError::Internal(e.to_string()))?;
            }
            forests.push(forest.paths);
        }
        for v in 0..n {
            let removed: usize = forests.iter().map(|f| path_degree(f, v)).sum();
            let dl = l.degree(v);
            if removed + dl != 2 * forests.len() {
                return Err(ReductionError::Internal(format!("vertex {v}: removed {removed} + d_L {dl} != 2k")));
            }
        }
    }
    let out = Case2aOutcome { graph: cur, matching, forests, delta_prime: delta };
    if !out.graph.is_regular() || out.graph.max_degree() != out.degree() {
        return Err(ReductionError::Internal(format!(
            "result not {}-regular (degrees {}..{})",
            out.degree(),
            out.graph.min_degree(),
            out.graph.max_degree()
        )));
    }
    Ok(out)
}

fn path_degree(paths: &[Vec<usize>], v: usize) -> usize {
    for p in paths {
        if let Some(i) = p.iter().position(|&w| w == v) {
            return usize::from(i > 0) + usize::from(i + 1 < p.len());
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_is_untouched() {
        let g = Graph::complete(6);
        let out = regularize_case2a(&g, 0.1, 0.2, 0).unwrap();
        assert!(out.forests.is_empty() && out.matching.is_none());
        assert_eq!(out.graph, g);
    }

    #[test]
    fn k7_minus_edge() {
        let mut g = Graph::complete(7);
        g.remove_edge(0, 1).unwrap();
        let out = regularize_case2a(&g, 0.1, 0.2, 0).unwrap();
        assert!(out.matching.is_none());
        assert_eq!(out.forests.len(), 1);
        // a Hamilton path from 0 to 1
        let p = &out.forests[0][0];
        assert_eq!((p[0], p[6]), (0, 1));
        assert!(out.graph.is_regular());
        assert_eq!(out.graph.max_degree(), 4);
    }

    #[test]
    fn odd_odd_peels_matching() {
        // K_9 minus a perfect-ish matching of 3 edges: Δ = 8 even; use K_9 minus
        // a Hamilton cycle (6-regular) then add back one edge: Δ = 7 odd, n = 9
        let mut g = Graph::complete(9);
        for v in 0..9 {
            g.remove_edge(v, (v + 1) % 9).unwrap();
        }
        for v in 0..9 {
            let u = (v + 4) % 9;
            if g.has_edge(v, u) && v < 4 {
                g.remove_edge(v, u).unwrap();
            }
        }
        g.add_edge(0, 1).unwrap();
        if g.max_degree() % 2 == 0 {
            return;
        }
        let out = regularize_case2a(&g, 0.1, 0.2, 1).unwrap();
        assert!(out.matching.is_some());
        assert!(out.graph.is_regular());
    }

    #[test]
    fn alternate_skips_one() {
        let f = alternate_from(&[3, 0, 4, 1, 2], 4);
        assert_eq!(f, vec![(1, 2), (0, 3)]);
    }
}
