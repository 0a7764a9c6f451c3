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

//! Lowering `Δ` one step at a time by deleting matchings that saturate every
//! vertex outside `V_δ`.

use serde::Serialize;

use super::case2a::alternate_from;
use super::ReductionError;
use crate::graph::{degree_profile, Graph};
use crate::matching::dirac_hamilton_cycle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PeelTerminal {
    /// Regular, or the Case 1 shape with few minimum-degree vertices.
    Case1,
    /// Enough minimum-degree vertices for the forest regularization.
    Case2a,
}

#[derive(Debug, Clone)]
pub struct Case2bOutcome {
    pub graph: Graph,
    pub matchings: Vec<Vec<(usize, usize)>>,
    pub terminal: PeelTerminal,
}

fn terminal(g: &Graph, xi: f64) -> Option<PeelTerminal> {
    let n = g.n();
    let p = degree_profile(g, xi);
    let xin = xi * n as f64;
    if p.is_regular() || ((p.v_min.len() as f64) < xin && (n - p.v_min.len()) % 2 == 1 && !p.has_middle()) {
        Some(PeelTerminal::Case1)
    } else if p.v_min.len() as f64 >= xin {
        Some(PeelTerminal::Case2a)
    } else {
        None
    }
}

pub fn peel_case2b(g: &Graph, eps: f64, xi: f64) -> Result<Case2bOutcome, ReductionError> {
    let n = g.n();
    if g.is_regular() {
        return Err(ReductionError::Precondition { name: "irregular", detail: "graph is regular".into() });
    }
    let p = degree_profile(g, xi);
    if p.v_min.len() as f64 >= xi * n as f64 {
        return Err(ReductionError::Precondition {
            name: "few_min_degree",
            detail: format!("|V_δ| = {} ≥ ξn", p.v_min.len()),
        });
    }
    let delta0 = p.min_degree;
    let floor = (1.0 + eps) * n as f64 / 2.0 - 1e-9;
    let mut cur = g.clone();
    let mut matchings = Vec::new();
    loop {
        if let Some(t) = terminal(&cur, xi) {
            return Ok(Case2bOutcome { graph: cur, matchings, terminal: t });
        }
        let prof = degree_profile(&cur, xi);
        let keep: Vec<usize> = (0..n).filter(|v| !prof.v_min.contains(v)).collect();
        let sub = cur.induced(&keep);
        let cycle = dirac_hamilton_cycle(&sub).map_err(|e| ReductionError::Hypothesis {
            name: "dirac",
            detail: format!("G - V_δ after {} peels: {e}", matchings.len()),
        })?;
        let skip = if keep.len() % 2 == 1 {
            (0..keep.len())
                .find(|&i| cur.degree(keep[i]) < prof.max_degree)
                .ok_or_else(|| ReductionError::Internal("no sub-Δ vertex to leave unsaturated".into()))?
        } else {
            cycle[0]
        };
        let local = if keep.len() % 2 == 1 {
            alternate_from(&cycle, skip)
        } else {
            // even cycle: every vertex is saturated
            let pos = cycle.iter().position(|&v| v == skip).unwrap();
            let mut rot = cycle[pos..].to_vec();
            rot.extend_from_slice(&cycle[..pos]);
            rot.chunks(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect()
        };
        let mut layer: Vec<(usize, usize)> = local.iter().map(|&(a, b)| (keep[a].min(keep[b]), keep[a].max(keep[b]))).collect();
        layer.sort_unstable();
        for &(u, v) in &layer {
            cur.remove_edge(u, v).map_err(|e| ReductionError::Internal(e.to_string()))?;
        }
        if cur.max_degree() + 1 != prof.max_degree {
            return Err(ReductionError::Internal("peel did not lower Δ by one".into()));
        }
        if cur.min_degree() != delta0 {
            return Err(ReductionError::Internal(format!("δ moved from {delta0} to {}", cur.min_degree())));
        }
        if (cur.min_degree() as f64) < floor {
            return Err(ReductionError::Hypothesis { name: "min_degree", detail: format!("δ fell below (1+ε)n/2 = {floor:.2}") });
        }
        matchings.push(layer);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_rejected() {
        assert!(matches!(peel_case2b(&Graph::complete(6), 0.1, 0.3), Err(ReductionError::Precondition { .. })));
    }

    #[test]
    fn one_low_vertex() {
        // K_20 minus a perfect matching, then remove one more edge's worth from
        // a single vertex is impossible; instead delete a 2-factor except at 0
        let n = 20;
        let mut g = Graph::complete(n);
        for v in 1..n {
            let u = if v == n - 1 { 1 } else { v + 1 };
            g.remove_edge(v, u).unwrap();
        }
        for v in 1..n {
            let u = 1 + (v - 1 + 9) % 19;
            if v < u && g.has_edge(v, u) {
                let _ = g.remove_edge(v, u);
            }
        }
        let p = degree_profile(&g, 0.3);
        if p.v_min.len() as f64 >= 0.3 * n as f64 {
            return;
        }
        let out = peel_case2b(&g, 0.05, 0.3).unwrap();
        for m in &out.matchings {
            let mut seen = vec![false; n];
            for &(u, v) in m {
                assert!(!seen[u] && !seen[v]);
                seen[u] = true;
                seen[v] = true;
                assert!(g.has_edge(u, v));
            }
        }
        assert_eq!(out.graph.min_degree(), g.min_degree());
    }
}
