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

//! Case analysis: pick the complement matching `M` and decide which
//! hypotheses of the main coloring construction `(G, M)` meets.

use serde::Serialize;

use super::ReductionError;
use crate::graph::{degree_profile, Graph};
use crate::matching::{complement_matching, max_matching_by};
use crate::tools::equitable_vertex_coloring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseKind {
    /// `|M| = ⌊n/2 - 0.1εn⌋` and `G` regular, or few minimum-degree
    /// vertices, odd `n - |V_δ|` and no middle degrees.
    Case1,
    /// `|M| ∈ {⌊n/2 - 0.1εn⌋, n-1-Δ}` and `|U_ξ| ≥ ξn`.
    Case2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub n: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub u_xi: usize,
    pub v_delta: usize,
    pub middle: usize,
    pub regular: bool,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseAssignment {
    pub which: CaseKind,
    pub matching: Vec<(usize, usize)>,
    pub eps: f64,
    pub xi: f64,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Plan {
    Direct(CaseAssignment),
    /// Many minimum-degree vertices: regularize, then the regular graph is Case 1.
    Case2a { matching: Vec<(usize, usize)>, diagnostics: Diagnostics },
    /// Few minimum-degree vertices: peel matchings until a terminal graph.
    Case2b { matching: Vec<(usize, usize)>, diagnostics: Diagnostics },
}

impl Plan {
    pub fn matching(&self) -> &[(usize, usize)] {
        match self {
            Plan::Direct(a) => &a.matching,
            Plan::Case2a { matching, .. } | Plan::Case2b { matching, .. } => matching,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Plan::Direct(CaseAssignment { which: CaseKind::Case1, .. }) => "case1",
            Plan::Direct(CaseAssignment { which: CaseKind::Case2, .. }) => "case2",
            Plan::Case2a { .. } => "case2a",
            Plan::Case2b { .. } => "case2b",
        }
    }
}

/// `⌊n/2 - 0.1εn⌋`, the matching size both cases ask for first.
pub fn target_size(n: usize, eps: f64) -> usize {
    let t = n as f64 / 2.0 - 0.1 * eps * n as f64;
    t.max(0.0).floor() as usize
}

pub fn diagnostics(g: &Graph, eps: f64, xi: f64) -> Diagnostics {
    let p = degree_profile(g, xi);
    Diagnostics {
        n: g.n(),
        min_degree: p.min_degree,
        max_degree: p.max_degree,
        u_xi: p.u_xi.len(),
        v_delta: p.v_min.len(),
        middle: p.middle.len(),
        regular: p.is_regular(),
        target: target_size(g.n(), eps),
    }
}

/// Checks `δ ≥ (1+ε)n/2` and `Δ < 3n/4`.
pub fn check_hypotheses(g: &Graph, eps: f64) -> Result<(), ReductionError> {
    let n = g.n();
    if n == 0 {
        return Err(ReductionError::Hypothesis { name: "order", detail: "empty graph".into() });
    }
    let need = (1.0 + eps) * n as f64 / 2.0 - 1e-9;
    if (g.min_degree() as f64) < need {
        return Err(ReductionError::Hypothesis {
            name: "min_degree",
            detail: format!("δ = {} < (1+ε)n/2 = {need:.2}", g.min_degree()),
        });
    }
    if 4 * g.max_degree() >= 3 * n {
        return Err(ReductionError::OutOfScope(format!(
            "Δ = {} ≥ 3n/4 = {:.2}; this range is settled by the Hilton–Hind theorem",
            g.max_degree(),
            0.75 * n as f64
        )));
    }
    Ok(())
}

/// The `n - 1 - Δ` pairs of size-two classes of an equitable `(Δ+1)`-coloring.
fn equitable_pairs(g: &Graph) -> Result<Vec<(usize, usize)>, ReductionError> {
    let k = g.max_degree() + 1;
    let color = equitable_vertex_coloring(g, k)?;
    let mut classes = vec![Vec::new(); k];
    for (v, &c) in color.iter().enumerate() {
        classes[c].push(v);
    }
    let mut pairs: Vec<(usize, usize)> = classes.iter().filter(|c| c.len() == 2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
    pairs.sort_unstable();
    let want = g.n() - 1 - g.max_degree();
    if pairs.len() != want {
        return Err(ReductionError::Internal(format!("equitable coloring gave {} pairs, expected {want}", pairs.len())));
    }
    Ok(pairs)
}

pub fn classify_and_pick_matching(g: &Graph, eps: f64, xi: f64) -> Result<Plan, ReductionError> {
    check_hypotheses(g, eps)?;
    let n = g.n();
    let d = diagnostics(g, eps, xi);
    let xin = xi * n as f64;
    let target = d.target;
    let full = max_matching_by(n, |u, v| !g.has_edge(u, v));
    if (d.u_xi as f64) >= xin {
        let matching = if full.size() >= target {
            full.edges[..target].to_vec()
        } else {
            equitable_pairs(g)?
        };
        return Ok(Plan::Direct(CaseAssignment { which: CaseKind::Case2, matching, eps, xi, diagnostics: d }));
    }
    let cm = complement_matching(g, xi, target)?;
    if cm.shortfall {
        return Err(ReductionError::Precondition {
            name: "complement_matching",
            detail: format!("maximum complement matching {} < target {target}", cm.edges.len()),
        });
    }
    let matching = cm.edges;
    let v_delta = d.v_delta as f64;
    if d.regular || (v_delta < xin && (n - d.v_delta) % 2 == 1 && d.middle == 0) {
        return Ok(Plan::Direct(CaseAssignment { which: CaseKind::Case1, matching, eps, xi, diagnostics: d }));
    }
    if v_delta >= xin {
        Ok(Plan::Case2a { matching, diagnostics: d })
    } else {
        Ok(Plan::Case2b { matching, diagnostics: d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complement;

    fn circulant(n: usize, jumps: &[usize]) -> Graph {
        let mut g = Graph::empty(n);
        for v in 0..n {
            for &j in jumps {
                let u = (v + j) % n;
                if !g.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn regular_is_case1() {
        // 12-regular on 20 vertices: complement of a 7-regular circulant
        let g = complement(&circulant(20, &[1, 2, 3, 10]));
        assert!(g.is_regular());
        let plan = classify_and_pick_matching(&g, 0.1, 0.001).unwrap();
        match plan {
            Plan::Direct(a) => {
                assert_eq!(a.which, CaseKind::Case1);
                assert_eq!(a.matching.len(), target_size(20, 0.1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn irregular_small_xi_is_case2() {
        let mut g = complement(&circulant(20, &[1, 2, 3, 10]));
        g.remove_edge(0, g.neighbors(0)[0]).unwrap();
        let plan = classify_and_pick_matching(&g, 0.1, 0.001).unwrap();
        assert_eq!(plan.label(), "case2");
        assert_eq!(plan.matching().len(), target_size(20, 0.1));
    }

    #[test]
    fn equitable_fallback_size() {
        // K_n minus a triangle: complement has only a triangle, so ν = 1
        let mut g = Graph::complete(8);
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            g.remove_edge(u, v).unwrap();
        }
        let pairs = equitable_pairs(&g).unwrap();
        assert_eq!(pairs.len(), 8 - 1 - g.max_degree());
    }

    #[test]
    fn hypotheses() {
        assert!(matches!(check_hypotheses(&Graph::complete(4), 0.1), Err(ReductionError::OutOfScope(_))));
        assert!(matches!(check_hypotheses(&Graph::cycle(8), 0.1), Err(ReductionError::Hypothesis { .. })));
    }
}
