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

use serde::Serialize;

use super::ReductionError;
use crate::chromatics::PartialEdgeColoring;
use crate::graph::{EdgeId, EdgeSet, Graph, Multigraph};
use crate::verify::{validate_good, validate_total, TotalColoring};

/// `G` together with the new vertex `x = n`, a matching `M` of the
/// complement, and the edges from `x` to every vertex `M` misses.
#[derive(Debug, Clone)]
pub struct AugmentedGraph {
    pub base: Graph,
    pub x: usize,
    /// Matching edges as `(u, v)` with `u < v`.
    pub matching: Vec<(usize, usize)>,
    /// Vertices of `G` joined to `x`.
    pub ex: Vec<usize>,
    pub combined: Multigraph,
    pub m_ids: EdgeSet,
    pub ex_ids: EdgeSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct AugmentedSummary {
    pub n: usize,
    pub matching_size: usize,
    pub x_degree: usize,
}

impl AugmentedGraph {
    /// `M ∪ E(x)`, the edges that must receive distinct colors.
    pub fn special(&self) -> EdgeSet {
        let mut s = self.m_ids.clone();
        s.extend(self.ex_ids.iter());
        s
    }

    pub fn is_special(&self, e: EdgeId) -> bool {
        self.m_ids.contains(e) || self.ex_ids.contains(e)
    }

    /// The edge of `M ∪ E(x)` covering `v ∈ V(G)`.
    pub fn special_at(&self, v: usize) -> EdgeId {
        *self
            .combined
            .incident(v)
            .iter()
            .find(|&&e| self.is_special(e))
            .expect("every vertex of G is covered by M or E(x)")
    }

    pub fn summary(&self) -> AugmentedSummary {
        AugmentedSummary {
            n: self.base.n(),
            matching_size: self.matching.len(),
            x_degree: self.ex.len(),
        }
    }
}

/// Builds `G^M`. Base edges come first, then `M`, then `E(x)`, each in
/// lexicographic order.
pub fn build_augmented(g: &Graph, matching: &[(usize, usize)]) -> Result<AugmentedGraph, ReductionError> {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut m = Vec::with_capacity(matching.len());
    for &(a, b) in matching {
        let (u, v) = (a.min(b), a.max(b));
        if v >= n || u == v {
            return Err(ReductionError::BadMatching(format!("pair {a}-{b} is not a vertex pair of G")));
        }
        if g.has_edge(u, v) {
            return Err(ReductionError::BadMatching(format!("{u}-{v} is an edge of G, not of its complement")));
        }
        if covered[u] || covered[v] {
            return Err(ReductionError::BadMatching(format!("{u}-{v} shares a vertex with another matching edge")));
        }
        covered[u] = true;
        covered[v] = true;
        m.push((u, v));
    }
    m.sort_unstable();
    let x = n;
    let mut combined = Multigraph::new(n + 1);
    for (u, v) in g.edges() {
        combined.add_edge(u, v).expect("simple edge");
    }
    let mut m_ids = EdgeSet::new();
    for &(u, v) in &m {
        m_ids.insert(combined.add_edge(u, v).expect("complement edge"));
    }
    let ex: Vec<usize> = (0..n).filter(|&v| !covered[v]).collect();
    let mut ex_ids = EdgeSet::new();
    for &v in &ex {
        ex_ids.insert(combined.add_edge(v, x).expect("apex edge"));
    }
    Ok(AugmentedGraph {
        base: g.clone(),
        x,
        matching: m,
        ex,
        combined,
        m_ids,
        ex_ids,
    })
}

/// Reads a total coloring of `G` off a good coloring of `G^M`: each vertex
/// takes the color of its `M ∪ E(x)` edge. Colors are compacted to
/// `0..used` first so the palette is exactly the set of used colors.
pub fn good_coloring_to_total(ag: &AugmentedGraph, c: &PartialEdgeColoring) -> Result<TotalColoring, ReductionError> {
    validate_good(ag, c).map_err(ReductionError::NotGood)?;
    let g = &ag.combined;
    let mut used: Vec<bool> = vec![false; c.k()];
    for e in g.edge_ids() {
        used[c.color(e).expect("validated total")] = true;
    }
    let mut rename = vec![usize::MAX; c.k()];
    let mut next = 0;
    for (col, &u) in used.iter().enumerate() {
        if u {
            rename[col] = next;
            next += 1;
        }
    }
    let n = ag.base.n();
    let mut tc = TotalColoring::new(n, next);
    for v in 0..n {
        tc.vertex_color[v] = Some(rename[c.color(ag.special_at(v)).unwrap()]);
    }
    for e in g.edge_ids() {
        if ag.is_special(e) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        tc.edge_color.insert((u, v), rename[c.color(e).unwrap()]);
    }
    validate_total(&ag.base, &tc).map_err(|v| ReductionError::Internal(format!("derived total coloring invalid: {v}")))?;
    Ok(tc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{brute_good_coloring, brute_total_chromatic};

    #[test]
    fn c4_with_diagonal() {
        let g = Graph::cycle(4);
        let ag = build_augmented(&g, &[(0, 2)]).unwrap();
        assert_eq!(ag.combined.n(), 5);
        assert_eq!(ag.ex, vec![1, 3]);
        assert_eq!(ag.combined.degree(ag.x), 2);
        let c = brute_good_coloring(&ag).unwrap().expect("C_4 has a good coloring");
        let tc = good_coloring_to_total(&ag, &c).unwrap();
        assert!(tc.colors_used() <= g.max_degree() + 2);
        assert_eq!(tc.colors_used(), brute_total_chromatic(&g).unwrap());
    }

    #[test]
    fn k4_empty_matching_gives_k5() {
        let ag = build_augmented(&Graph::complete(4), &[]).unwrap();
        let h = ag.combined.underlying_simple();
        assert_eq!(h, Graph::complete(5));
    }

    #[test]
    fn perfect_matching_isolates_x() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let ag = build_augmented(&g, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(ag.combined.degree(ag.x), 0);
    }

    #[test]
    fn k2_total_three_colors() {
        let g = Graph::complete(2);
        let ag = build_augmented(&g, &[]).unwrap();
        let c = brute_good_coloring(&ag).unwrap().unwrap();
        let tc = good_coloring_to_total(&ag, &c).unwrap();
        assert_eq!(tc.colors_used(), 3);
        assert_eq!(brute_total_chromatic(&g).unwrap(), 3);
    }

    #[test]
    fn rejects_bad_matchings() {
        let g = Graph::path(4);
        assert!(build_augmented(&g, &[(0, 1)]).is_err());
        assert!(build_augmented(&g, &[(0, 2), (0, 3)]).is_err());
        assert!(build_augmented(&g, &[(0, 9)]).is_err());
    }
}
