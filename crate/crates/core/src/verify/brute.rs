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

//! Exact backtracking oracles on conflict graphs.
//!
//! Each problem is turned into vertex coloring of a conflict graph (the
//! total graph, the line graph, ...) and solved by DSatur-ordered
//! backtracking where an element may only open the smallest unused color.

use thiserror::Error;

use super::TotalColoring;
use crate::chromatics::PartialEdgeColoring;
use crate::graph::{EdgeId, Graph, Multigraph};
use crate::reduction::AugmentedGraph;

/// Default vertex-count guard for exact oracles.
pub const GUARD_N: usize = 8;

const NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance on {n} vertices exceeds the oracle guard of {guard}")]
    TooLarge { n: usize, guard: usize },
    #[error("search budget of {0} nodes exhausted")]
    Budget(u64),
}

struct Search<'a> {
    nbrs: &'a [Vec<usize>],
    k: usize,
    color: Vec<usize>,
    // forbidden[e][c] counts colored neighbors of e with color c
    forbidden: Vec<Vec<u16>>,
    sat: Vec<usize>,
    nodes: u64,
}

const NONE: usize = usize::MAX;

impl Search<'_> {
    fn assign(&mut self, e: usize, c: usize) {
        self.color[e] = c;
        for &f in &self.nbrs[e] {
            if self.forbidden[f][c] == 0 {
                self.sat[f] += 1;
            }
            self.forbidden[f][c] += 1;
        }
    }

    fn unassign(&mut self, e: usize, c: usize) {
        self.color[e] = NONE;
        for &f in &self.nbrs[e] {
            self.forbidden[f][c] -= 1;
            if self.forbidden[f][c] == 0 {
                self.sat[f] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.color.len())
            .filter(|&e| self.color[e] == NONE)
            .max_by_key(|&e| (self.sat[e], self.nbrs[e].len(), std::cmp::Reverse(e)))
    }

    fn go(&mut self, used: usize) -> Result<bool, OracleError> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(OracleError::Budget(NODE_BUDGET));
        }
        let Some(e) = self.pick() else { return Ok(true) };
        if self.sat[e] >= self.k {
            return Ok(false);
        }
        // colors above `used` are interchangeable, so only the first is tried
        let top = (used + 1).min(self.k);
        for c in 0..top {
            if self.forbidden[e][c] == 0 {
                self.assign(e, c);
                if self.go(used.max(c + 1))? {
                    return Ok(true);
                }
                self.unassign(e, c);
            }
        }
        Ok(false)
    }
}

/// A proper `k`-coloring of the conflict graph, if one exists.
fn color_conflicts(nbrs: &[Vec<usize>], k: usize) -> Result<Option<Vec<usize>>, OracleError> {
    let m = nbrs.len();
    let mut s = Search {
        nbrs,
        k,
        color: vec![NONE; m],
        forbidden: vec![vec![0; k]; m],
        sat: vec![0; m],
        nodes: 0,
    };
    Ok(s.go(0)?.then_some(s.color))
}

fn chromatic(nbrs: &[Vec<usize>], lower: usize) -> Result<(usize, Vec<usize>), OracleError> {
    let mut k = lower;
    loop {
        if let Some(col) = color_conflicts(nbrs, k)? {
            return Ok((k, col));
        }
        k += 1;
    }
}

fn guard(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { n, guard: limit })
    } else {
        Ok(())
    }
}

/// Elements `0..n` are vertices, `n..n+m` edges in `g.edges()` order.
fn total_conflicts(g: &Graph) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let n = g.n();
    let edges: Vec<_> = g.edges().collect();
    let mut nbrs = vec![Vec::new(); n + edges.len()];
    let link = |a: usize, b: usize, nb: &mut Vec<Vec<usize>>| {
        nb[a].push(b);
        nb[b].push(a);
    };
    for (i, &(u, v)) in edges.iter().enumerate() {
        link(u, v, &mut nbrs);
        link(u, n + i, &mut nbrs);
        link(v, n + i, &mut nbrs);
        for (j, &(a, b)) in edges.iter().enumerate().skip(i + 1) {
            if a == u || a == v || b == u || b == v {
                link(n + i, n + j, &mut nbrs);
            }
        }
    }
    (nbrs, edges)
}

/// Exact total chromatic number for graphs within the guard.
pub fn brute_total_chromatic(g: &Graph) -> Result<usize, OracleError> {
    guard(g.n(), GUARD_N)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let (nbrs, _) = total_conflicts(g);
    Ok(chromatic(&nbrs, g.max_degree() + 1)?.0)
}

/// A total coloring with at most `k` colors, if one exists.
pub fn brute_total_coloring(g: &Graph, k: usize) -> Result<Option<TotalColoring>, OracleError> {
    guard(g.n(), 12)?;
    let (nbrs, edges) = total_conflicts(g);
    let n = g.n();
    Ok(color_conflicts(&nbrs, k)?.map(|col| {
        let mut tc = TotalColoring::new(n, k);
        for v in 0..n {
            tc.vertex_color[v] = Some(col[v]);
        }
        for (i, &e) in edges.iter().enumerate() {
            tc.edge_color.insert(e, col[n + i]);
        }
        tc
    }))
}

fn line_conflicts(g: &Multigraph, ids: &[EdgeId]) -> Vec<Vec<usize>> {
    let mut nbrs = vec![Vec::new(); ids.len()];
    for i in 0..ids.len() {
        let (a, b) = g.endpoints(ids[i]);
        for j in i + 1..ids.len() {
            let (c, d) = g.endpoints(ids[j]);
            if a == c || a == d || b == c || b == d {
                nbrs[i].push(j);
                nbrs[j].push(i);
            }
        }
    }
    nbrs
}

/// Exact chromatic index of a multigraph within the guard.
pub fn brute_chromatic_index(g: &Multigraph) -> Result<usize, OracleError> {
    guard(g.n(), GUARD_N)?;
    let ids = g.edges_sorted();
    Ok(chromatic(&line_conflicts(g, &ids), g.max_degree())?.0)
}

/// A proper `k`-edge-coloring, if one exists.
pub fn brute_edge_coloring(g: &Multigraph, k: usize) -> Result<Option<PartialEdgeColoring>, OracleError> {
    guard(g.n(), 13)?;
    let ids = g.edges_sorted();
    Ok(color_conflicts(&line_conflicts(g, &ids), k)?.map(|col| {
        PartialEdgeColoring::from_assignment(g, k, ids.iter().copied().zip(col)).expect("oracle coloring is proper")
    }))
}

/// A good coloring of `G^M` with `Δ(G) + 2` colors, found by backtracking.
/// Special edges conflict pairwise, which encodes the rainbow condition.
pub fn brute_good_coloring(ag: &AugmentedGraph) -> Result<Option<PartialEdgeColoring>, OracleError> {
    guard(ag.base.n(), 12)?;
    let g = &ag.combined;
    let ids = g.edges_sorted();
    let mut nbrs = line_conflicts(g, &ids);
    let special: Vec<usize> = (0..ids.len()).filter(|&i| ag.is_special(ids[i])).collect();
    for (a, &i) in special.iter().enumerate() {
        for &j in &special[a + 1..] {
            if !nbrs[i].contains(&j) {
                nbrs[i].push(j);
                nbrs[j].push(i);
            }
        }
    }
    let k = ag.base.max_degree() + 2;
    Ok(color_conflicts(&nbrs, k)?.map(|col| {
        PartialEdgeColoring::from_assignment(g, k, ids.iter().copied().zip(col)).expect("oracle coloring is proper")
    }))
}

/// Maximum matching size by exhaustive branching on the lowest free vertex.
pub fn brute_max_matching(g: &Graph) -> Result<usize, OracleError> {
    guard(g.n(), 14)?;
    fn go(g: &Graph, used: &mut Vec<bool>, from: usize) -> usize {
        let n = g.n();
        let Some(v) = (from..n).find(|&v| !used[v]) else { return 0 };
        used[v] = true;
        let mut best = go(g, used, v + 1);
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                best = best.max(1 + go(g, used, v + 1));
                used[w] = false;
            }
        }
        used[v] = false;
        best
    }
    Ok(go(g, &mut vec![false; g.n()], 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_chromatic_small() {
        assert_eq!(brute_total_chromatic(&Graph::empty(1)).unwrap(), 1);
        assert_eq!(brute_total_chromatic(&Graph::complete(2)).unwrap(), 3);
        assert_eq!(brute_total_chromatic(&Graph::cycle(4)).unwrap(), 4);
        assert_eq!(brute_total_chromatic(&Graph::complete(4)).unwrap(), 5);
        assert_eq!(brute_total_chromatic(&Graph::cycle(6)).unwrap(), 3);
        // cross-check: C_n has total chromatic number 3 iff 3 | n
        for n in 3..9 {
            let want = if n % 3 == 0 { 3 } else { 4 };
            assert_eq!(brute_total_chromatic(&Graph::cycle(n)).unwrap(), want);
        }
    }

    #[test]
    fn chromatic_index_small() {
        assert_eq!(brute_chromatic_index(&Graph::complete(3).to_multigraph()).unwrap(), 3);
        assert_eq!(brute_chromatic_index(&Graph::cycle(6).to_multigraph()).unwrap(), 2);
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 1).unwrap();
        assert_eq!(brute_chromatic_index(&g).unwrap(), 2);
        // Petersen-free cross-check: K_n has chromatic index n-1 (n even), n (n odd)
        for n in 2..8 {
            let want = if n % 2 == 0 { n - 1 } else { n };
            assert_eq!(brute_chromatic_index(&Graph::complete(n).to_multigraph()).unwrap(), want);
        }
    }

    #[test]
    fn matching_small() {
        assert_eq!(brute_max_matching(&Graph::cycle(4)).unwrap(), 2);
        assert_eq!(brute_max_matching(&Graph::complete_bipartite(1, 3)).unwrap(), 1);
        assert_eq!(brute_max_matching(&Graph::complete(3)).unwrap(), 1);
    }

    #[test]
    fn guard_enforced() {
        assert_eq!(
            brute_total_chromatic(&Graph::empty(9)),
            Err(OracleError::TooLarge { n: 9, guard: 8 })
        );
    }
}
