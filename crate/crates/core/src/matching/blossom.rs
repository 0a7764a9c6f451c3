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

//! Edmonds' blossom algorithm on an adjacency oracle, with a Tutte–Berge
//! witness extracted from the Gallai–Edmonds decomposition.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::Graph;

const NIL: usize = usize::MAX;

/// Maximum matching with a certificate of optimality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingResult {
    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// The Tutte–Berge set `S`: `|M| = (n + |S| - odd(H - S)) / 2`.
    pub witness: Vec<usize>,
}

impl MatchingResult {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

struct Blossom<'a, F: Fn(usize, usize) -> bool> {
    n: usize,
    adj: &'a F,
    nbrs: Vec<Vec<usize>>,
    mate: Vec<usize>,
    p: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    root: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a, F: Fn(usize, usize) -> bool> Blossom<'a, F> {
    fn new(n: usize, adj: &'a F) -> Self {
        let nbrs = (0..n).map(|v| (0..n).filter(|&u| u != v && adj(v, u)).collect()).collect();
        Blossom {
            n,
            adj,
            nbrs,
            mate: vec![NIL; n],
            p: vec![NIL; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            root: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.root[a] && self.mate[a] == NIL {
                break;
            }
            a = self.p[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.p[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.p[v] = child;
            child = self.mate[v];
            v = self.p[self.mate[v]];
        }
    }

    fn is_outer(&self, v: usize) -> bool {
        (self.root[v] && self.mate[v] == NIL) || (self.mate[v] != NIL && self.p[self.mate[v]] != NIL)
    }

    /// Grows alternating trees from `roots`. Returns the exposed endpoint of
    /// an augmenting path, if one is found.
    fn search(&mut self, roots: &[usize]) -> Option<usize> {
        self.used.fill(false);
        self.p.fill(NIL);
        self.root.fill(false);
        for i in 0..self.n {
            self.base[i] = i;
        }
        self.queue.clear();
        for &r in roots {
            self.used[r] = true;
            self.root[r] = true;
            self.queue.push_back(r);
        }
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.nbrs[v].len() {
                let to = self.nbrs[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if self.is_outer(to) {
                    let cur = self.lca(v, to);
                    self.blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..self.n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.p[to] == NIL {
                    self.p[to] = v;
                    if self.mate[to] == NIL {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NIL {
            let pv = self.p[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn run(&mut self) {
        // greedy start
        for v in 0..self.n {
            if self.mate[v] == NIL {
                if let Some(&u) = self.nbrs[v].iter().find(|&&u| self.mate[u] == NIL) {
                    self.mate[v] = u;
                    self.mate[u] = v;
                }
            }
        }
        for v in 0..self.n {
            if self.mate[v] == NIL {
                if let Some(end) = self.search(&[v]) {
                    self.augment(end);
                }
            }
        }
    }

    /// Gallai–Edmonds: `D` is the set of outer vertices of a forest grown
    /// from every exposed vertex at once; the witness is `N(D) \ D`.
    fn witness(&mut self) -> Vec<usize> {
        let exposed: Vec<usize> = (0..self.n).filter(|&v| self.mate[v] == NIL).collect();
        if exposed.is_empty() {
            return Vec::new();
        }
        let aug = self.search(&exposed);
        debug_assert!(aug.is_none(), "matching is maximum");
        let in_d: Vec<bool> = (0..self.n).map(|v| self.used[v]).collect();
        let mut s: Vec<usize> = (0..self.n)
            .filter(|&v| !in_d[v] && (0..self.n).any(|u| in_d[u] && u != v && (self.adj)(u, v)))
            .collect();
        s.sort_unstable();
        s
    }
}

/// Number of odd components of `H - S` for the adjacency oracle `adj`.
pub fn odd_components<F: Fn(usize, usize) -> bool>(n: usize, adj: &F, removed: &[usize]) -> usize {
    let mut gone = vec![false; n];
    for &v in removed {
        gone[v] = true;
    }
    let mut seen = gone.clone();
    let mut odd = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for u in 0..n {
                if !seen[u] && u != v && adj(v, u) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        odd += size % 2;
    }
    odd
}

/// Maximum matching of the graph on `0..n` whose edges are given by `adj`.
/// The graph is never materialized beyond neighbor lists.
pub fn max_matching_by<F: Fn(usize, usize) -> bool>(n: usize, adj: F) -> MatchingResult {
    let mut b = Blossom::new(n, &adj);
    b.run();
    let witness = b.witness();
    let edges: Vec<(usize, usize)> = (0..n).filter(|&v| b.mate[v] != NIL && v < b.mate[v]).map(|v| (v, b.mate[v])).collect();
    let res = MatchingResult { edges, witness };
    let odd = odd_components(n, &adj, &res.witness);
    assert_eq!(
        2 * res.size(),
        n + res.witness.len() - odd,
        "Tutte–Berge certificate does not match the matching size"
    );
    res
}

pub fn max_matching(g: &Graph) -> MatchingResult {
    max_matching_by(g.n(), |u, v| g.has_edge(u, v))
}

/// Maximum matching of a multigraph (parallel edges are irrelevant).
pub fn max_matching_multi(g: &crate::graph::Multigraph) -> MatchingResult {
    max_matching(&g.underlying_simple())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::brute_max_matching;

    #[test]
    fn small_examples() {
        let r = max_matching(&Graph::cycle(4));
        assert_eq!(r.size(), 2);
        assert!(r.witness.is_empty());
        let star = Graph::complete_bipartite(1, 3);
        let r = max_matching(&star);
        assert_eq!(r.size(), 1);
        assert_eq!(r.witness, vec![0]);
        assert_eq!((4 + 1 - 3) / 2, 1);
        assert_eq!(max_matching(&Graph::complete(3)).size(), 1);
    }

    #[test]
    fn petersen_like_blossoms() {
        // two triangles joined by a path force blossom contraction
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)]).unwrap();
        assert_eq!(max_matching(&g).size(), brute_max_matching(&g).unwrap());
    }

    #[test]
    fn random_against_brute() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let n = rng.gen_range(1..12);
            let p = rng.gen_range(0.1..0.7);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let r = max_matching(&g);
            assert_eq!(r.size(), brute_max_matching(&g).unwrap());
            let mut seen = vec![false; n];
            for &(u, v) in &r.edges {
                assert!(g.has_edge(u, v) && !seen[u] && !seen[v]);
                seen[u] = true;
                seen[v] = true;
            }
        }
    }
}
