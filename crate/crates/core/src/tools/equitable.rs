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

//! Equitable vertex coloring with `k ≥ Δ+1` colors.
//!
//! When `2k ≥ n` every class has size at most two and the coloring is a
//! matching of the complement of size `n - k`, found exactly by blossom.
//! Otherwise a greedy start is balanced by moving vertices along paths in the
//! class-accessibility digraph, with conflict-free swaps to escape plateaus.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ToolError;
use crate::graph::Graph;
use crate::matching::max_matching_by;

pub fn is_equitable(g: &Graph, k: usize, color: &[usize]) -> bool {
    if color.len() != g.n() || color.iter().any(|&c| c >= k) || g.edges().any(|(u, v)| color[u] == color[v]) {
        return false;
    }
    let sizes = class_sizes(k, color);
    sizes.iter().max().copied().unwrap_or(0) <= sizes.iter().min().copied().unwrap_or(0) + 1
}

fn class_sizes(k: usize, color: &[usize]) -> Vec<usize> {
    let mut s = vec![0; k];
    for &c in color {
        s[c] += 1;
    }
    s
}

pub fn equitable_vertex_coloring(g: &Graph, k: usize) -> Result<Vec<usize>, ToolError> {
    let n = g.n();
    if k <= g.max_degree() || k == 0 {
        return Err(ToolError::Precondition {
            name: "palette",
            detail: format!("k = {k} ≤ Δ = {}", g.max_degree()),
        });
    }
    let color = if 2 * k >= n { via_matching(g, k) } else { by_balancing(g, k) }.ok_or(ToolError::EquitableFailed)?;
    assert!(is_equitable(g, k, &color), "equitable coloring failed validation");
    Ok(color)
}

fn via_matching(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let need = n.saturating_sub(k);
    let m = max_matching_by(n, |u, v| !g.has_edge(u, v));
    if m.size() < need {
        return None;
    }
    let mut color = vec![usize::MAX; n];
    for (c, &(u, v)) in m.edges.iter().take(need).enumerate() {
        color[u] = c;
        color[v] = c;
    }
    let mut next = need;
    for c in color.iter_mut().filter(|c| **c == usize::MAX) {
        *c = next;
        next += 1;
    }
    Some(color)
}

struct State<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// `conflicts[v][c]`: neighbors of `v` in class `c`.
    conflicts: Vec<Vec<usize>>,
    sizes: Vec<usize>,
}

impl<'a> State<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        let n = g.n();
        State { g, k, color: vec![usize::MAX; n], conflicts: vec![vec![0; k]; n], sizes: vec![0; k] }
    }

    fn place(&mut self, v: usize, c: usize) {
        let old = self.color[v];
        if old != usize::MAX {
            self.sizes[old] -= 1;
            for &u in self.g.neighbors(v) {
                self.conflicts[u][old] -= 1;
            }
        }
        self.color[v] = c;
        self.sizes[c] += 1;
        for &u in self.g.neighbors(v) {
            self.conflicts[u][c] += 1;
        }
    }

    fn spread(&self) -> usize {
        self.sizes.iter().max().unwrap() - self.sizes.iter().min().unwrap()
    }

    /// Moves one vertex out of a largest class along an accessibility path
    /// ending in a smallest class.
    fn shift(&mut self) -> bool {
        let (lo, hi) = (*self.sizes.iter().min().unwrap(), *self.sizes.iter().max().unwrap());
        // BFS backwards from the small classes: prev[X] = (vertex, target class)
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.k];
        let mut reached = vec![false; self.k];
        let mut queue = VecDeque::new();
        for c in 0..self.k {
            if self.sizes[c] == lo {
                reached[c] = true;
                queue.push_back(c);
            }
        }
        let n = self.g.n();
        while let Some(y) = queue.pop_front() {
            for v in 0..n {
                let x = self.color[v];
                if !reached[x] && self.conflicts[v][y] == 0 {
                    reached[x] = true;
                    via[x] = Some((v, y));
                    if self.sizes[x] == hi {
                        let mut cur = x;
                        while let Some((w, to)) = via[cur] {
                            self.place(w, to);
                            cur = to;
                        }
                        return true;
                    }
                    queue.push_back(x);
                }
            }
        }
        false
    }

    /// Swaps `v ∈ X` and `w ∈ Y` when each only conflicts with the other.
    fn random_swap(&mut self, rng: &mut ChaCha8Rng) -> bool {
        let n = self.g.n();
        for _ in 0..4 * n {
            let v = rng.gen_range(0..n);
            let y = rng.gen_range(0..self.k);
            let x = self.color[v];
            if x == y {
                continue;
            }
            let cands: Vec<usize> = (0..n)
                .filter(|&w| self.color[w] == y)
                .filter(|&w| {
                    let adj = self.g.has_edge(v, w) as usize;
                    self.conflicts[v][y] == adj && self.conflicts[w][x] == adj
                })
                .collect();
            if cands.is_empty() {
                continue;
            }
            let w = cands[rng.gen_range(0..cands.len())];
            self.place(v, y);
            self.place(w, x);
            return true;
        }
        false
    }
}

fn by_balancing(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut st = State::new(g, k);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for v in order {
        let c = (0..k).filter(|&c| st.conflicts[v][c] == 0).min_by_key(|&c| st.sizes[c]).expect("k > Δ");
        st.place(v, c);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut kicks = 0;
    while st.spread() > 1 {
        if st.shift() {
            continue;
        }
        kicks += 1;
        if kicks > 200 * n || !st.random_swap(&mut rng) {
            return None;
        }
    }
    Some(st.color)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_sizes(k: usize, c: &[usize]) -> Vec<usize> {
        let mut s = class_sizes(k, c);
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    #[test]
    fn examples() {
        let c = equitable_vertex_coloring(&Graph::complete(4), 4).unwrap();
        assert_eq!(sorted_sizes(4, &c), vec![1, 1, 1, 1]);
        let c = equitable_vertex_coloring(&Graph::cycle(5), 3).unwrap();
        assert_eq!(sorted_sizes(3, &c), vec![2, 2, 1]);
        let c = equitable_vertex_coloring(&Graph::empty(5), 2).unwrap();
        assert_eq!(sorted_sizes(2, &c), vec![3, 2]);
        assert!(equitable_vertex_coloring(&Graph::complete(4), 3).is_err());
    }

    #[test]
    fn random_both_regimes() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let n = rng.gen_range(1..60);
            let p = rng.gen_range(0.02..0.9);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let k = g.max_degree() + 1 + rng.gen_range(0..3);
            let c = equitable_vertex_coloring(&g, k).unwrap();
            assert!(is_equitable(&g, k, &c));
        }
    }
}
