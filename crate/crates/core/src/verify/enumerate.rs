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

//! Isomorph-free enumeration of small graphs by vertex augmentation.

use std::collections::HashSet;

use crate::graph::{io::emit_graph6, Graph};

/// Stable color refinement; returns a vertex coloring that is invariant
/// under isomorphism (colors are ranks of sorted signatures).
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut col: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = g.neighbors(v).iter().map(|&w| col[w]).collect();
                s.sort_unstable();
                (col[v], s)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect();
        let classes = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
        if classes(&next) == classes(&col) {
            return next;
        }
        col = next;
    }
}

fn code(g: &Graph, order: &[usize]) -> u128 {
    let n = order.len();
    let mut c = 0u128;
    for j in 1..n {
        for i in 0..j {
            c = (c << 1) | g.has_edge(order[i], order[j]) as u128;
        }
    }
    c
}

/// Canonical labeling: `order[p]` is the vertex placed at position `p`.
/// Vertices are grouped by refined color; within groups every permutation
/// is tried and the largest adjacency code wins.
pub fn canonical_form(g: &Graph) -> (Vec<usize>, u128) {
    let n = g.n();
    assert!(n <= 16, "canonical form is limited to 16 vertices");
    let col = refine(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by: Vec<usize> = (0..n).collect();
    by.sort_by_key(|&v| (col[v], v));
    for v in by {
        match cells.last_mut() {
            Some(cell) if col[cell[0]] == col[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);
    fn rec(
        g: &Graph,
        cells: &[Vec<usize>],
        ci: usize,
        used: &mut Vec<bool>,
        order: &mut Vec<usize>,
        best: &mut Option<(u128, Vec<usize>)>,
    ) {
        if ci == cells.len() {
            let c = code(g, order);
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                *best = Some((c, order.clone()));
            }
            return;
        }
        let cell = &cells[ci];
        let placed = order.len();
        let start = cells[..ci].iter().map(Vec::len).sum::<usize>();
        if placed == start + cell.len() {
            rec(g, cells, ci + 1, used, order, best);
            return;
        }
        for &v in cell {
            if !used[v] {
                used[v] = true;
                order.push(v);
                rec(g, cells, ci, used, order, best);
                order.pop();
                used[v] = false;
            }
        }
    }
    rec(g, &cells, 0, &mut vec![false; n], &mut order, &mut best);
    let (c, o) = best.unwrap_or((0, Vec::new()));
    (o, c)
}

/// graph6 string of the canonical relabeling.
pub fn canonical_graph6(g: &Graph) -> String {
    let (order, _) = canonical_form(g);
    let mut pos = vec![0; g.n()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    emit_graph6(&g.permuted(&pos))
}

/// All graphs on exactly `n` vertices up to isomorphism, in canonical form,
/// sorted by canonical code.
pub fn enumerate_graphs(n: usize) -> Vec<Graph> {
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for m in 1..=n {
        let mut seen: HashSet<u128> = HashSet::new();
        let mut next: Vec<(u128, Graph)> = Vec::new();
        for h in &level {
            for mask in 0u32..(1 << (m - 1)) {
                let mut g = Graph::empty(m);
                for (u, v) in h.edges() {
                    g.add_edge(u, v).unwrap();
                }
                for u in 0..m - 1 {
                    if mask >> u & 1 == 1 {
                        g.add_edge(u, m - 1).unwrap();
                    }
                }
                let (order, c) = canonical_form(&g);
                if seen.insert(c) {
                    let mut pos = vec![0; m];
                    for (p, &v) in order.iter().enumerate() {
                        pos[v] = p;
                    }
                    next.push((c, g.permuted(&pos)));
                }
            }
        }
        next.sort_by_key(|(c, _)| *c);
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_small_orders() {
        // OEIS A000088
        let want = [1, 1, 2, 4, 11, 34, 156];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(enumerate_graphs(n).len(), w, "n = {n}");
        }
    }

    #[test]
    fn canonical_form_is_invariant() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let n = rng.gen_range(1..9);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.permuted(&perm);
            assert_eq!(canonical_graph6(&g), canonical_graph6(&h));
        }
    }

    #[test]
    fn c5_complement_same_canonical() {
        let c5 = Graph::cycle(5);
        assert_eq!(canonical_graph6(&c5), canonical_graph6(&crate::graph::complement(&c5)));
    }
}
