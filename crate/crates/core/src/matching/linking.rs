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

//! Spanning vertex-disjoint paths with prescribed endpoints in dense graphs.
//! Short connectors first, then absorption of leftover vertices by insertion
//! between consecutive path vertices, with exchange kicks and restarts.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::MatchingError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkingForest {
    /// `paths[i]` runs from `a_i` to `b_i`.
    pub paths: Vec<Vec<usize>>,
}

impl LinkingForest {
    /// Checks disjointness, spanning, endpoints and edges.
    pub fn validate(&self, g: &Graph, pairs: &[(usize, usize)]) -> Result<(), String> {
        if self.paths.len() != pairs.len() {
            return Err(format!("{} paths for {} pairs", self.paths.len(), pairs.len()));
        }
        let mut seen = vec![false; g.n()];
        for (i, p) in self.paths.iter().enumerate() {
            if p.first() != Some(&pairs[i].0) || p.last() != Some(&pairs[i].1) {
                return Err(format!("path {i} does not join {:?}", pairs[i]));
            }
            for &v in p {
                if v >= g.n() || seen[v] {
                    return Err(format!("vertex {v} repeated or out of range"));
                }
                seen[v] = true;
            }
            if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
                return Err(format!("path {i} uses non-edge ({},{})", w[0], w[1]));
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(v) => Err(format!("vertex {v} uncovered")),
            None => Ok(()),
        }
    }

    /// The path edges, `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))).collect()
    }
}

#[derive(Debug, Clone)]
pub struct LinkOptions {
    /// When set, the density and pair-count hypotheses are enforced for this ε.
    pub eps: Option<f64>,
    pub restarts: usize,
    pub seed: u64,
    /// Backtracking is attempted when `n` is at most this.
    pub exact_limit: usize,
}

impl Default for LinkOptions {
    fn default() -> Self {
        LinkOptions { eps: None, restarts: 30, seed: 0, exact_limit: 12 }
    }
}

pub fn linking_paths(g: &Graph, pairs: &[(usize, usize)]) -> Result<LinkingForest, MatchingError> {
    linking_paths_with(g, pairs, &LinkOptions::default())
}

fn pre(name: &'static str, detail: String) -> MatchingError {
    MatchingError::Precondition { name, detail }
}

pub fn linking_paths_with(g: &Graph, pairs: &[(usize, usize)], opts: &LinkOptions) -> Result<LinkingForest, MatchingError> {
    let n = g.n();
    if pairs.is_empty() {
        return Err(pre("pairs", "at least one pair required".into()));
    }
    let mut endpoint = vec![false; n];
    for &(a, b) in pairs {
        if a >= n || b >= n || a == b || endpoint[a] || endpoint[b] {
            return Err(pre("pairs", format!("pair ({a},{b}) out of range, degenerate or overlapping")));
        }
        endpoint[a] = true;
        endpoint[b] = true;
    }
    if let Some(eps) = opts.eps {
        if (g.min_degree() as f64) < (1.0 + eps) * n as f64 / 2.0 {
            return Err(pre("min_degree", format!("δ = {} < (1+ε)n/2 with ε = {eps}", g.min_degree())));
        }
        if pairs.len() as f64 > eps * n as f64 / 8.0 {
            return Err(pre("pair_count", format!("{} pairs > εn/8 = {}", pairs.len(), eps * n as f64 / 8.0)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.restarts.max(1) {
        if let Some(f) = attempt(g, pairs, &endpoint, &mut rng) {
            f.validate(g, pairs).expect("heuristic output is valid");
            return Ok(f);
        }
    }
    if n <= opts.exact_limit {
        if let Some(f) = exact(g, pairs) {
            f.validate(g, pairs).expect("backtracking output is valid");
            return Ok(f);
        }
    }
    Err(MatchingError::ConstructionFailed { attempts: opts.restarts.max(1) })
}

/// Shortest `a`–`b` path whose interior avoids `blocked`.
fn connector(g: &Graph, a: usize, b: usize, blocked: &[bool], rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    if g.has_edge(a, b) {
        return Some(vec![a, b]);
    }
    let n = g.n();
    let mut prev = vec![usize::MAX; n];
    prev[a] = a;
    let mut frontier = vec![a];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            let mut nb = g.neighbors(u).to_vec();
            nb.shuffle(rng);
            for v in nb {
                if prev[v] != usize::MAX {
                    continue;
                }
                if v == b {
                    let mut path = vec![b, u];
                    let mut w = u;
                    while w != a {
                        w = prev[w];
                        path.push(w);
                    }
                    path.reverse();
                    return Some(path);
                }
                if !blocked[v] {
                    prev[v] = u;
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    None
}

fn try_insert(g: &Graph, paths: &mut [Vec<usize>], v: usize, rng: &mut ChaCha8Rng) -> bool {
    let start = rng.gen_range(0..paths.len());
    for k in 0..paths.len() {
        let p = &mut paths[(start + k) % paths.len()];
        if let Some(j) = (0..p.len() - 1).find(|&j| g.has_edge(p[j], v) && g.has_edge(v, p[j + 1])) {
            p.insert(j + 1, v);
            return true;
        }
    }
    false
}

/// Inserts an adjacent uncovered pair `v, w` between consecutive `p_j, p_{j+1}`.
fn try_insert_pair(g: &Graph, paths: &mut [Vec<usize>], v: usize, free: &[usize]) -> Option<usize> {
    for &w in free {
        if w == v || !g.has_edge(v, w) {
            continue;
        }
        for p in paths.iter_mut() {
            for j in 0..p.len() - 1 {
                let (x, y) = (p[j], p[j + 1]);
                if g.has_edge(x, v) && g.has_edge(w, y) {
                    p.splice(j + 1..j + 1, [v, w]);
                    return Some(w);
                }
                if g.has_edge(x, w) && g.has_edge(v, y) {
                    p.splice(j + 1..j + 1, [w, v]);
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Swaps uncovered `v` with an interior vertex whose path neighbors are both adjacent to `v`.
fn exchange(g: &Graph, paths: &mut [Vec<usize>], v: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
    let mut spots = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        for j in 1..p.len().saturating_sub(1) {
            if g.has_edge(p[j - 1], v) && g.has_edge(v, p[j + 1]) {
                spots.push((i, j));
            }
        }
    }
    let &(i, j) = spots.choose(rng)?;
    Some(std::mem::replace(&mut paths[i][j], v))
}

/// Reverses a segment `p_{i+1}..p_j` when `p_i ~ p_j` and `p_{i+1} ~ p_{j+1}`.
fn two_opt(g: &Graph, paths: &mut [Vec<usize>], rng: &mut ChaCha8Rng) {
    let i = rng.gen_range(0..paths.len());
    let p = &mut paths[i];
    if p.len() < 4 {
        return;
    }
    for _ in 0..p.len() {
        let a = rng.gen_range(0..p.len() - 2);
        let b = rng.gen_range(a + 1..p.len() - 1);
        if g.has_edge(p[a], p[b]) && g.has_edge(p[a + 1], p[b + 1]) {
            p[a + 1..=b].reverse();
            return;
        }
    }
}

fn attempt(g: &Graph, pairs: &[(usize, usize)], endpoint: &[bool], rng: &mut ChaCha8Rng) -> Option<LinkingForest> {
    let n = g.n();
    let mut blocked = endpoint.to_vec();
    let mut paths = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        let p = connector(g, a, b, &blocked, rng)?;
        for &v in &p {
            blocked[v] = true;
        }
        paths.push(p);
    }
    let mut free: Vec<usize> = (0..n).filter(|&v| !blocked[v]).collect();
    let mut kicks = 0;
    let kick_limit = 20 * n + 50;
    while !free.is_empty() {
        free.shuffle(rng);
        let mut progress = false;
        let mut i = 0;
        while i < free.len() {
            let v = free[i];
            if try_insert(g, &mut paths, v, rng) {
                free.swap_remove(i);
                progress = true;
            } else if let Some(w) = try_insert_pair(g, &mut paths, v, &free) {
                free.retain(|&u| u != v && u != w);
                progress = true;
            } else {
                i += 1;
            }
        }
        if progress || free.is_empty() {
            continue;
        }
        kicks += 1;
        if kicks > kick_limit {
            return None;
        }
        let k = rng.gen_range(0..free.len());
        match exchange(g, &mut paths, free[k], rng) {
            Some(y) => free[k] = y,
            None => two_opt(g, &mut paths, rng),
        }
    }
    Some(LinkingForest { paths })
}

/// Depth-first search over extensions of the paths in order.
fn exact(g: &Graph, pairs: &[(usize, usize)]) -> Option<LinkingForest> {
    fn go(g: &Graph, pairs: &[(usize, usize)], used: &mut Vec<bool>, paths: &mut Vec<Vec<usize>>, left: usize) -> bool {
        let i = paths.len() - 1;
        let cur = *paths[i].last().unwrap();
        let target = pairs[i].1;
        if g.has_edge(cur, target) {
            paths[i].push(target);
            if i + 1 == pairs.len() {
                if left == 0 {
                    return true;
                }
            } else {
                paths.push(vec![pairs[i + 1].0]);
                if go(g, pairs, used, paths, left) {
                    return true;
                }
                paths.pop();
            }
            paths[i].pop();
        }
        for &w in g.neighbors(cur) {
            if used[w] {
                continue;
            }
            used[w] = true;
            paths[i].push(w);
            if go(g, pairs, used, paths, left - 1) {
                return true;
            }
            paths[i].pop();
            used[w] = false;
        }
        false
    }
    let mut used = vec![false; g.n()];
    for &(a, b) in pairs {
        used[a] = true;
        used[b] = true;
    }
    let left = used.iter().filter(|&&u| !u).count();
    let mut paths = vec![vec![pairs[0].0]];
    go(g, pairs, &mut used, &mut paths, left).then_some(LinkingForest { paths })
}
