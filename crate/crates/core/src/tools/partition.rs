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

//! Bisection respecting partner pairs with every vertex's degree split
//! within `(n/2)^{2/3}`: random split, then greedy repair with restarts.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ToolError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

impl Partition {
    pub fn bound(n: usize) -> f64 {
        (n as f64 / 2.0).powf(2.0 / 3.0)
    }

    pub fn in_a(&self, n: usize) -> Vec<bool> {
        let mut s = vec![false; n];
        for &v in &self.a {
            s[v] = true;
        }
        s
    }

    /// Checks equal sides, one partner of each pair per side and the degree balance.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let n = g.n();
        if self.a.len() != self.b.len() || self.a.len() + self.b.len() != n {
            return Err(format!("sides {} and {} for n = {n}", self.a.len(), self.b.len()));
        }
        let mut side = vec![None; n];
        for (&v, s) in self.a.iter().map(|v| (v, true)).chain(self.b.iter().map(|v| (v, false))) {
            if v >= n || side[v].is_some() {
                return Err(format!("vertex {v} repeated or out of range"));
            }
            side[v] = Some(s);
        }
        if let Some(&(x, y)) = self.pairs.iter().find(|&&(x, y)| side[x] == side[y]) {
            return Err(format!("pair ({x},{y}) on one side"));
        }
        let bound = Self::bound(n);
        for v in 0..n {
            let da = g.neighbors(v).iter().filter(|&&u| side[u] == Some(true)).count();
            let db = g.degree(v) - da;
            if (da as f64 - db as f64).abs() > bound {
                return Err(format!("vertex {v}: |{da} - {db}| > {bound:.3}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PartitionOptions {
    pub restarts: usize,
    pub seed: u64,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions { restarts: 50, seed: 0 }
    }
}

pub fn balanced_partition(g: &Graph, pairs: &[(usize, usize)]) -> Result<Partition, ToolError> {
    balanced_partition_with(g, pairs, &PartitionOptions::default())
}

struct Split<'a> {
    g: &'a Graph,
    in_a: Vec<bool>,
    /// `d_A(v) - d_B(v)`.
    diff: Vec<i64>,
    bound: f64,
}

impl<'a> Split<'a> {
    fn new(g: &'a Graph, in_a: Vec<bool>) -> Self {
        let diff = (0..g.n()).map(|v| g.neighbors(v).iter().map(|&u| if in_a[u] { 1 } else { -1 }).sum()).collect();
        Split { g, in_a, diff, bound: Partition::bound(g.n()) }
    }

    fn excess(&self, d: i64) -> f64 {
        (d.abs() as f64 - self.bound).max(0.0)
    }

    fn score(&self) -> f64 {
        self.diff.iter().map(|&d| self.excess(d)).sum()
    }

    /// Score change if `x` and `y`, on opposite sides, trade places.
    fn delta(&self, x: usize, y: usize, scratch: &mut Vec<i64>) -> f64 {
        let n = self.g.n();
        scratch.clear();
        scratch.resize(n, 0);
        for (v, to_a) in [(x, !self.in_a[x]), (y, !self.in_a[y])] {
            let s = if to_a { 2 } else { -2 };
            for &u in self.g.neighbors(v) {
                scratch[u] += s;
            }
        }
        let mut d = 0.0;
        for u in 0..n {
            if scratch[u] != 0 {
                d += self.excess(self.diff[u] + scratch[u]) - self.excess(self.diff[u]);
            }
        }
        d
    }

    fn swap(&mut self, x: usize, y: usize) {
        for v in [x, y] {
            let to_a = !self.in_a[v];
            self.in_a[v] = to_a;
            let s = if to_a { 2 } else { -2 };
            for &u in self.g.neighbors(v) {
                self.diff[u] += s;
            }
        }
    }
}

pub fn balanced_partition_with(g: &Graph, pairs: &[(usize, usize)], opts: &PartitionOptions) -> Result<Partition, ToolError> {
    let n = g.n();
    if n % 2 == 1 {
        return Err(ToolError::Precondition { name: "even_order", detail: format!("n = {n} is odd") });
    }
    let mut paired = vec![false; n];
    for &(x, y) in pairs {
        if x >= n || y >= n || x == y || paired[x] || paired[y] {
            return Err(ToolError::Precondition { name: "pairs", detail: format!("pair ({x},{y}) invalid or overlapping") });
        }
        paired[x] = true;
        paired[y] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !paired[v]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut scratch = Vec::new();
    for _ in 0..opts.restarts.max(1) {
        let mut in_a = vec![false; n];
        for &(x, y) in pairs {
            in_a[if rng.gen_bool(0.5) { x } else { y }] = true;
        }
        let mut f = free.clone();
        f.shuffle(&mut rng);
        for &v in &f[..f.len() / 2] {
            in_a[v] = true;
        }
        let mut s = Split::new(g, in_a);
        let mut score = s.score();
        while score > 0.0 {
            // candidate trades: every partner pair plus a sample of free cross pairs
            let mut cands: Vec<(usize, usize)> = pairs.to_vec();
            let fa: Vec<usize> = free.iter().copied().filter(|&v| s.in_a[v]).collect();
            let fb: Vec<usize> = free.iter().copied().filter(|&v| !s.in_a[v]).collect();
            if !fa.is_empty() {
                for _ in 0..n {
                    cands.push((fa[rng.gen_range(0..fa.len())], fb[rng.gen_range(0..fb.len())]));
                }
            }
            let best = cands
                .into_iter()
                .map(|(x, y)| (s.delta(x, y, &mut scratch), x, y))
                .min_by(|a, b| a.0.total_cmp(&b.0));
            match best {
                Some((d, x, y)) if d < -1e-9 => {
                    s.swap(x, y);
                    score = s.score();
                }
                _ => break,
            }
        }
        if score <= 0.0 {
            let p = Partition {
                a: (0..n).filter(|&v| s.in_a[v]).collect(),
                b: (0..n).filter(|&v| !s.in_a[v]).collect(),
                pairs: pairs.to_vec(),
            };
            p.validate(g).expect("repaired split is valid");
            return Ok(p);
        }
    }
    Err(ToolError::PartitionFailed { restarts: opts.restarts.max(1) })
}
