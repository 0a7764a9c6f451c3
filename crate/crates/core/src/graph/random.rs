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


//! Seeded random graphs for sweeps and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;

/// `G(n, p)` from `rng`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// A `G(n, p)` sample with `δ ≥ min_ratio · n` and `Δ < 3n/4`, drawn by
/// rejection. `None` after `tries` rejected samples.
pub fn random_dense(n: usize, p: f64, min_ratio: f64, seed: u64, tries: usize) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let need = (min_ratio * n as f64 - 1e-9).ceil() as usize;
    (0..tries)
        .map(|_| gnp(n, p, &mut rng))
        .find(|g| g.min_degree() >= need && 4 * g.max_degree() < 3 * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_sample_meets_bounds() {
        let g = random_dense(60, 0.65, 0.55, 1, 1000).unwrap();
        assert!(g.min_degree() >= 33 && 4 * g.max_degree() < 180);
        assert_eq!(Some(g), random_dense(60, 0.65, 0.55, 1, 1000));
    }

    #[test]
    fn impossible_bounds_give_none() {
        assert!(random_dense(20, 0.1, 0.9, 0, 5).is_none());
    }
}
