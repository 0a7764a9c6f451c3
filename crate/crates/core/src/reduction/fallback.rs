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

//! Search for a good coloring when the structured construction is not
//! available: rainbow precoloring of `M ∪ E(x)` plus Kempe-chain extension,
//! then exhaustive search on tiny graphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{build_augmented, AugmentedGraph, ReductionError};
use crate::chromatics::{ExtendConfig, ExtendEngine, PartialEdgeColoring};
use crate::graph::{EdgeSet, Graph};
use crate::matching::max_matching_by;
use crate::verify::{brute_good_coloring, validate_good};

#[derive(Debug, Clone)]
pub struct FallbackOptions {
    pub attempts: usize,
    pub seed: u64,
    /// Exhaustive search is tried when `n` is at most this.
    pub brute_limit: usize,
    pub max_rounds: Option<usize>,
}

impl Default for FallbackOptions {
    fn default() -> Self {
        FallbackOptions { attempts: 8, seed: 0, brute_limit: 11, max_rounds: None }
    }
}

#[derive(Debug, Clone)]
pub struct FallbackOutcome {
    pub ag: AugmentedGraph,
    pub coloring: PartialEdgeColoring,
    /// `"kempe"` or `"exhaustive"`.
    pub method: &'static str,
    pub attempts: usize,
}

/// `M ∪ E(x)` has `n - |M|` edges, so a rainbow coloring needs `|M| ≥ n - Δ - 2`.
/// The preferred matching is kept when it allows that, otherwise a maximum
/// matching of the complement is used.
pub fn fallback_matching(g: &Graph, preferred: Option<&[(usize, usize)]>) -> Result<Vec<(usize, usize)>, ReductionError> {
    let n = g.n();
    let need = n.saturating_sub(g.max_degree() + 2);
    if let Some(m) = preferred {
        if m.len() >= need {
            return Ok(m.to_vec());
        }
    }
    let full = max_matching_by(n, |u, v| !g.has_edge(u, v));
    if full.size() < need {
        return Err(ReductionError::Precondition {
            name: "rainbow_room",
            detail: format!("complement matching number {} < n - Δ - 2 = {need}", full.size()),
        });
    }
    Ok(full.edges)
}

pub fn fallback_good_coloring(
    g: &Graph,
    preferred: Option<&[(usize, usize)]>,
    opts: &FallbackOptions,
) -> Result<FallbackOutcome, ReductionError> {
    let m = fallback_matching(g, preferred)?;
    let ag = build_augmented(g, &m)?;
    let h = &ag.combined;
    let k = g.max_degree() + 2;
    let special = ag.special();
    let mut ids: Vec<_> = special.iter().collect();
    ids.sort_by_key(|&e| h.handle(e));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let none = EdgeSet::new();
    for attempt in 0..opts.attempts {
        let mut palette: Vec<usize> = (0..k).collect();
        if attempt > 0 {
            palette.shuffle(&mut rng);
        }
        let mut c = PartialEdgeColoring::from_assignment(h, k, ids.iter().copied().zip(palette))?;
        let cfg = ExtendConfig {
            max_rounds: opts.max_rounds,
            perturb: true,
            seed: opts.seed.wrapping_add(attempt as u64),
            ..ExtendConfig::default()
        };
        if ExtendEngine::new(h, &none, &special, cfg).run(&mut c).is_ok() && validate_good(&ag, &c).is_ok() {
            return Ok(FallbackOutcome { ag, coloring: c, method: "kempe", attempts: attempt + 1 });
        }
    }
    if g.n() <= opts.brute_limit {
        if let Ok(Some(c)) = brute_good_coloring(&ag) {
            validate_good(&ag, &c).map_err(ReductionError::NotGood)?;
            return Ok(FallbackOutcome { ag, coloring: c, method: "exhaustive", attempts: opts.attempts });
        }
    }
    Err(ReductionError::Internal(format!("no certified coloring after {} attempts", opts.attempts)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_five_colors() {
        let g = Graph::complete(4);
        let out = fallback_good_coloring(&g, None, &FallbackOptions::default()).unwrap();
        assert_eq!(g.max_degree() + 2, 5);
        assert!(out.coloring.colors_used(&out.ag.combined) <= 5);
        validate_good(&out.ag, &out.coloring).unwrap();
    }

    #[test]
    fn no_room_for_rainbow() {
        // perfect matching on 8 vertices: Δ + 2 = 3 but M ∪ E(x) needs at least 4 colors
        let g = Graph::from_edges(8, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        assert!(matches!(
            fallback_good_coloring(&g, None, &FallbackOptions::default()),
            Err(ReductionError::Precondition { name: "rainbow_room", .. })
        ));
    }

    #[test]
    fn dense_graphs() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(8..20);
            let mut g = Graph::complete(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.25) {
                        g.remove_edge(u, v).unwrap();
                    }
                }
            }
            let out = fallback_good_coloring(&g, None, &FallbackOptions::default()).unwrap();
            validate_good(&out.ag, &out.coloring).unwrap();
        }
    }
}
