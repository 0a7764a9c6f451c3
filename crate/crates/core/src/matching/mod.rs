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

//! Matchings, Hamilton cycles and spanning linking paths.

mod bipartite;
mod blossom;
mod hamilton;
mod linking;

pub use bipartite::{bipartite_perfect_matching, BipartiteOutcome};
pub use blossom::{max_matching, max_matching_by, max_matching_multi, odd_components, MatchingResult};
pub use hamilton::{dirac_hamilton_cycle, is_hamilton_cycle};
pub use linking::{linking_paths, linking_paths_with, LinkOptions, LinkingForest};

use crate::graph::{degree_profile, Graph};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatchingError {
    #[error("precondition `{name}` failed: {detail}")]
    Precondition { name: &'static str, detail: String },
    #[error("linking construction failed after {attempts} attempts")]
    ConstructionFailed { attempts: usize },
}

/// Matching in the complement of `g`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ComplementMatching {
    pub edges: Vec<(usize, usize)>,
    /// Set when the maximum matching of the complement is below the target.
    pub shortfall: bool,
    /// Whether `Δ < 3n/4` and `|U_ξ| < ξn` hold, so that `n/2 - 1.5ξn` is guaranteed.
    pub bound_applies: bool,
    pub guaranteed: f64,
}

/// A matching of the complement of size `min(target, ν(complement))`.
/// Non-adjacency is read from the bitset rows; the complement is never built.
pub fn complement_matching(g: &Graph, xi: f64, target: usize) -> Result<ComplementMatching, MatchingError> {
    let n = g.n();
    if 2 * g.min_degree() < n {
        return Err(MatchingError::Precondition {
            name: "min_degree",
            detail: format!("δ = {} < n/2 = {}", g.min_degree(), n as f64 / 2.0),
        });
    }
    if target > n / 2 {
        return Err(MatchingError::Precondition { name: "target", detail: format!("target {target} > ⌊n/2⌋ = {}", n / 2) });
    }
    let profile = degree_profile(g, xi);
    let bound_applies = 4 * g.max_degree() < 3 * n && (profile.u_xi.len() as f64) < xi * n as f64;
    let guaranteed = if bound_applies { n as f64 / 2.0 - 1.5 * xi * n as f64 } else { 0.0 };
    let res = max_matching_by(n, |u, v| !g.has_edge(u, v));
    let shortfall = res.size() < target;
    let mut edges = res.edges;
    if !shortfall {
        edges.truncate(target);
    }
    Ok(ComplementMatching { edges, shortfall, bound_applies, guaranteed })
}
