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

//! Augmenting-path bipartite matching with a Hall-violator certificate.

use serde::Serialize;

use super::MatchingError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BipartiteOutcome {
    /// Pairs `(x, y)` with `x ∈ X`, `y ∈ Y`.
    Perfect(Vec<(usize, usize)>),
    /// `S ⊆ X` with `|N(S)| < |S|`.
    HallViolator(Vec<usize>),
}

fn try_kuhn(g: &Graph, x: usize, in_y: &[bool], seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
    for &y in g.neighbors(x) {
        if !in_y[y] || seen[y] {
            continue;
        }
        seen[y] = true;
        if mate[y].is_none() || try_kuhn(g, mate[y].unwrap(), in_y, seen, mate) {
            mate[y] = Some(x);
            mate[x] = Some(y);
            return true;
        }
    }
    false
}

pub fn bipartite_perfect_matching(g: &Graph, xs: &[usize], ys: &[usize]) -> Result<BipartiteOutcome, MatchingError> {
    let n = g.n();
    if xs.len() != ys.len() {
        return Err(MatchingError::Precondition {
            name: "balanced",
            detail: format!("|X| = {} but |Y| = {}", xs.len(), ys.len()),
        });
    }
    let mut side = vec![None; n];
    for (&v, s) in xs.iter().map(|v| (v, 0u8)).chain(ys.iter().map(|v| (v, 1u8))) {
        if v >= n || side[v].is_some() {
            return Err(MatchingError::Precondition { name: "sides", detail: format!("vertex {v} repeated or out of range") });
        }
        side[v] = Some(s);
    }
    for (u, v) in g.edges() {
        if side[u] == side[v] || side[u].is_none() || side[v].is_none() {
            return Err(MatchingError::Precondition { name: "bipartite", detail: format!("edge ({u},{v}) not across sides") });
        }
    }
    let in_y: Vec<bool> = (0..n).map(|v| side[v] == Some(1)).collect();
    let mut mate = vec![None; n];
    let mut seen = vec![false; n];
    for &x in xs {
        seen.fill(false);
        if !try_kuhn(g, x, &in_y, &mut seen, &mut mate) {
            // alternating reachability from the exposed x gives the violator
            let mut in_s = vec![false; n];
            let mut stack = vec![x];
            in_s[x] = true;
            while let Some(u) = stack.pop() {
                for &y in g.neighbors(u) {
                    if let Some(w) = mate[y] {
                        if !in_s[w] {
                            in_s[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
            let s: Vec<usize> = (0..n).filter(|&v| in_s[v]).collect();
            return Ok(BipartiteOutcome::HallViolator(s));
        }
    }
    let mut pairs: Vec<(usize, usize)> = xs.iter().map(|&x| (x, mate[x].unwrap())).collect();
    pairs.sort_unstable();
    Ok(BipartiteOutcome::Perfect(pairs))
}
