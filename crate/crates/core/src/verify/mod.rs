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

//! Independent validators and brute-force oracles.
//!
//! Validators read raw assignments only; they never consult the missing-set
//! bookkeeping of [`PartialEdgeColoring`].

mod brute;
mod cache;
mod enumerate;

pub use brute::{
    brute_chromatic_index, brute_edge_coloring, brute_good_coloring, brute_max_matching,
    brute_total_chromatic, brute_total_coloring, OracleError, GUARD_N,
};
pub use cache::{OracleCache, OracleEntry};
pub use enumerate::{canonical_form, canonical_graph6, enumerate_graphs};

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chromatics::{ColoringJson, PartialEdgeColoring};
use crate::graph::{Graph, Multigraph};
use crate::reduction::AugmentedGraph;

/// Colors on the vertices and edges of a simple graph. Colors are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalColoring {
    pub k: usize,
    pub vertex_color: Vec<Option<usize>>,
    /// Keyed by `(u, v)` with `u < v`.
    pub edge_color: BTreeMap<(usize, usize), usize>,
}

impl TotalColoring {
    pub fn new(n: usize, k: usize) -> Self {
        TotalColoring {
            k,
            vertex_color: vec![None; n],
            edge_color: BTreeMap::new(),
        }
    }

    /// Wire form with 1-based colors; vertices go under `vertices`.
    pub fn to_json(&self) -> ColoringJson {
        ColoringJson {
            k: self.k,
            edges: self.edge_color.iter().map(|(&(u, v), &c)| (u, v, 0, c + 1)).collect(),
            uncolored: Vec::new(),
            vertices: Some(
                self.vertex_color
                    .iter()
                    .enumerate()
                    .filter_map(|(v, c)| c.map(|c| (v, c + 1)))
                    .collect(),
            ),
        }
    }

    /// Reads the wire form back for a graph on `n` vertices.
    pub fn from_json(j: &ColoringJson, n: usize) -> Result<Self, String> {
        let verts = j.vertices.as_ref().ok_or("payload has no `vertices`")?;
        let mut tc = TotalColoring::new(n, j.k);
        for &(v, c) in verts {
            if v >= n || c == 0 {
                return Err(format!("bad vertex entry [{v}, {c}]"));
            }
            tc.vertex_color[v] = Some(c - 1);
        }
        for &(u, v, slot, c) in &j.edges {
            if slot != 0 || c == 0 {
                return Err(format!("bad edge entry [{u}, {v}, {slot}, {c}]"));
            }
            tc.edge_color.insert((u.min(v), u.max(v)), c - 1);
        }
        Ok(tc)
    }

    pub fn colors_used(&self) -> usize {
        let mut s: Vec<usize> = self
            .vertex_color
            .iter()
            .flatten()
            .chain(self.edge_color.values())
            .copied()
            .collect();
        s.sort_unstable();
        s.dedup();
        s.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TotalViolation {
    #[error("vertex {0} has no color")]
    UncoloredVertex(usize),
    #[error("edge {0}-{1} has no color")]
    UncoloredEdge(usize, usize),
    #[error("colored pair {0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("color {color} outside palette of size {k}")]
    OutOfPalette { color: usize, k: usize },
    #[error("adjacent vertices {0} and {1} share color {2}")]
    AdjacentVertices(usize, usize, usize),
    #[error("edges {0:?} and {1:?} meet at a vertex and share color {2}")]
    IncidentEdges((usize, usize), (usize, usize), usize),
    #[error("vertex {0} and incident edge {1:?} share color {2}")]
    VertexEdge(usize, (usize, usize), usize),
}

/// Checks coverage first, then every vertex–vertex, edge–edge and
/// vertex–edge incidence.
pub fn validate_total(g: &Graph, tc: &TotalColoring) -> Result<(), TotalViolation> {
    let n = g.n();
    if tc.vertex_color.len() != n {
        return Err(TotalViolation::UncoloredVertex(tc.vertex_color.len().min(n)));
    }
    for v in 0..n {
        if tc.vertex_color[v].is_none() {
            return Err(TotalViolation::UncoloredVertex(v));
        }
    }
    for (u, v) in g.edges() {
        if !tc.edge_color.contains_key(&(u, v)) {
            return Err(TotalViolation::UncoloredEdge(u, v));
        }
    }
    for &(u, v) in tc.edge_color.keys() {
        if u >= v || v >= n || !g.has_edge(u, v) {
            return Err(TotalViolation::NotAnEdge(u, v));
        }
    }
    let all = tc.vertex_color.iter().flatten().chain(tc.edge_color.values());
    for &c in all {
        if c >= tc.k {
            return Err(TotalViolation::OutOfPalette { color: c, k: tc.k });
        }
    }
    for (u, v) in g.edges() {
        let (cu, cv) = (tc.vertex_color[u].unwrap(), tc.vertex_color[v].unwrap());
        if cu == cv {
            return Err(TotalViolation::AdjacentVertices(u, v, cu));
        }
    }
    let mut seen: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for (&(u, v), &c) in &tc.edge_color {
        for w in [u, v] {
            if let Some(&f) = seen.get(&(w, c)) {
                return Err(TotalViolation::IncidentEdges(f, (u, v), c));
            }
            seen.insert((w, c), (u, v));
            if tc.vertex_color[w] == Some(c) {
                return Err(TotalViolation::VertexEdge(w, (u, v), c));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoodViolation {
    #[error("edge set of the coloring host differs from G^M: {0}")]
    Structure(String),
    #[error("edge {0}-{1} (slot {2}) is uncolored")]
    Uncolored(usize, usize, u32),
    #[error("edges {0:?} and {1:?} share color {2} at a common vertex")]
    Improper((usize, usize), (usize, usize), usize),
    #[error("{used} colors used, but at most {allowed} are allowed")]
    Palette { used: usize, allowed: usize },
    #[error("special edges {0:?} and {1:?} share color {2}")]
    Rainbow((usize, usize), (usize, usize), usize),
}

/// Checks that `c` is a good coloring of `G^M`: total, proper, at most
/// `Δ(G) + 2` colors, and `M ∪ E(x)` rainbow. The expected edge set is
/// rebuilt from `G`, `M` and the apex list rather than read from the host.
pub fn validate_good(ag: &AugmentedGraph, c: &PartialEdgeColoring) -> Result<(), GoodViolation> {
    let g = &ag.base;
    let n = g.n();
    let x = n;
    let mut expected: Vec<(usize, usize)> = g.edges().collect();
    let mut special: Vec<(usize, usize)> = ag.matching.clone();
    special.extend(ag.ex.iter().map(|&v| (v, x)));
    expected.extend(special.iter().copied());
    expected.sort_unstable();

    let host = &ag.combined;
    let mut actual = Vec::new();
    let mut colored: Vec<((usize, usize), Option<usize>, u32)> = Vec::new();
    for e in host.edges_sorted() {
        let h = host.handle(e);
        actual.push((h.u, h.v));
        colored.push(((h.u, h.v), c.color(e), h.slot));
    }
    if actual != expected {
        return Err(GoodViolation::Structure(format!(
            "expected {} edges, host has {}",
            expected.len(),
            actual.len()
        )));
    }
    for &(e, col, slot) in &colored {
        if col.is_none() {
            return Err(GoodViolation::Uncolored(e.0, e.1, slot));
        }
    }
    let mut at: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for &(e, col, _) in &colored {
        let col = col.unwrap();
        for w in [e.0, e.1] {
            if let Some(&f) = at.get(&(w, col)) {
                return Err(GoodViolation::Improper(f, e, col));
            }
            at.insert((w, col), e);
        }
    }
    let mut used: Vec<usize> = colored.iter().map(|t| t.1.unwrap()).collect();
    used.sort_unstable();
    used.dedup();
    let allowed = g.max_degree() + 2;
    if used.len() > allowed {
        return Err(GoodViolation::Palette {
            used: used.len(),
            allowed,
        });
    }
    let color_of: HashMap<(usize, usize), usize> = colored.iter().map(|t| (t.0, t.1.unwrap())).collect();
    let mut by_color: HashMap<usize, (usize, usize)> = HashMap::new();
    special.sort_unstable();
    for e in special {
        let col = color_of[&e];
        if let Some(&f) = by_color.get(&col) {
            return Err(GoodViolation::Rainbow(f, e, col));
        }
        by_color.insert(col, e);
    }
    Ok(())
}

/// Per-clause verdicts on a raw good-coloring payload; `None` means the
/// clause holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodAudit {
    pub matching: usize,
    pub structure: Option<String>,
    pub total: Option<String>,
    pub proper: Option<String>,
    pub palette: Option<String>,
    pub rainbow: Option<String>,
}

impl GoodAudit {
    pub fn ok(&self) -> bool {
        [&self.structure, &self.total, &self.proper, &self.palette, &self.rainbow].iter().all(|c| c.is_none())
    }
}

/// Audits colored edges `(u, v, color)` of a host on `0..=n` against the
/// good-coloring clauses for `G` on `0..n`, with `x = n`. `M` is read off as
/// the colored pairs inside `V(G)` that are not edges of `G`; every clause is
/// evaluated on its own.
pub fn audit_good_raw(g: &Graph, colored: &[(usize, usize, usize)], uncolored: usize) -> GoodAudit {
    let n = g.n();
    let x = n;
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut structure = None;
    let mut m: Vec<(usize, usize)> = Vec::new();
    let mut ex: Vec<usize> = Vec::new();
    for &(a, b, _) in colored {
        let (u, v) = (a.min(b), a.max(b));
        *seen.entry((u, v)).or_default() += 1;
        if v > x || u == v {
            structure.get_or_insert(format!("pair {a}-{b} is not an edge of G^M"));
        } else if v == x {
            ex.push(u);
        } else if !g.has_edge(u, v) {
            m.push((u, v));
        }
    }
    if let Some((e, _)) = seen.iter().filter(|&(_, &c)| c > 1).min() {
        structure.get_or_insert(format!("pair {}-{} listed twice", e.0, e.1));
    }
    let mut cover = vec![0usize; n];
    for &(u, v) in &m {
        cover[u] += 1;
        cover[v] += 1;
    }
    for &u in &ex {
        cover[u] += 1;
    }
    if let Some(v) = (0..n).find(|&v| cover[v] != 1) {
        structure.get_or_insert(format!("vertex {v} is met by {} edges of M ∪ E(x)", cover[v]));
    }
    let missing = g.edges().filter(|e| !seen.contains_key(e)).count();
    let total = (missing + uncolored > 0).then(|| format!("{} edges of G^M uncolored or absent", missing + uncolored));
    let mut at: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut proper = None;
    for &(a, b, col) in colored {
        let e = (a.min(b), a.max(b));
        for w in [a, b] {
            if let Some(&f) = at.get(&(w, col)) {
                proper.get_or_insert(format!("edges {f:?} and {e:?} share color {col} at {w}"));
            }
            at.insert((w, col), e);
        }
    }
    let mut used: Vec<usize> = colored.iter().map(|t| t.2).collect();
    used.sort_unstable();
    used.dedup();
    let allowed = g.max_degree() + 2;
    let palette = (used.len() > allowed).then(|| format!("{} colors used, at most {allowed} allowed", used.len()));
    let mut by_color: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut rainbow = None;
    let mut special: Vec<(usize, usize, usize)> = colored
        .iter()
        .map(|&(a, b, c)| (a.min(b), a.max(b), c))
        .filter(|&(u, v, _)| v == x || (v < x && !g.has_edge(u, v)))
        .collect();
    special.sort_unstable();
    for (u, v, col) in special {
        if let Some(&f) = by_color.get(&col) {
            rainbow.get_or_insert(format!("special edges {f:?} and {:?} share color {col}", (u, v)));
        }
        by_color.insert(col, (u, v));
    }
    GoodAudit { matching: m.len(), structure, total, proper, palette, rainbow }
}

/// Parity of missing counts: for a total edge coloring with `k >= Δ`, every
/// color is missing at a number of vertices congruent to `|V|` mod 2.
/// Returns the first offending color with its missing count.
pub fn parity_check(g: &Multigraph, c: &PartialEdgeColoring) -> Result<(), (usize, usize)> {
    let n = g.n();
    for (col, missing) in parity_counts(g, c).into_iter().enumerate() {
        if missing % 2 != n % 2 {
            return Err((col, missing));
        }
    }
    Ok(())
}

/// Per color, the number of vertices with no edge of that color, counted
/// directly from the raw assignment.
pub fn parity_counts(g: &Multigraph, c: &PartialEdgeColoring) -> Vec<usize> {
    let n = g.n();
    let mut hit = vec![vec![false; n]; c.k()];
    for e in g.edge_ids() {
        if let Some(col) = c.color(e) {
            let (u, v) = g.endpoints(e);
            hit[col][u] = true;
            hit[col][v] = true;
        }
    }
    hit.iter().map(|h| h.iter().filter(|&&b| !b).count()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatics::vizing_color;
    use crate::reduction::build_augmented;

    #[test]
    fn k1_one_color() {
        let mut tc = TotalColoring::new(1, 1);
        tc.vertex_color[0] = Some(0);
        assert_eq!(validate_total(&Graph::empty(1), &tc), Ok(()));
    }

    #[test]
    fn k2_single_color_fails() {
        let g = Graph::complete(2);
        let mut tc = TotalColoring::new(2, 1);
        tc.vertex_color = vec![Some(0), Some(0)];
        tc.edge_color.insert((0, 1), 0);
        assert_eq!(validate_total(&g, &tc), Err(TotalViolation::AdjacentVertices(0, 1, 0)));
        tc.vertex_color = vec![Some(0), Some(1)];
        tc.k = 2;
        assert_eq!(validate_total(&g, &tc), Err(TotalViolation::VertexEdge(0, (0, 1), 0)));
    }

    #[test]
    fn coverage_gap_is_distinct() {
        let g = Graph::complete(2);
        let mut tc = TotalColoring::new(2, 3);
        tc.vertex_color = vec![Some(0), Some(1)];
        assert_eq!(validate_total(&g, &tc), Err(TotalViolation::UncoloredEdge(0, 1)));
    }

    #[test]
    fn rainbow_and_palette_clauses() {
        // P_4 with M = {0-2, 1-3}: x isolated, both M edges special
        let g = Graph::path(4);
        let ag = build_augmented(&g, &[(0, 2), (1, 3)]).unwrap();
        let h = &ag.combined;
        let mut c = PartialEdgeColoring::new(h, 4);
        // edges sorted: (0,1) (0,2) (1,2) (1,3) (2,3)
        let es = h.edges_sorted();
        for (e, col) in es.iter().zip([0, 1, 2, 1, 0]) {
            // (0,2) and (1,3) both get 1: not adjacent, so proper, but not rainbow
            c.set(h, *e, col).unwrap();
        }
        assert_eq!(validate_good(&ag, &c), Err(GoodViolation::Rainbow((0, 2), (1, 3), 1)));
        let mut c2 = PartialEdgeColoring::new(h, 5);
        for (e, col) in es.iter().zip([0, 1, 2, 3, 4]) {
            c2.set(h, *e, col).unwrap();
        }
        assert_eq!(validate_good(&ag, &c2), Err(GoodViolation::Palette { used: 5, allowed: 4 }));
        let mut c3 = PartialEdgeColoring::new(h, 4);
        for (e, col) in es.iter().zip([0, 1, 2, 3, 0]) {
            c3.set(h, *e, col).unwrap();
        }
        assert_eq!(validate_good(&ag, &c3), Ok(()));
    }

    #[test]
    fn parity_examples() {
        // perfect-matching class on an even-order graph: no vertex misses it
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().to_multigraph();
        let c = PartialEdgeColoring::from_assignment(&g, 1, g.edge_ids().map(|e| (e, 0))).unwrap();
        assert_eq!(parity_check(&g, &c), Ok(()));
        assert_eq!(parity_counts(&g, &c), vec![0]);
        let t = Graph::complete(3).to_multigraph();
        let c = vizing_color(&t, 3).unwrap();
        assert_eq!(parity_check(&t, &c), Ok(()));
        assert_eq!(parity_counts(&t, &c), vec![1, 1, 1]);
    }
}
