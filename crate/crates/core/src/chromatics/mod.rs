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

//! Edge-coloring kernel.
//!
//! [`PartialEdgeColoring`] keeps, next to the edge → color map, the missing
//! set of every vertex as a bitset over the palette and a table `at[v][c]`
//! giving the edge of color `c` at `v`. Both are updated incrementally by
//! [`PartialEdgeColoring::set`] and [`PartialEdgeColoring::unset`].

mod equalize;
mod extend;
mod fan;
mod kempe;
mod konig;
mod vizing;

pub use equalize::{equalize, equalize_with_rainbow};
pub use extend::{
    extend_rainbow_coloring_a, extend_rainbow_coloring_b, ExtendConfig, ExtendEngine,
    ExtendStats,
};
pub use fan::{build_multifan, shift, Multifan};
pub use kempe::{kempe_component, kempe_switch, KempePath};
pub use konig::konig_color;
pub use vizing::{misra_gries, vizing_color};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BitSet, EdgeId, EdgeSet, Multigraph};

pub type Color = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("color {color} outside palette of size {k}")]
    OutOfPalette { color: Color, k: usize },
    #[error("color {color} already used at vertex {vertex}")]
    Conflict { vertex: usize, color: Color },
    #[error("edge {0:?} is not live")]
    DeadEdge(EdgeId),
    #[error("palette of {k} colors is below the required bound {bound}")]
    PaletteTooSmall { k: usize, bound: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("edge set is not rainbow: edges {0:?} and {1:?} share a color")]
    NotRainbow(EdgeId, EdgeId),
    #[error("Kempe path is not a maximal alternating path: {0}")]
    BadKempePath(String),
    #[error("invalid linear sequence: {0}")]
    BadChain(String),
    #[error("precondition `{name}` violated: {detail}")]
    Precondition { name: &'static str, detail: String },
    #[error("extension stalled after {rounds} rounds with {uncolored} edges uncolored")]
    Stalled { rounds: usize, uncolored: usize },
}

/// A proper, possibly partial, edge coloring with palette `0..k`.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialEdgeColoring {
    k: usize,
    color: Vec<Option<u32>>,
    missing: Vec<BitSet>,
    at: Vec<Vec<Option<EdgeId>>>,
}

impl std::fmt::Debug for PartialEdgeColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let colored: Vec<_> = self
            .color
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (i, c)))
            .collect();
        write!(f, "PartialEdgeColoring(k={}, {:?})", self.k, colored)
    }
}

impl PartialEdgeColoring {
    /// The empty coloring of `g` with palette `0..k`.
    pub fn new(g: &Multigraph, k: usize) -> Self {
        PartialEdgeColoring {
            k,
            color: vec![None; g.edge_capacity()],
            missing: vec![BitSet::full(k); g.n()],
            at: vec![vec![None; k]; g.n()],
        }
    }

    /// Builds a coloring from explicit assignments, checking properness.
    pub fn from_assignment(
        g: &Multigraph,
        k: usize,
        assignment: impl IntoIterator<Item = (EdgeId, Color)>,
    ) -> Result<Self, ColoringError> {
        let mut c = PartialEdgeColoring::new(g, k);
        for (e, col) in assignment {
            c.set(g, e, col)?;
        }
        Ok(c)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Makes room for edges and vertices added to `g` after construction.
    pub fn sync(&mut self, g: &Multigraph) {
        if self.color.len() < g.edge_capacity() {
            self.color.resize(g.edge_capacity(), None);
        }
        while self.missing.len() < g.n() {
            self.missing.push(BitSet::full(self.k));
            self.at.push(vec![None; self.k]);
        }
    }

    /// Appends `extra` fresh colors to the palette, returning the first one.
    pub fn add_colors(&mut self, extra: usize) -> Color {
        let first = self.k;
        self.k += extra;
        for (m, row) in self.missing.iter_mut().zip(&mut self.at) {
            m.grow(self.k);
            for c in first..self.k {
                m.insert(c);
            }
            row.resize(self.k, None);
        }
        first
    }

    #[inline]
    pub fn color(&self, e: EdgeId) -> Option<Color> {
        self.color.get(e.index()).copied().flatten().map(|c| c as Color)
    }

    #[inline]
    pub fn is_colored(&self, e: EdgeId) -> bool {
        self.color(e).is_some()
    }

    #[inline]
    pub fn missing(&self, v: usize) -> &BitSet {
        &self.missing[v]
    }

    #[inline]
    pub fn is_missing(&self, v: usize, c: Color) -> bool {
        self.missing[v].contains(c)
    }

    /// The edge of color `c` at `v`, if any.
    #[inline]
    pub fn edge_at(&self, v: usize, c: Color) -> Option<EdgeId> {
        self.at[v][c]
    }

    /// Colors `e` with `c`; `c` must be missing at both ends.
    pub fn set(&mut self, g: &Multigraph, e: EdgeId, c: Color) -> Result<(), ColoringError> {
        if c >= self.k {
            return Err(ColoringError::OutOfPalette { color: c, k: self.k });
        }
        if !g.is_alive(e) {
            return Err(ColoringError::DeadEdge(e));
        }
        self.sync(g);
        if let Some(old) = self.color(e) {
            if old == c {
                return Ok(());
            }
            self.unset(g, e);
        }
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if !self.missing[w].contains(c) {
                return Err(ColoringError::Conflict { vertex: w, color: c });
            }
        }
        for w in [u, v] {
            self.missing[w].remove(c);
            self.at[w][c] = Some(e);
        }
        self.color[e.index()] = Some(c as u32);
        Ok(())
    }

    /// Uncolors `e`, returning its previous color.
    pub fn unset(&mut self, g: &Multigraph, e: EdgeId) -> Option<Color> {
        let c = self.color(e)?;
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            self.missing[w].insert(c);
            self.at[w][c] = None;
        }
        self.color[e.index()] = None;
        Some(c)
    }

    /// Live uncolored edges of `g`, by edge id.
    pub fn uncolored(&self, g: &Multigraph) -> Vec<EdgeId> {
        g.edge_ids().filter(|&e| !self.is_colored(e)).collect()
    }

    pub fn is_total(&self, g: &Multigraph) -> bool {
        g.edge_ids().all(|e| self.is_colored(e))
    }

    /// Colored live edges per color.
    pub fn class_sizes(&self, g: &Multigraph) -> Vec<usize> {
        let mut s = vec![0; self.k];
        for e in g.edge_ids() {
            if let Some(c) = self.color(e) {
                s[c] += 1;
            }
        }
        s
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self, g: &Multigraph) -> usize {
        self.class_sizes(g).iter().filter(|&&s| s > 0).count()
    }

    /// Vertices missing color `c`.
    pub fn missing_at(&self, c: Color) -> Vec<usize> {
        (0..self.missing.len()).filter(|&v| self.missing[v].contains(c)).collect()
    }

    /// Recomputes missing sets from the raw assignment and compares them with
    /// the incremental bookkeeping. Also checks properness.
    pub fn check_coherent(&self, g: &Multigraph) -> Result<(), String> {
        let n = g.n();
        let mut used = vec![vec![None::<EdgeId>; self.k]; n];
        for e in g.edge_ids() {
            if let Some(c) = self.color(e) {
                let (u, v) = g.endpoints(e);
                for w in [u, v] {
                    if let Some(f) = used[w][c] {
                        return Err(format!("edges {f:?} and {e:?} both have color {c} at {w}"));
                    }
                    used[w][c] = Some(e);
                }
            }
        }
        for v in 0..n {
            for c in 0..self.k {
                if used[v][c].is_none() != self.missing[v].contains(c) {
                    return Err(format!("missing set of {v} disagrees on color {c}"));
                }
                if used[v][c] != self.at[v][c] {
                    return Err(format!("color table of {v} disagrees on color {c}"));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn debug_check(&self, g: &Multigraph) {
        if cfg!(debug_assertions) {
            if let Err(e) = self.check_coherent(g) {
                panic!("coloring bookkeeping broken: {e}");
            }
        }
    }

    /// `edges` receive pairwise distinct colors (uncolored edges are ignored).
    pub fn rainbow_violation(&self, edges: impl IntoIterator<Item = EdgeId>) -> Option<(EdgeId, EdgeId)> {
        let mut seen: Vec<Option<EdgeId>> = vec![None; self.k];
        for e in edges {
            if let Some(c) = self.color(e) {
                if let Some(f) = seen[c] {
                    return Some((f, e));
                }
                seen[c] = Some(e);
            }
        }
        None
    }

    pub fn is_rainbow(&self, edges: &EdgeSet) -> bool {
        self.rainbow_violation(edges.iter()).is_none()
    }

    /// Renames colors: color `c` becomes `perm[c]`. `perm` must be injective
    /// into `0..new_k`.
    pub fn recolored(&self, g: &Multigraph, perm: &[Color], new_k: usize) -> Self {
        let mut out = PartialEdgeColoring::new(g, new_k);
        for e in g.edge_ids() {
            if let Some(c) = self.color(e) {
                out.set(g, e, perm[c]).expect("injective renaming keeps properness");
            }
        }
        out
    }

    /// Serializable form with 1-based colors.
    pub fn to_json(&self, g: &Multigraph) -> ColoringJson {
        let mut edges = Vec::new();
        let mut uncolored = Vec::new();
        for e in g.edges_sorted() {
            let h = g.handle(e);
            match self.color(e) {
                Some(c) => edges.push((h.u, h.v, h.slot, c + 1)),
                None => uncolored.push((h.u, h.v, h.slot)),
            }
        }
        ColoringJson {
            k: self.k,
            edges,
            uncolored,
            vertices: None,
        }
    }
}

impl PartialEdgeColoring {
    /// Reads the wire form against `g`, checking properness as it goes.
    pub fn from_json(g: &Multigraph, j: &ColoringJson) -> Result<Self, ColoringError> {
        let mut c = PartialEdgeColoring::new(g, j.k);
        for &(u, v, slot, col) in &j.edges {
            let e = g
                .id_of(crate::graph::EdgeHandle { u: u.min(v), v: u.max(v), slot })
                .ok_or_else(|| ColoringError::Precondition { name: "edge", detail: format!("{u}-{v} slot {slot} is not an edge") })?;
            if col == 0 {
                return Err(ColoringError::OutOfPalette { color: 0, k: j.k });
            }
            c.set(g, e, col - 1)?;
        }
        Ok(c)
    }
}

/// Wire format of an edge coloring. Colors are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub k: usize,
    pub edges: Vec<(usize, usize, u32, usize)>,
    #[serde(default)]
    pub uncolored: Vec<(usize, usize, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<(usize, usize)>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn set_unset_keeps_bookkeeping() {
        let g = Graph::cycle(4).to_multigraph();
        let mut c = PartialEdgeColoring::new(&g, 2);
        let es: Vec<_> = g.edges_sorted();
        c.set(&g, es[0], 0).unwrap();
        assert_eq!(
            c.set(&g, es[1], 0),
            Err(ColoringError::Conflict { vertex: 0, color: 0 })
        );
        c.set(&g, es[1], 1).unwrap();
        c.check_coherent(&g).unwrap();
        assert_eq!(c.unset(&g, es[0]), Some(0));
        assert!(c.is_missing(0, 0) && c.is_missing(1, 0));
        c.check_coherent(&g).unwrap();
    }

    #[test]
    fn palette_growth() {
        let g = Graph::complete(3).to_multigraph();
        let mut c = PartialEdgeColoring::new(&g, 1);
        let first = c.add_colors(2);
        assert_eq!(first, 1);
        for (e, col) in g.edges_sorted().into_iter().zip(0..) {
            c.set(&g, e, col).unwrap();
        }
        assert!(c.is_total(&g));
        assert_eq!(c.class_sizes(&g), vec![1, 1, 1]);
        c.check_coherent(&g).unwrap();
    }

    #[test]
    fn json_is_one_based() {
        let g = Graph::complete(2).to_multigraph();
        let c = PartialEdgeColoring::from_assignment(&g, 1, [(EdgeId(0), 0)]).unwrap();
        let j = c.to_json(&g);
        assert_eq!(j.edges, vec![(0, 1, 0, 1)]);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"{"k":1,"edges":[[0,1,0,1]],"uncolored":[]}"#);
    }
}
