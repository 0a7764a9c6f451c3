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

//! Simple graphs and multigraphs on dense vertex indices `0..n`.
//!
//! [`Graph`] keeps both bitset rows (for O(1) adjacency tests on dense
//! inputs) and sorted neighbor lists. [`Multigraph`] stores parallel edges
//! with stable [`EdgeHandle`]s and is the host type for edge colorings.

mod bitset;
pub mod io;
mod multigraph;
mod profile;
pub mod random;

pub use bitset::BitSet;
pub use multigraph::{EdgeHandle, EdgeId, EdgeSet, Multigraph};
pub use profile::{degree_profile, DegreeProfile};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("parallel edge {0}-{1} in a simple graph")]
    ParallelEdge(usize, usize),
    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![BitSet::new(n); n],
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g.sort_adjacency();
        g
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle is simple for n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges).expect("complete bipartite is simple")
    }

    /// Builds a simple graph, rejecting loops, duplicates and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_unchecked(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.m += 1;
    }

    fn sort_adjacency(&mut self) {
        for a in &mut self.adj {
            a.sort_unstable();
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        self.rows[u].remove(v);
        self.rows[v].remove(u);
        let pos = self.adj[u].binary_search(&v).unwrap();
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(pos);
        self.m -= 1;
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    /// Subgraph induced on `keep` (in the given order); vertex `i` of the
    /// result is `keep[i]` of `self`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    g.insert_unchecked(i, j);
                }
            }
        }
        g.sort_adjacency();
        g
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.insert_unchecked(perm[u], perm[v]);
        }
        g.sort_adjacency();
        g
    }

    pub fn to_multigraph(&self) -> Multigraph {
        let mut mg = Multigraph::new(self.n);
        for (u, v) in self.edges() {
            mg.add_edge(u, v).expect("simple edge is valid");
        }
        mg
    }
}

/// The complement: `uv` is an edge iff `u != v` and `uv` is not an edge of `g`.
pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut h = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                h.insert_unchecked(u, v);
            }
        }
    }
    h.sort_adjacency();
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn isomorphic_brute(a: &Graph, b: &Graph) -> bool {
        fn permute(k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, a: &Graph, b: &Graph) -> bool {
            let n = a.n();
            if k == n {
                return a.edges().all(|(u, v)| b.has_edge(perm[u], perm[v]));
            }
            for c in 0..n {
                if !used[c] && a.degree(k) == b.degree(c) {
                    used[c] = true;
                    perm.push(c);
                    if permute(k + 1, perm, used, a, b) {
                        return true;
                    }
                    perm.pop();
                    used[c] = false;
                }
            }
            false
        }
        a.n() == b.n()
            && a.edge_count() == b.edge_count()
            && permute(0, &mut Vec::new(), &mut vec![false; a.n()], a, b)
    }

    #[test]
    fn complement_of_k4_is_empty() {
        let h = complement(&Graph::complete(4));
        assert_eq!(h.n(), 4);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn complement_of_empty_is_complete() {
        assert_eq!(complement(&Graph::empty(3)), Graph::complete(3));
    }

    #[test]
    fn c5_is_self_complementary() {
        let c5 = Graph::cycle(5);
        let h = complement(&c5);
        assert_ne!(h, c5);
        assert!(isomorphic_brute(&c5, &h));
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn induced_and_permuted() {
        let g = Graph::cycle(5);
        let h = g.induced(&[0, 1, 2]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let p = g.permuted(&[4, 3, 2, 1, 0]);
        assert!(p.has_edge(4, 3) && p.has_edge(0, 4));
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Graph> {
            (1usize..12).prop_flat_map(|n| {
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                    let mut g = Graph::empty(n);
                    let mut k = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if bits[k] {
                                g.add_edge(u, v).unwrap();
                            }
                            k += 1;
                        }
                    }
                    g
                })
            })
        }

        proptest! {
            #[test]
            fn double_complement_is_identity(g in arb_graph()) {
                prop_assert_eq!(complement(&complement(&g)), g);
            }

            #[test]
            fn handshake(g in arb_graph()) {
                let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
                prop_assert_eq!(total, 2 * g.edge_count());
                let mg = g.to_multigraph();
                let mtotal: usize = (0..mg.n()).map(|v| mg.degree(v)).sum();
                prop_assert_eq!(mtotal, 2 * mg.edge_count());
                prop_assert_eq!(mg.max_degree(), g.max_degree());
                prop_assert!(mg.mu() <= 1);
            }
        }
    }
}
