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

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Dense index of an edge inside its host [`Multigraph`]. Never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Stable external identity of a parallel edge: `(u, v, slot)` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeHandle {
    pub u: usize,
    pub v: usize,
    pub slot: u32,
}

#[derive(Debug, Clone, Copy)]
struct EdgeRec {
    u: u32,
    v: u32,
    slot: u32,
    alive: bool,
}

/// Loopless multigraph. Edge ids and handles stay valid until the edge is
/// removed; removing an edge does not renumber the others.
#[derive(Debug, Clone, Default)]
pub struct Multigraph {
    n: usize,
    edges: Vec<EdgeRec>,
    incident: Vec<Vec<EdgeId>>,
    pairs: HashMap<(u32, u32), Vec<EdgeId>>,
    live: usize,
}

fn key(u: usize, v: usize) -> (u32, u32) {
    if u < v {
        (u as u32, v as u32)
    } else {
        (v as u32, u as u32)
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
            incident: vec![Vec::new(); n],
            pairs: HashMap::new(),
            live: 0,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of live edges.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.live
    }

    /// Upper bound (exclusive) on `EdgeId::index()` of any edge ever created.
    #[inline]
    pub fn edge_capacity(&self) -> usize {
        self.edges.len()
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.incident.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<EdgeId, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let k = key(u, v);
        let id = EdgeId(self.edges.len() as u32);
        let bucket = self.pairs.entry(k).or_default();
        let slot = bucket
            .iter()
            .map(|e| self.edges[e.index()].slot + 1)
            .max()
            .unwrap_or(0);
        bucket.push(id);
        self.edges.push(EdgeRec {
            u: k.0,
            v: k.1,
            slot,
            alive: true,
        });
        self.incident[u].push(id);
        self.incident[v].push(id);
        self.live += 1;
        Ok(id)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(), GraphError> {
        let rec = self.edges.get(e.index()).copied();
        match rec {
            Some(r) if r.alive => {
                self.edges[e.index()].alive = false;
                let (u, v) = (r.u as usize, r.v as usize);
                self.incident[u].retain(|&x| x != e);
                self.incident[v].retain(|&x| x != e);
                if let Some(b) = self.pairs.get_mut(&(r.u, r.v)) {
                    b.retain(|&x| x != e);
                    if b.is_empty() {
                        self.pairs.remove(&(r.u, r.v));
                    }
                }
                self.live -= 1;
                Ok(())
            }
            Some(r) => Err(GraphError::MissingEdge(r.u as usize, r.v as usize)),
            None => Err(GraphError::MissingEdge(usize::MAX, usize::MAX)),
        }
    }

    #[inline]
    pub fn is_alive(&self, e: EdgeId) -> bool {
        self.edges.get(e.index()).is_some_and(|r| r.alive)
    }

    /// Endpoints `(u, v)` with `u < v`.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        let r = &self.edges[e.index()];
        (r.u as usize, r.v as usize)
    }

    #[inline]
    pub fn other(&self, e: EdgeId, w: usize) -> usize {
        let (u, v) = self.endpoints(e);
        if u == w {
            v
        } else {
            debug_assert_eq!(v, w);
            u
        }
    }

    pub fn handle(&self, e: EdgeId) -> EdgeHandle {
        let r = &self.edges[e.index()];
        EdgeHandle {
            u: r.u as usize,
            v: r.v as usize,
            slot: r.slot,
        }
    }

    pub fn id_of(&self, h: EdgeHandle) -> Option<EdgeId> {
        self.pairs
            .get(&key(h.u, h.v))?
            .iter()
            .copied()
            .find(|e| self.edges[e.index()].slot == h.slot)
    }

    #[inline]
    pub fn incident(&self, v: usize) -> &[EdgeId] {
        &self.incident[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edges_between(&self, u: usize, v: usize) -> &[EdgeId] {
        self.pairs.get(&key(u, v)).map(Vec::as_slice).unwrap_or(&[])
    }

    #[inline]
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges_between(u, v).len()
    }

    /// Multiplicity of a vertex: largest number of edges to a single neighbor.
    pub fn vertex_multiplicity(&self, v: usize) -> usize {
        let mut best = 0;
        for &e in &self.incident[v] {
            let w = self.other(e, v);
            best = best.max(self.multiplicity(v, w));
        }
        best
    }

    /// Largest pairwise multiplicity.
    pub fn mu(&self) -> usize {
        self.pairs.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Live edges in id order.
    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, r)| r.alive)
            .map(|(i, _)| EdgeId(i as u32))
    }

    /// Live edges sorted by handle.
    pub fn edges_sorted(&self) -> Vec<EdgeId> {
        let mut ids: Vec<_> = self.edge_ids().collect();
        ids.sort_by_key(|&e| self.handle(e));
        ids
    }

    /// Underlying simple graph (parallel edges collapsed).
    pub fn underlying_simple(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        let mut keys: Vec<_> = self.pairs.keys().copied().collect();
        keys.sort_unstable();
        for (u, v) in keys {
            g.add_edge(u as usize, v as usize).expect("distinct pairs");
        }
        g
    }

    /// Restriction to a set of edges, keeping ids.
    pub fn restricted_to(&self, keep: &EdgeSet) -> Multigraph {
        let mut h = self.clone();
        let drop: Vec<_> = self.edge_ids().filter(|e| !keep.contains(*e)).collect();
        for e in drop {
            h.remove_edge(e).expect("live edge");
        }
        h
    }

    /// Two-colors the vertices if possible (`false`/`true` sides).
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for &e in &self.incident[v] {
                    let w = self.other(e, v);
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }
}

/// A set of edges of one host multigraph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSet(BTreeSet<EdgeId>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        self.0.remove(&e)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    pub fn extend<I: IntoIterator<Item = EdgeId>>(&mut self, it: I) {
        self.0.extend(it)
    }

    /// Every member is a live edge of `g`.
    pub fn all_live_in(&self, g: &Multigraph) -> bool {
        self.iter().all(|e| g.is_alive(e))
    }

    /// Members are pairwise vertex-disjoint.
    pub fn is_matching(&self, g: &Multigraph) -> bool {
        let mut seen = vec![false; g.n()];
        for e in self.iter() {
            let (u, v) = g.endpoints(e);
            if seen[u] || seen[v] {
                return false;
            }
            seen[u] = true;
            seen[v] = true;
        }
        true
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_edges_get_distinct_slots() {
        let mut g = Multigraph::new(3);
        let a = g.add_edge(0, 1).unwrap();
        let b = g.add_edge(1, 0).unwrap();
        assert_eq!(g.handle(a), EdgeHandle { u: 0, v: 1, slot: 0 });
        assert_eq!(g.handle(b), EdgeHandle { u: 0, v: 1, slot: 1 });
        assert_eq!(g.mu(), 2);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.vertex_multiplicity(2), 0);
    }

    #[test]
    fn handles_survive_removal() {
        let mut g = Multigraph::new(3);
        let a = g.add_edge(0, 1).unwrap();
        let b = g.add_edge(0, 1).unwrap();
        let c = g.add_edge(1, 2).unwrap();
        g.remove_edge(a).unwrap();
        assert_eq!(g.id_of(EdgeHandle { u: 0, v: 1, slot: 1 }), Some(b));
        assert_eq!(g.id_of(EdgeHandle { u: 0, v: 1, slot: 0 }), None);
        assert_eq!(g.endpoints(c), (1, 2));
        // a fresh parallel edge never reuses a live slot
        let d = g.add_edge(0, 1).unwrap();
        assert_eq!(g.handle(d).slot, 2);
        assert!(g.remove_edge(a).is_err());
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn bipartition_detects_odd_cycle() {
        assert!(Graph::cycle(5).to_multigraph().bipartition().is_none());
        let sides = Graph::cycle(6).to_multigraph().bipartition().unwrap();
        assert_ne!(sides[0], sides[1]);
    }
}
