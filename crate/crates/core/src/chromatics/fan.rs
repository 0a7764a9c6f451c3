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

use std::collections::VecDeque;

use super::{Color, ColoringError, PartialEdgeColoring};
use crate::graph::{EdgeId, EdgeSet, Multigraph};

/// A multifan at `center`: `edges[0]` is uncolored and every later edge has
/// a color missing at the leaf of its `parent`. Following parents back to
/// index 0 gives a linear sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multifan {
    pub center: usize,
    pub edges: Vec<EdgeId>,
    pub leaves: Vec<usize>,
    pub parent: Vec<Option<usize>>,
}

impl Multifan {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The linear sequence `0 = l_0, l_1, ..., l_h = i`.
    pub fn chain(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut cur = i;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    /// All maximal linear sequences (chains ending at a leaf of the tree).
    pub fn linear_sequences(&self) -> Vec<Vec<usize>> {
        let mut has_child = vec![false; self.len()];
        for p in self.parent.iter().flatten() {
            has_child[*p] = true;
        }
        (0..self.len()).filter(|&i| !has_child[i]).map(|i| self.chain(i)).collect()
    }

    /// Checks the defining property against the current coloring.
    pub fn check(&self, g: &Multigraph, c: &PartialEdgeColoring) -> Result<(), String> {
        if c.is_colored(self.edges[0]) {
            return Err("first fan edge is colored".into());
        }
        for i in 0..self.len() {
            let e = self.edges[i];
            if g.other(e, self.center) != self.leaves[i] {
                return Err(format!("fan edge {i} does not join the center to its leaf"));
            }
            if i == 0 {
                continue;
            }
            let p = self.parent[i].ok_or("non-root fan edge without parent")?;
            if p >= i {
                return Err(format!("fan edge {i} has a later parent {p}"));
            }
            let col = c.color(e).ok_or("uncolored fan edge")?;
            if !c.is_missing(self.leaves[p], col) {
                return Err(format!("color of fan edge {i} is not missing at its parent leaf"));
            }
        }
        Ok(())
    }

    /// Colors missing at some leaf of the fan.
    pub fn missing_union(&self, c: &PartialEdgeColoring) -> crate::graph::BitSet {
        let mut s = crate::graph::BitSet::new(c.k());
        for &v in &self.leaves {
            s.union_with(c.missing(v));
        }
        s
    }
}

/// Grows a maximal multifan at `r` starting from the uncolored edge `e0`,
/// never using edges of `forbidden`. Leaves are scanned in fan order and
/// their missing colors in increasing order.
pub fn build_multifan(
    g: &Multigraph,
    c: &PartialEdgeColoring,
    r: usize,
    e0: EdgeId,
    forbidden: &EdgeSet,
) -> Multifan {
    debug_assert!(!c.is_colored(e0));
    let mut fan = Multifan {
        center: r,
        edges: vec![e0],
        leaves: vec![g.other(e0, r)],
        parent: vec![None],
    };
    let mut in_fan = std::collections::HashSet::from([e0]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        let s = fan.leaves[j];
        for col in c.missing(s).iter() {
            let Some(f) = c.edge_at(r, col) else { continue };
            if forbidden.contains(f) || !in_fan.insert(f) {
                continue;
            }
            fan.edges.push(f);
            fan.leaves.push(g.other(f, r));
            fan.parent.push(Some(j));
            queue.push_back(fan.len() - 1);
        }
    }
    fan
}

/// Shifts along the linear sequence `chain` up to position `h`: each
/// `e_{l_{i-1}}` takes the color of `e_{l_i}` for `i <= h`, after which
/// `e_{l_h}` is the uncolored edge.
pub fn shift(
    g: &Multigraph,
    c: &mut PartialEdgeColoring,
    fan: &Multifan,
    chain: &[usize],
    h: usize,
) -> Result<(), ColoringError> {
    let bad = |s: &str| Err(ColoringError::BadChain(s.into()));
    if chain.first() != Some(&0) {
        return bad("linear sequence must start at the uncolored edge");
    }
    if h >= chain.len() {
        return bad("shift index beyond the sequence");
    }
    if chain.iter().any(|&i| i >= fan.len()) {
        return bad("sequence index outside the fan");
    }
    if c.is_colored(fan.edges[0]) {
        return bad("first fan edge is colored");
    }
    let mut cols: Vec<Color> = Vec::with_capacity(h);
    for w in chain.windows(2).take(h) {
        let col = match c.color(fan.edges[w[1]]) {
            Some(col) => col,
            None => return bad("uncolored edge inside the sequence"),
        };
        if !c.is_missing(fan.leaves[w[0]], col) {
            return bad("color not missing at the previous leaf");
        }
        cols.push(col);
    }
    for &i in &chain[1..=h] {
        c.unset(g, fan.edges[i]);
    }
    for (i, &col) in cols.iter().enumerate() {
        c.set(g, fan.edges[chain[i]], col)
            .expect("shift along a linear sequence stays proper");
    }
    c.debug_check(g);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn triangle_one_uncolored() -> (Multigraph, PartialEdgeColoring, Vec<EdgeId>) {
        let g = Graph::complete(3).to_multigraph();
        let es = g.edges_sorted(); // (0,1) (0,2) (1,2)
        let c = PartialEdgeColoring::from_assignment(&g, 3, [(es[1], 0), (es[2], 1)]).unwrap();
        (g, c, es)
    }

    #[test]
    fn triangle_fan_property() {
        let (g, c, es) = triangle_one_uncolored();
        let fan = build_multifan(&g, &c, 0, es[0], &EdgeSet::new());
        assert!(fan.len() >= 1);
        fan.check(&g, &c).unwrap();
        // exhaustive: every fan edge's color is missing at some earlier leaf
        for i in 1..fan.len() {
            let col = c.color(fan.edges[i]).unwrap();
            assert!((0..i).any(|j| c.is_missing(fan.leaves[j], col)));
        }
    }

    #[test]
    fn forbidden_everything_gives_trivial_fan() {
        let (g, c, es) = triangle_one_uncolored();
        let forb: EdgeSet = g.incident(0).iter().copied().filter(|&e| e != es[0]).collect();
        let fan = build_multifan(&g, &c, 0, es[0], &forb);
        assert_eq!(fan.len(), 1);
    }

    #[test]
    fn colors_missing_nowhere_give_trivial_fan() {
        // star at 0 with leaves 1..3; edge 0-1 uncolored, others use colors
        // present at every leaf via pendant edges
        let mut g = Multigraph::new(7);
        let e0 = g.add_edge(0, 1).unwrap();
        let a = g.add_edge(0, 2).unwrap();
        let b = g.add_edge(0, 3).unwrap();
        let p1 = g.add_edge(1, 4).unwrap();
        let p2 = g.add_edge(1, 5).unwrap();
        let c = PartialEdgeColoring::from_assignment(&g, 2, [(a, 0), (b, 1), (p1, 0), (p2, 1)]).unwrap();
        let fan = build_multifan(&g, &c, 0, e0, &EdgeSet::new());
        assert_eq!(fan.edges, vec![e0]);
    }

    #[test]
    fn identity_and_single_shift() {
        let (g, mut c, es) = triangle_one_uncolored();
        let fan = build_multifan(&g, &c, 0, es[0], &EdgeSet::new());
        let before = c.clone();
        shift(&g, &mut c, &fan, &[0], 0).unwrap();
        assert_eq!(c, before);
        assert_eq!(fan.leaves[1], 2);
        let col = c.color(fan.edges[1]).unwrap();
        shift(&g, &mut c, &fan, &fan.chain(1), 1).unwrap();
        assert_eq!(c.color(es[0]), Some(col));
        assert!(!c.is_colored(fan.edges[1]));
    }

    #[test]
    fn random_fan_shifts_stay_proper() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = 9;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.6) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let mg = g.to_multigraph();
            if mg.edge_count() == 0 {
                continue;
            }
            let mut c = super::super::vizing_color(&mg, g.max_degree() + 1).unwrap();
            let es = mg.edges_sorted();
            let e0 = es[rng.gen_range(0..es.len())];
            c.unset(&mg, e0);
            let (u, _) = mg.endpoints(e0);
            let fan = build_multifan(&mg, &c, u, e0, &EdgeSet::new());
            fan.check(&mg, &c).unwrap();
            let i = rng.gen_range(0..fan.len());
            let chain = fan.chain(i);
            let h = chain.len() - 1;
            shift(&mg, &mut c, &fan, &chain, h).unwrap();
            c.check_coherent(&mg).unwrap();
            let unc = c.uncolored(&mg);
            assert_eq!(unc, vec![fan.edges[i]]);
        }
    }
}
