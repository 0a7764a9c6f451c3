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

use super::{Color, ColoringError, PartialEdgeColoring};
use crate::graph::{EdgeId, Multigraph};

/// A maximal `(alpha, gamma)`-alternating path or even cycle.
///
/// For a path, `vertices` has one more entry than `edges`; for a cycle the
/// closing edge joins the last vertex back to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempePath {
    pub alpha: Color,
    pub gamma: Color,
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
    pub is_cycle: bool,
}

impl KempePath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

fn walk(
    g: &Multigraph,
    c: &PartialEdgeColoring,
    v: usize,
    first: Color,
    second: Color,
) -> (Vec<usize>, Vec<EdgeId>, bool) {
    let mut verts = vec![v];
    let mut edges = Vec::new();
    let (mut cur, mut col) = (v, first);
    while let Some(e) = c.edge_at(cur, col) {
        let w = g.other(e, cur);
        edges.push(e);
        if w == v {
            return (verts, edges, true);
        }
        verts.push(w);
        cur = w;
        col = if col == first { second } else { first };
    }
    (verts, edges, false)
}

/// The maximal `(a, b)`-alternating path or cycle through `v`, oriented to
/// start at `v` whenever `v` is an endpoint.
pub fn kempe_component(
    g: &Multigraph,
    c: &PartialEdgeColoring,
    v: usize,
    a: Color,
    b: Color,
) -> KempePath {
    assert_ne!(a, b, "Kempe chain needs two distinct colors");
    let (fv, fe, cyc) = walk(g, c, v, a, b);
    if cyc {
        return KempePath {
            alpha: a,
            gamma: b,
            vertices: fv,
            edges: fe,
            is_cycle: true,
        };
    }
    let (bv, be, _) = walk(g, c, v, b, a);
    if be.is_empty() {
        return KempePath {
            alpha: a,
            gamma: b,
            vertices: fv,
            edges: fe,
            is_cycle: false,
        };
    }
    if fe.is_empty() {
        return KempePath {
            alpha: a,
            gamma: b,
            vertices: bv,
            edges: be,
            is_cycle: false,
        };
    }
    let mut vertices: Vec<usize> = bv.into_iter().rev().collect();
    vertices.extend_from_slice(&fv[1..]);
    let mut edges: Vec<EdgeId> = be.into_iter().rev().collect();
    edges.extend(fe);
    KempePath {
        alpha: a,
        gamma: b,
        vertices,
        edges,
        is_cycle: false,
    }
}

fn validate(g: &Multigraph, c: &PartialEdgeColoring, p: &KempePath) -> Result<(), ColoringError> {
    let bad = |s: String| Err(ColoringError::BadKempePath(s));
    let (a, b) = (p.alpha, p.gamma);
    if p.edges.is_empty() {
        return Ok(());
    }
    let expect_verts = if p.is_cycle { p.edges.len() } else { p.edges.len() + 1 };
    if p.vertices.len() != expect_verts {
        return bad("vertex and edge counts disagree".into());
    }
    for (i, &e) in p.edges.iter().enumerate() {
        let u = p.vertices[i];
        let w = p.vertices[(i + 1) % p.vertices.len()];
        let (x, y) = g.endpoints(e);
        if !((x == u && y == w) || (x == w && y == u)) {
            return bad(format!("edge {i} does not join consecutive vertices"));
        }
        match c.color(e) {
            Some(col) if col == a || col == b => {}
            _ => return bad(format!("edge {i} is not colored {a} or {b}")),
        }
        if i > 0 && c.color(e) == c.color(p.edges[i - 1]) {
            return bad(format!("edges {} and {i} do not alternate", i - 1));
        }
    }
    if p.is_cycle {
        if p.edges.len() % 2 == 1 {
            return bad("odd alternating cycle".into());
        }
        return Ok(());
    }
    let first = c.color(p.edges[0]).unwrap();
    let last = c.color(*p.edges.last().unwrap()).unwrap();
    let other = |x: Color| if x == a { b } else { a };
    if !c.is_missing(p.start(), other(first)) {
        return bad("path extends past its first vertex".into());
    }
    if !c.is_missing(p.end(), other(last)) {
        return bad("path extends past its last vertex".into());
    }
    Ok(())
}

/// Swaps `alpha` and `gamma` along `p`. The path must be a maximal chain of
/// the current coloring.
pub fn kempe_switch(
    g: &Multigraph,
    c: &mut PartialEdgeColoring,
    p: &KempePath,
) -> Result<(), ColoringError> {
    validate(g, c, p)?;
    let (a, b) = (p.alpha, p.gamma);
    let old: Vec<Color> = p.edges.iter().map(|&e| c.unset(g, e).unwrap()).collect();
    for (&e, col) in p.edges.iter().zip(old) {
        let new = if col == a { b } else { a };
        c.set(g, e, new).expect("maximal chain switch stays proper");
    }
    c.debug_check(g);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::verify::parity_check;
    use rand::{seq::SliceRandom, Rng, SeedableRng};

    #[test]
    fn empty_path_is_identity() {
        let g = Graph::path(3).to_multigraph();
        let mut c = PartialEdgeColoring::new(&g, 2);
        let p = kempe_component(&g, &c, 0, 0, 1);
        assert!(p.is_empty());
        let before = c.clone();
        kempe_switch(&g, &mut c, &p).unwrap();
        assert_eq!(c, before);
    }

    #[test]
    fn two_edge_path_transposes() {
        let g = Graph::path(3).to_multigraph();
        let es = g.edges_sorted();
        let mut c = PartialEdgeColoring::from_assignment(&g, 2, [(es[0], 0), (es[1], 1)]).unwrap();
        let p = kempe_component(&g, &c, 1, 0, 1);
        assert_eq!(p.vertices, vec![2, 1, 0]);
        kempe_switch(&g, &mut c, &p).unwrap();
        assert_eq!((c.color(es[0]), c.color(es[1])), (Some(1), Some(0)));
        c.check_coherent(&g).unwrap();
    }

    #[test]
    fn rejects_non_maximal() {
        let g = Graph::path(4).to_multigraph();
        let es = g.edges_sorted();
        let mut c =
            PartialEdgeColoring::from_assignment(&g, 2, [(es[0], 0), (es[1], 1), (es[2], 0)]).unwrap();
        let mut p = kempe_component(&g, &c, 0, 0, 1);
        assert_eq!(p.len(), 3);
        p.edges.pop();
        p.vertices.pop();
        assert!(matches!(kempe_switch(&g, &mut c, &p), Err(ColoringError::BadKempePath(_))));
    }

    #[test]
    fn even_cycle_component() {
        let g = Graph::cycle(6).to_multigraph();
        let es = g.edges_sorted();
        // edges sorted: (0,1),(0,5),(1,2),(2,3),(3,4),(4,5)
        let cols = [0, 1, 1, 0, 1, 0];
        let mut c = PartialEdgeColoring::from_assignment(&g, 2, es.iter().copied().zip(cols)).unwrap();
        let p = kempe_component(&g, &c, 3, 0, 1);
        assert!(p.is_cycle);
        assert_eq!(p.len(), 6);
        kempe_switch(&g, &mut c, &p).unwrap();
        assert_eq!(c.color(es[0]), Some(1));
    }

    #[test]
    fn random_switches_keep_invariants() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = 10;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let mg = g.to_multigraph();
            let k = g.max_degree() + 1;
            let mut c = vizing_color_for_test(&mg, k);
            for _ in 0..100 {
                let v = rng.gen_range(0..n);
                let mut cols: Vec<_> = (0..k).collect();
                cols.shuffle(&mut rng);
                let p = kempe_component(&mg, &c, v, cols[0], cols[1]);
                kempe_switch(&mg, &mut c, &p).unwrap();
                c.check_coherent(&mg).unwrap();
                assert_eq!(parity_check(&mg, &c), Ok(()));
                // involution
                let mut d = c.clone();
                let q = kempe_component(&mg, &d, v, cols[0], cols[1]);
                kempe_switch(&mg, &mut d, &q).unwrap();
                let q2 = kempe_component(&mg, &d, v, cols[0], cols[1]);
                kempe_switch(&mg, &mut d, &q2).unwrap();
                assert_eq!(d, c);
            }
        }
    }

    fn vizing_color_for_test(g: &Multigraph, k: usize) -> PartialEdgeColoring {
        super::super::vizing_color(g, k).unwrap()
    }
}
