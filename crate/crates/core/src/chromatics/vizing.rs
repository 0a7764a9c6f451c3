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

use super::{kempe_component, kempe_switch, ColoringError, ExtendConfig, ExtendEngine, PartialEdgeColoring};
use crate::graph::{EdgeSet, Multigraph};

/// Colors every edge of `g` with at most `k` colors.
///
/// Simple graphs use Misra–Gries fans and need `k >= Δ + 1`. Multigraphs go
/// through the multifan engine, which always succeeds for `k >= Δ + μ`; for
/// `Δ <= k < Δ + μ` it is attempted anyway and a stall is reported as a
/// palette error.
pub fn vizing_color(g: &Multigraph, k: usize) -> Result<PartialEdgeColoring, ColoringError> {
    let mu = g.mu();
    let bound = g.max_degree() + mu.max(1);
    let floor = if mu <= 1 { bound } else { g.max_degree() };
    if g.edge_count() > 0 && k < floor {
        return Err(ColoringError::PaletteTooSmall { k, bound });
    }
    let mut c = PartialEdgeColoring::new(g, k);
    if mu <= 1 {
        for e in g.edges_sorted() {
            misra_gries(g, &mut c, e);
        }
        c.debug_check(g);
        return Ok(c);
    }
    let cfg = ExtendConfig::default();
    match ExtendEngine::new(g, &EdgeSet::new(), &EdgeSet::new(), cfg).run(&mut c) {
        Ok(_) => Ok(c),
        Err(ColoringError::Stalled { .. }) if k < bound => Err(ColoringError::PaletteTooSmall { k, bound }),
        Err(e) => Err(e),
    }
}

/// Colors one uncolored edge of a simple graph, recoloring along a fan and a
/// Kempe chain. Requires `k >= Δ + 1`.
pub fn misra_gries(g: &Multigraph, c: &mut PartialEdgeColoring, e: crate::graph::EdgeId) {
    let (u, v0) = g.endpoints(e);
    let edge = |w: usize| g.edges_between(u, w)[0];
    // maximal fan at u starting at v0
    let mut fan = vec![v0];
    let mut in_fan = vec![false; g.n()];
    in_fan[v0] = true;
    loop {
        let last = *fan.last().unwrap();
        let next = g.incident(u).iter().copied().find_map(|f| {
            let w = g.other(f, u);
            match c.color(f) {
                Some(col) if !in_fan[w] && c.is_missing(last, col) => Some(w),
                _ => None,
            }
        });
        match next {
            Some(w) => {
                in_fan[w] = true;
                fan.push(w);
            }
            None => break,
        }
    }
    let cu = c.missing(u).first().expect("k > Δ leaves a free color at u");
    let last = *fan.last().unwrap();
    let d = c.missing(last).first().expect("k > Δ leaves a free color at every vertex");
    if cu != d && !c.is_missing(u, d) {
        let p = kempe_component(g, c, u, cu, d);
        kempe_switch(g, c, &p).expect("component is maximal");
    }
    // first fan prefix still valid whose tip misses d
    let mut tip = None;
    for i in 0..fan.len() {
        if i > 0 {
            match c.color(edge(fan[i])) {
                Some(col) if c.is_missing(fan[i - 1], col) => {}
                _ => break,
            }
        }
        if c.is_missing(fan[i], d) {
            tip = Some(i);
            break;
        }
    }
    let tip = tip.expect("Misra–Gries invariant: some fan prefix ends at a vertex missing d");
    let cols: Vec<_> = (1..=tip).map(|i| c.color(edge(fan[i])).unwrap()).collect();
    for &w in &fan[1..=tip] {
        c.unset(g, edge(w));
    }
    for (i, col) in cols.into_iter().enumerate() {
        c.set(g, edge(fan[i]), col).expect("fan rotation stays proper");
    }
    c.set(g, edge(fan[tip]), d).expect("d is free at u and at the fan tip");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn triangle_three_colors() {
        let g = Graph::complete(3).to_multigraph();
        let c = vizing_color(&g, 3).unwrap();
        assert!(c.is_total(&g));
        c.check_coherent(&g).unwrap();
        assert_eq!(crate::verify::brute_chromatic_index(&g).unwrap(), 3);
    }

    #[test]
    fn double_edge_two_colors() {
        let mut g = Multigraph::new(2);
        let a = g.add_edge(0, 1).unwrap();
        let b = g.add_edge(0, 1).unwrap();
        let c = vizing_color(&g, 2).unwrap();
        assert_ne!(c.color(a), c.color(b));
        assert!(c.is_total(&g));
    }

    #[test]
    fn rejects_small_palette() {
        let g = Graph::complete(4).to_multigraph();
        assert_eq!(
            vizing_color(&g, 3),
            Err(ColoringError::PaletteTooSmall { k: 3, bound: 4 })
        );
    }

    #[test]
    fn random_multigraphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(2..12);
            let mut g = Multigraph::new(n);
            for _ in 0..rng.gen_range(0..3 * n) {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v && g.multiplicity(u, v) < 3 {
                    g.add_edge(u, v).unwrap();
                }
            }
            let k = g.max_degree() + g.mu().max(1);
            let c = vizing_color(&g, k).unwrap();
            assert!(c.is_total(&g));
            c.check_coherent(&g).unwrap();
        }
    }
}
