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

use super::{kempe_component, kempe_switch, ColoringError, PartialEdgeColoring};
use crate::graph::Multigraph;

/// Colors a bipartite multigraph with exactly `Δ` colors by alternating-path
/// exchanges.
pub fn konig_color(g: &Multigraph) -> Result<PartialEdgeColoring, ColoringError> {
    if g.bipartition().is_none() {
        return Err(ColoringError::NotBipartite);
    }
    let k = g.max_degree();
    let mut c = PartialEdgeColoring::new(g, k);
    for e in g.edges_sorted() {
        let (u, v) = g.endpoints(e);
        let a = c.missing(u).first().expect("uncolored edge leaves a color free at u");
        if !c.is_missing(v, a) {
            let b = c.missing(v).first().expect("uncolored edge leaves a color free at v");
            // the (a, b)-chain from v ends away from u in a bipartite graph
            let p = kempe_component(g, &c, v, a, b);
            debug_assert!(!p.contains_vertex(u));
            kempe_switch(g, &mut c, &p).expect("component is maximal");
        }
        c.set(g, e, a).expect("a is free at both ends");
    }
    c.debug_check(g);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn even_cycle_two_colors() {
        let g = Graph::cycle(6).to_multigraph();
        let c = konig_color(&g).unwrap();
        assert_eq!(c.k(), 2);
        assert!(c.is_total(&g));
    }

    #[test]
    fn k33_three_colors() {
        let g = Graph::complete_bipartite(3, 3).to_multigraph();
        let c = konig_color(&g).unwrap();
        assert_eq!(c.k(), 3);
        assert_eq!(c.colors_used(&g), 3);
        c.check_coherent(&g).unwrap();
    }

    #[test]
    fn double_edge_multigraph() {
        let mut g = Multigraph::new(4);
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 3).unwrap();
        g.add_edge(2, 1).unwrap();
        g.add_edge(2, 3).unwrap();
        let c = konig_color(&g).unwrap();
        assert_eq!(g.max_degree(), 3);
        assert_eq!(c.k(), 3);
        assert!(c.is_total(&g));
    }

    #[test]
    fn odd_cycle_rejected() {
        assert_eq!(
            konig_color(&Graph::cycle(5).to_multigraph()),
            Err(ColoringError::NotBipartite)
        );
    }
}
