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

//! Carrying a good coloring of a reduced graph back to the original one.

use std::collections::HashMap;

use super::{AugmentedGraph, ReductionError};
use crate::chromatics::PartialEdgeColoring;
use crate::verify::validate_good;

/// An edge set deleted on the way down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layer {
    /// Takes one fresh color.
    Matching(Vec<(usize, usize)>),
    /// Vertex-disjoint paths; takes two fresh colors alternating along each path.
    Forest(Vec<Vec<usize>>),
}

impl Layer {
    pub fn fresh_colors(&self) -> usize {
        match self {
            Layer::Matching(_) => 1,
            Layer::Forest(_) => 2,
        }
    }
}

/// `inner` is a good coloring of `inner_ag`, whose base is the outer base
/// minus the layers and whose `M` is the same. The result is verified good.
pub fn lift_coloring(
    outer: &AugmentedGraph,
    inner_ag: &AugmentedGraph,
    inner: &PartialEdgeColoring,
    layers: &[Layer],
) -> Result<PartialEdgeColoring, ReductionError> {
    if outer.matching != inner_ag.matching {
        return Err(ReductionError::Precondition { name: "matching", detail: "inner and outer M differ".into() });
    }
    let ih = &inner_ag.combined;
    let mut used: Vec<usize> = ih.edge_ids().filter_map(|e| inner.color(e)).collect();
    used.sort_unstable();
    used.dedup();
    let rename: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let fresh: usize = layers.iter().map(Layer::fresh_colors).sum();
    let k = used.len() + fresh;
    let allowed = outer.base.max_degree() + 2;
    if k > allowed {
        return Err(ReductionError::Palette(format!(
            "{} inner colors + {fresh} fresh = {k} > Δ + 2 = {allowed}",
            used.len()
        )));
    }
    let mut by_pair: HashMap<(usize, usize), usize> = HashMap::new();
    for e in ih.edge_ids() {
        let (u, v) = ih.endpoints(e);
        let col = inner.color(e).ok_or_else(|| ReductionError::Precondition {
            name: "inner_total",
            detail: format!("inner edge {u}-{v} uncolored"),
        })?;
        by_pair.insert((u.min(v), u.max(v)), rename[&col]);
    }
    let mut next = used.len();
    for layer in layers {
        match layer {
            Layer::Matching(es) => {
                for &(u, v) in es {
                    by_pair.insert((u.min(v), u.max(v)), next);
                }
            }
            Layer::Forest(paths) => {
                for p in paths {
                    for (i, w) in p.windows(2).enumerate() {
                        by_pair.insert((w[0].min(w[1]), w[0].max(w[1])), next + i % 2);
                    }
                }
            }
        }
        next += layer.fresh_colors();
    }
    let oh = &outer.combined;
    let mut assign = Vec::with_capacity(oh.edge_count());
    for e in oh.edges_sorted() {
        let (u, v) = oh.endpoints(e);
        let col = by_pair.get(&(u.min(v), u.max(v))).ok_or_else(|| ReductionError::Precondition {
            name: "layers",
            detail: format!("edge {u}-{v} of the outer graph is in no layer"),
        })?;
        assign.push((e, *col));
    }
    if assign.len() != by_pair.len() {
        return Err(ReductionError::Precondition { name: "layers", detail: "layers hold edges outside G".into() });
    }
    let c = PartialEdgeColoring::from_assignment(oh, k.max(1), assign)?;
    validate_good(outer, &c).map_err(ReductionError::NotGood)?;
    Ok(c)
}
