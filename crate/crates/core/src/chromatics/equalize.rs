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

use super::{kempe_component, kempe_switch, Color, ColoringError, KempePath, PartialEdgeColoring};
use crate::graph::{EdgeSet, Multigraph};

fn widen(g: &Multigraph, c: &PartialEdgeColoring, k: usize) -> Result<PartialEdgeColoring, ColoringError> {
    let sizes = c.class_sizes(g);
    if let Some(top) = (0..c.k()).rev().find(|&i| sizes[i] > 0) {
        if top >= k {
            return Err(ColoringError::PaletteTooSmall { k, bound: top + 1 });
        }
    }
    if !c.is_total(g) {
        return Err(ColoringError::Precondition {
            name: "total",
            detail: format!("{} edges uncolored", c.uncolored(g).len()),
        });
    }
    let mut out = c.clone();
    if out.k() < k {
        out.add_colors(k - out.k());
    }
    Ok(out)
}

/// The `(a, b)`-components that hold one more `a`-edge than `b`-edges,
/// visited in order of their lowest `a`-edge.
fn a_heavy_paths<'a>(
    g: &'a Multigraph,
    c: &'a PartialEdgeColoring,
    a: Color,
    b: Color,
) -> impl Iterator<Item = KempePath> + 'a {
    let mut seen = std::collections::HashSet::new();
    g.edges_sorted()
        .into_iter()
        .filter(move |&e| c.color(e) == Some(a))
        .filter_map(move |e| {
            if seen.contains(&e) {
                return None;
            }
            let p = kempe_component(g, c, g.endpoints(e).0, a, b);
            seen.extend(p.edges.iter().copied());
            let na = p.edges.iter().filter(|&&f| c.color(f) == Some(a)).count();
            (!p.is_cycle && na * 2 > p.len()).then_some(p)
        })
}

/// Rebalances a total coloring so every class has `⌊|E|/k⌋` or `⌈|E|/k⌉`
/// edges, by switching `a`-heavy chains between the largest and smallest
/// classes.
pub fn equalize(g: &Multigraph, c: &PartialEdgeColoring, k: usize) -> Result<PartialEdgeColoring, ColoringError> {
    let mut out = widen(g, c, k)?;
    if k == 0 {
        return Ok(out);
    }
    let mut sizes = out.class_sizes(g);
    loop {
        let a = (0..k).max_by_key(|&i| (sizes[i], std::cmp::Reverse(i))).unwrap();
        let b = (0..k).min_by_key(|&i| (sizes[i], i)).unwrap();
        if sizes[a] <= sizes[b] + 1 {
            break;
        }
        let p = a_heavy_paths(g, &out, a, b)
            .next()
            .expect("a larger class always has an a-heavy chain against a smaller one");
        kempe_switch(g, &mut out, &p)?;
        sizes[a] -= 1;
        sizes[b] += 1;
    }
    Ok(out)
}

/// Like [`equalize`] but only performs switches that keep `f` rainbow.
/// Classes end up within 2 of each other.
pub fn equalize_with_rainbow(
    g: &Multigraph,
    c: &PartialEdgeColoring,
    k: usize,
    f: &EdgeSet,
) -> Result<PartialEdgeColoring, ColoringError> {
    if let Some((x, y)) = c.rainbow_violation(f.iter()) {
        return Err(ColoringError::NotRainbow(x, y));
    }
    let mut out = widen(g, c, k)?;
    if k == 0 {
        return Ok(out);
    }
    let mut fcount = vec![0usize; k];
    for e in f.iter() {
        if let Some(col) = out.color(e) {
            fcount[col] += 1;
        }
    }
    let mut sizes = out.class_sizes(g);
    'outer: loop {
        let mut by_size: Vec<Color> = (0..k).collect();
        by_size.sort_by_key(|&i| (std::cmp::Reverse(sizes[i]), i));
        for &a in &by_size {
            for &b in by_size.iter().rev() {
                if sizes[a] < sizes[b] + 2 {
                    break;
                }
                let safe = a_heavy_paths(g, &out, a, b).find(|p| {
                    let fa = p.edges.iter().filter(|&&e| f.contains(e) && out.color(e) == Some(a)).count();
                    let fb = p.edges.iter().filter(|&&e| f.contains(e) && out.color(e) == Some(b)).count();
                    fcount[a] + fb - fa <= 1 && fcount[b] + fa - fb <= 1
                });
                if let Some(p) = safe {
                    let fa = p.edges.iter().filter(|&&e| f.contains(e) && out.color(e) == Some(a)).count();
                    let fb = p.edges.iter().filter(|&&e| f.contains(e) && out.color(e) == Some(b)).count();
                    fcount[a] = fcount[a] + fb - fa;
                    fcount[b] = fcount[b] + fa - fb;
                    kempe_switch(g, &mut out, &p)?;
                    sizes[a] -= 1;
                    sizes[b] += 1;
                    continue 'outer;
                }
            }
            // pairs with the largest gap first; once `a` cannot move we try
            // the next class
        }
        break;
    }
    debug_assert!(out.rainbow_violation(f.iter()).is_none());
    let spread = sizes.iter().max().unwrap() - sizes.iter().min().unwrap();
    if spread > 5 {
        return Err(ColoringError::Precondition {
            name: "balance",
            detail: format!("class sizes still differ by {spread}"),
        });
    }
    Ok(out)
}
