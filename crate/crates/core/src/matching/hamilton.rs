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

//! Constructive Dirac: extend a path, close it by rotation, reopen the cycle
//! at a vertex with an outside neighbor.

use super::MatchingError;
use crate::graph::Graph;

pub fn is_hamilton_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Closes a path into a cycle on the same vertex set, if a rotation
/// `v0 ~ v_{i+1}` and `v_i ~ v_k` exists.
fn close(g: &Graph, path: &[usize]) -> Option<Vec<usize>> {
    let k = path.len() - 1;
    let (v0, vk) = (path[0], path[k]);
    if g.has_edge(v0, vk) {
        return Some(path.to_vec());
    }
    for i in 0..k {
        if g.has_edge(v0, path[i + 1]) && g.has_edge(path[i], vk) {
            let mut cyc = path[..=i].to_vec();
            cyc.extend(path[i + 1..].iter().rev());
            return Some(cyc);
        }
    }
    None
}

/// Extends both ends of the path greedily until neither end has an outside neighbor.
fn extend(g: &Graph, path: &mut Vec<usize>, on: &mut [bool]) {
    loop {
        let last = *path.last().unwrap();
        if let Some(&u) = g.neighbors(last).iter().find(|&&u| !on[u]) {
            on[u] = true;
            path.push(u);
            continue;
        }
        let first = path[0];
        if let Some(&u) = g.neighbors(first).iter().find(|&&u| !on[u]) {
            on[u] = true;
            path.insert(0, u);
            continue;
        }
        return;
    }
}

pub fn dirac_hamilton_cycle(g: &Graph) -> Result<Vec<usize>, MatchingError> {
    let n = g.n();
    if n < 3 {
        return Err(MatchingError::Precondition { name: "order", detail: format!("n = {n} < 3") });
    }
    if 2 * g.min_degree() < n {
        return Err(MatchingError::Precondition {
            name: "min_degree",
            detail: format!("δ = {} < n/2 = {}", g.min_degree(), n as f64 / 2.0),
        });
    }
    let mut on = vec![false; n];
    on[0] = true;
    let mut path = vec![0];
    loop {
        extend(g, &mut path, &mut on);
        // a maximal path in a Dirac graph always closes
        let cyc = close(g, &path).expect("maximal path in a Dirac graph closes into a cycle");
        if cyc.len() == n {
            debug_assert!(is_hamilton_cycle(g, &cyc));
            return Ok(cyc);
        }
        // Dirac graphs are connected, so some outside vertex touches the cycle
        let (j, w) = cyc
            .iter()
            .enumerate()
            .find_map(|(j, &c)| g.neighbors(c).iter().find(|&&w| !on[w]).map(|&w| (j, w)))
            .expect("Dirac graph is connected");
        on[w] = true;
        path = std::iter::once(w).chain(cyc[j..].iter().copied()).chain(cyc[..j].iter().copied()).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_cases() {
        let c = dirac_hamilton_cycle(&Graph::complete(4)).unwrap();
        assert!(is_hamilton_cycle(&Graph::complete(4), &c));
        let c4 = Graph::cycle(4);
        assert!(is_hamilton_cycle(&c4, &dirac_hamilton_cycle(&c4).unwrap()));
        assert!(dirac_hamilton_cycle(&Graph::path(4)).is_err());
        assert!(dirac_hamilton_cycle(&Graph::complete(2)).is_err());
        let kbb = Graph::complete_bipartite(3, 3);
        assert!(is_hamilton_cycle(&kbb, &dirac_hamilton_cycle(&kbb).unwrap()));
    }

    #[test]
    fn random_dirac_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let mut done = 0;
        while done < 500 {
            let n = rng.gen_range(3..=120);
            let p = rng.gen_range(0.5..0.9);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            if 2 * g.min_degree() < n {
                continue;
            }
            let c = dirac_hamilton_cycle(&g).unwrap();
            assert!(is_hamilton_cycle(&g, &c));
            done += 1;
        }
    }
}
