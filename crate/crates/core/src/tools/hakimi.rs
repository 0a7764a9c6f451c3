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

//! Multigraph realization of a degree sequence.

use std::collections::BinaryHeap;

use super::ToolError;
use crate::graph::Multigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum HakimiViolation {
    OddSum { sum: usize },
    /// `d_1` exceeds the sum of the remaining degrees.
    DominantDegree { d1: usize, rest: usize },
}

#[derive(Debug, Clone)]
pub enum HakimiOutcome {
    Realized(Multigraph),
    Infeasible(HakimiViolation),
}

/// Loopless multigraph on `0..n` with `deg(i) = degrees[i]`, built by
/// repeatedly joining the two vertices of largest residual degree.
pub fn hakimi_realize(degrees: &[usize]) -> Result<HakimiOutcome, ToolError> {
    if degrees.windows(2).any(|w| w[0] < w[1]) {
        return Err(ToolError::Precondition { name: "sorted", detail: "degrees must be non-increasing".into() });
    }
    let sum: usize = degrees.iter().sum();
    if sum % 2 == 1 {
        return Ok(HakimiOutcome::Infeasible(HakimiViolation::OddSum { sum }));
    }
    if let Some(&d1) = degrees.first() {
        if d1 > sum - d1 {
            return Ok(HakimiOutcome::Infeasible(HakimiViolation::DominantDegree { d1, rest: sum - d1 }));
        }
    }
    let mut g = Multigraph::new(degrees.len());
    // ties broken toward the smaller index
    let mut heap: BinaryHeap<(usize, std::cmp::Reverse<usize>)> =
        degrees.iter().enumerate().filter(|&(_, &d)| d > 0).map(|(i, &d)| (d, std::cmp::Reverse(i))).collect();
    while let Some((d1, std::cmp::Reverse(u))) = heap.pop() {
        let (d2, std::cmp::Reverse(v)) = heap.pop().expect("feasible sequence pairs up");
        g.add_edge(u, v).expect("distinct vertices");
        if d1 > 1 {
            heap.push((d1 - 1, std::cmp::Reverse(u)));
        }
        if d2 > 1 {
            heap.push((d2 - 1, std::cmp::Reverse(v)));
        }
    }
    Ok(HakimiOutcome::Realized(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn realized(d: &[usize]) -> Option<Multigraph> {
        match hakimi_realize(d).unwrap() {
            HakimiOutcome::Realized(g) => {
                for (i, &di) in d.iter().enumerate() {
                    assert_eq!(g.degree(i), di);
                }
                Some(g)
            }
            HakimiOutcome::Infeasible(_) => None,
        }
    }

    /// Exhaustive search over edge multiplicities.
    fn brute_feasible(d: &[usize]) -> bool {
        fn go(d: &mut Vec<usize>, i: usize, j: usize) -> bool {
            let n = d.len();
            if i == n {
                return d.iter().all(|&x| x == 0);
            }
            if j == n {
                return d[i] == 0 && go(d, i + 1, i + 2);
            }
            let cap = d[i].min(d[j]);
            for m in 0..=cap {
                d[i] -= m;
                d[j] -= m;
                let ok = go(d, i, j + 1);
                d[i] += m;
                d[j] += m;
                if ok {
                    return true;
                }
            }
            false
        }
        go(&mut d.to_vec(), 0, 1)
    }

    #[test]
    fn examples() {
        assert_eq!(realized(&[2, 2, 2]).unwrap().edge_count(), 3);
        assert!(matches!(hakimi_realize(&[3, 1]).unwrap(), HakimiOutcome::Infeasible(HakimiViolation::DominantDegree { d1: 3, rest: 1 })));
        assert!(matches!(hakimi_realize(&[2, 1]).unwrap(), HakimiOutcome::Infeasible(HakimiViolation::OddSum { sum: 3 })));
        let p3 = realized(&[2, 1, 1]).unwrap();
        assert_eq!(p3.mu(), 1);
        assert!(hakimi_realize(&[1, 2]).is_err());
        assert_eq!(realized(&[]).unwrap().edge_count(), 0);
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 1..=5usize {
            let total = 5usize.pow(n as u32);
            for code in 0..total {
                let mut d: Vec<usize> = (0..n).map(|i| code / 5usize.pow(i as u32) % 5).collect();
                if d.windows(2).any(|w| w[0] < w[1]) {
                    continue;
                }
                d.sort_unstable_by(|a, b| b.cmp(a));
                assert_eq!(realized(&d).is_some(), brute_feasible(&d), "{d:?}");
            }
        }
    }
}
