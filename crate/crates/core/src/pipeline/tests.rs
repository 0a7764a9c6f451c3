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

use super::*;
use crate::reduction::classify_and_pick_matching;
use crate::reduction::Plan;
use crate::verify::validate_good;

fn run(g: &Graph, mode: Mode) -> PipelineReport {
    let plan = classify_and_pick_matching(g, 0.1, 0.001).unwrap();
    let Plan::Direct(asg) = plan else { panic!("expected a direct plan, got {}", plan.label()) };
    run_pipeline(g, &asg, &PipelineOptions { mode, seed: 0, trace: true })
}

/// `C_n^d`: vertex `i` adjacent to `i ± 1, ..., i ± d`.
fn circulant(n: usize, d: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for s in 1..=d {
            let j = (i + s) % n;
            if !g.has_edge(i, j) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

#[test]
fn regular_even_best_effort() {
    let g = circulant(80, 25);
    let rep = run(&g, Mode::BestEffort);
    let c = rep.result.as_ref().unwrap_or_else(|e| panic!("{e}\n{:#?}\n{:?}", rep.warnings, rep.snapshots));
    validate_good(&rep.ag, c).unwrap();
    assert!(rep.snapshots.len() == 7);
    assert!(!rep.trace.is_empty());
}

#[test]
fn regular_odd_best_effort() {
    let g = circulant(81, 25);
    let rep = run(&g, Mode::BestEffort);
    let c = rep.result.as_ref().unwrap_or_else(|e| panic!("{e}\n{:#?}\n{:?}", rep.warnings, rep.snapshots));
    validate_good(&rep.ag, c).unwrap();
}

fn dense_random(n: usize, seed: u64) -> Graph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.65) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if 100 * g.min_degree() >= 55 * n && 4 * g.max_degree() < 3 * n {
            return g;
        }
    }
}

#[test]
fn dense_random_best_effort() {
    for seed in 0..3 {
        let g = dense_random(60, seed);
        let rep = run(&g, Mode::BestEffort);
        let c = rep.result.as_ref().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        validate_good(&rep.ag, c).unwrap();
        assert!(rep.params.k + rep.params.ell <= g.max_degree() + 2);
    }
}

#[test]
fn strict_reports_first_failed_check() {
    let g = circulant(80, 25);
    let rep = run(&g, Mode::Strict);
    if let Err(PipelineError::Check { name, .. }) = &rep.result {
        let last = rep.checks.last().unwrap();
        assert!(!last.holds);
        assert_eq!(&last.name, name);
    }
}

#[test]
fn priority_matching_prefers_early_vertices() {
    use super::finish::priority_matching;
    use crate::graph::EdgeId;
    // left 0, 1 both see right 2 only; 0 comes first
    let adj = vec![vec![(2, EdgeId(0))], vec![(2, EdgeId(1))], vec![]];
    let m = priority_matching(&[1, 0], &adj, 3);
    assert_eq!(m, vec![(1, 2, EdgeId(1))]);
    let m = priority_matching(&[0, 1], &adj, 3);
    assert_eq!(m, vec![(0, 2, EdgeId(0))]);
}
