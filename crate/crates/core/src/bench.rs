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


//! Seeded end-to-end sweeps over random dense graphs.

use std::time::Instant;

use serde::Serialize;

use crate::graph::random::random_dense;
use crate::pipeline::Mode;
use crate::solve::{solve, SolveOptions, Status};

#[derive(Debug, Clone, Serialize)]
pub struct BenchOptions {
    pub sizes: Vec<usize>,
    /// Edge probability of the `G(n, p)` samples.
    pub density: f64,
    /// Samples need `δ ≥ min_ratio · n`.
    pub min_ratio: f64,
    pub eps: f64,
    pub xi: f64,
    pub mode: Mode,
    pub trials: usize,
    pub seed: u64,
    #[serde(skip)]
    pub timings: bool,
    #[serde(skip)]
    pub threads: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        let s = SolveOptions::default();
        BenchOptions {
            sizes: vec![60, 100],
            density: 0.65,
            min_ratio: 0.55,
            eps: s.eps,
            xi: s.xi,
            mode: s.mode,
            trials: 20,
            seed: 0,
            timings: false,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub graph_seed: u64,
    pub max_degree: Option<usize>,
    pub min_degree: Option<usize>,
    pub case: Option<String>,
    pub status: Status,
    pub method: Option<String>,
    pub colors_used: Option<usize>,
    /// Validator verdict on the emitted coloring.
    pub verdict: Option<String>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub trials: usize,
    pub successes: usize,
    pub pipeline_successes: usize,
    pub fallback_successes: usize,
    pub failures: usize,
    pub input_errors: usize,
    /// Emitted colorings that passed validation with at most `Δ + 2` colors.
    pub valid_emissions: usize,
    pub success_rate: f64,
    pub pipeline_rate: f64,
    pub mean_colors: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_seconds: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub options: BenchOptions,
    pub rows: Vec<BenchRow>,
    pub trials: Vec<TrialRecord>,
}

/// Seed of trial `t` at order `n`, a fixed mix of the run seed.
pub fn trial_seed(seed: u64, n: usize, t: usize) -> u64 {
    let mut z = seed ^ ((n as u64) << 32) ^ t as u64;
    // splitmix64 finalizer
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run_trial(o: &BenchOptions, n: usize, t: usize) -> TrialRecord {
    let start = Instant::now();
    let graph_seed = trial_seed(o.seed, n, t);
    let mut rec = TrialRecord {
        n,
        trial: t,
        graph_seed,
        max_degree: None,
        min_degree: None,
        case: None,
        status: Status::InputError,
        method: None,
        colors_used: None,
        verdict: None,
        error: None,
        seconds: None,
    };
    match random_dense(n, o.density, o.min_ratio, graph_seed, 10_000) {
        None => rec.error = Some("no sample met the degree bounds".into()),
        Some(g) => {
            let sopts = SolveOptions { eps: o.eps, xi: o.xi, mode: o.mode, seed: graph_seed, ..SolveOptions::default() };
            let out = solve(&g, &sopts);
            let r = out.report;
            rec.max_degree = Some(r.max_degree);
            rec.min_degree = Some(r.min_degree);
            rec.case = Some(r.case);
            rec.status = r.status;
            rec.method = r.method;
            rec.colors_used = r.colors_used;
            rec.verdict = r.verdict;
            rec.error = r.error;
        }
    }
    if o.timings {
        rec.seconds = Some(start.elapsed().as_secs_f64());
    }
    rec
}

fn summarize(n: usize, recs: &[TrialRecord], timings: bool) -> BenchRow {
    let ok: Vec<&TrialRecord> = recs.iter().filter(|r| r.status == Status::Success).collect();
    let piped = ok.iter().filter(|r| r.method.as_deref() == Some("pipeline")).count();
    let valid = ok
        .iter()
        .filter(|r| r.verdict.as_deref() == Some("ok") && r.colors_used.zip(r.max_degree).is_some_and(|(c, d)| c <= d + 2))
        .count();
    let rate = |x: usize| if recs.is_empty() { 0.0 } else { x as f64 / recs.len() as f64 };
    BenchRow {
        n,
        trials: recs.len(),
        successes: ok.len(),
        pipeline_successes: piped,
        fallback_successes: ok.len() - piped,
        failures: recs.iter().filter(|r| r.status == Status::Failure).count(),
        input_errors: recs.iter().filter(|r| r.status == Status::InputError).count(),
        valid_emissions: valid,
        success_rate: rate(ok.len()),
        pipeline_rate: rate(piped),
        mean_colors: (!ok.is_empty()).then(|| ok.iter().filter_map(|r| r.colors_used).sum::<usize>() as f64 / ok.len() as f64),
        mean_seconds: (timings && !recs.is_empty())
            .then(|| recs.iter().filter_map(|r| r.seconds).sum::<f64>() / recs.len() as f64),
    }
}

/// Runs every `(n, trial)` pair. Output order and content depend only on the
/// options, not on the thread count.
pub fn run_bench(o: &BenchOptions) -> BenchReport {
    let jobs: Vec<(usize, usize)> = o.sizes.iter().flat_map(|&n| (0..o.trials).map(move |t| (n, t))).collect();
    let threads = o.threads.max(1).min(jobs.len().max(1));
    let mut trials: Vec<Option<TrialRecord>> = vec![None; jobs.len()];
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let jobs = &jobs;
                s.spawn(move || {
                    (w..jobs.len()).step_by(threads).map(|i| (i, run_trial(o, jobs[i].0, jobs[i].1))).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("bench worker panicked") {
                trials[i] = Some(r);
            }
        }
    });
    let trials: Vec<TrialRecord> = trials.into_iter().map(|r| r.expect("every job ran")).collect();
    let rows = o
        .sizes
        .iter()
        .map(|&n| {
            let recs: Vec<TrialRecord> = trials.iter().filter(|r| r.n == n).cloned().collect();
            summarize(n, &recs, o.timings)
        })
        .collect();
    BenchReport { options: o.clone(), rows, trials }
}

impl BenchReport {
    /// Fixed-width summary, one line per order.
    pub fn table(&self) -> String {
        let mut s = String::from("     n  trials  success  pipeline  fallback  failed  mean colors\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{:>6}  {:>6}  {:>7}  {:>8}  {:>8}  {:>6}  {:>11}\n",
                r.n,
                r.trials,
                r.successes,
                r.pipeline_successes,
                r.fallback_successes,
                r.failures + r.input_errors,
                r.mean_colors.map_or("-".into(), |c| format!("{c:.2}")),
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_empty() {
        let o = BenchOptions { trials: 0, ..BenchOptions::default() };
        let r = run_bench(&o);
        assert!(r.trials.is_empty());
        assert!(r.rows.iter().all(|row| row.trials == 0 && row.success_rate == 0.0));
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let mut o = BenchOptions { sizes: vec![24], trials: 3, density: 0.7, ..BenchOptions::default() };
        let a = serde_json::to_string(&run_bench(&o)).unwrap();
        o.threads = 3;
        let b = serde_json::to_string(&run_bench(&o)).unwrap();
        assert_eq!(a, b);
    }
}
