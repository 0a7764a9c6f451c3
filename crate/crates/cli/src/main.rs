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


//! `totalcolor`: color, verify, oracle and bench.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use totalcolor::bench::{run_bench, BenchOptions};
use totalcolor::chromatics::ColoringJson;
use totalcolor::graph::io::{parse_graph, Format};
use totalcolor::graph::Graph;
use totalcolor::matching::max_matching;
use totalcolor::pipeline::Mode;
use totalcolor::solve::{default_xi, solve, SolveOptions};
use totalcolor::verify::{audit_good_raw, validate_total, OracleCache, TotalColoring};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "totalcolor", version, about = "Certified (Δ+2)-total-colorings of dense graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Produce a validated total coloring.
    Color(ColorArgs),
    /// Check a coloring payload against a graph.
    Verify(VerifyArgs),
    /// Exact total chromatic number and chromatic index of a small graph.
    Oracle(OracleArgs),
    /// Seeded sweep over random dense graphs.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Auto,
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    BestEffort,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::BestEffort => Mode::BestEffort,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Graph file, or "-" for stdin.
    #[arg(short, long, default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Defaults to min(ε³, 0.01).
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long, value_enum, default_value = "best-effort")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ColorArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Strict mode refuses graphs with fewer vertices.
    #[arg(long, default_value_t = 0)]
    n_min: usize,
    /// Include every alternating-path switch in the report.
    #[arg(long)]
    trace: bool,
    /// Include wall times (makes the output non-reproducible).
    #[arg(long)]
    timings: bool,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Coloring JSON; total if it has `vertices`, otherwise a coloring of G^M.
    #[arg(short, long)]
    coloring: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// JSON cache keyed by canonical graph6.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Orders to sample, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "60,100")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.65)]
    density: f64,
    /// Samples need δ ≥ ratio · n.
    #[arg(long, default_value_t = 0.55)]
    min_ratio: f64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_source(src: &str) -> Result<Vec<u8>, String> {
    if src == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read(src).map_err(|e| format!("{src}: {e}"))
    }
}

/// graph6 is a single token; an edge list starts with an `n m` header.
fn detect(bytes: &[u8]) -> Format {
    let text = String::from_utf8_lossy(bytes);
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    if first.starts_with(">>graph6<<") || first.split_whitespace().count() == 1 {
        Format::Graph6
    } else {
        Format::EdgeList
    }
}

fn load_graph(a: &InputArgs) -> Result<Graph, String> {
    let bytes = read_source(&a.input)?;
    let format = match a.format {
        FormatArg::Auto => detect(&bytes),
        FormatArg::Graph6 => Format::Graph6,
        FormatArg::Edgelist => Format::EdgeList,
    };
    parse_graph(&bytes, format).map_err(|e| format!("{}: {e}", a.input))
}

fn emit(out: &Option<PathBuf>, value: &impl Serialize) -> Result<(), String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    s.push('\n');
    match out {
        Some(p) => std::fs::write(p, s).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(s.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn input_error(msg: String) -> u8 {
    eprintln!("error: {msg}");
    EXIT_INPUT
}

fn solve_options(p: &ParamArgs) -> Result<SolveOptions, String> {
    if !(p.epsilon > 0.0 && p.epsilon < 1.0) {
        return Err(format!("--epsilon {} must lie in (0, 1)", p.epsilon));
    }
    let xi = p.xi.unwrap_or_else(|| default_xi(p.epsilon));
    if !(xi > 0.0 && xi < 1.0) {
        return Err(format!("--xi {xi} must lie in (0, 1)"));
    }
    Ok(SolveOptions { eps: p.epsilon, xi, mode: p.mode.into(), seed: p.seed, ..SolveOptions::default() })
}

fn cmd_color(a: ColorArgs) -> u8 {
    let g = match load_graph(&a.input) {
        Ok(g) => g,
        Err(e) => return input_error(e),
    };
    let mut opts = match solve_options(&a.params) {
        Ok(o) => o,
        Err(e) => return input_error(e),
    };
    opts.n_min = a.n_min;
    opts.trace = a.trace;
    opts.timings = a.timings;
    let out = solve(&g, &opts);
    let r = &out.report;
    eprintln!(
        "n={} Δ={} case={} status={:?} colors={} {}",
        r.n,
        r.max_degree,
        r.case,
        r.status,
        r.colors_used.map_or("-".into(), |c| c.to_string()),
        r.error.as_deref().filter(|_| out.total.is_none()).unwrap_or("")
    );
    let coloring = out.total.as_ref().map(TotalColoring::to_json);
    if let Err(e) = emit(&a.out, &json!({ "report": r, "coloring": coloring })) {
        return input_error(e);
    }
    r.status.exit_code() as u8
}

#[derive(Serialize)]
struct Verdict {
    kind: &'static str,
    ok: bool,
    colors_used: usize,
    allowed: usize,
    violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clauses: Option<totalcolor::verify::GoodAudit>,
}

fn cmd_verify(a: VerifyArgs) -> u8 {
    let g = match load_graph(&a.input) {
        Ok(g) => g,
        Err(e) => return input_error(e),
    };
    let payload: ColoringJson = match read_source(&a.coloring.to_string_lossy())
        .and_then(|b| serde_json::from_slice(&b).map_err(|e| format!("coloring JSON: {e}")))
    {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let allowed = g.max_degree() + 2;
    let verdict = if payload.vertices.is_some() {
        let tc = match TotalColoring::from_json(&payload, g.n()) {
            Ok(tc) => tc,
            Err(e) => return input_error(format!("schema: {e}")),
        };
        let violation = validate_total(&g, &tc).err().map(|v| v.to_string());
        Verdict { kind: "total", ok: violation.is_none(), colors_used: tc.colors_used(), allowed, violation, clauses: None }
    } else {
        if payload.edges.iter().any(|e| e.3 == 0) {
            return input_error("schema: colors are 1-based".into());
        }
        let raw: Vec<(usize, usize, usize)> = payload.edges.iter().map(|&(u, v, _, c)| (u, v, c - 1)).collect();
        let audit = audit_good_raw(&g, &raw, payload.uncolored.len());
        let mut used: Vec<usize> = raw.iter().map(|t| t.2).collect();
        used.sort_unstable();
        used.dedup();
        let violation = [&audit.structure, &audit.total, &audit.proper, &audit.palette, &audit.rainbow]
            .into_iter()
            .flatten()
            .next()
            .cloned();
        Verdict { kind: "good", ok: audit.ok(), colors_used: used.len(), allowed, violation, clauses: Some(audit) }
    };
    eprintln!("{} coloring: {}", verdict.kind, verdict.violation.as_deref().unwrap_or("ok"));
    if let Err(e) = emit(&a.out, &verdict) {
        return input_error(e);
    }
    if verdict.ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn cmd_oracle(a: OracleArgs) -> u8 {
    let g = match load_graph(&a.input) {
        Ok(g) => g,
        Err(e) => return input_error(e),
    };
    let mut cache = match &a.cache {
        Some(p) => match OracleCache::open(p) {
            Ok(c) => c,
            Err(e) => return input_error(format!("{}: {e}", p.display())),
        },
        None => OracleCache::in_memory(),
    };
    let entry = match cache.lookup(&g) {
        Ok(e) => e,
        Err(e) => return input_error(e.to_string()),
    };
    if let Err(e) = cache.save() {
        return input_error(e.to_string());
    }
    let nu = max_matching(&g).size();
    let tcc = entry.total_chromatic <= entry.max_degree + 2;
    eprintln!("χ_T = {}, χ' = {}, Δ = {}", entry.total_chromatic, entry.chromatic_index, entry.max_degree);
    let v = json!({
        "n": entry.n,
        "max_degree": entry.max_degree,
        "total_chromatic": entry.total_chromatic,
        "chromatic_index": entry.chromatic_index,
        "matching_number": nu,
        "within_delta_plus_2": tcc,
    });
    if let Err(e) = emit(&a.out, &v) {
        return input_error(e);
    }
    EXIT_OK
}

fn cmd_bench(a: BenchArgs) -> u8 {
    let s = match solve_options(&a.params) {
        Ok(o) => o,
        Err(e) => return input_error(e),
    };
    if a.sizes.iter().any(|&n| n < 2) || !(0.0..=1.0).contains(&a.density) {
        return input_error("sizes must be at least 2 and density in [0, 1]".into());
    }
    let o = BenchOptions {
        sizes: a.sizes,
        density: a.density,
        min_ratio: a.min_ratio,
        eps: s.eps,
        xi: s.xi,
        mode: s.mode,
        trials: a.trials,
        seed: s.seed,
        timings: a.timings,
        threads: a.threads,
    };
    let r = run_bench(&o);
    eprint!("{}", r.table());
    if let Err(e) = emit(&a.out, &r) {
        return input_error(e);
    }
    EXIT_OK
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Color(a) => cmd_color(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Oracle(a) => cmd_oracle(a),
        Cmd::Bench(a) => cmd_bench(a),
    };
    ExitCode::from(code)
}
