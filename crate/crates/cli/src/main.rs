//! Command-line front end: graph and coloring files in, reports out.
//!
//! Exit codes: 0 for an affirmative result (rainbow connected, coloring
//! found, rule satisfied, run completed), 1 for a negative one (failing
//! pair, attempts exhausted, rule unsatisfied or inapplicable), 2 for
//! usage or input errors. Machine output is JSON (--json) or CSV (--csv);
//! the default human layout is stable line-per-field text.

use std::fmt::Display;
use std::fs;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use rainbow_core::{
    bound_chain, check_all, check_theorem, family_seed, generate, las_vegas_color, parse_coloring,
    parse_graph, rc_exact, required_threshold, run_trials, sweep, verify, write_coloring,
    write_graph, BoundReport, Distance, ExperimentConfig, FamilySpec, Graph, LasVegasOutcome,
    RcBound, SearchBudget, SweepParam, SweepRow, SweepSource, TheoremCheck, TheoremId, TrialStats,
    Verdict, Verification,
};

mod family;
mod report;

use family::{needs_seed, spec_from_flags, FAMILY_NAMES};
use report::{outln, Report};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow connectivity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether an edge coloring makes a graph rainbow connected.
    Verify {
        /// Graph file.
        #[arg(long)]
        graph: String,
        /// Coloring file, entries in the graph's canonical edge order.
        #[arg(long)]
        coloring: String,
        /// Emit a JSON report instead of the human layout.
        #[arg(long)]
        json: bool,
    },
    /// Search for a rainbow coloring by sampling and exact verification.
    Color {
        /// Graph file.
        #[arg(long)]
        graph: String,
        /// Palette size.
        #[arg(short)]
        k: usize,
        /// Master seed; RAINBOW_SEED is the fallback.
        #[arg(long)]
        seed: Option<u64>,
        /// Attempt budget.
        #[arg(long, default_value_t = 1000)]
        max_iters: u64,
        /// Write the found coloring to this file.
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Compute the rainbow connection number exactly.
    Rc {
        /// Graph file.
        #[arg(long)]
        graph: String,
        /// Refuse graphs with more edges than this.
        #[arg(long, default_value_t = 16)]
        max_edges: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate density threshold rules against a graph.
    Check {
        /// Graph file.
        #[arg(long)]
        graph: String,
        /// Palette size the parameterized rules are evaluated at.
        #[arg(short)]
        k: usize,
        /// Rule to evaluate (T1_1 .. T1_7), or "all".
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long)]
        json: bool,
    },
    /// Print threshold and failure-bound arithmetic; no graph needed.
    Bounds {
        /// Palette size.
        #[arg(short)]
        k: usize,
        /// Graph order the bounds are evaluated at.
        #[arg(short)]
        n: u64,
        /// Rule whose threshold and chains to print (T1_1 .. T1_7).
        #[arg(long, value_parser = parse_theorem)]
        theorem: Option<TheoremId>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a graph from a named family and write it to a file.
    Gen {
        #[command(flatten)]
        family: FamilyFlags,
        /// Seed for the random families; RAINBOW_SEED is the fallback.
        #[arg(long)]
        seed: Option<u64>,
        /// Output graph file.
        #[arg(long)]
        out: String,
        #[arg(long)]
        json: bool,
    },
    /// Estimate the success rate of uniform random colorings.
    Experiment {
        #[command(flatten)]
        source: SourceFlags,
        /// Palette size.
        #[arg(short)]
        k: usize,
        /// Number of independent sample-and-verify trials.
        #[arg(long)]
        trials: u64,
        /// Master seed; RAINBOW_SEED is the fallback.
        #[arg(long)]
        seed: Option<u64>,
        /// Rule to pre-check; its bound becomes theory_lower_bound.
        #[arg(long, value_parser = parse_theorem)]
        theorem: Option<TheoremId>,
        /// Worker threads for the trial loop.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Emit one CSV row (see README for the column order).
        #[arg(long)]
        csv: bool,
    },
    /// Run experiments across a sweep of one parameter.
    Sweep {
        #[command(flatten)]
        source: SourceFlags,
        /// Palette size (swept when --param k).
        #[arg(short)]
        k: usize,
        /// Trials per sweep point.
        #[arg(long)]
        trials: u64,
        /// Master seed; each point derives its own from it.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = parse_theorem)]
        theorem: Option<TheoremId>,
        /// Parameter to sweep: k, n, or delta_target.
        #[arg(long)]
        param: String,
        /// Comma-separated parameter values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Emit one CSV row per sweep point.
        #[arg(long)]
        csv: bool,
    },
}

/// Family selection shared by gen.
#[derive(Args)]
struct FamilyFlags {
    /// Family name: complete, path, cycle, wheel, star, petersen,
    /// complete_minus_matching, complete_bipartite,
    /// bipartite_minus_matching, random_min_degree, random_diam2.
    #[arg(long)]
    family: String,
    /// Vertex count (for complete_bipartite the total; --s splits it).
    #[arg(short)]
    n: Option<usize>,
    /// Side size for the bipartite families.
    #[arg(long)]
    s: Option<usize>,
    /// Minimum-degree target for the random families.
    #[arg(long)]
    delta: Option<usize>,
}

/// Graph source for experiment and sweep: a file or a family.
#[derive(Args)]
struct SourceFlags {
    /// Graph file; alternative to --family.
    #[arg(
        long,
        required_unless_present = "family",
        conflicts_with_all = ["family", "n", "s", "delta"]
    )]
    graph: Option<String>,
    /// Family name; alternative to --graph.
    #[arg(long)]
    family: Option<String>,
    /// Vertex count for the family.
    #[arg(short)]
    n: Option<usize>,
    /// Side size for the bipartite families.
    #[arg(long)]
    s: Option<usize>,
    /// Minimum-degree target for the random families.
    #[arg(long)]
    delta: Option<usize>,
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    TheoremId::from_str(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let start = Instant::now();
    match cli.command {
        Command::Verify {
            graph,
            coloring,
            json,
        } => cmd_verify(&graph, &coloring, json, start),
        Command::Color {
            graph,
            k,
            seed,
            max_iters,
            out,
            json,
        } => cmd_color(&graph, k, seed, max_iters, out.as_deref(), json, start),
        Command::Rc {
            graph,
            max_edges,
            json,
        } => cmd_rc(&graph, max_edges, json, start),
        Command::Check {
            graph,
            k,
            theorem,
            json,
        } => cmd_check(&graph, k, &theorem, json, start),
        Command::Bounds {
            k,
            n,
            theorem,
            json,
        } => cmd_bounds(k, n, theorem, json, start),
        Command::Gen {
            family,
            seed,
            out,
            json,
        } => cmd_gen(&family, seed, &out, json, start),
        Command::Experiment {
            source,
            k,
            trials,
            seed,
            theorem,
            workers,
            json,
            csv,
        } => cmd_experiment(&source, k, trials, seed, theorem, workers, json, csv, start),
        Command::Sweep {
            source,
            k,
            trials,
            seed,
            theorem,
            param,
            values,
            workers,
            json,
            csv,
        } => cmd_sweep(
            &source, k, trials, seed, theorem, &param, &values, workers, json, csv, start,
        ),
    }
}

fn read(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn load_graph(path: &str) -> Result<Graph, String> {
    parse_graph(&read(path)?).map_err(|e| format!("{path}: {e}"))
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("RAINBOW_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("RAINBOW_SEED is not a u64: {v:?}")),
        Err(_) => Err("seeded command: pass --seed or set RAINBOW_SEED".into()),
    }
}

fn join(items: &[impl Display]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn dist_str(d: Distance) -> String {
    match d {
        Distance::Finite(d) => d.to_string(),
        Distance::Infinite => "inf".into(),
    }
}

fn cmd_verify(graph: &str, coloring: &str, json: bool, start: Instant) -> Result<u8, String> {
    let g = load_graph(graph)?;
    let c = parse_coloring(&read(coloring)?, &g).map_err(|e| format!("{coloring}: {e}"))?;
    let verdict = verify(&g, &c).map_err(|e| e.to_string())?;
    if json {
        let inputs = json!({ "graph": graph, "coloring": coloring });
        Report::new("verify", inputs, &verdict, start).print();
    } else {
        match &verdict {
            Verification::RainbowConnected { witness } => {
                outln!("verdict: rainbow connected");
                outln!("paths:");
                for (&(u, v), path) in witness.iter() {
                    outln!("  {u}-{v}: {}", join(path));
                }
            }
            Verification::NotRainbowConnected { failing_pair: (u, v) } => {
                outln!("verdict: not rainbow connected");
                outln!("failing pair: {u} {v}");
            }
        }
    }
    Ok(if verdict.is_connected() { 0 } else { 1 })
}

fn cmd_color(
    graph: &str,
    k: usize,
    seed: Option<u64>,
    max_iters: u64,
    out: Option<&str>,
    json: bool,
    start: Instant,
) -> Result<u8, String> {
    let g = load_graph(graph)?;
    let seed = resolve_seed(seed)?;
    let outcome = las_vegas_color(&g, k, max_iters, seed).map_err(|e| e.to_string())?;
    if let LasVegasOutcome::Success { coloring, .. } = &outcome {
        if let Some(path) = out {
            let text = write_coloring(coloring, &g).map_err(|e| e.to_string())?;
            fs::write(path, text).map_err(|e| format!("{path}: {e}"))?;
        }
    }
    if json {
        let inputs = json!({
            "graph": graph, "k": k, "seed": seed, "max_iters": max_iters, "out": out,
        });
        Report::new("color", inputs, &outcome, start).print();
    } else {
        match &outcome {
            LasVegasOutcome::Success {
                coloring,
                iterations,
                ..
            } => {
                outln!("outcome: success");
                outln!("iterations: {iterations}");
                outln!("colors: {}", join(coloring.colors()));
                if let Some(path) = out {
                    outln!("written: {path}");
                }
            }
            LasVegasOutcome::Exhausted {
                attempts,
                last_failing_pair: (u, v),
                ..
            } => {
                outln!("outcome: exhausted");
                outln!("attempts: {attempts}");
                outln!("last failing pair: {u} {v}");
            }
        }
    }
    Ok(match outcome {
        LasVegasOutcome::Success { .. } => 0,
        LasVegasOutcome::Exhausted { .. } => 1,
    })
}

fn cmd_rc(graph: &str, max_edges: usize, json: bool, start: Instant) -> Result<u8, String> {
    let g = load_graph(graph)?;
    let budget = SearchBudget {
        max_edges,
        ..SearchBudget::default()
    };
    let result = rc_exact(&g, &budget).map_err(|e| e.to_string())?;
    if json {
        let inputs = json!({ "graph": graph, "max_edges": max_edges });
        Report::new("rc", inputs, &result, start).print();
    } else {
        outln!("rc: {}", result.rc);
        outln!("lower bound used: {}", result.lower_bound_used);
        outln!("colors: {}", join(result.certificate.colors()));
        outln!("nodes: {}", result.stats.nodes);
        outln!("colorings tested: {}", result.stats.colorings_tested);
    }
    Ok(0)
}

fn cmd_check(graph: &str, k: usize, theorem: &str, json: bool, start: Instant) -> Result<u8, String> {
    let g = load_graph(graph)?;
    let checks = if theorem.eq_ignore_ascii_case("all") {
        check_all(&g, k).map_err(|e| e.to_string())?
    } else {
        let id = parse_theorem(theorem)?;
        vec![check_theorem(&g, k, id).map_err(|e| e.to_string())?]
    };
    if json {
        let inputs = json!({ "graph": graph, "k": k, "theorem": theorem });
        Report::new("check", inputs, json!({ "checks": checks }), start).print();
    } else if let [check] = checks.as_slice() {
        print_check_detail(check);
    } else {
        for check in &checks {
            outln!("{}", check_line(check));
        }
    }
    Ok(if checks.iter().any(TheoremCheck::satisfied) {
        0
    } else {
        1
    })
}

fn bound_str(b: RcBound) -> String {
    match b {
        RcBound::AtMost(k) => format!("rc <= {k}"),
        RcBound::Exactly(k) => format!("rc = {k}"),
    }
}

fn print_check_detail(c: &TheoremCheck) {
    outln!("theorem: {}", c.theorem);
    if let Some(k) = c.k {
        outln!("k: {k}");
    }
    for (name, value) in &c.measured {
        outln!("{name}: {value}");
    }
    if let Some(t) = c.threshold {
        outln!("threshold: {t}");
    }
    match &c.verdict {
        Verdict::Satisfied => outln!("status: satisfied"),
        Verdict::Unsatisfied => outln!("status: unsatisfied"),
        Verdict::NotApplicable { reason } => outln!("status: not applicable ({reason})"),
    }
    if c.near_threshold {
        outln!("near threshold: yes");
    }
    if let Some(b) = c.implied_bound {
        outln!("implies: {}", bound_str(b));
    }
    if let Some(note) = c.log_base_note {
        outln!("note: {note}");
    }
}

fn check_line(c: &TheoremCheck) -> String {
    match &c.verdict {
        Verdict::Satisfied => {
            let implied = c.implied_bound.map(bound_str).unwrap_or_default();
            format!("{}: satisfied, {implied}", c.theorem)
        }
        Verdict::Unsatisfied => format!("{}: unsatisfied", c.theorem),
        Verdict::NotApplicable { reason } => format!("{}: not applicable ({reason})", c.theorem),
    }
}

/// Threshold plus failure arithmetic for one rule (or the generic chains).
#[derive(Serialize)]
struct BoundsResult {
    theorem: Option<TheoremId>,
    k: usize,
    n: u64,
    /// Decisive-quantity threshold of the named rule; absent without one.
    required_threshold: Option<f64>,
    /// Chain arithmetic; absent for rules that fix their own palette.
    report: Option<BoundReport>,
}

fn cmd_bounds(
    k: usize,
    n: u64,
    theorem: Option<TheoremId>,
    json: bool,
    start: Instant,
) -> Result<u8, String> {
    let required_threshold = theorem
        .map(|id| required_threshold(id, k, n).map_err(|e| e.to_string()))
        .transpose()?;
    let report = bound_chain(theorem, k, n).map_err(|e| e.to_string())?;
    let result = BoundsResult {
        theorem,
        k,
        n,
        required_threshold,
        report,
    };
    if json {
        let inputs = json!({ "k": k, "n": n, "theorem": theorem });
        Report::new("bounds", inputs, &result, start).print();
    } else {
        outln!("k: {k}");
        outln!("n: {n}");
        if let Some(id) = theorem {
            outln!("theorem: {id}");
        }
        if let Some(t) = result.required_threshold {
            outln!("required threshold: {t}");
        }
        if let Some(r) = &result.report {
            for ch in &r.chains {
                outln!(
                    "chain {}: length-{} paths, per-path failure {}/{}, \
                     guaranteed paths {:.6}, per-pair failure {:e}",
                    ch.pairs,
                    ch.path_length,
                    ch.per_path_failure.num,
                    ch.per_path_failure.den,
                    ch.path_count,
                    ch.per_pair_failure,
                );
            }
            outln!("pair population: {}", r.pair_population);
            outln!(
                "union failure bound: {}/{} ({})",
                r.union_failure.num, r.union_failure.den, r.union_failure.value
            );
            outln!(
                "success lower bound: {}/{} ({})",
                r.success_lower_bound.num, r.success_lower_bound.den, r.success_lower_bound.value
            );
        }
    }
    Ok(0)
}

/// What gen produced: the resolved spec and the written graph's shape.
#[derive(Serialize)]
struct GenResult {
    spec: FamilySpec,
    n: usize,
    m: usize,
    min_degree: usize,
    diameter: Distance,
    out: String,
}

fn cmd_gen(
    flags: &FamilyFlags,
    seed: Option<u64>,
    out: &str,
    json: bool,
    start: Instant,
) -> Result<u8, String> {
    let seed = if needs_seed(&flags.family) {
        Some(resolve_seed(seed)?)
    } else {
        seed
    };
    let spec = spec_from_flags(&flags.family, flags.n, flags.s, flags.delta, seed)?;
    let g = generate(&spec).map_err(|e| e.to_string())?;
    fs::write(out, write_graph(&g)).map_err(|e| format!("{out}: {e}"))?;
    let result = GenResult {
        spec,
        n: g.n(),
        m: g.m(),
        min_degree: g.min_degree(),
        diameter: g.diameter(),
        out: out.to_string(),
    };
    if json {
        let inputs = json!({
            "family": flags.family, "n": flags.n, "s": flags.s,
            "delta": flags.delta, "seed": seed, "out": out,
        });
        Report::new("gen", inputs, &result, start).print();
    } else {
        outln!("family: {}", flags.family);
        outln!("n: {}", result.n);
        outln!("m: {}", result.m);
        outln!("min degree: {}", result.min_degree);
        outln!("diameter: {}", dist_str(result.diameter));
        outln!("written: {out}");
    }
    Ok(0)
}

/// A file source is parsed; a family source is generated, random families
/// seeding their construction from a stream split off the master seed.
fn load_source(
    src: &SourceFlags,
    master_seed: u64,
) -> Result<(Graph, serde_json::Value, Option<FamilySpec>), String> {
    match (&src.graph, &src.family) {
        (Some(path), None) => Ok((load_graph(path)?, json!({ "graph": path }), None)),
        (None, Some(name)) => {
            let seed = needs_seed(name).then(|| family_seed(master_seed));
            let spec = spec_from_flags(name, src.n, src.s, src.delta, seed)?;
            let g = generate(&spec).map_err(|e| e.to_string())?;
            let echo = json!({ "family": spec });
            Ok((g, echo, Some(spec)))
        }
        _ => Err(format!(
            "exactly one of --graph and --family is required; families: {FAMILY_NAMES}"
        )),
    }
}

const CSV_COLUMNS: &str = "k,n,trials,successes,empirical_rate,wilson_low,wilson_high,\
     theory_lower_bound,sharpened_lower_bound,master_seed";

fn csv_row(value: Option<u64>, k: usize, n: usize, s: &TrialStats) -> String {
    let mut row = String::new();
    if let Some(v) = value {
        row.push_str(&format!("{v},"));
    }
    let theory = s
        .theory_lower_bound
        .map(|t| t.to_string())
        .unwrap_or_default();
    row + &format!(
        "{k},{n},{},{},{},{},{},{theory},{},{}",
        s.trials,
        s.successes,
        s.empirical_rate,
        s.wilson_interval.low,
        s.wilson_interval.high,
        s.success_lower_bound_sharpened,
        s.master_seed,
    )
}

fn print_trials(s: &TrialStats) {
    outln!("trials: {}", s.trials);
    outln!("successes: {}", s.successes);
    outln!("empirical rate: {}", s.empirical_rate);
    outln!(
        "wilson 95%: [{}, {}]",
        s.wilson_interval.low, s.wilson_interval.high
    );
    if let Some(t) = s.theory_lower_bound {
        outln!("theory lower bound: {t}");
    }
    outln!("sharpened lower bound: {}", s.success_lower_bound_sharpened);
    if let Some(check) = &s.theorem_check {
        outln!("{}", check_line(check));
    }
    outln!("seed: {}", s.master_seed);
    outln!("sub-seed rule: {}", s.sub_seed_rule);
}

#[allow(clippy::too_many_arguments)]
fn cmd_experiment(
    src: &SourceFlags,
    k: usize,
    trials: u64,
    seed: Option<u64>,
    theorem: Option<TheoremId>,
    workers: usize,
    json: bool,
    csv: bool,
    start: Instant,
) -> Result<u8, String> {
    let master_seed = resolve_seed(seed)?;
    let (g, source_echo, _) = load_source(src, master_seed)?;
    let cfg = ExperimentConfig {
        k,
        trials,
        master_seed,
        theorem,
    };
    let stats = run_trials(&g, &cfg, workers).map_err(|e| e.to_string())?;
    let negative = matches!(&stats.theorem_check, Some(c) if !c.satisfied());
    if json {
        let inputs = json!({
            "source": source_echo, "n": g.n(), "k": k, "trials": trials,
            "seed": master_seed, "theorem": theorem, "workers": workers,
        });
        Report::new("experiment", inputs, &stats, start).print();
    } else if csv {
        outln!("{CSV_COLUMNS}");
        outln!("{}", csv_row(None, k, g.n(), &stats));
    } else {
        print_trials(&stats);
    }
    Ok(if negative { 1 } else { 0 })
}

fn print_sweep_table(rows: &[SweepRow]) {
    outln!(
        "{:>10} {:>4} {:>6} {:>8} {:>10} {:>10} {:>12} {:>12} {:>10}",
        "value", "k", "n", "trials", "successes", "rate", "wilson_low", "wilson_high", "theory"
    );
    for row in rows {
        let s = &row.stats;
        let theory = s
            .theory_lower_bound
            .map(|t| format!("{t:.6}"))
            .unwrap_or_else(|| "-".into());
        outln!(
            "{:>10} {:>4} {:>6} {:>8} {:>10} {:>10.6} {:>12.6} {:>12.6} {:>10}",
            row.value,
            row.k,
            row.n,
            s.trials,
            s.successes,
            s.empirical_rate,
            s.wilson_interval.low,
            s.wilson_interval.high,
            theory,
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    src: &SourceFlags,
    k: usize,
    trials: u64,
    seed: Option<u64>,
    theorem: Option<TheoremId>,
    param: &str,
    values: &[u64],
    workers: usize,
    json: bool,
    csv: bool,
    start: Instant,
) -> Result<u8, String> {
    let master_seed = resolve_seed(seed)?;
    let param = SweepParam::from_str(param).map_err(|e| e.to_string())?;
    let (g, source_echo, spec) = load_source(src, master_seed)?;
    let cfg = ExperimentConfig {
        k,
        trials,
        master_seed,
        theorem,
    };
    let source = match spec {
        Some(spec) => SweepSource::Family(spec),
        None => SweepSource::Fixed(&g),
    };
    let rows = sweep(&source, &cfg, param, values, workers).map_err(|e| e.to_string())?;
    if json {
        let inputs = json!({
            "source": source_echo, "k": k, "trials": trials, "seed": master_seed,
            "theorem": theorem, "param": param, "values": values, "workers": workers,
        });
        Report::new("sweep", inputs, json!({ "rows": rows }), start).print();
    } else if csv {
        outln!("value,{CSV_COLUMNS}");
        for row in &rows {
            outln!("{}", csv_row(Some(row.value), row.k, row.n, &row.stats));
        }
    } else {
        print_sweep_table(&rows);
    }
    Ok(0)
}
