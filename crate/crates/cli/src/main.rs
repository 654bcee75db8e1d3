//! `energy-bounds`: bound reports, catalog tables, success-rate
//! verification and solver traces.
//!
//! Exit codes: 0 success, 1 bad input, 2 a bound exceeded E/2 (a bug),
//! 3 a conjecture violation, 4 solver non-convergence.

mod input;
mod render;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use energy_bounds::bounds::combinatorial::{clique_cover_lp, fractional_clique_cover};
use energy_bounds::bounds::{report_with, BoundReport, ReportOptions};
use energy_bounds::eigen::graph_spectrum;
use energy_bounds::sdp::{
    positive_energy_problem, solve_sdp_with, theta_minus_problem, theta_plus_problem, SdpSettings,
};
use energy_bounds::{
    bound_scaled_complement, bound_sdp_adjacency, independence_number, maximal_cliques, solve_lp, Graph,
};
use rayon::prelude::*;

use render::Format;

const EXIT_INPUT: u8 = 1;
const EXIT_UNSOUND: u8 = 2;
const EXIT_VIOLATION: u8 = 3;
const EXIT_SOLVER: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "energy-bounds", version, about = "Lower bounds on graph energy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "markdown")]
    format: Format,
    /// Worker threads for per-graph fan-out (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// SDP stopping tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every bound for one graph, with ratio columns and a verdict.
    Report(GraphInput),
    /// Ratio table over a catalog of graphs.
    Table {
        /// Graph specs; defaults to the named catalog.
        specs: Vec<String>,
        /// File with one graph spec per line.
        #[arg(long, conflicts_with = "specs")]
        catalog: Option<PathBuf>,
        /// Keep only specs containing this substring.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Success rates of the three approaches and conjecture violations.
    Verify(VerifyInput),
    /// Solve one problem and print the solver trace.
    SolveDebug {
        /// Named graph spec, e.g. `petersen` or `johnson(5,2)`.
        spec: String,
        #[arg(value_enum)]
        problem: Problem,
        /// Iteration cap for the SDP problems.
        #[arg(long)]
        max_iterations: Option<usize>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Named graph spec, e.g. `petersen` or `circulant(8,1,3)`.
    spec: Option<String>,
    /// graph6 code, file, or `-` for stdin (first line).
    #[arg(long)]
    graph6: Option<String>,
    /// Edge-list file: header `n m`, then `m` lines `u v`.
    #[arg(long)]
    edge_list: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct VerifyInput {
    /// All graphs of this order (at most 7).
    #[arg(long)]
    enumerate: Option<usize>,
    /// graph6 file, or `-` for stdin, one graph per line.
    #[arg(long)]
    graph6: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Sdp2,
    ThetaMinus,
    ThetaPlus,
    Sdp4,
    ChifLp,
}

struct Failure(u8, String);

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure(EXIT_INPUT, s)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn settings(cli: &Cli) -> Result<SdpSettings, String> {
    let mut s = SdpSettings::default();
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(format!("--tol must lie in (0, 1), got {t}"));
        }
        s.tol = t;
    }
    Ok(s)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let sdp = settings(cli)?;
    match &cli.command {
        Command::Report(i) => cmd_report(i, cli.format, sdp),
        Command::Table { specs, catalog, filter } => cmd_table(specs, catalog.as_deref(), filter.as_deref(), cli.format, sdp),
        Command::Verify(v) => cmd_verify(v, cli.format, sdp),
        Command::SolveDebug { spec, problem, max_iterations } => {
            let mut sdp = sdp;
            if let Some(k) = max_iterations {
                sdp.max_iterations = *k;
            }
            cmd_solve_debug(spec, *problem, cli.format, sdp)
        }
    }
}

fn resolve(i: &GraphInput) -> Result<Graph, String> {
    match (&i.spec, &i.graph6, &i.edge_list) {
        (Some(s), _, _) => input::named(s),
        (_, Some(g6), _) => input::graph6_single(g6),
        (_, _, Some(path)) => input::edge_list(path),
        _ => Err("no graph given".into()),
    }
}

fn cmd_report(i: &GraphInput, format: Format, sdp: SdpSettings) -> Result<String, Failure> {
    let g = resolve(i)?;
    let opts = ReportOptions { sdp, ..Default::default() };
    let r = report_with(&g, &opts).map_err(|e| Failure(EXIT_SOLVER, e.to_string()))?;
    let out = render::report(std::slice::from_ref(&r), format);
    if let Some(f) = report_failure(&r) {
        print!("{out}");
        return Err(f);
    }
    Ok(out)
}

fn report_failure(r: &BoundReport) -> Option<Failure> {
    let bad = r.soundness_violations();
    if bad.is_empty() {
        return None;
    }
    let list: Vec<String> = bad.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    Some(Failure(EXIT_UNSOUND, format!("bounds exceed E/2 = {}: {}", r.half_energy, list.join(", "))))
}

fn cmd_table(specs: &[String], catalog: Option<&std::path::Path>, filter: Option<&str>, format: Format, sdp: SdpSettings) -> Result<String, Failure> {
    let mut list = if specs.is_empty() { input::catalog(catalog)? } else { specs.to_vec() };
    if let Some(f) = filter {
        list.retain(|s| s.contains(f));
    }
    let graphs: Vec<Graph> = list.iter().map(|s| input::named(s)).collect::<Result<_, _>>()?;
    let opts = ReportOptions { sdp, ..ReportOptions::minimal() };
    let rows: Vec<Result<BoundReport, String>> =
        graphs.par_iter().map(|g| report_with(g, &opts).map_err(|e| format!("{}: {e}", g.name()))).collect();
    let mut reports = Vec::with_capacity(rows.len());
    for r in rows {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => eprintln!("warning: {e}"),
        }
    }
    Ok(render::table(&reports, format))
}

fn cmd_verify(v: &VerifyInput, format: Format, sdp: SdpSettings) -> Result<String, Failure> {
    let source = match (v.enumerate, &v.graph6) {
        (Some(n), _) => verify::Source::Enumerate(n),
        (_, Some(path)) => verify::Source::Graph6(input::graph6_lines(path)?),
        _ => return Err("no input given".to_string().into()),
    };
    let summary = verify::run(source, &ReportOptions { sdp, ..ReportOptions::minimal() })?;
    if summary.lines > 0 && summary.malformed == summary.lines {
        return Err(Failure(EXIT_INPUT, format!("all {} lines malformed", summary.lines)));
    }
    let out = render::summary(&summary, format);
    if let Some(f) = verify_failure(&summary) {
        print!("{out}");
        return Err(f);
    }
    Ok(out)
}

fn verify_failure(s: &verify::Summary) -> Option<Failure> {
    if !s.violations.is_empty() {
        return Some(Failure(EXIT_VIOLATION, format!("{} conjecture violation(s)", s.violations.len())));
    }
    if !s.unsound.is_empty() {
        return Some(Failure(EXIT_UNSOUND, format!("{} bound(s) exceed E/2", s.unsound.len())));
    }
    None
}

fn cmd_solve_debug(spec: &str, problem: Problem, format: Format, sdp: SdpSettings) -> Result<String, Failure> {
    let g = input::named(spec)?;
    let mut out = String::new();
    let _ = writeln!(out, "graph {} n {} m {}", g.name(), g.n(), g.m());
    let lib = |e: energy_bounds::Error| Failure(EXIT_SOLVER, e.to_string());
    let trace = match problem {
        Problem::Sdp2 | Problem::ThetaMinus | Problem::ThetaPlus => {
            let (label, p) = match problem {
                Problem::Sdp2 => ("sdp2", positive_energy_problem(&g)),
                Problem::ThetaMinus => ("theta-minus", theta_minus_problem(&g)),
                _ => ("theta-plus", theta_plus_problem(&g)),
            };
            let s = solve_sdp_with(&p, &sdp, None).map_err(lib)?;
            let _ = writeln!(out, "problem {label}");
            out.push_str(&s.debug_dump(&p));
            let _ = writeln!(out, "value {:.5}", s.value);
            let oracle = match problem {
                Problem::Sdp2 => Some(graph_spectrum(&g).map_err(lib)?.positive_energy()),
                _ => None,
            };
            if let Some(o) = oracle {
                let _ = writeln!(out, "oracle {o:.5} (spectral positive energy), deviation {:.3e}", (s.value - o).abs());
            } else if problem == Problem::ThetaMinus {
                let alpha = independence_number(&g).map_err(lib)?;
                let (chi_f, _) = fractional_clique_cover(&g).map_err(lib)?;
                let _ = writeln!(out, "bracket alpha {alpha} <= value <= chi_f(complement) {chi_f:.5}");
            }
            Trace {
                problem: label,
                status: s.status.as_str().to_string(),
                value: s.value,
                iterations: s.iterations,
                residuals: vec![s.residuals.primal, s.residuals.dual, s.residuals.cone],
                oracle,
                converged: s.is_converged(),
            }
        }
        Problem::Sdp4 => {
            if g.is_edgeless() {
                return Err(Failure(EXIT_INPUT, "sdp4 needs a graph with an edge".into()));
            }
            let s = bound_sdp_adjacency(&g).map_err(lib)?;
            let _ = writeln!(out, "problem sdp4");
            let _ = writeln!(out, "a {:.9} b {:.9}", s.a, s.b);
            let _ = writeln!(out, "mu_max {:.9} mu_min {:.9} spread {:.9}", s.mu_max, s.mu_min, s.mu_max - s.mu_min);
            let _ = writeln!(out, "value {:.5}", s.objective);
            let oracle = bound_scaled_complement(&g).ok().map(|c| c.objective);
            if let Some(o) = oracle {
                let _ = writeln!(out, "oracle {o:.5} (regular closed form), deviation {:.3e}", (s.objective - o).abs());
            }
            Trace {
                problem: "sdp4",
                status: "converged".into(),
                value: s.objective,
                iterations: 0,
                residuals: vec![(s.mu_max - s.mu_min - 1.0).max(0.0)],
                oracle,
                converged: true,
            }
        }
        Problem::ChifLp => {
            let cliques = maximal_cliques(&g).map_err(lib)?;
            let lp = clique_cover_lp(g.n(), &cliques);
            let s = solve_lp(&lp).map_err(lib)?;
            let _ = writeln!(out, "problem chif-lp");
            let _ = writeln!(out, "variables {} (maximal cliques) constraints {}", cliques.len(), g.n());
            let _ = writeln!(out, "status {} pivots {}", s.status.as_str(), s.pivots);
            let _ = writeln!(out, "value {:.5}", s.value);
            let mut worst = f64::NEG_INFINITY;
            if s.is_optimal() {
                // Dual: vertex weights y >= 0 with weight at most 1 on every clique.
                for c in &cliques {
                    worst = worst.max(c.iter().map(|&v| s.dual[v]).sum::<f64>());
                }
                let total: f64 = s.dual.iter().sum();
                let _ = writeln!(
                    out,
                    "dual certificate: vertex weights sum {total:.5}, min weight {:.3e}, max clique weight {worst:.9}",
                    s.dual.iter().cloned().fold(f64::INFINITY, f64::min)
                );
            }
            Trace {
                problem: "chif-lp",
                status: s.status.as_str().to_string(),
                value: s.value,
                iterations: s.pivots,
                residuals: vec![(worst - 1.0).max(0.0)],
                oracle: None,
                converged: s.is_optimal(),
            }
        }
    };
    let text = if format == Format::Json { render_trace_json(&trace) } else { out };
    if !trace.converged {
        print!("{text}");
        return Err(Failure(EXIT_SOLVER, format!("{} did not converge: residuals {:?}", trace.problem, trace.residuals)));
    }
    Ok(text)
}

#[derive(serde::Serialize)]
struct Trace {
    problem: &'static str,
    status: String,
    value: f64,
    iterations: usize,
    residuals: Vec<f64>,
    oracle: Option<f64>,
    #[serde(skip)]
    converged: bool,
}

fn render_trace_json(t: &Trace) -> String {
    let v = serde_json::json!({ "schema": 1, "command": "solve-debug", "trace": t });
    let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use energy_bounds::report;

    #[test]
    fn unsound_report_exits_two() {
        let mut r = report(&input::named("cycle(5)").unwrap()).unwrap();
        assert!(report_failure(&r).is_none());
        r.half_energy -= 1.0;
        assert!(matches!(report_failure(&r), Some(Failure(EXIT_UNSOUND, _))));
    }

    #[test]
    fn violations_exit_three_before_unsoundness() {
        let mut s = verify::Summary::default();
        assert!(verify_failure(&s).is_none());
        s.unsound.push("x".into());
        assert!(matches!(verify_failure(&s), Some(Failure(EXIT_UNSOUND, _))));
        s.violations.push("Bw".into());
        assert!(matches!(verify_failure(&s), Some(Failure(EXIT_VIOLATION, _))));
    }
}
