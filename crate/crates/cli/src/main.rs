//! `tethered`: plan, sweep, benchmark, verify and render tethered robot pair
//! instances.
//!
//! Exit codes: 0 success, 1 validation failure, 2 I/O error, 3 no solution.

mod output;
mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;
use tethered_core::cable::cat_curve;
use tethered_core::experiment::{detect_steps, linspace, refine_step, sweep_row, RowStatus, SweepRow};
use tethered_core::oracle::{is_fol, segment_profile};
use tethered_core::planner::{Heuristic, PlanOptions, Solution};
use tethered_core::scenario::{load_scenario, ScenarioError};
use tethered_core::trajectory::{verify_solution, Condition, ExecViolation};
use tethered_core::{Planner, Point, Polyline, Scenario, Tightener};

use output::SolutionFile;

#[derive(Debug)]
enum CliError {
    Validation(String),
    Io(String),
    NoSolution,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
            CliError::NoSolution => 3,
        }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Io { .. } => CliError::Io(e.to_string()),
            ScenarioError::Parse(_) => CliError::Validation(e.to_string()),
            ScenarioError::Validation(ref v) => CliError::Validation(
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n"),
            ),
        }
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(name = "tethered", version, about = "Optimal paths for two robots joined by a cable")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario file and list every violation.
    Validate(ScenarioArgs),
    /// Plan an optimal pair of paths.
    Plan(PlanArgs),
    /// Plan once per cable length and tabulate the results.
    Sweep(SweepArgs),
    /// Compare the heuristics on one scenario.
    Bench(BenchArgs),
    /// Check a solution file against a scenario.
    Verify(VerifyArgs),
    /// Draw a scenario and, optionally, a solution as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    input: ScenarioArgs,
    /// Cable length overriding the one in the scenario.
    #[arg(long)]
    ell: Option<f64>,
    /// One of none, sld, spd, jr.
    #[arg(long, default_value = "spd")]
    heuristic: Heuristic,
    /// Disable pruning of over-long cables.
    #[arg(long)]
    no_prune: bool,
    /// Maximum number of expansions.
    #[arg(long)]
    budget: Option<usize>,
    /// Search the full visibility graph instead of the reduced one.
    #[arg(long)]
    full_graph: bool,
    /// Write zero for wall-clock times so that output is reproducible.
    #[arg(long)]
    no_timing: bool,
}

impl SearchArgs {
    fn options(&self) -> PlanOptions {
        PlanOptions {
            prune: !self.no_prune,
            node_budget: self.budget,
            full_graph: self.full_graph,
            record_expanded: false,
        }
    }
}

fn parse_samples(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 10 {
        return Err("at least 10 samples are required".into());
    }
    Ok(n)
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// Solution JSON output; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG drawing of the solution.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// CSV of cable consumption along the synchronized execution.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Number of consumption samples.
    #[arg(long, default_value_t = 200, value_parser = parse_samples)]
    samples: usize,
    /// JSON dump of the visibility graph used by the search.
    #[arg(long)]
    dump_graph: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// Comma separated cable lengths.
    #[arg(long, value_delimiter = ',', conflicts_with = "range")]
    lengths: Vec<f64>,
    /// Evenly spaced lengths as LO:HI:COUNT.
    #[arg(long)]
    range: Option<String>,
    /// Bisect every step down to this width and report it.
    #[arg(long)]
    refine: Option<f64>,
    /// CSV output; standard output if omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// CSV output; standard output if omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: ScenarioArgs,
    /// Solution JSON produced by `plan`.
    #[arg(long)]
    solution: PathBuf,
    /// Cable length overriding the one in the scenario.
    #[arg(long)]
    ell: Option<f64>,
    /// Number of sampling intervals along the execution.
    #[arg(long, default_value_t = 200, value_parser = parse_samples)]
    samples: usize,
    /// Maximum robot speed.
    #[arg(long, default_value_t = 1.0)]
    speed: f64,
    /// JSON report output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    input: ScenarioArgs,
    /// Solution JSON to overlay.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// SVG output; standard output if omitted.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(&a),
        Command::Plan(a) => cmd_plan(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Render(a) => cmd_render(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Validation(m) | CliError::Io(m) => eprintln!("error: {m}"),
                CliError::NoSolution => eprintln!("no solution"),
            }
            ExitCode::from(e.code())
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to standard output: {e}"))),
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn load(args: &ScenarioArgs, ell: Option<f64>) -> Result<Scenario, CliError> {
    let s: Scenario = load_scenario(&args.scenario)?;
    match ell {
        Some(ell) => {
            let s = s.with_ell(ell);
            let v = s.validate();
            if v.is_empty() {
                Ok(s)
            } else {
                Err(ScenarioError::Validation(v).into())
            }
        }
        None => Ok(s),
    }
}

fn cmd_validate(a: &ScenarioArgs) -> CliResult {
    load(a, None)?;
    println!("ok");
    Ok(())
}

fn cmd_plan(a: &PlanArgs) -> CliResult {
    let s = load(&a.search.input, a.search.ell)?;
    let planner = Planner::with_graph(&s, a.search.full_graph);
    if let Some(path) = &a.dump_graph {
        write_output(Some(path), &output::to_pretty(&planner.graph().to_json()))?;
    }
    let h = a.search.heuristic;
    let r = planner.plan(h, &a.search.options());
    let doc = output::plan_json(&r, h, s.ell, !a.search.no_timing);
    write_output(a.out.as_deref(), &output::to_pretty(&doc))?;
    let Some(sol) = &r.solution else {
        return Err(CliError::NoSolution);
    };
    if let Some(path) = &a.svg {
        let overlay = svg::Overlay { pi_a: &sol.pi_a, pi_b: &sol.pi_b, final_cable: sol.final_cable.verts() };
        write_output(Some(path), &svg::render(&s, Some(&overlay)))?;
    }
    if let Some(path) = &a.csv {
        let samples = planner
            .tightener()
            .sampled_consumption(&sol.tau_a(), &sol.tau_b(), &s.cable, a.samples)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        let rows: Vec<Vec<String>> = samples.iter().map(|&(t, l)| vec![output::cell(t), output::cell(l)]).collect();
        write_output(Some(path), &csv_text(&["t", "length"], &rows)?)?;
    }
    Ok(())
}

fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Validation(format!("invalid range '{text}', expected LO:HI:COUNT"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite()) || n == 0 || hi < lo {
        return Err(bad());
    }
    Ok(linspace(lo, hi, n))
}

fn cmd_sweep(a: &SweepArgs) -> CliResult {
    let s = load(&a.search.input, None)?;
    let mut ells = match &a.range {
        Some(r) => parse_range(r)?,
        None => a.lengths.clone(),
    };
    if ells.is_empty() {
        return Err(CliError::Validation("no cable lengths given; use --lengths or --range".into()));
    }
    if let Some(bad) = ells.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(CliError::Validation(format!("invalid cable length {bad}")));
    }
    ells.sort_by(f64::total_cmp);
    let planner = Planner::with_graph(&s, a.search.full_graph);
    let (h, opts) = (a.search.heuristic, a.search.options());
    let rows: Vec<SweepRow<f64>> = ells.par_iter().map(|&ell| sweep_row(&planner, ell, h, &opts)).collect();
    let timing = !a.search.no_timing;
    let records: Vec<Vec<String>> = rows.iter().map(|r| output::sweep_record(r, timing)).collect();
    write_output(a.csv.as_deref(), &csv_text(&output::SWEEP_HEADER, &records)?)?;
    if let Some(tol) = a.refine {
        for step in detect_steps(&rows) {
            let fine = refine_step(&planner, &step, h, &opts, tol);
            eprintln!(
                "step in ({}, {}]: max cost {} -> {}, consumed {}, bracketed {}",
                output::cell(fine.lo.ell),
                output::cell(fine.hi.ell),
                output::cell(fine.lo.max_cost),
                output::cell(fine.hi.max_cost),
                output::cell(fine.hi.consumed_final),
                if fine.brackets_consumption() { "yes" } else { "no" }
            );
        }
    }
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> CliResult {
    let s = load(&a.search.input, a.search.ell)?;
    let planner = Planner::with_graph(&s, a.search.full_graph);
    let opts = a.search.options();
    let timing = !a.search.no_timing;
    let rows: Vec<(Heuristic, SweepRow<f64>)> = Heuristic::ALL
        .iter()
        .map(|&h| (h, sweep_row(&planner, s.ell, h, &opts)))
        .collect();
    let records: Vec<Vec<String>> = rows
        .iter()
        .map(|(h, r)| {
            let wall = if timing { r.wall_time.as_secs_f64() } else { 0.0 };
            vec![
                h.as_str().to_string(),
                r.status.as_str().to_string(),
                output::cell(r.max_cost),
                output::cell(r.cost_a),
                output::cell(r.cost_b),
                r.expanded.to_string(),
                r.generated.to_string(),
                output::cell(wall),
            ]
        })
        .collect();
    let header = ["heuristic", "status", "max_cost", "cost_a", "cost_b", "expanded", "generated", "wall_time"];
    write_output(a.csv.as_deref(), &csv_text(&header, &records)?)?;
    if rows.iter().all(|(_, r)| r.status != RowStatus::Solved) {
        return Err(CliError::NoSolution);
    }
    Ok(())
}

fn read_solution(path: &Path) -> Result<SolutionFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

struct Check {
    name: &'static str,
    failures: Vec<String>,
    note: String,
}

fn cmd_verify(a: &VerifyArgs) -> CliResult {
    let s = load(&a.input, a.ell)?;
    let file = read_solution(&a.solution)?;
    let (Some(raw_a), Some(raw_b)) = (&file.pi_a, &file.pi_b) else {
        return Err(CliError::Validation("solution file has no paths".into()));
    };
    let (pi_a, pi_b) = (output::to_points(raw_a), output::to_points(raw_b));
    if pi_a.is_empty() || pi_b.is_empty() {
        return Err(CliError::Validation("solution paths are empty".into()));
    }
    let tight = Tightener::for_scenario(&s);
    let (tau_a, tau_b) = (Polyline::new(pi_a.clone()), Polyline::new(pi_b.clone()));

    let mut extra: Vec<ExecViolation> = Vec::new();
    let mut push = |condition, detail: String| extra.push(ExecViolation { condition, sample: 0, time: 0.0, detail });
    let final_cable = cat_curve(&tau_a, &tau_b, &s.cable, 1.0).and_then(|c| tight.tighten(c.points()));
    let final_cable = match final_cable {
        Ok(c) => c,
        Err(e) => {
            push(Condition::Endpoints, format!("paths do not start at the cable ends: {e}"));
            tight.tighten(&[pi_a[pi_a.len() - 1], pi_b[pi_b.len() - 1]]).map_err(|e| CliError::Validation(e.to_string()))?
        }
    };
    if let Some(c) = &file.final_cable {
        let c = Polyline::new(output::to_points(c));
        if !c.is_empty() {
            if c.length() > s.ell + 1e-6 {
                push(Condition::BoundedLength, format!("stated final cable length {} exceeds {}", c.length(), s.ell));
            }
            if !c.first().approx_eq(*pi_a.last().unwrap()) || !c.last().approx_eq(*pi_b.last().unwrap()) {
                push(Condition::Endpoints, "stated final cable does not end at the robots".into());
            }
        }
    }
    for (name, stated, actual) in [("a", file.cost_a, tau_a.length()), ("b", file.cost_b, tau_b.length())] {
        if let Some(c) = stated {
            if (c - actual).abs() > 1e-6 * actual.max(1.0) {
                push(Condition::Endpoints, format!("stated cost_{name} {c} differs from path length {actual}"));
            }
        }
    }
    let sol = Solution { pi_a: pi_a.clone(), pi_b: pi_b.clone(), cost_a: tau_a.length(), cost_b: tau_b.length(), final_cable };
    let report = verify_solution(&sol, &s, &tight, a.speed, a.samples);
    let violations: Vec<ExecViolation> = extra.into_iter().chain(report.violations.iter().cloned()).collect();

    let mut checks: Vec<Check> = [Condition::Connects, Condition::BoundedLength, Condition::Continuity, Condition::Endpoints]
        .iter()
        .map(|&c| Check {
            name: c.label(),
            failures: violations.iter().filter(|v| v.condition == c).map(|v| v.to_string()).collect(),
            note: String::new(),
        })
        .collect();
    checks[1].note = format!("max cable {} (ell {})", output::cell(report.max_cable), output::cell(s.ell));

    let mut convex = Check { name: "CONVEX", failures: Vec::new(), note: String::new() };
    match tight.sampled_consumption(&tau_a, &tau_b, &s.cable, a.samples) {
        Ok(samples) => {
            let lens: Vec<f64> = samples.iter().map(|&(_, l)| l).collect();
            let worst = lens.windows(3).map(|w| w[0] - 2.0 * w[1] + w[2]).fold(f64::INFINITY, f64::min);
            let peak = lens.iter().copied().fold(0.0, f64::max);
            let ends = lens[0].max(lens[lens.len() - 1]);
            if worst < -1e-6 {
                convex.failures.push(format!("second difference {worst} below -1e-6"));
            }
            if peak > ends + 1e-6 {
                convex.failures.push(format!("peak consumption {peak} above endpoint maximum {ends}"));
            }
            convex.note = format!("peak {}", output::cell(peak));
        }
        Err(e) => convex.failures.push(e.to_string()),
    }
    checks.push(convex);
    let (fa, fb) = segment_profile(&pi_a, &pi_b, &s);
    let mut fol = Check { name: "FOL", failures: Vec::new(), note: format!("a={fa} b={fb}") };
    for (name, prof) in [("a", &fa), ("b", &fb)] {
        if !is_fol(prof) {
            fol.failures.push(format!("profile of {name} is not of the form F*O*L*"));
        }
    }
    checks.push(fol);

    let passed = checks.iter().all(|c| c.failures.is_empty());
    for c in &checks {
        let verdict = if c.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{:<7}{verdict}  {}", c.name, c.note);
        for f in &c.failures {
            println!("         {f}");
        }
    }
    println!("verdict: {}", if passed { "PASS" } else { "FAIL" });
    if let Some(path) = &a.out {
        let doc = json!({
            "passed": passed,
            "samples": report.samples,
            "max_cable": output::num(report.max_cable),
            "checks": checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.failures.is_empty(),
                "failures": c.failures,
            })).collect::<Vec<_>>(),
        });
        write_output(Some(path), &output::to_pretty(&doc))?;
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::Validation("verification failed".into()))
    }
}

fn cmd_render(a: &RenderArgs) -> CliResult {
    let s = load(&a.input, None)?;
    let file = a.solution.as_deref().map(read_solution).transpose()?;
    let conv = |v: &Option<Vec<[f64; 2]>>| v.as_deref().map(output::to_points).unwrap_or_default();
    let paths: Option<[Vec<Point>; 3]> = file.map(|f| [conv(&f.pi_a), conv(&f.pi_b), conv(&f.final_cable)]);
    let overlay = paths
        .as_ref()
        .map(|[pa, pb, c]| svg::Overlay { pi_a: pa, pi_b: pb, final_cable: c });
    write_output(a.svg.as_deref(), &svg::render(&s, overlay.as_ref()))
}
