//! Command-line interface.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::metrics::{aggregate, to_csv, write_jsonl, RunInfo, RunReport};
use crate::model::{apply, check_applicable, Task};
use crate::pddl::{load_task, parse_domain_from, write_domain, write_problem};
use crate::satgadget::{encode, CnfFormula};
use crate::search::{format_plan, parse_plan, solve, validate, Limits, Outcome};
use crate::successor::{ground_all, Generator, GeneratorConfig, Strategy};
use crate::{exactness, search};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_PLAN: i32 = 1;
pub const EXIT_UNSOLVABLE: i32 = 10;
pub const EXIT_LIMIT: i32 = 20;
pub const EXIT_INPUT: i32 = 30;

#[derive(Parser, Debug)]
#[command(name = "lnp", version, about = "Lifted successor generation and blind search for numeric planning tasks")]
struct Cli {
    /// Increase log verbosity (the LNP_LOG variable takes precedence).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a shortest plan with blind A*.
    Solve(SolveArgs),
    /// List the applicable actions of one state.
    Successors(SuccessorArgs),
    /// Build the statically pruned ground-action store.
    Ground(GroundArgs),
    /// Run every task of a suite under several generators.
    Bench(BenchArgs),
    /// Report whether the numeric generator is exact for a domain.
    CheckExactness(ExactnessArgs),
    /// Encode a DIMACS 3-CNF formula as a numeric planning task.
    Satgadget(SatArgs),
    /// Replay a plan and report its cost or the first failing step.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct TaskArgs {
    /// Domain file.
    #[arg(long)]
    domain: PathBuf,
    /// Problem file.
    #[arg(long)]
    problem: PathBuf,
}

#[derive(Args, Debug, Clone)]
struct GenArgs {
    /// numeric, propositional, exhaustive or grounded.
    #[arg(long, default_value = "numeric")]
    generator: Strategy,
    /// Assignment-set degree.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    degree: u32,
    /// Largest ground-action store for the grounded generator.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    ground_cap: u64,
}

impl GenArgs {
    fn config(&self) -> GeneratorConfig {
        GeneratorConfig { strategy: self.generator, degree: self.degree as usize, ground_cap: self.ground_cap as usize }
    }
}

fn positive_secs(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number of seconds, got '{s}'")),
    }
}

#[derive(Args, Debug, Clone)]
struct LimitArgs {
    /// Wall-clock limit in seconds.
    #[arg(long, value_parser = positive_secs)]
    time_limit: Option<f64>,
    /// Memory limit for stored search nodes, in MB.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    mem_limit: Option<u64>,
    /// Maximum number of expansions.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    node_cap: Option<u64>,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            time: self.time_limit.map(Duration::from_secs_f64),
            memory: self.mem_limit.map(|m| m as usize * 1024 * 1024),
            nodes: self.node_cap.map(|n| n as usize),
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    task: TaskArgs,
    #[command(flatten)]
    gen: GenArgs,
    #[command(flatten)]
    limits: LimitArgs,
    /// Write the plan here instead of standard output.
    #[arg(long)]
    plan_out: Option<PathBuf>,
    /// Write the run report (JSON) here instead of standard error.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SuccessorArgs {
    #[command(flatten)]
    task: TaskArgs,
    #[command(flatten)]
    gen: GenArgs,
    /// Use the initial state (the default).
    #[arg(long, conflicts_with = "after_plan")]
    state_from_init: bool,
    /// Use the state reached by applying this plan.
    #[arg(long)]
    after_plan: Option<PathBuf>,
    /// Print each schema's consistency graph.
    #[arg(long)]
    dump_graph: bool,
}

#[derive(Args, Debug)]
struct GroundArgs {
    #[command(flatten)]
    task: TaskArgs,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Print every ground action.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Directory of task directories, each with domain.pddl and problem files.
    #[arg(long)]
    suite: PathBuf,
    /// Comma-separated generators.
    #[arg(long, value_delimiter = ',', default_value = "numeric,propositional,exhaustive,grounded")]
    strategies: Vec<Strategy>,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    degree: u32,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    ground_cap: u64,
    /// JSON-lines report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV summary.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Include per-expansion candidate counts in the report.
    #[arg(long)]
    per_expansion: bool,
    /// Parallel worker slots.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
}

#[derive(Args, Debug)]
struct ExactnessArgs {
    #[arg(long)]
    domain: PathBuf,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    degree: u32,
}

#[derive(Args, Debug)]
struct SatArgs {
    /// DIMACS file, or '-' for standard input.
    #[arg(long)]
    cnf: PathBuf,
    /// Write the domain here (default: standard output).
    #[arg(long)]
    out_domain: Option<PathBuf>,
    /// Write the problem here (default: standard output).
    #[arg(long)]
    out_problem: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[command(flatten)]
    task: TaskArgs,
    #[arg(long)]
    plan: PathBuf,
}

fn init_logging(verbose: u8) {
    let default = match verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    let env = env_logger::Env::new().filter_or("LNP_LOG", default);
    let _ = env_logger::Builder::from_env(env).try_init();
}

/// Parses `argv` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    init_logging(cli.verbose);
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Successors(a) => cmd_successors(a),
        Command::Ground(a) => cmd_ground(a),
        Command::Bench(a) => cmd_bench(a),
        Command::CheckExactness(a) => cmd_exactness(a),
        Command::Satgadget(a) => cmd_satgadget(a),
        Command::Validate(a) => cmd_validate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    }
}

fn load(t: &TaskArgs) -> Result<Task> {
    Ok(load_task(&t.domain, &t.problem)?)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn outcome_name(o: &Outcome) -> String {
    match o {
        Outcome::Plan(_) => "plan".into(),
        Outcome::Unsolvable => "unsolvable".into(),
        Outcome::LimitReached(l) => l.to_string(),
    }
}

fn run_one(
    task: &Task,
    id: &str,
    cfg: GeneratorConfig,
    limits: Limits,
    per_expansion: bool,
) -> Result<(RunReport, Outcome)> {
    let start = Instant::now();
    let generator = Generator::new(task, cfg)?;
    let result = solve(task, &generator, limits);
    let plan_cost = match &result.outcome {
        Outcome::Plan(p) => Some(p.len()),
        _ => None,
    };
    let info = RunInfo {
        task: id.to_string(),
        strategy: cfg.strategy,
        outcome: outcome_name(&result.outcome),
        plan_cost,
        wall_time: start.elapsed().as_secs_f64(),
    };
    Ok((aggregate(info, &result.stats.per_expansion, per_expansion), result.outcome))
}

fn cmd_solve(a: SolveArgs) -> Result<i32> {
    let task = load(&a.task)?;
    let id = format!("{}/{}", task.domain.name, task.problem_name);
    let (report, outcome) = match run_one(&task, &id, a.gen.config(), a.limits.limits(), false) {
        Ok(r) => r,
        Err(e) if e.downcast_ref::<crate::successor::GroundingError>().is_some() => {
            eprintln!("error: {e:#}");
            return Ok(EXIT_LIMIT);
        }
        Err(e) => return Err(e),
    };
    let json = serde_json::to_string(&report)?;
    match &a.report {
        Some(p) => fs::write(p, format!("{json}\n")).with_context(|| format!("writing {}", p.display()))?,
        None => eprintln!("{json}"),
    }
    Ok(match outcome {
        Outcome::Plan(plan) => {
            write_out(a.plan_out.as_deref(), &format_plan(&task, &plan))?;
            EXIT_OK
        }
        Outcome::Unsolvable => {
            println!("; unsolvable");
            EXIT_UNSOLVABLE
        }
        Outcome::LimitReached(l) => {
            println!("; limit reached: {l}");
            EXIT_LIMIT
        }
    })
}

fn cmd_successors(a: SuccessorArgs) -> Result<i32> {
    let task = load(&a.task)?;
    let mut state = task.init.clone();
    if let Some(p) = &a.after_plan {
        let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let plan = parse_plan(&task, &text).with_context(|| p.display().to_string())?;
        for (i, act) in plan.iter().enumerate() {
            let schema = task.schema(act);
            check_applicable(&state, schema, &act.args)
                .with_context(|| format!("plan step {i} {} is not applicable", task.format_action(act)))?;
            state = apply(&state, schema, &act.args);
        }
    }
    let generator = Generator::new(&task, a.gen.config())?;
    let mut out = String::new();
    if a.dump_graph {
        let ctx = generator.context(&state);
        for (i, s) in task.domain.schemas.iter().enumerate() {
            out.push_str(&generator.graph(i, &ctx, true).dump(&task, s));
        }
    }
    let (acts, report) = generator.applicable(&state);
    for act in &acts {
        out.push_str(&task.format_action(act));
        out.push('\n');
    }
    out.push_str(&serde_json::to_string(&report)?);
    out.push('\n');
    write_out(None, &out)?;
    Ok(EXIT_OK)
}

fn cmd_ground(a: GroundArgs) -> Result<i32> {
    let task = load(&a.task)?;
    let store = match ground_all(&task, a.cap as usize) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(EXIT_LIMIT);
        }
    };
    let mut out = String::new();
    if a.list {
        for act in store.actions() {
            out.push_str(&task.format_action(&act));
            out.push('\n');
        }
    }
    for (i, s) in task.domain.schemas.iter().enumerate() {
        out.push_str(&format!("; {}: {}\n", s.name, store.schema(i).len()));
    }
    out.push_str(&format!("; ground actions: {}\n", store.len()));
    write_out(None, &out)?;
    Ok(EXIT_OK)
}

/// `(task id, domain file, problem file)` for every problem under `suite`.
pub fn discover_suite(suite: &Path) -> Result<Vec<(String, PathBuf, PathBuf)>> {
    let mut dirs = vec![suite.to_path_buf()];
    let mut entries: Vec<PathBuf> = fs::read_dir(suite)
        .with_context(|| format!("reading {}", suite.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    entries.sort();
    dirs.extend(entries);
    let mut out = Vec::new();
    for dir in dirs {
        let domain = dir.join("domain.pddl");
        if !domain.is_file() {
            continue;
        }
        let mut problems: Vec<PathBuf> = fs::read_dir(&dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "pddl") && p.file_name() != Some("domain.pddl".as_ref()))
            .collect();
        problems.sort();
        let dir_name = dir.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        for p in problems {
            let stem = p.file_stem().unwrap().to_string_lossy();
            out.push((format!("{dir_name}/{stem}"), domain.clone(), p));
        }
    }
    if out.is_empty() {
        bail!("no tasks found under {}", suite.display());
    }
    Ok(out)
}

fn cmd_bench(a: BenchArgs) -> Result<i32> {
    let tasks = discover_suite(&a.suite)?;
    let loaded: Vec<(String, Task)> =
        tasks.iter().map(|(id, d, p)| Ok((id.clone(), load_task(d, p)?))).collect::<Result<_>>()?;
    let mut work = Vec::new();
    for (ti, _) in loaded.iter().enumerate() {
        for &s in &a.strategies {
            work.push((ti, s));
        }
    }
    let limits = a.limits.limits();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, RunReport)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..a.jobs.min(work.len() as u32).max(1) {
            scope.spawn(|| loop {
                let w = next.fetch_add(1, Ordering::SeqCst);
                let Some(&(ti, strategy)) = work.get(w) else { break };
                let (id, task) = &loaded[ti];
                let cfg = GeneratorConfig { strategy, degree: a.degree as usize, ground_cap: a.ground_cap as usize };
                let report = match run_one(task, id, cfg, limits, a.per_expansion) {
                    Ok((r, _)) => r,
                    Err(e) => {
                        log::warn!("{id} [{strategy}]: {e:#}");
                        let info = RunInfo {
                            task: id.clone(),
                            strategy,
                            outcome: "error".into(),
                            plan_cost: None,
                            wall_time: 0.0,
                        };
                        aggregate(info, &[], false)
                    }
                };
                log::info!("{id} [{strategy}]: {} oa={:?}", report.outcome, report.oa);
                results.lock().unwrap().push((w, report));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(w, _)| *w);
    let reports: Vec<RunReport> = results.into_iter().map(|(_, r)| r).collect();
    match &a.out {
        Some(p) => {
            let f = fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
            write_jsonl(io::BufWriter::new(f), &reports)?;
        }
        None => write_jsonl(io::stdout().lock(), &reports)?,
    }
    if let Some(p) = &a.csv {
        fs::write(p, to_csv(&reports)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(EXIT_OK)
}

fn cmd_exactness(a: ExactnessArgs) -> Result<i32> {
    let text = fs::read_to_string(&a.domain).with_context(|| format!("reading {}", a.domain.display()))?;
    let domain = parse_domain_from(&text, &a.domain.display().to_string())?;
    print!("{}", exactness::check(&domain, a.degree as usize));
    Ok(EXIT_OK)
}

fn cmd_satgadget(a: SatArgs) -> Result<i32> {
    let text = if a.cnf.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&a.cnf).with_context(|| format!("reading {}", a.cnf.display()))?
    };
    let phi = CnfFormula::parse_dimacs(&text).with_context(|| a.cnf.display().to_string())?;
    let g = encode(&phi);
    let domain = write_domain(&g.task.domain);
    let problem = write_problem(&g.task);
    match (&a.out_domain, &a.out_problem) {
        (None, None) => write_out(None, &format!("{domain}\n{problem}"))?,
        (d, p) => {
            write_out(d.as_deref(), &domain)?;
            write_out(p.as_deref(), &problem)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_validate(a: ValidateArgs) -> Result<i32> {
    let task = load(&a.task)?;
    let text = fs::read_to_string(&a.plan).with_context(|| format!("reading {}", a.plan.display()))?;
    let plan = parse_plan(&task, &text).with_context(|| a.plan.display().to_string())?;
    match validate(&task, &plan) {
        Ok(cost) => {
            println!("valid, cost = {cost}");
            Ok(EXIT_OK)
        }
        Err(e) => {
            let step = match &e {
                search::ValidationError::Inapplicable { index, .. } => {
                    format!(" {}", task.format_action(&plan[*index]))
                }
                search::ValidationError::GoalNotReached { .. } => String::new(),
            };
            println!("invalid: {e}{step}");
            Ok(EXIT_INVALID_PLAN)
        }
    }
}
