//! Command-line front end: single runs, full experiment grids, variety
//! reports, and the function/operator catalog.

mod config;

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ringga::benchmarks::{spec_of, FunctionId};
use ringga::crossover::CrossoverKind;
use ringga::engine::{self, GaConfig};
use ringga::experiment::{
    emit_csv, emit_table, run_experiment, run_experiment_serial, CellStats, ExperimentPlan,
    SEED_SCHEME,
};
use ringga::rng::PRNG_NAME;
use ringga::variety::variety_report;

use config::{resolve, resolve_opt, FileConfig};

#[derive(Parser)]
#[command(
    name = "ringga",
    version,
    about = "Real-coded genetic algorithm runner with six crossover operators and six benchmark functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a single GA run and print its summary
    Run(RunCmd),
    /// Execute the full (function x operator) experiment grid
    Bench(BenchCmd),
    /// Enumerate the distinct children of the structural operators
    Variety(VarietyCmd),
    /// List the available functions and operators
    List,
}

/// Flags shared by `run` and `bench`; unset values fall back to the config
/// file, then to the defaults (pop 20, dim 30, budget 10000, pc 0.8,
/// pm 0.01, sigma-frac 0.1, elite 2, seed 42).
#[derive(Args, Clone, Default)]
struct GaFlags {
    /// Population size
    #[arg(long, value_name = "N")]
    pop: Option<usize>,
    /// Genome dimension
    #[arg(long, value_name = "D")]
    dim: Option<usize>,
    /// Total objective evaluations per run, initialization included
    #[arg(long, value_name = "EVALS")]
    budget: Option<u64>,
    /// Crossover rate in [0, 1]
    #[arg(long, value_name = "RATE")]
    pc: Option<f64>,
    /// Per-gene mutation rate in [0, 1]
    #[arg(long, value_name = "RATE")]
    pm: Option<f64>,
    /// Mutation sigma as a fraction of the bound width
    #[arg(long = "sigma-frac", value_name = "FRAC")]
    sigma_frac: Option<f64>,
    /// Individuals copied unchanged each generation
    #[arg(long, value_name = "N")]
    elite: Option<usize>,
    /// Seed (single run) or master seed (experiment grid)
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
    /// Config file with one `key = value` per line; flags win
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RunCmd {
    /// Benchmark function (F1..F6)
    #[arg(long, value_name = "ID")]
    function: Option<String>,
    /// Crossover operator (spc|tpc|ic|hc|ac|rc)
    #[arg(long, value_name = "OP")]
    operator: Option<String>,
    #[command(flatten)]
    ga: GaFlags,
    /// Write the summary here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchCmd {
    /// Comma-separated functions to include (default: all six)
    #[arg(long, value_name = "IDS", value_delimiter = ',')]
    function: Option<Vec<String>>,
    /// Comma-separated operators to include (default: all six)
    #[arg(long, value_name = "OPS", value_delimiter = ',')]
    operator: Option<Vec<String>>,
    /// Independent runs per (function, operator) cell
    #[arg(long, value_name = "N")]
    runs: Option<usize>,
    #[command(flatten)]
    ga: GaFlags,
    /// Output format: csv or table
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Write results here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Run every trial on the calling thread
    #[arg(long)]
    serial: bool,
}

#[derive(Args)]
struct VarietyCmd {
    /// Smallest genome length to enumerate
    #[arg(long, default_value_t = 2, value_name = "D")]
    dmin: usize,
    /// Largest genome length to enumerate
    #[arg(long, default_value_t = 8, value_name = "D")]
    dmax: usize,
    /// Write the report here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum OutputFormat {
    Csv,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            _ => Err(format!("expected 'csv' or 'table', got '{s}'")),
        }
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(cmd) => run_single(cmd),
        Command::Bench(cmd) => run_bench(cmd),
        Command::Variety(cmd) => run_variety(cmd),
        Command::List => run_list(),
    }
}

fn load_file(flags: &GaFlags) -> Result<FileConfig> {
    match &flags.config {
        Some(path) => FileConfig::load(path),
        None => Ok(FileConfig::default()),
    }
}

/// Builds a validated `GaConfig`, naming the offending flag on bad values.
fn resolve_ga(flags: &GaFlags, file: &FileConfig, crossover: CrossoverKind) -> Result<GaConfig> {
    let pop = resolve(flags.pop, file, "pop", 20)?;
    if pop < 2 {
        bail!("--pop must be at least 2, got {pop}");
    }
    let dim = resolve(flags.dim, file, "dim", 30)?;
    if dim < 1 {
        bail!("--dim must be at least 1, got {dim}");
    }
    let budget = resolve(flags.budget, file, "budget", 10_000)?;
    if budget < pop as u64 {
        bail!("--budget must cover the initial population ({pop}), got {budget}");
    }
    let pc = resolve(flags.pc, file, "pc", 0.8)?;
    if !(0.0..=1.0).contains(&pc) {
        bail!("--pc must be within [0, 1], got {pc}");
    }
    let pm = resolve(flags.pm, file, "pm", 0.01)?;
    if !(0.0..=1.0).contains(&pm) {
        bail!("--pm must be within [0, 1], got {pm}");
    }
    let sigma_frac = resolve(flags.sigma_frac, file, "sigma-frac", 0.1)?;
    if sigma_frac.is_nan() || sigma_frac <= 0.0 {
        bail!("--sigma-frac must be positive, got {sigma_frac}");
    }
    let elite = resolve(flags.elite, file, "elite", 2)?;
    if elite >= pop {
        bail!("--elite must be smaller than --pop ({pop}), got {elite}");
    }
    let seed = resolve(flags.seed, file, "seed", 42)?;
    let cfg = GaConfig {
        population_size: pop,
        dimension: dim,
        crossover_rate: pc,
        mutation_rate: pm,
        mutation_sigma_fraction: sigma_frac,
        elite_count: elite,
        eval_budget: budget,
        crossover,
        seed,
        ..Default::default()
    };
    cfg.validate().map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok(cfg)
}

fn parse_function(token: &str) -> Result<FunctionId> {
    token
        .parse()
        .map_err(|_| anyhow::anyhow!("--function: unknown function '{token}' (use F1..F6)"))
}

fn parse_operator(token: &str) -> Result<CrossoverKind> {
    token.parse().map_err(|_| {
        anyhow::anyhow!("--operator: unknown operator '{token}' (use spc|tpc|ic|hc|ac|rc)")
    })
}

/// Metadata lines every artifact starts with, enough to re-run it exactly.
fn metadata_header(command: &str, cfg: &GaConfig, extra: &[(&str, String)]) -> String {
    let mut pairs: Vec<(&str, String)> = vec![
        ("seed", cfg.seed.to_string()),
        ("prng", PRNG_NAME.to_string()),
        ("pop", cfg.population_size.to_string()),
        ("dim", cfg.dimension.to_string()),
        (
            "budget",
            format!("{} (initial population included)", cfg.eval_budget),
        ),
        ("pc", cfg.crossover_rate.to_string()),
        ("pm", format!("{} (per gene)", cfg.mutation_rate)),
        (
            "sigma-frac",
            format!("{} (of bound width)", cfg.mutation_sigma_fraction),
        ),
        ("elite", cfg.elite_count.to_string()),
        ("f4-variant", "normalized".to_string()),
    ];
    pairs.extend(extra.iter().cloned());
    let mut out = format!("# ringga {command}\n");
    for (k, v) in pairs {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    out
}

fn deliver(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write output to {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_single(cmd: RunCmd) -> Result<()> {
    let file = load_file(&cmd.ga)?;
    let function = match resolve_opt(cmd.function, &file, "function")? {
        Some(token) => parse_function(&token)?,
        None => FunctionId::F1,
    };
    let operator = match resolve_opt(cmd.operator, &file, "operator")? {
        Some(token) => parse_operator(&token)?,
        None => CrossoverKind::Ring,
    };
    let cfg = resolve_ga(&cmd.ga, &file, operator)?;
    let result = engine::run(&cfg, function)?;

    let mut text = metadata_header(
        "run",
        &cfg,
        &[
            ("function", function.tag().to_string()),
            ("operator", operator.tag().to_string()),
        ],
    );
    text.push_str(&format!(
        "best_value = {}\nevaluations = {}\ngenerations = {}\nbest_genome = [{}]\n",
        result.best_value,
        result.evaluations_used,
        result.best_by_generation.len().saturating_sub(1),
        result
            .best_genome
            .genes()
            .iter()
            .map(|g| format!("{g:.6}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    deliver(&cmd.out, &text)
}

fn parse_list<T>(
    tokens: Option<Vec<String>>,
    file: &FileConfig,
    key: &str,
    all: &[T],
    parse: impl Fn(&str) -> Result<T>,
) -> Result<Vec<T>>
where
    T: Copy + PartialEq,
{
    let tokens = match tokens {
        Some(t) => Some(t),
        None => file
            .get(key)
            .map(|v| v.split(',').map(|s| s.trim().to_string()).collect()),
    };
    let picked = match tokens {
        None => all.to_vec(),
        Some(tokens) => {
            let mut picked = Vec::new();
            for token in tokens {
                let item = parse(&token)?;
                if !picked.contains(&item) {
                    picked.push(item);
                }
            }
            picked
        }
    };
    Ok(picked)
}

fn run_bench(cmd: BenchCmd) -> Result<()> {
    let file = load_file(&cmd.ga)?;
    let functions = parse_list(cmd.function, &file, "function", &FunctionId::ALL, |t| {
        parse_function(t)
    })?;
    let operators = parse_list(cmd.operator, &file, "operator", &CrossoverKind::ALL, |t| {
        parse_operator(t)
    })?;
    let runs = resolve(cmd.runs, &file, "runs", 30)?;
    if runs < 1 {
        bail!("--runs must be at least 1, got {runs}");
    }
    let format = match resolve_opt(cmd.format, &file, "format")? {
        Some(token) => token
            .parse::<OutputFormat>()
            .map_err(|e| anyhow::anyhow!("--format: {e}"))?,
        None => OutputFormat::Csv,
    };
    let base_config = resolve_ga(&cmd.ga, &file, CrossoverKind::Ring)?;
    let master_seed = base_config.seed;

    // One cell at a time so progress can be reported; per-cell seed
    // derivation makes this identical to running the whole plan at once.
    let mut cells: Vec<CellStats> = Vec::with_capacity(functions.len() * operators.len());
    for &f in &functions {
        for &op in &operators {
            let plan = ExperimentPlan {
                functions: vec![f],
                operators: vec![op],
                runs_per_cell: runs,
                base_config: base_config.clone(),
                master_seed,
            };
            let mut cell = if cmd.serial {
                run_experiment_serial(&plan)?
            } else {
                run_experiment(&plan)?
            };
            eprintln!("cell {}/{} done ({} runs)", f.tag(), op.tag(), runs);
            cells.append(&mut cell);
        }
    }

    let body = match format {
        OutputFormat::Csv => emit_csv(&cells)?,
        OutputFormat::Table => emit_table(&cells)?,
    };
    let header = metadata_header(
        "bench",
        &base_config,
        &[
            (
                "functions",
                functions
                    .iter()
                    .map(|f| f.tag())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            (
                "operators",
                operators
                    .iter()
                    .map(|o| o.tag())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("runs-per-cell", runs.to_string()),
            ("seed-scheme", SEED_SCHEME.to_string()),
        ],
    );
    deliver(&cmd.out, &format!("{header}{body}"))
}

fn run_variety(cmd: VarietyCmd) -> Result<()> {
    let report =
        variety_report(cmd.dmin, cmd.dmax).map_err(|e| anyhow::anyhow!("--dmin/--dmax: {e}"))?;
    let text = format!(
        "# ringga variety\n# dmin = {}\n# dmax = {}\n{report}",
        cmd.dmin, cmd.dmax
    );
    deliver(&cmd.out, &text)
}

fn run_list() -> Result<()> {
    let mut out = String::from("functions:\n");
    for id in FunctionId::ALL {
        let spec = spec_of(id, 30).expect("dimension 30 is valid for all functions");
        out.push_str(&format!(
            "  {}  {:<32} bounds [{}, {}], minimum {:.4} at x = {}\n",
            id.tag(),
            id.name(),
            spec.bounds.lower(),
            spec.bounds.upper(),
            spec.optimum_value,
            spec.optimum_point,
        ));
    }
    out.push_str("operators:\n");
    let blurb = |k: CrossoverKind| match k {
        CrossoverKind::SinglePoint => "swap the tails beyond one random cut",
        CrossoverKind::TwoPoint => "exchange the segment between two random cuts",
        CrossoverKind::Intermediate => "per-gene weighted average of the parents",
        CrossoverKind::Heuristic => "step from the worse parent past the better one",
        CrossoverKind::Arithmetic => "blend both parents with one random weight",
        CrossoverKind::Ring => "cut the parents' ring, read children both ways",
    };
    for kind in CrossoverKind::ALL {
        out.push_str(&format!("  {:<4} {}\n", kind.tag(), blurb(kind)));
    }
    print!("{out}");
    Ok(())
}
