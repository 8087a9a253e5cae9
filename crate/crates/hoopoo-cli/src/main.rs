//! Benchmark CLI for the hoopoo optimizers.
//!
//! Subcommands: `run` (regret curves or any named preset), `sweep-rho`
//! (per-rho summary of final regret), `dim` (near-optimality dimension
//! reports plus smoothness checks), and `resume` (continue a halted run
//! from its checkpoint blob).
//!
//! Every option can also come from a flat key-value config file
//! (`--config`); command-line flags override file entries. Objective
//! parameters use `--param key=value` on the command line and
//! `param.key=value` in config files.
//!
//! Exit codes: 0 success, 2 configuration error, 3 resource-guard error,
//! 4 i/o error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use hoopoo::bench::{
    self, AlgoSpec, DimQuery, ExperimentConfig, ObjectiveSpec, PresetPlan, RecMode,
};
use hoopoo::error::Error;
use hoopoo::objective::NoiseModel;
use hoopoo::poo::{BudgetMode, Growth};

#[derive(Parser)]
#[command(name = "hoopoo", version, about = "Hierarchical optimistic optimization benchmarks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a seeded experiment (or a named preset) and emit regret-curve CSV
    Run(RunArgs),
    /// Run HOO over a rho grid and emit one summary row per rho
    SweepRho(SweepArgs),
    /// Estimate near-optimality dimensions and verify local smoothness
    Dim(DimArgs),
    /// Resume a halted experiment from its checkpoint blob
    Resume(ResumeArgs),
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Named preset: fig2-small, fig2-large, rho-sweep, dim-report
    #[arg(long)]
    preset: Option<String>,
    /// Flat key-value config file; flags override its entries
    #[arg(long)]
    config: Option<String>,
    /// Objective name: difficult, zero-quality, wedge2d, power-envelope,
    /// constant, log-cusp
    #[arg(long)]
    objective: Option<String>,
    /// Objective parameter, repeatable: --param rho=0.5
    #[arg(long = "param")]
    params: Vec<String>,
    /// Noise spec: none, uniform:W, tgauss:SIGMA,BOUND
    #[arg(long)]
    noise: Option<String>,
    /// Output path; '-' writes to stdout
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Algorithm: hoo or poo
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long = "rho-max")]
    rho_max: Option<f64>,
    #[arg(long = "nu-max")]
    nu_max: Option<f64>,
    /// Reward sharing between POO instances: on or off
    #[arg(long)]
    sharing: Option<String>,
    /// Limit growth schedule: off, dmax, rho-sqrt
    #[arg(long)]
    growth: Option<String>,
    #[arg(long)]
    budget: Option<u64>,
    /// fresh (objective calls) or logical (requests incl. cache hits)
    #[arg(long = "budget-mode")]
    budget_mode: Option<String>,
    #[arg(long)]
    runs: Option<u32>,
    /// Comma-separated budget counts at which rows are recorded
    #[arg(long)]
    checkpoints: Option<String>,
    /// uniform or deepest
    #[arg(long = "rec-mode")]
    rec_mode: Option<String>,
    /// Halt inside this run index and save a checkpoint instead of finishing
    #[arg(long = "halt-run", requires = "checkpoint_out")]
    halt_run: Option<u32>,
    /// Budget count inside the halted run at which to stop
    #[arg(long = "halt-at", requires = "checkpoint_out")]
    halt_at: Option<u64>,
    /// Where to write the checkpoint blob when halting
    #[arg(long = "checkpoint-out")]
    checkpoint_out: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    nu: Option<f64>,
    /// Comma-separated rho grid
    #[arg(long)]
    rhos: Option<String>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long = "budget-mode")]
    budget_mode: Option<String>,
    #[arg(long)]
    runs: Option<u32>,
}

#[derive(Args)]
struct DimArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    nu: Option<f64>,
    /// Comma-separated rho grid
    #[arg(long)]
    rhos: Option<String>,
    #[arg(long = "h-max")]
    h_max: Option<u32>,
    #[arg(long = "h-min")]
    h_min: Option<u32>,
    #[arg(long)]
    arity: Option<u32>,
}

#[derive(Args)]
struct ResumeArgs {
    /// Checkpoint blob written by `run --checkpoint-out`
    #[arg(long)]
    from: String,
    /// Output path; '-' writes to stdout
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Run(args) => cmd_run(args),
        Cmd::SweepRho(args) => cmd_sweep(args),
        Cmd::Dim(args) => cmd_dim(args),
        Cmd::Resume(args) => cmd_resume(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ResourceGuard(_) => 3,
        Error::Io(_) => 4,
        _ => 2,
    }
}

type Result<T> = std::result::Result<T, Error>;

// ---------------------------------------------------------------------------
// Config file merging
// ---------------------------------------------------------------------------

/// Key-value entries from `--config`, consulted when a flag is absent.
struct FileSettings {
    entries: BTreeMap<String, String>,
    params: Vec<(String, String)>,
}

impl FileSettings {
    fn load(path: Option<&str>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut params = Vec::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::Config(format!("{path}:{}: expected key=value", lineno + 1))
                })?;
                let key = key.trim().to_string();
                let value = value.trim().to_string();
                if let Some(pkey) = key.strip_prefix("param.") {
                    params.push((pkey.to_string(), value));
                } else {
                    entries.insert(key, value);
                }
            }
        }
        Ok(FileSettings { entries, params })
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| Error::Config(format!("config entry '{key}={raw}' did not parse"))),
        }
    }
}

fn pick<T: FromStr>(flag: Option<T>, file: &FileSettings, key: &str) -> Result<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key),
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::Config(format!("missing required option '{what}'")))
}

fn parse_params(cli: &[String], file: &FileSettings) -> Result<Vec<(String, String)>> {
    let mut params = file.params.clone();
    for raw in cli {
        let (k, v) = raw
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--param '{raw}' must be key=value")))?;
        params.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(params)
}

fn parse_list<T: FromStr>(raw: &str, what: &str) -> Result<Vec<T>> {
    raw.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Config(format!("bad {what} entry '{s}'"))))
        .collect()
}

fn parse_sharing(raw: &str) -> Result<bool> {
    match raw {
        "on" => Ok(true),
        "off" => Ok(false),
        other => Err(Error::Config(format!("sharing must be on or off, got '{other}'"))),
    }
}

fn write_output(out: Option<&str>, text: &str) -> Result<()> {
    match out {
        None | Some("-") => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            fs::write(path, text)?;
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn objective_spec(common: &CommonArgs, file: &FileSettings) -> Result<ObjectiveSpec> {
    let name: Option<String> = pick(common.objective.clone(), file, "objective")?;
    Ok(ObjectiveSpec {
        name: require(name, "objective")?,
        params: parse_params(&common.params, file)?,
    })
}

fn build_run_config(args: &RunArgs, file: &FileSettings) -> Result<ExperimentConfig> {
    let objective = objective_spec(&args.common, file)?;
    let algo_name: String = require(pick(args.algo.clone(), file, "algo")?, "algo")?;
    let nu = pick(args.nu, file, "nu")?.unwrap_or(1.0);
    let algo = match algo_name.as_str() {
        "hoo" => AlgoSpec::Hoo { nu, rho: require(pick(args.rho, file, "rho")?, "rho")? },
        "poo" => {
            let rho_max = pick(args.rho_max, file, "rho-max")?.unwrap_or(0.9);
            let nu_max = pick(args.nu_max, file, "nu-max")?.unwrap_or(1.0);
            let sharing = match pick(args.sharing.clone(), file, "sharing")? {
                None => true,
                Some(raw) => parse_sharing(&raw)?,
            };
            let growth = match pick(args.growth.clone(), file, "growth")? {
                None => Growth::Off,
                Some(raw) => raw.parse()?,
            };
            AlgoSpec::Poo { rho_max, nu_max, sharing, growth }
        }
        other => return Err(Error::Config(format!("unknown algorithm '{other}'"))),
    };
    let budget = require(pick(args.budget, file, "budget")?, "budget")?;
    let mut cfg = ExperimentConfig::new(
        objective,
        algo,
        budget,
        pick(args.runs, file, "runs")?.unwrap_or(1),
        pick(args.common.seed, file, "seed")?.unwrap_or(0),
    );
    if let Some(raw) = pick(args.common.noise.clone(), file, "noise")? {
        cfg.noise = raw.parse::<NoiseModel>()?;
    }
    if let Some(raw) = pick(args.budget_mode.clone(), file, "budget-mode")? {
        cfg.budget_mode = raw.parse::<BudgetMode>()?;
    }
    if let Some(raw) = pick(args.rec_mode.clone(), file, "rec-mode")? {
        cfg.rec_mode = raw.parse::<RecMode>()?;
    }
    if let Some(raw) = pick(args.checkpoints.clone(), file, "checkpoints")? {
        cfg.checkpoints = parse_list(&raw, "checkpoint")?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let file = FileSettings::load(args.common.config.as_deref())?;
    let preset: Option<String> = pick(args.common.preset.clone(), &file, "preset")?;
    if let Some(name) = preset {
        let plan = bench::preset(&name)?;
        let csv = bench::execute_plan(&plan)?;
        return write_output(args.common.out.as_deref(), &csv);
    }
    let cfg = build_run_config(&args, &file)?;
    if let Some(ckpt_path) = &args.checkpoint_out {
        let halt_run = args.halt_run.unwrap_or(0);
        let halt_at = args.halt_at.unwrap_or(cfg.budget / 2);
        let ckpt = bench::run_experiment_halting(&cfg, halt_run, halt_at)?;
        let mut blob = Vec::new();
        bench::save_run_checkpoint(&ckpt, &mut blob)?;
        fs::write(ckpt_path, blob)?;
        eprintln!("halted in run {halt_run} at {halt_at}; checkpoint written to {ckpt_path}");
        return Ok(());
    }
    let rows = bench::run_experiment(&cfg)?;
    write_output(args.common.out.as_deref(), &bench::render_regret_csv(&rows))
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let file = FileSettings::load(args.common.config.as_deref())?;
    let preset: Option<String> = pick(args.common.preset.clone(), &file, "preset")?;
    if let Some(name) = preset {
        let plan = bench::preset(&name)?;
        if !matches!(plan, PresetPlan::Sweep { .. }) {
            return Err(Error::Config(format!("preset '{name}' is not a sweep preset")));
        }
        let csv = bench::execute_plan(&plan)?;
        return write_output(args.common.out.as_deref(), &csv);
    }
    let objective = objective_spec(&args.common, &file)?;
    let nu = pick(args.nu, &file, "nu")?.unwrap_or(1.0);
    let budget = require(pick(args.budget, &file, "budget")?, "budget")?;
    let mut cfg = ExperimentConfig::new(
        objective,
        AlgoSpec::Hoo { nu, rho: 0.5 },
        budget,
        pick(args.runs, &file, "runs")?.unwrap_or(1),
        pick(args.common.seed, &file, "seed")?.unwrap_or(0),
    );
    if let Some(raw) = pick(args.common.noise.clone(), &file, "noise")? {
        cfg.noise = raw.parse::<NoiseModel>()?;
    }
    if let Some(raw) = pick(args.budget_mode.clone(), &file, "budget-mode")? {
        cfg.budget_mode = raw.parse::<BudgetMode>()?;
    }
    let rhos_raw: String = require(pick(args.rhos.clone(), &file, "rhos")?, "rhos")?;
    let rhos: Vec<f64> = parse_list(&rhos_raw, "rho")?;
    let rows = bench::sweep_rho(&cfg, &rhos)?;
    write_output(args.common.out.as_deref(), &bench::render_sweep_csv(&rows))
}

fn cmd_dim(args: DimArgs) -> Result<()> {
    let file = FileSettings::load(args.common.config.as_deref())?;
    let preset: Option<String> = pick(args.common.preset.clone(), &file, "preset")?;
    if let Some(name) = preset {
        let plan = bench::preset(&name)?;
        if !matches!(plan, PresetPlan::Dim { .. }) {
            return Err(Error::Config(format!("preset '{name}' is not a dim preset")));
        }
        let csv = bench::execute_plan(&plan)?;
        return write_output(args.common.out.as_deref(), &csv);
    }
    let objective = objective_spec(&args.common, &file)?;
    let rhos_raw: String = require(pick(args.rhos.clone(), &file, "rhos")?, "rhos")?;
    let query = DimQuery {
        objective,
        nu: pick(args.nu, &file, "nu")?.unwrap_or(1.0),
        rhos: parse_list(&rhos_raw, "rho")?,
        h_max: pick(args.h_max, &file, "h-max")?.unwrap_or(18),
        h_min: pick(args.h_min, &file, "h-min")?.unwrap_or(3),
    };
    let arity = pick(args.arity, &file, "arity")?.unwrap_or(2);
    let rows = bench::estimate_dim(&query, arity)?;
    write_output(args.common.out.as_deref(), &bench::render_dim_csv(&rows))
}

fn cmd_resume(args: ResumeArgs) -> Result<()> {
    let blob = fs::read(&args.from)?;
    let ckpt = bench::load_run_checkpoint(&mut blob.as_slice())?;
    let rows = bench::resume_experiment(ckpt)?;
    write_output(args.out.as_deref(), &bench::render_regret_csv(&rows))
}
