//! Benchmark harness: seeded multi-run experiments, CSV emission, named
//! presets, and checkpoint/resume of in-flight experiments.
//!
//! Output is CSV only; plotting belongs to external tools. Rows are
//! buffered per run and emitted in `(run, checkpoint)` order regardless of
//! which worker finished first, and every float is printed with 17
//! significant digits so files round-trip bit-exactly.
//!
//! Per-run seeds derive from the master seed, the algorithm family tag, and
//! the run index alone. Runs of different parameterizations of the same
//! family therefore reuse the same reward realizations wherever their point
//! sequences coincide, which pairs the comparisons the acceptance checks
//! make; adding or removing runs never disturbs other runs' rows.

use std::str::FromStr;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    check_assumption1, dim_report, expected_simple_regret, simple_regret, AssumptionOutcome,
    EnumerationMode, DEFAULT_FIT_H_MIN,
};
use crate::error::{Error, Result};
use crate::hoo::{HooInstance, RecommendMode};
use crate::objective::{self, NoiseModel, Objective, DEFAULT_GRID_RESOLUTION};
use crate::partition::StandardPartitioning;
use crate::poo::{BudgetMode, CacheProvider, EvalCache, Growth, PooConfig, PooState};
use crate::seed::{derive_seed, rng_from, tags};

pub const REGRET_SCHEMA: &str = "#schema=hoopoo.regret.v1";
pub const REGRET_HEADER: &str = "run_id,algo,nu,rho,checkpoint_n,n_fresh,regret_realized,regret_expected,n_instances,cache_hit_rate,seed";
pub const SWEEP_SCHEMA: &str = "#schema=hoopoo.sweep.v1";
pub const SWEEP_HEADER: &str = "rho,runs,budget,mean_regret_expected,stderr_regret_expected,mean_regret_realized,stderr_regret_realized,seed";
pub const DIM_SCHEMA: &str = "#schema=hoopoo.dim.v1";
pub const DIM_HEADER: &str =
    "objective,nu,rho,h_min,h_max,d,ln_c,residual,assumption,first_fail_depth,counts";

/// 17 significant digits: enough for exact f64 round-trips.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}


// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Objective selection by name plus key-value parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub name: String,
    pub params: Vec<(String, String)>,
}

impl ObjectiveSpec {
    pub fn by_name(name: &str) -> Self {
        ObjectiveSpec { name: name.to_string(), params: Vec::new() }
    }

    pub fn build(&self) -> Result<Arc<dyn Objective>> {
        objective::from_spec(&self.name, &self.params)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum AlgoSpec {
    Hoo { nu: f64, rho: f64 },
    Poo { rho_max: f64, nu_max: f64, sharing: bool, growth: Growth },
}

impl AlgoSpec {
    pub fn family(&self) -> &'static str {
        match self {
            AlgoSpec::Hoo { .. } => "hoo",
            AlgoSpec::Poo { .. } => "poo",
        }
    }

    fn family_tag(&self) -> u64 {
        match self {
            AlgoSpec::Hoo { .. } => 0x686f_6f00,
            AlgoSpec::Poo { .. } => 0x706f_6f00,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecMode {
    Uniform,
    Deepest,
}

impl FromStr for RecMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(RecMode::Uniform),
            "deepest" => Ok(RecMode::Deepest),
            other => Err(Error::Config(format!("unknown recommendation mode '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub objective: ObjectiveSpec,
    pub noise: NoiseModel,
    pub algo: AlgoSpec,
    pub arity: u32,
    pub budget: u64,
    pub budget_mode: BudgetMode,
    pub runs: u32,
    pub seed: u64,
    pub rec_mode: RecMode,
    /// Budget counts at which a row is recorded; ascending, ending at most
    /// at the budget.
    pub checkpoints: Vec<u64>,
}

impl ExperimentConfig {
    pub fn new(objective: ObjectiveSpec, algo: AlgoSpec, budget: u64, runs: u32, seed: u64) -> Self {
        ExperimentConfig {
            objective,
            noise: NoiseModel::Uniform { half_width: 0.1 },
            algo,
            arity: 2,
            budget,
            budget_mode: BudgetMode::Fresh,
            runs,
            seed,
            rec_mode: RecMode::Uniform,
            checkpoints: vec![budget],
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.objective.build()?;
        self.noise.validate()?;
        if self.runs < 1 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.budget < 1 {
            return Err(Error::Config("budget must be at least 1".into()));
        }
        if self.arity < 2 {
            return Err(Error::Config("arity must be at least 2".into()));
        }
        if self.checkpoints.is_empty() {
            return Err(Error::Config("at least one checkpoint is required".into()));
        }
        if self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("checkpoints must be strictly ascending".into()));
        }
        if *self.checkpoints.last().unwrap() > self.budget || self.checkpoints[0] < 1 {
            return Err(Error::Config("checkpoints must lie in [1, budget]".into()));
        }
        match self.algo {
            AlgoSpec::Hoo { nu, rho } => {
                if !(nu > 0.0) || !(0.0..1.0).contains(&rho) {
                    return Err(Error::Config("hoo needs nu > 0 and rho in [0,1)".into()));
                }
            }
            AlgoSpec::Poo { rho_max, nu_max, .. } => {
                if !(nu_max > 0.0) || !(rho_max > 0.0 && rho_max < 1.0) {
                    return Err(Error::Config("poo needs nu_max > 0 and rho_max in (0,1)".into()));
                }
            }
        }
        Ok(())
    }
}

/// One regret-curve record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CsvRow {
    pub run_id: u32,
    pub algo: String,
    pub nu: f64,
    pub rho: f64,
    pub checkpoint_n: u64,
    pub n_fresh: u64,
    pub regret_realized: f64,
    pub regret_expected: f64,
    pub n_instances: u64,
    pub cache_hit_rate: f64,
    pub seed: u64,
}

impl CsvRow {
    fn render(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.run_id,
            self.algo,
            fmt_float(self.nu),
            fmt_float(self.rho),
            self.checkpoint_n,
            self.n_fresh,
            fmt_float(self.regret_realized),
            fmt_float(self.regret_expected),
            self.n_instances,
            fmt_float(self.cache_hit_rate),
            self.seed,
        )
    }
}

pub fn render_regret_csv(rows: &[CsvRow]) -> String {
    let mut out = String::new();
    out.push_str(REGRET_SCHEMA);
    out.push('\n');
    out.push_str(REGRET_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.render());
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Run driver
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
enum AlgoRunState {
    Hoo { instance: HooInstance, cache: EvalCache, n: u64, n_fresh: u64 },
    Poo { pconfig: PooConfig, state: PooState },
}

#[derive(Serialize, Deserialize)]
struct RunState {
    run_id: u32,
    seed: u64,
    rec_rng: ChaCha8Rng,
    algo: AlgoRunState,
}

impl RunState {
    fn new(cfg: &ExperimentConfig, obj: &dyn Objective, run_id: u32) -> Result<Self> {
        let run_seed = derive_seed(cfg.seed, &[tags::RUN, cfg.algo.family_tag(), run_id as u64]);
        let rec_rng = rng_from(run_seed, &[tags::RECOMMEND]);
        let algo = match cfg.algo {
            AlgoSpec::Hoo { nu, rho } => {
                let mut cache = EvalCache::new(false, derive_seed(run_seed, &[tags::NOISE]));
                let id = cache.register_instance();
                debug_assert_eq!(id, 0);
                let instance_seed = derive_seed(run_seed, &[tags::INSTANCE, 0, 1, 1]);
                let instance =
                    HooInstance::new(nu, rho, obj.domain(), cfg.arity, instance_seed)?;
                AlgoRunState::Hoo { instance, cache, n: 0, n_fresh: 0 }
            }
            AlgoSpec::Poo { rho_max, nu_max, sharing, growth } => {
                let mut pconfig =
                    PooConfig::new(obj.domain(), cfg.arity, rho_max, nu_max, cfg.budget, run_seed);
                pconfig.sharing = sharing;
                pconfig.growth = growth;
                pconfig.budget_mode = cfg.budget_mode;
                let state = PooState::new(&pconfig)?;
                AlgoRunState::Poo { pconfig, state }
            }
        };
        Ok(RunState { run_id, seed: run_seed, rec_rng, algo })
    }

    /// Advances until the budget counter reaches `target`.
    fn advance_to(&mut self, cfg: &ExperimentConfig, obj: &dyn Objective, target: u64) -> Result<()> {
        match &mut self.algo {
            AlgoRunState::Hoo { instance, cache, n, n_fresh } => {
                // a single instance never replays a sample: fresh == logical
                while *n < target {
                    let mut provider = CacheProvider {
                        cache,
                        instance: 0,
                        objective: obj,
                        noise: &cfg.noise,
                    };
                    let out = instance.hoo_step(&mut provider)?;
                    *n += 1;
                    if out.fresh {
                        *n_fresh += 1;
                    }
                }
            }
            AlgoRunState::Poo { pconfig, state } => {
                while state.counter(pconfig.budget_mode) < target {
                    state.micro_step(pconfig, obj, &cfg.noise)?;
                }
            }
        }
        Ok(())
    }

    fn row(&mut self, cfg: &ExperimentConfig, obj: &dyn Objective, checkpoint: u64) -> Result<CsvRow> {
        let mode = match cfg.rec_mode {
            RecMode::Uniform => RecommendMode::UniformRandom,
            RecMode::Deepest => RecommendMode::Deepest,
        };
        let (algo, nu, rho, n, n_fresh, n_instances, point, expected) = match &self.algo {
            AlgoRunState::Hoo { instance, n, n_fresh, .. } => {
                let rec = instance.recommend(&mut self.rec_rng, mode)?;
                (
                    "hoo",
                    instance.nu(),
                    instance.rho(),
                    *n,
                    *n_fresh,
                    1u64,
                    rec.point.clone(),
                    expected_simple_regret(obj, instance)?,
                )
            }
            AlgoRunState::Poo { pconfig, state } => {
                let best = state.best_instance()?;
                let rec = best.hoo.recommend(&mut self.rec_rng, mode)?;
                (
                    "poo",
                    pconfig.nu_max,
                    pconfig.rho_max,
                    state.n(),
                    state.n_fresh(),
                    state.num_instances() as u64,
                    rec.point.clone(),
                    expected_simple_regret(obj, &best.hoo)?,
                )
            }
        };
        let realized = simple_regret(obj, &point)?;
        Ok(CsvRow {
            run_id: self.run_id,
            algo: algo.to_string(),
            nu,
            rho,
            checkpoint_n: checkpoint,
            n_fresh,
            regret_realized: realized,
            regret_expected: expected,
            n_instances,
            cache_hit_rate: if n == 0 { 0.0 } else { (n - n_fresh) as f64 / n as f64 },
            seed: self.seed,
        })
    }
}

fn run_single(cfg: &ExperimentConfig, obj: &dyn Objective, run_id: u32) -> Result<Vec<CsvRow>> {
    let mut state = RunState::new(cfg, obj, run_id)?;
    let mut rows = Vec::with_capacity(cfg.checkpoints.len());
    for &ck in &cfg.checkpoints {
        state.advance_to(cfg, obj, ck)?;
        rows.push(state.row(cfg, obj, ck)?);
    }
    Ok(rows)
}

/// Executes `runs` independent seeded runs, recording one row per
/// `(run, checkpoint)`. Runs execute on the worker pool; the output order
/// and content are independent of scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<CsvRow>> {
    cfg.validate()?;
    let obj = cfg.objective.build()?;
    let per_run: Vec<Vec<CsvRow>> = (0..cfg.runs)
        .into_par_iter()
        .map(|run_id| run_single(cfg, obj.as_ref(), run_id))
        .collect::<Result<_>>()?;
    Ok(per_run.into_iter().flatten().collect())
}

// ---------------------------------------------------------------------------
// Experiment checkpointing
// ---------------------------------------------------------------------------

pub const RUN_CHECKPOINT_FORMAT: &str = "hoopoo.run-checkpoint.v1";

/// A halted experiment: completed rows plus the in-flight run's full state.
#[derive(Serialize, Deserialize)]
pub struct RunCheckpoint {
    format: String,
    pub config: ExperimentConfig,
    rows_done: Vec<CsvRow>,
    next_checkpoint: usize,
    state: RunState,
}

/// Runs the experiment up to `halt_at` budget units into run `halt_run`,
/// then captures a resumable checkpoint instead of finishing.
pub fn run_experiment_halting(
    cfg: &ExperimentConfig,
    halt_run: u32,
    halt_at: u64,
) -> Result<RunCheckpoint> {
    cfg.validate()?;
    if halt_run >= cfg.runs {
        return Err(Error::Config("halt run index beyond the configured runs".into()));
    }
    if halt_at > cfg.budget {
        return Err(Error::Config("halt point beyond the budget".into()));
    }
    let obj = cfg.objective.build()?;
    let mut rows_done = Vec::new();
    for run_id in 0..halt_run {
        rows_done.extend(run_single(cfg, obj.as_ref(), run_id)?);
    }
    let mut state = RunState::new(cfg, obj.as_ref(), halt_run)?;
    let mut next_checkpoint = 0usize;
    while next_checkpoint < cfg.checkpoints.len() && cfg.checkpoints[next_checkpoint] <= halt_at {
        let ck = cfg.checkpoints[next_checkpoint];
        state.advance_to(cfg, obj.as_ref(), ck)?;
        rows_done.push(state.row(cfg, obj.as_ref(), ck)?);
        next_checkpoint += 1;
    }
    state.advance_to(cfg, obj.as_ref(), halt_at)?;
    Ok(RunCheckpoint {
        format: RUN_CHECKPOINT_FORMAT.to_string(),
        config: cfg.clone(),
        rows_done,
        next_checkpoint,
        state,
    })
}

/// Completes a halted experiment; the returned rows are byte-for-byte the
/// rows an uninterrupted [`run_experiment`] would have produced.
pub fn resume_experiment(ckpt: RunCheckpoint) -> Result<Vec<CsvRow>> {
    let cfg = ckpt.config;
    cfg.validate()?;
    let obj = cfg.objective.build()?;
    let mut rows = ckpt.rows_done;
    let mut state = ckpt.state;
    for idx in ckpt.next_checkpoint..cfg.checkpoints.len() {
        let ck = cfg.checkpoints[idx];
        state.advance_to(&cfg, obj.as_ref(), ck)?;
        rows.push(state.row(&cfg, obj.as_ref(), ck)?);
    }
    for run_id in state.run_id + 1..cfg.runs {
        rows.extend(run_single(&cfg, obj.as_ref(), run_id)?);
    }
    Ok(rows)
}

pub fn save_run_checkpoint(ckpt: &RunCheckpoint, writer: &mut dyn std::io::Write) -> Result<()> {
    serde_json::to_writer(writer, ckpt).map_err(|e| Error::Checkpoint(e.to_string()))
}

pub fn load_run_checkpoint(reader: &mut dyn std::io::Read) -> Result<RunCheckpoint> {
    let ckpt: RunCheckpoint =
        serde_json::from_reader(reader).map_err(|e| Error::Checkpoint(e.to_string()))?;
    if ckpt.format != RUN_CHECKPOINT_FORMAT {
        return Err(Error::Checkpoint(format!("unsupported format tag '{}'", ckpt.format)));
    }
    Ok(ckpt)
}

// ---------------------------------------------------------------------------
// Rho sweep
// ---------------------------------------------------------------------------

/// Final-regret summary for one grid value.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRow {
    pub rho: f64,
    pub runs: u32,
    pub budget: u64,
    pub mean_regret_expected: f64,
    pub stderr_regret_expected: f64,
    pub mean_regret_realized: f64,
    pub stderr_regret_realized: f64,
    pub seed: u64,
}

fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs the configured HOO at each `rho` to the full budget and summarizes
/// the final regret per grid value.
pub fn sweep_rho(cfg: &ExperimentConfig, rhos: &[f64]) -> Result<Vec<SweepRow>> {
    if rhos.is_empty() {
        return Err(Error::Config("rho sweep needs a nonempty grid".into()));
    }
    if rhos.iter().any(|r| !(0.0..1.0).contains(r)) {
        return Err(Error::Config("sweep rho values must lie in [0,1)".into()));
    }
    let nu = match cfg.algo {
        AlgoSpec::Hoo { nu, .. } => nu,
        AlgoSpec::Poo { .. } => {
            return Err(Error::Config("rho sweeps run the hoo algorithm".into()));
        }
    };
    let mut out = Vec::with_capacity(rhos.len());
    for &rho in rhos {
        let mut sub = cfg.clone();
        sub.algo = AlgoSpec::Hoo { nu, rho };
        sub.checkpoints = vec![cfg.budget];
        let rows = run_experiment(&sub)?;
        let expected: Vec<f64> = rows.iter().map(|r| r.regret_expected).collect();
        let realized: Vec<f64> = rows.iter().map(|r| r.regret_realized).collect();
        let (me, se) = mean_stderr(&expected);
        let (mr, sr) = mean_stderr(&realized);
        out.push(SweepRow {
            rho,
            runs: cfg.runs,
            budget: cfg.budget,
            mean_regret_expected: me,
            stderr_regret_expected: se,
            mean_regret_realized: mr,
            stderr_regret_realized: sr,
            seed: cfg.seed,
        });
    }
    Ok(out)
}

pub fn render_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_SCHEMA);
    out.push('\n');
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt_float(r.rho),
            r.runs,
            r.budget,
            fmt_float(r.mean_regret_expected),
            fmt_float(r.stderr_regret_expected),
            fmt_float(r.mean_regret_realized),
            fmt_float(r.stderr_regret_realized),
            r.seed,
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Dimension reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DimQuery {
    pub objective: ObjectiveSpec,
    pub nu: f64,
    pub rhos: Vec<f64>,
    pub h_max: u32,
    pub h_min: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DimRow {
    pub objective: String,
    pub nu: f64,
    pub rho: f64,
    pub h_min: u32,
    pub h_max: u32,
    pub d: f64,
    pub ln_c: f64,
    pub residual: f64,
    pub assumption: AssumptionOutcome,
    pub counts: Vec<u64>,
}

/// One fitted report plus a smoothness verdict per `(nu, rho)`.
pub fn estimate_dim(query: &DimQuery, arity: u32) -> Result<Vec<DimRow>> {
    if query.rhos.is_empty() {
        return Err(Error::Config("dimension query needs at least one rho".into()));
    }
    let obj = query.objective.build()?;
    let part = StandardPartitioning::new(obj.domain(), arity)?;
    let mut rows = Vec::with_capacity(query.rhos.len());
    for &rho in &query.rhos {
        let report = dim_report(
            obj.as_ref(),
            &part,
            query.nu,
            rho,
            query.h_max,
            query.h_min,
            DEFAULT_GRID_RESOLUTION,
            EnumerationMode::Pruned,
        )?;
        let assumption = check_assumption1(
            obj.as_ref(),
            &part,
            query.nu,
            rho,
            query.h_max,
            DEFAULT_GRID_RESOLUTION,
        )?;
        rows.push(DimRow {
            objective: query.objective.name.clone(),
            nu: query.nu,
            rho,
            h_min: query.h_min,
            h_max: query.h_max,
            d: report.d,
            ln_c: report.ln_c,
            residual: report.residual,
            assumption,
            counts: report.counts,
        });
    }
    Ok(rows)
}

pub fn render_dim_csv(rows: &[DimRow]) -> String {
    let mut out = String::new();
    out.push_str(DIM_SCHEMA);
    out.push('\n');
    out.push_str(DIM_HEADER);
    out.push('\n');
    for r in rows {
        let (verdict, fail_depth) = match r.assumption {
            AssumptionOutcome::Holds => ("pass", String::new()),
            AssumptionOutcome::FailsAt(h) => ("fail", h.to_string()),
        };
        let counts: Vec<String> = r.counts.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.objective,
            fmt_float(r.nu),
            fmt_float(r.rho),
            r.h_min,
            r.h_max,
            fmt_float(r.d),
            fmt_float(r.ln_c),
            fmt_float(r.residual),
            verdict,
            fail_depth,
            counts.join(";"),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// A named, fully pinned experiment bundle.
pub enum PresetPlan {
    Regret { configs: Vec<ExperimentConfig> },
    Sweep { config: ExperimentConfig, rhos: Vec<f64> },
    Dim { queries: Vec<DimQuery>, arity: u32 },
}

pub const PRESET_NAMES: [&str; 4] = ["fig2-small", "fig2-large", "rho-sweep", "dim-report"];

const PRESET_SEED: u64 = 42;

fn fig2_configs(budget: u64, runs: u32, checkpoints: Vec<u64>) -> Vec<ExperimentConfig> {
    let difficult = ObjectiveSpec::by_name("difficult");
    let mut configs = Vec::new();
    for rho in [0.0, 0.3, 0.66, 0.9] {
        let mut c = ExperimentConfig::new(
            difficult.clone(),
            AlgoSpec::Hoo { nu: 1.0, rho },
            budget,
            runs,
            PRESET_SEED,
        );
        c.checkpoints = checkpoints.clone();
        configs.push(c);
    }
    let mut poo = ExperimentConfig::new(
        difficult,
        AlgoSpec::Poo { rho_max: 0.9, nu_max: 1.0, sharing: true, growth: Growth::Off },
        budget,
        runs,
        PRESET_SEED,
    );
    poo.checkpoints = checkpoints;
    configs.push(poo);
    configs
}

/// Resolves a preset name to its plan.
pub fn preset(name: &str) -> Result<PresetPlan> {
    match name {
        "fig2-small" => Ok(PresetPlan::Regret {
            configs: fig2_configs(500, 100, vec![125, 250, 500]),
        }),
        "fig2-large" => Ok(PresetPlan::Regret {
            configs: fig2_configs(5_000, 20, vec![625, 1_250, 2_500, 5_000]),
        }),
        "rho-sweep" => {
            let config = ExperimentConfig::new(
                ObjectiveSpec::by_name("difficult"),
                AlgoSpec::Hoo { nu: 1.0, rho: 0.66 },
                5_000,
                20,
                PRESET_SEED,
            );
            Ok(PresetPlan::Sweep {
                config,
                rhos: vec![0.0, 0.3, 0.5, 0.66, 0.8, 0.9, 0.95],
            })
        }
        "dim-report" => Ok(PresetPlan::Dim {
            queries: vec![
                DimQuery {
                    objective: ObjectiveSpec::by_name("difficult"),
                    nu: 1.0,
                    rhos: vec![0.66, std::f64::consts::FRAC_1_SQRT_2, 0.75, 0.8],
                    h_max: 18,
                    h_min: DEFAULT_FIT_H_MIN,
                },
                DimQuery {
                    objective: ObjectiveSpec::by_name("constant"),
                    nu: 1.0,
                    rhos: vec![0.5],
                    h_max: 18,
                    h_min: DEFAULT_FIT_H_MIN,
                },
                DimQuery {
                    objective: ObjectiveSpec::by_name("power-envelope"),
                    nu: 1.0,
                    rhos: vec![0.5],
                    h_max: 18,
                    h_min: DEFAULT_FIT_H_MIN,
                },
                DimQuery {
                    objective: ObjectiveSpec::by_name("wedge2d"),
                    nu: 1.0,
                    rhos: vec![0.5, 0.75],
                    h_max: 11,
                    h_min: DEFAULT_FIT_H_MIN,
                },
            ],
            arity: 2,
        }),
        other => Err(Error::Config(format!(
            "unknown preset '{other}'; available: {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}

/// Runs a preset plan to its CSV text.
pub fn execute_plan(plan: &PresetPlan) -> Result<String> {
    match plan {
        PresetPlan::Regret { configs } => {
            let mut rows = Vec::new();
            for cfg in configs {
                rows.extend(run_experiment(cfg)?);
            }
            Ok(render_regret_csv(&rows))
        }
        PresetPlan::Sweep { config, rhos } => Ok(render_sweep_csv(&sweep_rho(config, rhos)?)),
        PresetPlan::Dim { queries, arity } => {
            let mut rows = Vec::new();
            for q in queries {
                rows.extend(estimate_dim(q, *arity)?);
            }
            Ok(render_dim_csv(&rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_cfg() -> ExperimentConfig {
        ExperimentConfig::new(
            ObjectiveSpec::by_name("difficult"),
            AlgoSpec::Hoo { nu: 1.0, rho: 0.5 },
            10,
            1,
            7,
        )
    }

    #[test]
    fn row_count_matches_runs_times_checkpoints() {
        let cfg = tiny_cfg();
        let rows = run_experiment(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].checkpoint_n, 10);

        let mut cfg = tiny_cfg();
        cfg.runs = 3;
        cfg.checkpoints = vec![5, 10];
        let rows = run_experiment(&cfg).unwrap();
        assert_eq!(rows.len(), 6);
        let order: Vec<(u32, u64)> = rows.iter().map(|r| (r.run_id, r.checkpoint_n)).collect();
        assert_eq!(order, vec![(0, 5), (0, 10), (1, 5), (1, 10), (2, 5), (2, 10)]);
    }

    #[test]
    fn identical_configs_render_identical_csv() {
        let mut cfg = tiny_cfg();
        cfg.runs = 4;
        cfg.budget = 60;
        cfg.checkpoints = vec![30, 60];
        let a = render_regret_csv(&run_experiment(&cfg).unwrap());
        let b = render_regret_csv(&run_experiment(&cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn run_rows_do_not_depend_on_other_runs() {
        let mut cfg = tiny_cfg();
        cfg.runs = 2;
        cfg.budget = 40;
        cfg.checkpoints = vec![40];
        let two = run_experiment(&cfg).unwrap();
        cfg.runs = 4;
        let four = run_experiment(&cfg).unwrap();
        for (a, b) in two.iter().zip(&four) {
            assert_eq!(a.render(), b.render());
        }
    }

    #[test]
    fn fresh_counts_grow_monotonically_across_checkpoints() {
        let mut cfg = tiny_cfg();
        cfg.algo =
            AlgoSpec::Poo { rho_max: 0.9, nu_max: 1.0, sharing: true, growth: Growth::Off };
        cfg.budget = 300;
        cfg.runs = 2;
        cfg.checkpoints = vec![50, 150, 300];
        let rows = run_experiment(&cfg).unwrap();
        for run in rows.chunks(3) {
            assert!(run.windows(2).all(|w| w[0].n_fresh <= w[1].n_fresh));
        }
    }

    #[test]
    fn float_formatting_round_trips() {
        for v in [0.0, -0.0, 1.0 / 3.0, -0.648420028, 6.578813478, f64::MIN_POSITIVE] {
            let s = fmt_float(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{s}");
        }
    }

    #[test]
    fn csv_headers_are_pinned() {
        let rows = run_experiment(&tiny_cfg()).unwrap();
        let csv = render_regret_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "#schema=hoopoo.regret.v1");
        assert_eq!(
            lines.next().unwrap(),
            "run_id,algo,nu,rho,checkpoint_n,n_fresh,regret_realized,regret_expected,n_instances,cache_hit_rate,seed"
        );
    }

    #[test]
    fn bad_configs_are_rejected() {
        let mut cfg = tiny_cfg();
        cfg.objective = ObjectiveSpec::by_name("nonsense");
        assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));

        let mut cfg = tiny_cfg();
        cfg.checkpoints = vec![5, 5];
        assert!(cfg.validate().is_err());

        let mut cfg = tiny_cfg();
        cfg.checkpoints = vec![20];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn sweep_produces_one_summary_row_per_rho() {
        let mut cfg = tiny_cfg();
        cfg.budget = 50;
        cfg.runs = 3;
        let rows = sweep_rho(&cfg, &[0.0, 0.3, 0.66, 0.9]).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.runs == 3 && r.budget == 50));
        assert!(sweep_rho(&cfg, &[]).is_err());
        assert!(sweep_rho(&cfg, &[1.0]).is_err());
    }

    #[test]
    fn checkpointed_runs_resume_to_identical_rows() {
        let mut cfg = tiny_cfg();
        cfg.runs = 3;
        cfg.budget = 80;
        cfg.checkpoints = vec![40, 80];
        let full = render_regret_csv(&run_experiment(&cfg).unwrap());

        let ckpt = run_experiment_halting(&cfg, 1, 60).unwrap();
        let mut blob = Vec::new();
        save_run_checkpoint(&ckpt, &mut blob).unwrap();
        let restored = load_run_checkpoint(&mut blob.as_slice()).unwrap();
        let resumed = render_regret_csv(&resume_experiment(restored).unwrap());
        assert_eq!(full, resumed);
    }

    #[test]
    fn poo_checkpoints_resume_mid_run_too() {
        let mut cfg = tiny_cfg();
        cfg.algo =
            AlgoSpec::Poo { rho_max: 0.9, nu_max: 1.0, sharing: true, growth: Growth::Off };
        cfg.runs = 2;
        cfg.budget = 200;
        cfg.checkpoints = vec![100, 200];
        let full = render_regret_csv(&run_experiment(&cfg).unwrap());
        let ckpt = run_experiment_halting(&cfg, 0, 150).unwrap();
        let mut blob = Vec::new();
        save_run_checkpoint(&ckpt, &mut blob).unwrap();
        let restored = load_run_checkpoint(&mut blob.as_slice()).unwrap();
        let resumed = render_regret_csv(&resume_experiment(restored).unwrap());
        assert_eq!(full, resumed);
    }

    #[test]
    fn presets_resolve() {
        for name in PRESET_NAMES {
            assert!(preset(name).is_ok(), "{name}");
        }
        assert!(preset("fig9").is_err());
    }
}
