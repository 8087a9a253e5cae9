//! POO: anytime coordination of parallel HOO instances over a grid of
//! smoothness parameters.
//!
//! The run starts with a single instance at `(nu_max, rho_max)`. Whenever
//! the instance count `N` falls to or below `0.5 * D_max * ln(n / ln n)`,
//! with `D_max = ln(K) / ln(1/rho_max)` and `n` the logical evaluation
//! count, the grid doubles: `N` new instances spawn at the odd positions of
//! the refined grid `rho_i = rho_max^(2N/i)` and each catches up to the
//! common per-instance evaluation count before round-robin stepping
//! resumes. The grid keeps `1/ln(1/rho_i)` uniformly spaced, and doubling
//! reuses every existing instance as an even position of the new grid.
//!
//! Instances may share rewards: evaluations are keyed by the exact bit
//! pattern of the sampled point, and a stored sample is consumed at most
//! once per instance, so each instance still sees an i.i.d. reward sequence
//! at every point. Reward draws are derived from the master seed, the point
//! bits, and the per-instance occurrence index; a replay with sharing
//! disabled therefore reproduces the identical reward sequence and differs
//! only in how many requests count as fresh objective calls.
//!
//! The final recommendation picks the instance with the best empirical mean
//! reward and returns one of its evaluated points uniformly at random.

use std::collections::{BTreeMap, VecDeque};
use std::io::{Read, Write};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hoo::{EvalProvider, EvalRecord, Evaluation, HooInstance, RecommendMode};
use crate::objective::{NoiseModel, Objective};
use crate::partition::Region;
use crate::seed::{derive_seed, rng_from, tags};

/// `D_max = ln(K) / ln(1/rho_max)`, the dimension ceiling the grid covers.
pub fn d_max_for(arity: u32, rho_max: f64) -> f64 {
    (arity as f64).ln() / (1.0 / rho_max).ln()
}

/// Smallest power of two strictly above `0.5 * d_max * ln(n / ln n)`, and 1
/// below the threshold's domain (`n < 3`).
pub fn required_instances(n: u64, d_max: f64) -> u64 {
    if n < 3 {
        return 1;
    }
    let nf = n as f64;
    let threshold = 0.5 * d_max * (nf / nf.ln()).ln();
    let mut target = 1u64;
    while (target as f64) <= threshold {
        target *= 2;
    }
    target
}

/// The ascending grid `{rho_max^(count/i)}` for `i = 1..=count`. Doubling
/// `count` reproduces the old grid exactly at the even positions.
pub fn rho_grid(rho_max: f64, count: u64) -> Vec<f64> {
    (1..=count).map(|i| rho_max.powf(count as f64 / i as f64)).collect()
}

// ---------------------------------------------------------------------------
// Shared evaluation cache
// ---------------------------------------------------------------------------

/// Bit-exact coordinates of an evaluated point. Serializes as the hex bit
/// patterns joined by `:` so it can key JSON maps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointKey(Vec<u64>);

impl PointKey {
    pub fn of(x: &[f64]) -> Self {
        PointKey(x.iter().map(|v| v.to_bits()).collect())
    }
}

impl Serialize for PointKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<String> = self.0.iter().map(|w| format!("{w:016x}")).collect();
        s.serialize_str(&text.join(":"))
    }
}

impl<'de> Deserialize<'de> for PointKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let words = text
            .split(':')
            .map(|part| u64::from_str_radix(part, 16))
            .collect::<std::result::Result<Vec<u64>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(PointKey(words))
    }
}

/// Point-keyed store of observed rewards with per-(instance, point)
/// consumption counters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalCache {
    sharing: bool,
    noise_seed: u64,
    store: BTreeMap<PointKey, Vec<f64>>,
    consumed: Vec<BTreeMap<PointKey, u32>>,
}

impl EvalCache {
    pub fn new(sharing: bool, noise_seed: u64) -> Self {
        EvalCache { sharing, noise_seed, store: BTreeMap::new(), consumed: Vec::new() }
    }

    pub fn sharing(&self) -> bool {
        self.sharing
    }

    /// Registers a consumer and returns its id.
    pub fn register_instance(&mut self) -> usize {
        self.consumed.push(BTreeMap::new());
        self.consumed.len() - 1
    }

    /// Returns the `c`-th reward at `x` for this instance, where `c` is the
    /// instance's own request count at `x`: a stored sample when sharing is
    /// on and one exists, a fresh draw otherwise. The reward value depends
    /// only on `(master seed, x, c)`, never on sharing or scheduling.
    pub fn request_eval(
        &mut self,
        instance: usize,
        x: &[f64],
        objective: &dyn Objective,
        noise: &NoiseModel,
    ) -> Result<Evaluation> {
        let key = PointKey::of(x);
        let c = *self.consumed[instance].get(&key).unwrap_or(&0);
        if self.sharing {
            if let Some(list) = self.store.get(&key) {
                if (c as usize) < list.len() {
                    let reward = list[c as usize];
                    *self.consumed[instance].entry(key).or_insert(0) += 1;
                    return Ok(Evaluation { reward, fresh: false });
                }
            }
        }
        let mut words = Vec::with_capacity(key.0.len() + 1);
        words.extend_from_slice(&key.0);
        words.push(c as u64);
        let mut rng = rng_from(self.noise_seed, &words);
        let reward = objective.true_value(x)? + noise.sample(&mut rng);
        if self.sharing {
            let list = self.store.entry(key.clone()).or_default();
            debug_assert_eq!(list.len(), c as usize);
            list.push(reward);
        }
        *self.consumed[instance].entry(key).or_insert(0) += 1;
        Ok(Evaluation { reward, fresh: true })
    }
}

/// Routes one instance's evaluations through the shared cache.
pub struct CacheProvider<'a> {
    pub cache: &'a mut EvalCache,
    pub instance: usize,
    pub objective: &'a dyn Objective,
    pub noise: &'a NoiseModel,
}

impl EvalProvider for CacheProvider<'_> {
    fn eval(&mut self, x: &[f64]) -> Result<Evaluation> {
        self.cache.request_eval(self.instance, x, self.objective, self.noise)
    }
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BudgetMode {
    /// Stop when the count of fresh objective calls reaches the budget.
    Fresh,
    /// Stop when the logical evaluation count (cache hits included) does.
    Logical,
}

impl FromStr for BudgetMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fresh" => Ok(BudgetMode::Fresh),
            "logical" => Ok(BudgetMode::Logical),
            other => Err(Error::Config(format!("unknown budget mode '{other}'"))),
        }
    }
}

/// Optional schedules that enlarge the covered smoothness class over time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Growth {
    Off,
    /// Scale `D_max` by `(N+1)/N` and add one instance at the new top grid
    /// position. Leaves `N` off the power-of-two lattice.
    DmaxIncrement,
    /// `rho_max <- sqrt(rho_max)`, doubling `D_max`, and add `N` instances
    /// filling the upper half of the refreshed grid.
    RhoSqrt,
}

impl FromStr for Growth {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(Growth::Off),
            "dmax" => Ok(Growth::DmaxIncrement),
            "rho-sqrt" => Ok(Growth::RhoSqrt),
            other => Err(Error::Config(format!("unknown growth schedule '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PooConfig {
    pub domain: Region,
    pub arity: u32,
    pub rho_max: f64,
    pub nu_max: f64,
    pub sharing: bool,
    pub budget: u64,
    pub budget_mode: BudgetMode,
    pub growth: Growth,
    /// Multiplier applied to `nu_max` at each growth event; spawns after the
    /// event use the grown value.
    pub nu_growth_factor: f64,
    /// Confidence-width calibration handed to every HOO instance, normally
    /// the reward noise's almost-sure bound.
    pub conf_scale: f64,
    pub master_seed: u64,
}

impl PooConfig {
    pub fn new(domain: Region, arity: u32, rho_max: f64, nu_max: f64, budget: u64, master_seed: u64) -> Self {
        PooConfig {
            domain,
            arity,
            rho_max,
            nu_max,
            sharing: true,
            budget,
            budget_mode: BudgetMode::Fresh,
            growth: Growth::Off,
            nu_growth_factor: 1.0,
            conf_scale: 1.0,
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho_max > 0.0 && self.rho_max < 1.0) {
            return Err(Error::Config("rho_max must lie in (0,1)".into()));
        }
        if !(self.nu_max > 0.0 && self.nu_max.is_finite()) {
            return Err(Error::Config("nu_max must be positive".into()));
        }
        if self.budget < 1 {
            return Err(Error::Config("budget must be at least 1".into()));
        }
        if self.arity < 2 {
            return Err(Error::Config("arity must be at least 2".into()));
        }
        if !(self.nu_growth_factor >= 1.0 && self.nu_growth_factor.is_finite()) {
            return Err(Error::Config("nu growth factor must be >= 1".into()));
        }
        if !(self.conf_scale >= 0.0 && self.conf_scale.is_finite()) {
            return Err(Error::Config("confidence scale must be finite and >= 0".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Run state
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SpawnSpec {
    epoch: u32,
    num: u64,
    den: u64,
    nu: f64,
    rho: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
enum Phase {
    /// Round-robin over the grid; `next` is the position due to step.
    Rounds { next: usize },
    /// New instances replaying to the common local time, in grid order.
    CatchUp { pending: VecDeque<SpawnSpec>, active: Option<usize>, target_t: u64 },
}

/// One grid entry: identity plus its HOO run. The grid exponent `num/den`
/// (so `rho = rho_max^(num/den)` at spawn epoch) keys the instance's
/// tie-breaking stream independently of spawn order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceSlot {
    pub id: usize,
    epoch: u32,
    num: u64,
    den: u64,
    pub hoo: HooInstance,
}

/// Counters and work performed by one [`PooState::poo_step`] call.
#[derive(Clone, Copy, Debug)]
pub struct StepReport {
    pub evals: u64,
    pub fresh_evals: u64,
    pub halted: bool,
    pub n: u64,
    pub n_fresh: u64,
    pub instances: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PooState {
    /// Ascending by rho; position + 1 is the grid index.
    instances: Vec<InstanceSlot>,
    n: u64,
    n_fresh: u64,
    d_max: f64,
    rho_max: f64,
    nu_max: f64,
    epoch: u32,
    growth_events: u32,
    cache: EvalCache,
    phase: Phase,
}

impl PooState {
    pub fn new(cfg: &PooConfig) -> Result<Self> {
        cfg.validate()?;
        let noise_seed = derive_seed(cfg.master_seed, &[tags::NOISE]);
        let mut state = PooState {
            instances: Vec::new(),
            n: 0,
            n_fresh: 0,
            d_max: d_max_for(cfg.arity, cfg.rho_max),
            rho_max: cfg.rho_max,
            nu_max: cfg.nu_max,
            epoch: 0,
            growth_events: 0,
            cache: EvalCache::new(cfg.sharing, noise_seed),
            phase: Phase::Rounds { next: 0 },
        };
        let first = SpawnSpec {
            epoch: 0,
            num: 1,
            den: 1,
            nu: cfg.nu_max,
            rho: cfg.rho_max.powf(1.0),
        };
        state.spawn(&first, cfg)?;
        Ok(state)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn n_fresh(&self) -> u64 {
        self.n_fresh
    }

    pub fn num_instances(&self) -> usize {
        self.instances.len()
    }

    pub fn instances(&self) -> &[InstanceSlot] {
        &self.instances
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn nu_max(&self) -> f64 {
        self.nu_max
    }

    /// True between completed rounds, when doubling checks happen and all
    /// instances share one local time.
    pub fn at_round_boundary(&self) -> bool {
        matches!(self.phase, Phase::Rounds { next: 0 })
    }

    pub fn counter(&self, mode: BudgetMode) -> u64 {
        match mode {
            BudgetMode::Fresh => self.n_fresh,
            BudgetMode::Logical => self.n,
        }
    }

    pub fn budget_remaining(&self, cfg: &PooConfig) -> u64 {
        cfg.budget.saturating_sub(self.counter(cfg.budget_mode))
    }

    fn slot_pos(&self, id: usize) -> usize {
        self.instances.iter().position(|s| s.id == id).expect("known slot id")
    }

    fn spawn(&mut self, spec: &SpawnSpec, cfg: &PooConfig) -> Result<usize> {
        let id = self.cache.register_instance();
        let seed = derive_seed(
            cfg.master_seed,
            &[tags::INSTANCE, spec.epoch as u64, spec.num, spec.den],
        );
        let hoo = HooInstance::new(spec.nu, spec.rho, cfg.domain.clone(), cfg.arity, seed)?
            .with_conf_scale(cfg.conf_scale)?;
        let pos = self.instances.partition_point(|s| s.hoo.rho() < spec.rho);
        self.instances.insert(
            pos,
            InstanceSlot { id, epoch: spec.epoch, num: spec.num, den: spec.den, hoo },
        );
        Ok(id)
    }

    fn common_time(&self) -> u64 {
        self.instances.iter().map(|s| s.hoo.t()).max().unwrap_or(0)
    }

    fn needs_double(&self) -> bool {
        if self.n < 3 {
            return false;
        }
        let nf = self.n as f64;
        (self.instances.len() as f64) <= 0.5 * self.d_max * (nf / nf.ln()).ln()
    }

    fn start_doubling(&mut self) {
        let count = self.instances.len() as u64;
        let target_t = self.common_time();
        let total = 2 * count;
        let mut pending = VecDeque::new();
        let mut i = 1u64;
        while i < total {
            pending.push_back(SpawnSpec {
                epoch: self.epoch,
                num: total,
                den: i,
                nu: self.nu_max,
                rho: self.rho_max.powf(total as f64 / i as f64),
            });
            i += 2;
        }
        self.phase = Phase::CatchUp { pending, active: None, target_t };
    }

    fn growth_threshold(&self) -> u64 {
        // Growth events fire as n crosses 2^2, 2^4, 2^8, 2^16, ... so the
        // covered class widens while D_max stays O(log log n).
        let exp = 1u64 << (self.growth_events + 1).min(32);
        if exp >= 64 {
            u64::MAX
        } else {
            1u64 << exp
        }
    }

    fn growth_due(&self, cfg: &PooConfig) -> bool {
        cfg.growth != Growth::Off && self.n >= self.growth_threshold()
    }

    /// Applies the configured growth schedule once. Requires a batch
    /// boundary; no-op when the schedule is off.
    pub fn grow_limits(&mut self, cfg: &PooConfig) -> Result<()> {
        if cfg.growth == Growth::Off {
            return Ok(());
        }
        if !self.at_round_boundary() {
            return Err(Error::Config("limit growth must happen at a batch boundary".into()));
        }
        let target_t = self.common_time();
        self.epoch += 1;
        self.nu_max *= cfg.nu_growth_factor;
        let count = self.instances.len() as u64;
        let mut pending = VecDeque::new();
        match cfg.growth {
            Growth::Off => unreachable!(),
            Growth::DmaxIncrement => {
                let new_rho_max = self.rho_max.powf(count as f64 / (count + 1) as f64);
                pending.push_back(SpawnSpec {
                    epoch: self.epoch,
                    num: count,
                    den: count + 1,
                    nu: self.nu_max,
                    rho: new_rho_max,
                });
                self.d_max *= (count + 1) as f64 / count as f64;
                self.rho_max = new_rho_max;
            }
            Growth::RhoSqrt => {
                self.rho_max = self.rho_max.sqrt();
                self.d_max = d_max_for(cfg.arity, self.rho_max);
                let total = 2 * count;
                for i in (count + 1)..=total {
                    pending.push_back(SpawnSpec {
                        epoch: self.epoch,
                        num: total,
                        den: i,
                        nu: self.nu_max,
                        rho: self.rho_max.powf(total as f64 / i as f64),
                    });
                }
            }
        }
        self.phase = Phase::CatchUp { pending, active: None, target_t };
        Ok(())
    }

    /// Runs structural transitions (doubling, growth, catch-up wind-down)
    /// until an evaluation is due. Consumes no budget; idempotent.
    pub fn settle_phase(&mut self, cfg: &PooConfig) -> Result<()> {
        self.advance_phase(cfg)
    }

    fn advance_phase(&mut self, cfg: &PooConfig) -> Result<()> {
        enum Act {
            Stay,
            Double,
            Grow,
            Drain,
            Spawn,
        }
        loop {
            let act = match &self.phase {
                Phase::Rounds { next: 0 } => {
                    if self.needs_double() {
                        Act::Double
                    } else if self.growth_due(cfg) {
                        Act::Grow
                    } else {
                        Act::Stay
                    }
                }
                Phase::Rounds { .. } => Act::Stay,
                Phase::CatchUp { pending, active, .. } => {
                    if active.is_some() {
                        Act::Stay
                    } else if pending.is_empty() {
                        Act::Drain
                    } else {
                        Act::Spawn
                    }
                }
            };
            match act {
                Act::Stay => return Ok(()),
                Act::Double => self.start_doubling(),
                Act::Grow => {
                    self.growth_events += 1;
                    self.grow_limits(cfg)?;
                }
                Act::Drain => self.phase = Phase::Rounds { next: 0 },
                Act::Spawn => {
                    let (spec, target) = match &mut self.phase {
                        Phase::CatchUp { pending, target_t, .. } => {
                            (pending.pop_front().expect("nonempty"), *target_t)
                        }
                        _ => unreachable!(),
                    };
                    let id = self.spawn(&spec, cfg)?;
                    if (self.instances[self.slot_pos(id)].hoo.t()) < target {
                        match &mut self.phase {
                            Phase::CatchUp { active, .. } => *active = Some(id),
                            _ => unreachable!(),
                        }
                        return Ok(());
                    }
                    // target time is zero: nothing to replay, keep going
                }
            }
        }
    }

    fn step_slot(&mut self, id: usize, objective: &dyn Objective, noise: &NoiseModel) -> Result<Evaluation> {
        let pos = self.slot_pos(id);
        let out = {
            let mut provider = CacheProvider {
                cache: &mut self.cache,
                instance: id,
                objective,
                noise,
            };
            self.instances[pos].hoo.hoo_step(&mut provider)?
        };
        self.n += 1;
        if out.fresh {
            self.n_fresh += 1;
        }
        Ok(Evaluation { reward: out.reward, fresh: out.fresh })
    }

    /// Performs the one evaluation the current phase calls for. Returns the
    /// evaluation and whether it completed a round.
    fn eval_once(&mut self, objective: &dyn Objective, noise: &NoiseModel) -> Result<(Evaluation, bool)> {
        match &self.phase {
            Phase::CatchUp { active, target_t, .. } => {
                let id = active.expect("advance_phase leaves an active spawn");
                let target = *target_t;
                let ev = self.step_slot(id, objective, noise)?;
                if self.instances[self.slot_pos(id)].hoo.t() >= target {
                    if let Phase::CatchUp { active, .. } = &mut self.phase {
                        *active = None;
                    }
                }
                Ok((ev, false))
            }
            Phase::Rounds { next } => {
                let pos = *next;
                let id = self.instances[pos].id;
                let ev = self.step_slot(id, objective, noise)?;
                let wrapped = pos + 1 == self.instances.len();
                if let Phase::Rounds { next } = &mut self.phase {
                    *next = if wrapped { 0 } else { pos + 1 };
                }
                Ok((ev, wrapped))
            }
        }
    }

    /// One logical evaluation: exactly one instance steps once, preceded by
    /// any free structural transitions. The finest unit a driver can stop at.
    pub fn micro_step(&mut self, cfg: &PooConfig, objective: &dyn Objective, noise: &NoiseModel) -> Result<Evaluation> {
        self.advance_phase(cfg)?;
        let (ev, _) = self.eval_once(objective, noise)?;
        Ok(ev)
    }

    /// One outer-loop body: any due spawning with catch-up, then one
    /// evaluation per instance in grid order, then any spawning the enlarged
    /// count triggers. Halts immediately when the budget runs out, leaving
    /// the state valid for recommendation; a call with no budget is a no-op.
    pub fn poo_step(&mut self, cfg: &PooConfig, objective: &dyn Objective, noise: &NoiseModel) -> Result<StepReport> {
        let n0 = self.n;
        let f0 = self.n_fresh;
        if self.budget_remaining(cfg) == 0 {
            return Ok(StepReport {
                evals: 0,
                fresh_evals: 0,
                halted: true,
                n: self.n,
                n_fresh: self.n_fresh,
                instances: self.instances.len(),
            });
        }
        let mut wrapped = false;
        let halted = loop {
            if self.budget_remaining(cfg) == 0 {
                break true;
            }
            self.advance_phase(cfg)?;
            if wrapped && self.at_round_boundary() {
                break false;
            }
            let (_, w) = self.eval_once(objective, noise)?;
            wrapped |= w;
        };
        Ok(StepReport {
            evals: self.n - n0,
            fresh_evals: self.n_fresh - f0,
            halted,
            n: self.n,
            n_fresh: self.n_fresh,
            instances: self.instances.len(),
        })
    }

    /// The instance with the best empirical mean; ties go to the smaller
    /// grid index (smaller rho). Errors until every instance has evaluated.
    pub fn best_instance(&self) -> Result<&InstanceSlot> {
        if self.instances.is_empty() {
            return Err(Error::NotReady("no instances"));
        }
        let mut best_pos = 0usize;
        let mut best_mean = f64::NEG_INFINITY;
        for (pos, slot) in self.instances.iter().enumerate() {
            let mean = slot
                .hoo
                .instance_mean()
                .map_err(|_| Error::NotReady("an instance has not evaluated yet"))?;
            if mean > best_mean {
                best_mean = mean;
                best_pos = pos;
            }
        }
        Ok(&self.instances[best_pos])
    }

    /// Uniform-random point from the best instance's evaluation log.
    pub fn poo_recommend<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<&EvalRecord> {
        self.best_instance()?.hoo.recommend(rng, RecommendMode::UniformRandom)
    }
}

// ---------------------------------------------------------------------------
// Checkpointing
// ---------------------------------------------------------------------------

pub const POO_CHECKPOINT_FORMAT: &str = "hoopoo.poo-checkpoint.v1";

#[derive(Serialize)]
struct CheckpointOut<'a> {
    format: &'static str,
    config: &'a PooConfig,
    state: &'a PooState,
}

#[derive(Deserialize)]
struct CheckpointIn {
    format: String,
    config: PooConfig,
    state: PooState,
}

/// Serializes a run to a self-describing, versioned blob. The objective is
/// not part of the blob; resuming requires re-binding the same objective and
/// noise model.
pub fn save_checkpoint(cfg: &PooConfig, state: &PooState, writer: &mut dyn Write) -> Result<()> {
    let blob = CheckpointOut { format: POO_CHECKPOINT_FORMAT, config: cfg, state };
    serde_json::to_writer(writer, &blob).map_err(|e| Error::Checkpoint(e.to_string()))
}

/// Restores a run saved by [`save_checkpoint`]; stepping continues
/// bit-exactly where the original run left off.
pub fn load_checkpoint(reader: &mut dyn Read) -> Result<(PooConfig, PooState)> {
    let blob: CheckpointIn =
        serde_json::from_reader(reader).map_err(|e| Error::Checkpoint(e.to_string()))?;
    if blob.format != POO_CHECKPOINT_FORMAT {
        return Err(Error::Checkpoint(format!("unsupported format tag '{}'", blob.format)));
    }
    Ok((blob.config, blob.state))
}
