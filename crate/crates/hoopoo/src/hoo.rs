//! Modified HOO: optimistic search over a hierarchical partitioning.
//!
//! Each step selects a root-to-leaf path through the explored tree, samples
//! the leaf's cell once at its representative point (the cell center), logs
//! the reward along the whole path, and expands the leaf. A cell's score is
//!
//! ```text
//! U = mean_reward + w * sqrt(2 ln t / visits) + nu * rho^depth
//! ```
//!
//! with `U = +inf` for unvisited cells. The width factor `w` calibrates the
//! Chernoff-Hoeffding term to the reward noise (its almost-sure bound for
//! the bounded noise models used here; `w = 1` is the unit-range form).
//! The backed-up value `B = min(U, max over children of B)` makes the
//! greedy descent on `B` select exactly the path maximizing the minimum
//! `U` along it.
//!
//! `U` depends on the global step count everywhere, so the whole explored
//! subtree is recomputed before each selection. Trees hold one node per
//! evaluation plus the frontier, which keeps that exact recomputation
//! affordable at benchmark scale.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::NoisyObjective;
use crate::partition::{Region, StandardPartitioning};

/// Per-cell visit statistics and cached scores.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeStats {
    pub visits: u64,
    pub reward_sum: f64,
    /// Optimistic score; stale between refreshes, `+inf` while unvisited.
    #[serde(skip, default = "infinity")]
    pub u_value: f64,
    /// Backed-up score; stale between refreshes, `+inf` while unvisited.
    #[serde(skip, default = "infinity")]
    pub b_value: f64,
}

fn infinity() -> f64 {
    f64::INFINITY
}

impl NodeStats {
    fn fresh() -> Self {
        NodeStats { visits: 0, reward_sum: 0.0, u_value: f64::INFINITY, b_value: f64::INFINITY }
    }

    pub fn mean(&self) -> f64 {
        self.reward_sum / self.visits as f64
    }
}

/// The three-term optimistic score; `+inf` when the cell is unvisited.
pub fn compute_u(stats: &NodeStats, t: u64, nu: f64, rho: f64, depth: u32) -> f64 {
    if stats.visits == 0 {
        return f64::INFINITY;
    }
    stats.mean()
        + (2.0 * (t as f64).ln() / stats.visits as f64).sqrt()
        + nu * rho.powi(depth as i32)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Node {
    depth: u32,
    parent: Option<u32>,
    /// Index of the first of `arity` contiguous children, once expanded.
    first_child: Option<u32>,
    region: Region,
    representative: Vec<f64>,
    /// `nu * rho^depth`, fixed at creation.
    bonus: f64,
    stats: NodeStats,
}

/// One logged evaluation: the sampled cell's depth, point and reward.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalRecord {
    pub depth: u32,
    pub point: Vec<f64>,
    pub reward: f64,
}

/// Where a selected cell is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleMode {
    /// The cell's fixed representative point (its center). The default;
    /// point-keyed reward sharing across instances relies on it.
    Representative,
    /// A fresh uniform draw inside the cell, the classic behavior of the
    /// unmodified algorithm. Decouples the sample lattice from the
    /// partitioning grid, which matters on objectives whose structure
    /// aligns with the dyadic splits.
    UniformInCell,
}

/// How a finished run picks the point it returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecommendMode {
    /// One entry of the evaluation log, uniformly at random. The default;
    /// the mode whose expected regret the benchmarks report.
    UniformRandom,
    /// The deepest evaluated cell, ties resolved toward the latest entry.
    /// An opt-in heuristic.
    Deepest,
}

/// Result of one optimizer step.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub point: Vec<f64>,
    pub reward: f64,
    /// Whether the reward cost a fresh objective evaluation.
    pub fresh: bool,
}

/// Reward source consumed by [`HooInstance::hoo_step`]. Either a noisy
/// objective directly or a shared cache that may replay stored samples.
pub trait EvalProvider {
    fn eval(&mut self, x: &[f64]) -> Result<Evaluation>;
}

#[derive(Clone, Copy, Debug)]
pub struct Evaluation {
    pub reward: f64,
    pub fresh: bool,
}

impl EvalProvider for NoisyObjective {
    fn eval(&mut self, x: &[f64]) -> Result<Evaluation> {
        Ok(Evaluation { reward: self.eval_noisy(x)?, fresh: true })
    }
}

/// One HOO run: smoothness parameters, the explored tree, and the log.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HooInstance {
    nu: f64,
    rho: f64,
    /// Multiplier on the confidence width. The Chernoff-Hoeffding term
    /// bounds the estimation error induced by the reward noise, so runs
    /// calibrate it to the noise's almost-sure bound; `1.0` is the
    /// unit-range form of the formula.
    #[serde(default = "default_conf_scale")]
    conf_scale: f64,
    #[serde(default = "default_sample_mode")]
    sample_mode: SampleMode,
    partitioning: StandardPartitioning,
    t: u64,
    nodes: Vec<Node>,
    eval_log: Vec<EvalRecord>,
    reward_total: f64,
    rng: ChaCha8Rng,
}

fn default_conf_scale() -> f64 {
    1.0
}

fn default_sample_mode() -> SampleMode {
    SampleMode::Representative
}

impl HooInstance {
    /// `rho = 0` is allowed and reproduces the UCT-like degenerate variant.
    pub fn new(nu: f64, rho: f64, domain: Region, arity: u32, seed: u64) -> Result<Self> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::Config("nu must be positive".into()));
        }
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::Config("rho must lie in [0, 1)".into()));
        }
        let partitioning = StandardPartitioning::new(domain.clone(), arity)?;
        let root = Node {
            depth: 0,
            parent: None,
            first_child: None,
            region: domain.clone(),
            representative: domain.center(),
            bonus: nu * rho.powi(0),
            stats: NodeStats::fresh(),
        };
        use rand::SeedableRng;
        Ok(HooInstance {
            nu,
            rho,
            conf_scale: 1.0,
            sample_mode: SampleMode::Representative,
            partitioning,
            t: 0,
            nodes: vec![root],
            eval_log: Vec::new(),
            reward_total: 0.0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Calibrates the confidence width, typically to the reward noise's
    /// almost-sure bound. Only valid before the first step.
    pub fn with_conf_scale(mut self, scale: f64) -> Result<Self> {
        if !(scale >= 0.0 && scale.is_finite()) {
            return Err(Error::Config("confidence scale must be finite and >= 0".into()));
        }
        if self.t > 0 {
            return Err(Error::Config("confidence scale is fixed once stepping starts".into()));
        }
        self.conf_scale = scale;
        Ok(self)
    }

    pub fn conf_scale(&self) -> f64 {
        self.conf_scale
    }

    /// Switches where cells are sampled. Only valid before the first step.
    pub fn with_sample_mode(mut self, mode: SampleMode) -> Result<Self> {
        if self.t > 0 {
            return Err(Error::Config("sample mode is fixed once stepping starts".into()));
        }
        self.sample_mode = mode;
        Ok(self)
    }

    pub fn sample_mode(&self) -> SampleMode {
        self.sample_mode
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Evaluations consumed so far.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn eval_log(&self) -> &[EvalRecord] {
        &self.eval_log
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> NodeRef<'_> {
        NodeRef { instance: self, idx: 0 }
    }

    /// Mean of all rewards in the log.
    pub fn instance_mean(&self) -> Result<f64> {
        if self.t == 0 {
            return Err(Error::EmptyInstance);
        }
        Ok(self.reward_total / self.t as f64)
    }

    /// Recomputes `U` for every explored node with step count `t` and backs
    /// up `B` bottom-up.
    pub fn refresh_b_values(&mut self, t: u64) {
        self.refresh_node(0, t);
    }

    fn refresh_node(&mut self, idx: u32, t: u64) -> f64 {
        let (first_child, depth_bonus, visits, sum) = {
            let n = &self.nodes[idx as usize];
            (n.first_child, n.bonus, n.stats.visits, n.stats.reward_sum)
        };
        let u = if visits == 0 {
            f64::INFINITY
        } else {
            sum / visits as f64
                + self.conf_scale * (2.0 * (t as f64).ln() / visits as f64).sqrt()
                + depth_bonus
        };
        let b = match first_child {
            None => u,
            Some(base) => {
                let arity = self.partitioning.arity();
                let mut best = f64::NEG_INFINITY;
                for k in 0..arity {
                    best = best.max(self.refresh_node(base + k, t));
                }
                u.min(best)
            }
        };
        let n = &mut self.nodes[idx as usize];
        n.stats.u_value = u;
        n.stats.b_value = b;
        b
    }

    /// Greedy descent on `B`, ties broken uniformly with the instance's
    /// stream. Ends at a frontier leaf (an unexpanded node).
    fn select_leaf(&mut self) -> u32 {
        let arity = self.partitioning.arity();
        let mut cur = 0u32;
        while let Some(base) = self.nodes[cur as usize].first_child {
            let mut best = f64::NEG_INFINITY;
            let mut ties = 0u32;
            for k in 0..arity {
                let b = self.nodes[(base + k) as usize].stats.b_value;
                if b > best {
                    best = b;
                    ties = 1;
                } else if b == best {
                    ties += 1;
                }
            }
            let pick = if ties == 1 { 0 } else { self.rng.gen_range(0..ties) };
            let mut seen = 0u32;
            for k in 0..arity {
                if self.nodes[(base + k) as usize].stats.b_value == best {
                    if seen == pick {
                        cur = base + k;
                        break;
                    }
                    seen += 1;
                }
            }
        }
        cur
    }

    /// One full step: refresh scores at `t+1`, select a frontier leaf,
    /// evaluate its representative point, credit the path, expand the leaf.
    pub fn hoo_step(&mut self, provider: &mut dyn EvalProvider) -> Result<StepOutcome> {
        let t_next = self.t + 1;
        self.refresh_b_values(t_next);
        let leaf = self.select_leaf();

        let point = match self.sample_mode {
            SampleMode::Representative => self.nodes[leaf as usize].representative.clone(),
            SampleMode::UniformInCell => {
                let region = &self.nodes[leaf as usize].region;
                (0..region.dim())
                    .map(|j| region.lo[j] + self.rng.gen::<f64>() * region.width(j))
                    .collect()
            }
        };
        let Evaluation { reward, fresh } = provider.eval(&point)?;

        let mut walk = Some(leaf);
        while let Some(idx) = walk {
            let n = &mut self.nodes[idx as usize];
            n.stats.visits += 1;
            n.stats.reward_sum += reward;
            walk = n.parent;
        }

        let depth = self.nodes[leaf as usize].depth;
        self.eval_log.push(EvalRecord { depth, point: point.clone(), reward });
        self.reward_total += reward;

        self.expand(leaf);
        self.t = t_next;
        Ok(StepOutcome { point, reward, fresh })
    }

    fn expand(&mut self, idx: u32) {
        let arity = self.partitioning.arity();
        let (depth, region) = {
            let n = &self.nodes[idx as usize];
            (n.depth, n.region.clone())
        };
        let axis = self.partitioning.split_axis(depth);
        let base = self.nodes.len() as u32;
        let child_bonus = self.nu * self.rho.powi(depth as i32 + 1);
        for k in 0..arity {
            let child_region = region.child_along(axis, k, arity);
            let representative = child_region.center();
            self.nodes.push(Node {
                depth: depth + 1,
                parent: Some(idx),
                first_child: None,
                region: child_region,
                representative,
                bonus: child_bonus,
                stats: NodeStats::fresh(),
            });
        }
        self.nodes[idx as usize].first_child = Some(base);
    }

    /// The point a finished run returns under `mode`.
    pub fn recommend<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        mode: RecommendMode,
    ) -> Result<&EvalRecord> {
        if self.eval_log.is_empty() {
            return Err(Error::EmptyInstance);
        }
        match mode {
            RecommendMode::UniformRandom => {
                let idx = rng.gen_range(0..self.eval_log.len());
                Ok(&self.eval_log[idx])
            }
            RecommendMode::Deepest => {
                let mut best = 0usize;
                for (i, rec) in self.eval_log.iter().enumerate() {
                    if rec.depth >= self.eval_log[best].depth {
                        best = i;
                    }
                }
                Ok(&self.eval_log[best])
            }
        }
    }
}

/// Read-only view of one explored node, for diagnostics and verification.
#[derive(Clone, Copy)]
pub struct NodeRef<'a> {
    instance: &'a HooInstance,
    idx: u32,
}

impl<'a> NodeRef<'a> {
    fn node(&self) -> &'a Node {
        &self.instance.nodes[self.idx as usize]
    }

    pub fn depth(&self) -> u32 {
        self.node().depth
    }

    pub fn visits(&self) -> u64 {
        self.node().stats.visits
    }

    pub fn u_value(&self) -> f64 {
        self.node().stats.u_value
    }

    pub fn b_value(&self) -> f64 {
        self.node().stats.b_value
    }

    pub fn representative(&self) -> &'a [f64] {
        &self.node().representative
    }

    /// A frontier leaf is an explored-but-unexpanded node.
    pub fn is_frontier_leaf(&self) -> bool {
        self.node().first_child.is_none()
    }

    pub fn children(&self) -> Vec<NodeRef<'a>> {
        match self.node().first_child {
            None => Vec::new(),
            Some(base) => (0..self.instance.partitioning.arity())
                .map(|k| NodeRef { instance: self.instance, idx: base + k })
                .collect(),
        }
    }
}
