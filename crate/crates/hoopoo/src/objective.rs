//! Objective functions with a known optimum value, bounded zero-mean noise,
//! and per-cell supremum/infimum oracles.
//!
//! An [`Objective`] exposes its deterministic value, its supremum `f_star`
//! (used for regret measurement only, never by the optimizers), and, when a
//! closed form exists, exact cell supremum/infimum rules. The built-ins:
//!
//! - [`DifficultFunction`]: oscillates between a `-sqrt(r)` and a `-r^2`
//!   envelope around the peak at `x = 0.5`, so no single smoothness exponent
//!   fits it. `f(x) = s(log2 r) * (sqrt(r) - r^2) - sqrt(r)` with `r = |x - 0.5|`
//!   and `s(u) = 1` when `frac(u) <= 0.5`, else `0`; `f(0.5) = 0` by continuity.
//! - [`ZeroQuality`]: a staircase on `[0, 1]` peaking at `x = 0`, locally
//!   Lipschitz with rate `rho` yet with arbitrarily unbalanced sub-bands.
//! - [`Wedge2D`]: `1 - |x| - y^2` on `[-1, 1)^2`; different smoothness per axis.
//! - [`PowerEnvelope`]: `-beta * ||x - x*||^alpha` with the peak off every
//!   dyadic split boundary by default (`x* = 1/3` per axis).
//! - [`Constant`]: `f = 0`, the degenerate baseline.
//! - [`LogCusp`]: `1/ln(x)` with `f(0) = 0`; drops off faster than any
//!   exponential-in-depth rate, a negative test for local smoothness checks.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Region;

/// Deterministic objective over a box domain.
pub trait Objective: Send + Sync {
    fn name(&self) -> &'static str;

    fn dimension(&self) -> usize;

    /// The box the optimizers partition.
    fn domain(&self) -> Region;

    /// Noise-free value of `f` at `x`.
    fn true_value(&self, x: &[f64]) -> Result<f64>;

    /// `sup f` over the domain. Only for measurement, never for search.
    fn f_star(&self) -> f64;

    /// A global maximizer, when the objective declares one.
    fn maximizer(&self) -> Option<Vec<f64>> {
        None
    }

    /// Exact supremum of `f` over a half-open cell, when a closed form exists.
    fn cell_sup(&self, _region: &Region) -> Option<f64> {
        None
    }

    /// Exact infimum of `f` over a half-open cell, when a closed form exists.
    fn cell_inf(&self, _region: &Region) -> Option<f64> {
        None
    }
}

/// Grid density used by the fallback cell oracles when no exact rule exists.
pub const DEFAULT_GRID_RESOLUTION: usize = 64;

fn check_domain(obj: &dyn Objective, x: &[f64]) -> Result<()> {
    if obj.domain().contains_closed(x) {
        Ok(())
    } else {
        Err(Error::OutsideDomain)
    }
}

fn grid_scan(
    obj: &dyn Objective,
    region: &Region,
    resolution: usize,
    take_max: bool,
) -> Result<f64> {
    if resolution < 2 {
        return Err(Error::Config("grid resolution must be at least 2".into()));
    }
    let p = region.dim();
    for j in 0..p {
        if !(region.width(j) > 0.0) {
            return Err(Error::DegenerateRegion(j));
        }
    }
    let mut best = obj.true_value(&region.center())?;
    let mut idx = vec![0usize; p];
    let mut x = vec![0.0f64; p];
    loop {
        for j in 0..p {
            x[j] = if idx[j] + 1 == resolution {
                region.hi[j]
            } else {
                region.lo[j] + region.width(j) * (idx[j] as f64 / (resolution - 1) as f64)
            };
        }
        let v = obj.true_value(&x)?;
        if (take_max && v > best) || (!take_max && v < best) {
            best = v;
        }
        // advance the multi-index
        let mut j = 0;
        loop {
            if j == p {
                return Ok(best);
            }
            idx[j] += 1;
            if idx[j] < resolution {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Supremum of `f` over `region`: the exact rule when the objective has one,
/// otherwise the max over a uniform grid including the region corners and
/// center. The grid estimate is one-sided (a lower bound on the true sup up
/// to the objective's modulus of continuity over one grid step).
pub fn sup_on_cell(obj: &dyn Objective, region: &Region, resolution: usize) -> Result<f64> {
    if let Some(v) = obj.cell_sup(region) {
        return Ok(v);
    }
    grid_scan(obj, region, resolution, true)
}

/// Infimum counterpart of [`sup_on_cell`]; the grid estimate is an upper
/// bound on the true infimum.
pub fn inf_on_cell(obj: &dyn Objective, region: &Region, resolution: usize) -> Result<f64> {
    if let Some(v) = obj.cell_inf(region) {
        return Ok(v);
    }
    grid_scan(obj, region, resolution, false)
}

// ---------------------------------------------------------------------------
// Noise
// ---------------------------------------------------------------------------

/// Bounded zero-mean reward noise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum NoiseModel {
    None,
    /// Uniform on `[-half_width, half_width]`.
    Uniform { half_width: f64 },
    /// `N(0, sigma^2)` resampled until `|eps| <= bound`.
    TruncatedGaussian { sigma: f64, bound: f64 },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::None => Ok(()),
            NoiseModel::Uniform { half_width } => {
                if half_width >= 0.0 && half_width.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Config("uniform noise width must be finite and >= 0".into()))
                }
            }
            NoiseModel::TruncatedGaussian { sigma, bound } => {
                if sigma > 0.0 && bound > 0.0 && sigma.is_finite() && bound.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Config("truncated gaussian needs sigma > 0 and bound > 0".into()))
                }
            }
        }
    }

    /// Almost-sure bound on `|eps|`.
    pub fn bound(&self) -> f64 {
        match *self {
            NoiseModel::None => 0.0,
            NoiseModel::Uniform { half_width } => half_width,
            NoiseModel::TruncatedGaussian { bound, .. } => bound,
        }
    }

    /// One draw. Symmetric around zero for every model.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            NoiseModel::None => 0.0,
            NoiseModel::Uniform { half_width } => (2.0 * rng.gen::<f64>() - 1.0) * half_width,
            NoiseModel::TruncatedGaussian { sigma, bound } => {
                let normal = Normal::new(0.0, sigma).expect("validated");
                loop {
                    let v = normal.sample(rng);
                    if v.abs() <= bound {
                        return v;
                    }
                }
            }
        }
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NoiseModel::None => write!(f, "none"),
            NoiseModel::Uniform { half_width } => write!(f, "uniform:{half_width}"),
            NoiseModel::TruncatedGaussian { sigma, bound } => write!(f, "tgauss:{sigma},{bound}"),
        }
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    /// Accepts `none`, `uniform:W`, or `tgauss:SIGMA,BOUND`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("unrecognized noise spec '{s}'"));
        let model = if s == "none" {
            NoiseModel::None
        } else if let Some(rest) = s.strip_prefix("uniform:") {
            NoiseModel::Uniform { half_width: rest.parse().map_err(|_| bad())? }
        } else if let Some(rest) = s.strip_prefix("tgauss:") {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            NoiseModel::TruncatedGaussian {
                sigma: a.parse().map_err(|_| bad())?,
                bound: b.parse().map_err(|_| bad())?,
            }
        } else {
            return Err(bad());
        };
        model.validate()?;
        Ok(model)
    }
}

/// An objective paired with a noise model and a dedicated reward stream.
///
/// Repeated construction from the same seed replays the same rewards; one
/// stream must not be shared by concurrent optimizer runs.
pub struct NoisyObjective {
    objective: Arc<dyn Objective>,
    noise: NoiseModel,
    rng: ChaCha8Rng,
}

impl NoisyObjective {
    pub fn new(objective: Arc<dyn Objective>, noise: NoiseModel, seed: u64) -> Result<Self> {
        noise.validate()?;
        use rand::SeedableRng;
        Ok(NoisyObjective { objective, noise, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    pub fn objective(&self) -> &Arc<dyn Objective> {
        &self.objective
    }

    pub fn noise(&self) -> &NoiseModel {
        &self.noise
    }

    /// `f(x)` plus one fresh noise draw; advances the stream by one sample.
    pub fn eval_noisy(&mut self, x: &[f64]) -> Result<f64> {
        let f = self.objective.true_value(x)?;
        Ok(f + self.noise.sample(&mut self.rng))
    }
}

// ---------------------------------------------------------------------------
// Built-in objectives
// ---------------------------------------------------------------------------

fn frac(u: f64) -> f64 {
    u - u.floor()
}

/// The two-envelope oscillation around `x = 0.5` on `[0, 1)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DifficultFunction;

impl DifficultFunction {
    fn value_at_radius(r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        if frac(r.log2()) <= 0.5 {
            -(r * r)
        } else {
            -r.sqrt()
        }
    }

    /// Supremum of `f` over radii in `[r0, r1)` (or `(r0, r1]` when the top
    /// end is included; the value of the result is insensitive to which end
    /// is open except when a square band starts exactly at `r1`).
    fn sup_over_radii(r0: f64, r1: f64, r1_included: bool) -> f64 {
        if r0 <= 0.0 {
            return 0.0;
        }
        let u0 = r0.log2();
        if frac(u0) <= 0.5 {
            // The square branch is live at the low end and dominates.
            return -(r0 * r0);
        }
        let mut best = -r0.sqrt();
        // Next square band opens one octave boundary up.
        let rs = (u0.floor() + 1.0).exp2();
        if rs < r1 || (r1_included && rs == r1) {
            best = best.max(-(rs * rs));
        }
        best
    }

    /// Infimum counterpart; governed by the top octave of the radius range.
    fn inf_over_radii(r0: f64, r1: f64) -> f64 {
        if r1 <= 0.0 {
            return 0.0;
        }
        let u1 = r1.log2();
        let k1 = u1.floor();
        let mut worst = f64::INFINITY;
        if frac(u1) > 0.5 {
            // sqrt band at the top end
            worst = worst.min(-r1.sqrt());
            let s1_top = (k1 + 0.5).exp2();
            if s1_top > r0 {
                worst = worst.min(-(s1_top * s1_top));
            }
        } else {
            worst = worst.min(-(r1 * r1));
            let s0_top = k1.exp2();
            if s0_top > r0 {
                worst = worst.min(-s0_top.sqrt());
            }
        }
        worst
    }
}

impl Objective for DifficultFunction {
    fn name(&self) -> &'static str {
        "difficult"
    }

    fn dimension(&self) -> usize {
        1
    }

    fn domain(&self) -> Region {
        Region::unit(1)
    }

    fn true_value(&self, x: &[f64]) -> Result<f64> {
        check_domain(self, x)?;
        Ok(Self::value_at_radius((x[0] - 0.5).abs()))
    }

    fn f_star(&self) -> f64 {
        0.0
    }

    fn maximizer(&self) -> Option<Vec<f64>> {
        Some(vec![0.5])
    }

    fn cell_sup(&self, region: &Region) -> Option<f64> {
        let (a, b) = (region.lo[0], region.hi[0]);
        if a <= 0.5 && 0.5 < b {
            return Some(0.0);
        }
        if b <= 0.5 {
            // left of the peak: radii (0.5-b, 0.5-a], top end attained at x=a
            Some(Self::sup_over_radii(0.5 - b, 0.5 - a, true))
        } else {
            Some(Self::sup_over_radii(a - 0.5, b - 0.5, false))
        }
    }

    fn cell_inf(&self, region: &Region) -> Option<f64> {
        let (a, b) = (region.lo[0], region.hi[0]);
        if a <= 0.5 && 0.5 <= b {
            let mut worst = f64::INFINITY;
            if a < 0.5 {
                worst = worst.min(Self::inf_over_radii(0.0, 0.5 - a));
            }
            if 0.5 < b {
                worst = worst.min(Self::inf_over_radii(0.0, b - 0.5));
            }
            Some(if worst.is_finite() { worst } else { 0.0 })
        } else if b <= 0.5 {
            Some(Self::inf_over_radii(0.5 - b, 0.5 - a))
        } else {
            Some(Self::inf_over_radii(a - 0.5, b - 0.5))
        }
    }
}

/// Staircase objective on `[0, 1]` with maximum `f(0) = 0`.
///
/// On each dyadic band `(2^-(h+1), 2^-h]` the value is `-rho^h` on the lower
/// sub-interval `(2^-(h+1), split(h)]` and `-rho^h / 3` above it.
#[derive(Clone, Copy, Debug)]
pub struct ZeroQuality {
    rho: f64,
}

impl ZeroQuality {
    pub fn new(rho: f64) -> Result<Self> {
        if rho > 0.0 && rho < 1.0 {
            Ok(ZeroQuality { rho })
        } else {
            Err(Error::Config("zero-quality rho must lie in (0,1)".into()))
        }
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Dyadic band containing `x in (0, 1]`: the `h` with `2^-(h+1) < x <= 2^-h`.
    fn band(x: f64) -> u32 {
        (-x.log2()).floor() as u32
    }

    /// Boundary between the two sub-intervals of band `h`.
    pub fn band_split(h: u32) -> f64 {
        (1.0 + 1.0 / (h as f64 + 1.0)) * (0.5f64).powi(h as i32 + 1)
    }

    fn extremum(&self, region: &Region, take_max: bool) -> f64 {
        let (a, b) = (region.lo[0], region.hi[0]);
        let mut best = if a <= 0.0 {
            0.0
        } else {
            let h = Self::band(a);
            if a <= Self::band_split(h) { -self.rho.powi(h as i32) } else { -self.rho.powi(h as i32) / 3.0 }
        };
        let h_lo = Self::band(b);
        let h_hi = if a <= 0.0 { h_lo + 1 } else { Self::band(a) };
        for h in h_lo..=h_hi {
            let band_lo = (0.5f64).powi(h as i32 + 1);
            let band_hi = (0.5f64).powi(h as i32);
            let split = Self::band_split(h);
            let low_val = -self.rho.powi(h as i32);
            let high_val = low_val / 3.0;
            // open-interval overlap with (a, b); the endpoint x=a is already
            // accounted for above and x=b is excluded by the half-open cell
            for (lo, hi, v) in [(band_lo, split, low_val), (split, band_hi, high_val)] {
                if lo < b && hi > a && lo < hi {
                    if take_max {
                        best = best.max(v);
                    } else {
                        best = best.min(v);
                    }
                }
            }
        }
        best
    }
}

impl Objective for ZeroQuality {
    fn name(&self) -> &'static str {
        "zero-quality"
    }

    fn dimension(&self) -> usize {
        1
    }

    fn domain(&self) -> Region {
        Region::unit(1)
    }

    fn true_value(&self, x: &[f64]) -> Result<f64> {
        check_domain(self, x)?;
        let x = x[0];
        if x <= 0.0 {
            return Ok(0.0);
        }
        let h = Self::band(x);
        Ok(if x <= Self::band_split(h) {
            -self.rho.powi(h as i32)
        } else {
            -self.rho.powi(h as i32) / 3.0
        })
    }

    fn f_star(&self) -> f64 {
        0.0
    }

    fn maximizer(&self) -> Option<Vec<f64>> {
        Some(vec![0.0])
    }

    fn cell_sup(&self, region: &Region) -> Option<f64> {
        Some(self.extremum(region, true))
    }

    fn cell_inf(&self, region: &Region) -> Option<f64> {
        Some(self.extremum(region, false))
    }
}

/// `f(x, y) = 1 - |x| - y^2` on `[-1, 1)^2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Wedge2D;

fn interval_min_abs(lo: f64, hi: f64) -> f64 {
    if lo <= 0.0 && 0.0 < hi {
        0.0
    } else if lo > 0.0 {
        lo
    } else {
        -hi
    }
}

fn interval_max_abs(lo: f64, hi: f64) -> f64 {
    lo.abs().max(hi.abs())
}

impl Objective for Wedge2D {
    fn name(&self) -> &'static str {
        "wedge2d"
    }

    fn dimension(&self) -> usize {
        2
    }

    fn domain(&self) -> Region {
        Region { lo: vec![-1.0, -1.0], hi: vec![1.0, 1.0] }
    }

    fn true_value(&self, x: &[f64]) -> Result<f64> {
        check_domain(self, x)?;
        Ok(1.0 - x[0].abs() - x[1] * x[1])
    }

    fn f_star(&self) -> f64 {
        1.0
    }

    fn maximizer(&self) -> Option<Vec<f64>> {
        Some(vec![0.0, 0.0])
    }

    fn cell_sup(&self, region: &Region) -> Option<f64> {
        let mx = interval_min_abs(region.lo[0], region.hi[0]);
        let my = interval_min_abs(region.lo[1], region.hi[1]);
        Some(1.0 - mx - my * my)
    }

    fn cell_inf(&self, region: &Region) -> Option<f64> {
        let mx = interval_max_abs(region.lo[0], region.hi[0]);
        let my = interval_max_abs(region.lo[1], region.hi[1]);
        Some(1.0 - mx - my * my)
    }
}

/// `f(x) = -beta * ||x - x*||^alpha` on `[0, 1)^p`.
#[derive(Clone, Debug)]
pub struct PowerEnvelope {
    alpha: f64,
    beta: f64,
    target: Vec<f64>,
}

impl PowerEnvelope {
    pub fn new(alpha: f64, beta: f64, target: Vec<f64>) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0) {
            return Err(Error::Config("power envelope needs alpha > 0 and beta > 0".into()));
        }
        if target.is_empty() || target.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
            return Err(Error::Config("power envelope target must lie in [0,1]^p".into()));
        }
        Ok(PowerEnvelope { alpha, beta, target })
    }

    /// 1-D default used throughout the benchmarks: `-|x - 1/3|`.
    pub fn default_1d() -> Self {
        PowerEnvelope { alpha: 1.0, beta: 1.0, target: vec![1.0 / 3.0] }
    }
}

impl Objective for PowerEnvelope {
    fn name(&self) -> &'static str {
        "power-envelope"
    }

    fn dimension(&self) -> usize {
        self.target.len()
    }

    fn domain(&self) -> Region {
        Region::unit(self.target.len())
    }

    fn true_value(&self, x: &[f64]) -> Result<f64> {
        check_domain(self, x)?;
        let d2: f64 = x.iter().zip(&self.target).map(|(a, b)| (a - b) * (a - b)).sum();
        Ok(-self.beta * d2.sqrt().powf(self.alpha))
    }

    fn f_star(&self) -> f64 {
        0.0
    }

    fn maximizer(&self) -> Option<Vec<f64>> {
        Some(self.target.clone())
    }

    fn cell_sup(&self, region: &Region) -> Option<f64> {
        let mut d2 = 0.0;
        for j in 0..region.dim() {
            let d = (region.lo[j] - self.target[j]).max(self.target[j] - region.hi[j]).max(0.0);
            d2 += d * d;
        }
        Some(-self.beta * d2.sqrt().powf(self.alpha))
    }

    fn cell_inf(&self, region: &Region) -> Option<f64> {
        let mut d2 = 0.0;
        for j in 0..region.dim() {
            let d = (region.lo[j] - self.target[j])
                .abs()
                .max((region.hi[j] - self.target[j]).abs());
            d2 += d * d;
        }
        Some(-self.beta * d2.sqrt().powf(self.alpha))
    }
}

/// `f = 0` everywhere; every cell is near-optimal at every depth.
#[derive(Clone, Copy, Debug)]
pub struct Constant {
    dim: usize,
}

impl Constant {
    pub fn new(dim: usize) -> Result<Self> {
        if dim >= 1 {
            Ok(Constant { dim })
        } else {
            Err(Error::Config("constant objective needs dim >= 1".into()))
        }
    }
}

impl Objective for Constant {
    fn name(&self) -> &'static str {
        "constant"
    }

    fn dimension(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> Region {
        Region::unit(self.dim)
    }

    fn true_value(&self, x: &[f64]) -> Result<f64> {
        check_domain(self, x)?;
        Ok(0.0)
    }

    fn f_star(&self) -> f64 {
        0.0
    }

    fn maximizer(&self) -> Option<Vec<f64>> {
        Some(vec![0.5; self.dim])
    }

    fn cell_sup(&self, _region: &Region) -> Option<f64> {
        Some(0.0)
    }

    fn cell_inf(&self, _region: &Region) -> Option<f64> {
        Some(0.0)
    }
}

/// `f(x) = 1/ln(x)` on `(0, 1)` with `f(0) = 0`.
///
/// Strictly decreasing, with the peak at `x = 0` approached slower than any
/// `rho^h` rate and an unbounded drop toward `x = 1`. Only used as a
/// negative fixture for smoothness checks.
#[derive(Clone, Copy, Debug, Default)]
pub struct LogCusp;

impl Objective for LogCusp {
    fn name(&self) -> &'static str {
        "log-cusp"
    }

    fn dimension(&self) -> usize {
        1
    }

    fn domain(&self) -> Region {
        Region::unit(1)
    }

    fn true_value(&self, x: &[f64]) -> Result<f64> {
        check_domain(self, x)?;
        let x = x[0];
        if x <= 0.0 {
            Ok(0.0)
        } else if x >= 1.0 {
            Ok(f64::NEG_INFINITY)
        } else {
            Ok(1.0 / x.ln())
        }
    }

    fn f_star(&self) -> f64 {
        0.0
    }

    fn maximizer(&self) -> Option<Vec<f64>> {
        Some(vec![0.0])
    }

    fn cell_sup(&self, region: &Region) -> Option<f64> {
        let a = region.lo[0];
        Some(if a <= 0.0 { 0.0 } else { 1.0 / a.ln() })
    }

    fn cell_inf(&self, region: &Region) -> Option<f64> {
        let b = region.hi[0];
        Some(if b >= 1.0 { f64::NEG_INFINITY } else { 1.0 / b.ln() })
    }
}

// ---------------------------------------------------------------------------
// Selection by name
// ---------------------------------------------------------------------------

struct ParamBag<'a> {
    params: &'a [(String, String)],
    used: Vec<bool>,
}

impl<'a> ParamBag<'a> {
    fn new(params: &'a [(String, String)]) -> Self {
        ParamBag { params, used: vec![false; params.len()] }
    }

    fn f64(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::Config(format!("parameter '{key}' must be a number"))),
        }
    }

    fn usize(&mut self, key: &str, default: usize) -> Result<usize> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::Config(format!("parameter '{key}' must be an integer"))),
        }
    }

    fn raw(&mut self, key: &str) -> Option<&'a str> {
        for (i, (k, v)) in self.params.iter().enumerate() {
            if k == key {
                self.used[i] = true;
                return Some(v);
            }
        }
        None
    }

    fn finish(self) -> Result<()> {
        for (i, (k, _)) in self.params.iter().enumerate() {
            if !self.used[i] {
                return Err(Error::Config(format!("unknown objective parameter '{k}'")));
            }
        }
        Ok(())
    }
}

/// Builds a built-in objective from its string name plus key-value parameters.
pub fn from_spec(name: &str, params: &[(String, String)]) -> Result<Arc<dyn Objective>> {
    let mut bag = ParamBag::new(params);
    let obj: Arc<dyn Objective> = match name {
        "difficult" => Arc::new(DifficultFunction),
        "zero-quality" => Arc::new(ZeroQuality::new(bag.f64("rho", 0.5)?)?),
        "wedge2d" => Arc::new(Wedge2D),
        "power-envelope" => {
            let alpha = bag.f64("alpha", 1.0)?;
            let beta = bag.f64("beta", 1.0)?;
            let dim = bag.usize("dim", 1)?;
            let xstar = bag.f64("xstar", 1.0 / 3.0)?;
            Arc::new(PowerEnvelope::new(alpha, beta, vec![xstar; dim])?)
        }
        "constant" => Arc::new(Constant::new(bag.usize("dim", 1)?)?),
        "log-cusp" => Arc::new(LogCusp),
        other => return Err(Error::Config(format!("unknown objective '{other}'"))),
    };
    bag.finish()?;
    Ok(obj)
}
