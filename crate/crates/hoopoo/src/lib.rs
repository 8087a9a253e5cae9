//! Hierarchical optimistic optimization of noisy black-box functions.
//!
//! The crate implements two bandit-based global optimizers over a regular
//! K-ary partitioning of a box domain, plus the measurement tooling needed
//! to benchmark them:
//!
//! - [`hoo`]: the modified HOO algorithm. Given smoothness parameters
//!   `(nu, rho)`, it grows a tree over the partitioning, scores cells
//!   optimistically, samples each selected cell once at its center, and
//!   expands it.
//! - [`poo`]: the POO meta-algorithm for *unknown* smoothness. It runs a
//!   doubling grid of HOO instances over `rho`, shares reward samples
//!   between them point-by-point, and recommends from the instance with the
//!   best empirical mean.
//! - [`objective`]: benchmark objectives with known optima, bounded
//!   zero-mean noise, and exact per-cell supremum/infimum rules.
//! - [`analysis`]: simple regret, a local-smoothness checker, and a
//!   brute-force near-optimality dimension estimator.
//! - [`bench`]: the seeded experiment harness behind the CLI, with CSV
//!   output, presets, and checkpoint/resume.
//!
//! # Example
//!
//! ```
//! use hoopoo::objective::{DifficultFunction, NoiseModel, Objective};
//! use hoopoo::partition::Region;
//! use hoopoo::poo::{PooConfig, PooState};
//! use rand::SeedableRng;
//!
//! let objective = DifficultFunction;
//! let noise = NoiseModel::Uniform { half_width: 0.1 };
//! let config = PooConfig::new(objective.domain(), 2, 0.9, 1.0, 500, 7);
//! let mut run = PooState::new(&config).unwrap();
//! while run.budget_remaining(&config) > 0 {
//!     run.micro_step(&config, &objective, &noise).unwrap();
//! }
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
//! let guess = run.poo_recommend(&mut rng).unwrap();
//! assert!(objective.f_star() - objective.true_value(&guess.point).unwrap() < 0.5);
//! ```

pub mod analysis;
pub mod bench;
pub mod error;
pub mod hoo;
pub mod objective;
pub mod partition;
pub mod poo;
pub mod seed;

pub use error::{Error, Result};
