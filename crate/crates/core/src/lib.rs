//! Flower pollination algorithm (FPA) for continuous global optimization,
//! with a real-coded GA and a global-best PSO as baselines, ten classic test
//! functions, the pressure-vessel design problem, and a seeded experiment
//! harness that reproduces success-rate tables and convergence curves.
//!
//! The numerics are generic over [`Scalar`] (`f32` or `f64`). The `*64`
//! aliases below fix the scalar to `f64`, which is what the harness and CLI use.
//!
//! ```
//! use fpa::{benchmarks, fpa_run, FpaConfig, RngStream};
//!
//! let spec = benchmarks::lookup_with_dim::<f64>("sphere", 2).unwrap();
//! let record = fpa_run(&spec.problem, FpaConfig::default(), &mut RngStream::new(1)).unwrap();
//! assert!(record.success);
//! ```

pub mod baselines;
pub mod benchmarks;
pub mod constrained;
mod error;
pub mod flower;
pub mod harness;
pub mod problem;
mod rng;
pub mod run;
pub mod sampling;
mod scalar;

pub use baselines::{ga_run, pso_run, Ga, GaConfig, Pso, PsoConfig};
pub use error::{Error, Result};
pub use flower::{fpa_run, Fpa, FpaConfig};
pub use problem::{better, init_population, Candidate, Evaluator, Objective, Population, Problem, SearchSpace, Tolerance};
pub use rng::RngStream;
pub use run::{Optimizer, RunOptions, RunRecord};
pub use sampling::LevyConfig;
pub use scalar::Scalar;

pub type SearchSpace64 = SearchSpace<f64>;
pub type Objective64 = Objective<f64>;
pub type Problem64 = Problem<f64>;
pub type Candidate64 = Candidate<f64>;
pub type Population64 = Population<f64>;
pub type RunRecord64 = RunRecord<f64>;
pub type FpaConfig64 = FpaConfig<f64>;
pub type GaConfig64 = GaConfig<f64>;
pub type PsoConfig64 = PsoConfig<f64>;
pub type LevyConfig64 = LevyConfig<f64>;

pub type SearchSpace32 = SearchSpace<f32>;
pub type Problem32 = Problem<f32>;
pub type RunRecord32 = RunRecord<f32>;
pub type FpaConfig32 = FpaConfig<f32>;
