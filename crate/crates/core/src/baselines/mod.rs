//! Comparison algorithms: a real-coded genetic algorithm and global-best PSO.

mod ga;
mod pso;

pub use ga::{ga_run, Ga, GaConfig};
pub use pso::{pso_run, Pso, PsoConfig};
