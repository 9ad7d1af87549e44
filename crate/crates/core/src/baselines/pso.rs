//! Global-best particle swarm with linearly decreasing inertia.
//!
//! `v ← w v + c1 r1 (pbest - x) + c2 r2 (gbest - x)` with per-coordinate
//! `r1, r2 ~ U[0,1)`, each velocity component clamped to
//! `±vmax_fraction × width`, positions clamped to the box. The population
//! handed to the run loop holds the personal bests, so its best is the
//! best-so-far and never worsens.

use crate::error::{Error, Result};
use crate::problem::{Evaluator, Population, Problem};
use crate::rng::RngStream;
use crate::run::{drive, Budget, Optimizer, RunOptions, RunRecord};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsoConfig<T> {
    pub n: usize,
    /// Cognitive learning parameter.
    pub c1: T,
    /// Social learning parameter.
    pub c2: T,
    pub inertia_start: T,
    pub inertia_end: T,
    /// Iterations over which inertia falls from start to end; `None` uses `max_iterations`.
    pub inertia_horizon: Option<usize>,
    /// Velocity cap per coordinate as a fraction of that coordinate's range.
    pub vmax_fraction: T,
    pub max_iterations: usize,
    pub stop_on_target: bool,
}

impl<T: Scalar> Default for PsoConfig<T> {
    fn default() -> Self {
        Self {
            n: 25,
            c1: T::lit(2.0),
            c2: T::lit(2.0),
            inertia_start: T::lit(0.9),
            inertia_end: T::lit(0.4),
            inertia_horizon: Some(DEFAULT_INERTIA_HORIZON),
            vmax_fraction: T::lit(0.05),
            max_iterations: 500_000,
            stop_on_target: true,
        }
    }
}

/// Default length of the inertia ramp.
pub const DEFAULT_INERTIA_HORIZON: usize = 10_000;

impl<T: Scalar> PsoConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config(format!("pso swarm must be at least 2, got {}", self.n)));
        }
        if !(self.c1 >= T::zero() && self.c2 >= T::zero()) {
            return Err(Error::config("learning parameters must be non-negative"));
        }
        if !(self.inertia_end > T::zero() && self.inertia_end <= self.inertia_start) {
            return Err(Error::config(format!(
                "inertia must satisfy 0 < end <= start, got {} -> {}",
                self.inertia_start, self.inertia_end
            )));
        }
        if self.inertia_horizon == Some(0) {
            return Err(Error::config("inertia horizon must be at least 1"));
        }
        if !(self.vmax_fraction > T::zero()) {
            return Err(Error::config("vmax fraction must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::config("max_iterations must be at least 1"));
        }
        Ok(())
    }

    /// Inertia weight used during iteration `t` (0-based).
    pub fn inertia(&self, t: usize) -> T {
        let horizon = self.inertia_horizon.unwrap_or(self.max_iterations);
        let frac = T::lit(t.min(horizon) as f64 / horizon as f64);
        self.inertia_start - (self.inertia_start - self.inertia_end) * frac
    }
}

#[derive(Clone, Debug)]
pub struct Pso<T> {
    config: PsoConfig<T>,
    positions: Vec<Vec<T>>,
    velocities: Vec<Vec<T>>,
    vmax: Vec<T>,
    iteration: usize,
}

impl<T: Scalar> Pso<T> {
    pub fn new(config: PsoConfig<T>) -> Result<Self> {
        config.validate()?;
        Ok(Self { config, positions: Vec::new(), velocities: Vec::new(), vmax: Vec::new(), iteration: 0 })
    }

    pub fn config(&self) -> &PsoConfig<T> {
        &self.config
    }

    pub fn positions(&self) -> &[Vec<T>] {
        &self.positions
    }

    pub fn velocities(&self) -> &[Vec<T>] {
        &self.velocities
    }

    /// Per-coordinate velocity cap.
    pub fn vmax(&self) -> &[T] {
        &self.vmax
    }

    pub fn run(&mut self, problem: &Problem<T>, rng: &mut RngStream, opts: RunOptions) -> Result<RunRecord<T>> {
        drive(self, problem, rng, opts)
    }
}

impl<T: Scalar> Optimizer<T> for Pso<T> {
    fn id(&self) -> &'static str {
        "pso"
    }

    fn budget(&self) -> Budget {
        Budget {
            population: self.config.n,
            max_iterations: self.config.max_iterations,
            stop_on_target: self.config.stop_on_target,
        }
    }

    fn initialize(&mut self, ev: &mut Evaluator<'_, T>, rng: &mut RngStream) -> Result<Population<T>> {
        let space = ev.space();
        let n = self.config.n;
        self.iteration = 0;
        self.vmax = (0..space.dim()).map(|k| self.config.vmax_fraction * space.width(k)).collect();
        self.positions = (0..n).map(|_| space.sample_uniform(rng)).collect();
        self.velocities = vec![vec![T::zero(); space.dim()]; n];
        let members = self.positions.iter().map(|x| ev.evaluate(x.clone())).collect();
        Population::from_members(members)
    }

    fn step(&mut self, pop: &mut Population<T>, ev: &mut Evaluator<'_, T>, rng: &mut RngStream) {
        let space = ev.space();
        let w = self.config.inertia(self.iteration);
        let (c1, c2) = (self.config.c1, self.config.c2);
        for i in 0..self.positions.len() {
            let pbest = &pop.members()[i].position;
            let gbest = &pop.best().position;
            let x = &mut self.positions[i];
            let v = &mut self.velocities[i];
            for k in 0..x.len() {
                let r1: T = rng.uniform_unit();
                let r2: T = rng.uniform_unit();
                let vk = w * v[k] + c1 * r1 * (pbest[k] - x[k]) + c2 * r2 * (gbest[k] - x[k]);
                v[k] = vk.max(-self.vmax[k]).min(self.vmax[k]);
                x[k] = x[k] + v[k];
            }
            space.project(x);
            let candidate = ev.evaluate(x.clone());
            pop.offer(i, candidate);
        }
        pop.refresh_best();
        self.iteration += 1;
    }
}

pub fn pso_run<T: Scalar>(problem: &Problem<T>, cfg: PsoConfig<T>, rng: &mut RngStream) -> Result<RunRecord<T>> {
    Pso::new(cfg)?.run(problem, rng, RunOptions::default())
}
