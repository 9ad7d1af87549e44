//! Flower pollination algorithm.
//!
//! Each iteration sweeps the flowers in index order. With probability `p` a
//! flower takes a global (Lévy) step toward the current best `g*`:
//!
//! `x' = x + L ⊙ (g* - x)`, `L` a vector of independent Lévy draws,
//!
//! otherwise a local step along the difference of two random flowers:
//!
//! `x' = x + ε (x_j - x_k)`, `ε ~ U[0, 1)`, `j, k` uniform with replacement.
//!
//! Proposals are clamped into the box and replace the flower only when strictly
//! better. `g*` is held fixed during the sweep and recomputed after it.

use crate::error::{Error, Result};
use crate::problem::{init_population, Candidate, Evaluator, Population, Problem, SearchSpace};
use crate::rng::RngStream;
use crate::run::{drive, Budget, Optimizer, RunOptions, RunRecord};
use crate::sampling::{LevyConfig, LevySampler};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FpaConfig<T> {
    /// Number of flowers.
    pub n: usize,
    /// Probability of a global step.
    pub p: T,
    pub levy: LevyConfig<T>,
    pub max_iterations: usize,
    pub stop_on_target: bool,
}

impl<T: Scalar> Default for FpaConfig<T> {
    fn default() -> Self {
        Self { n: 25, p: T::lit(0.8), levy: LevyConfig::default(), max_iterations: 500_000, stop_on_target: true }
    }
}

impl<T: Scalar> FpaConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config(format!("fpa population must be at least 2, got {}", self.n)));
        }
        if !(self.p >= T::zero() && self.p <= T::one()) {
            return Err(Error::config(format!("switch probability must lie in [0, 1], got {}", self.p)));
        }
        if self.max_iterations == 0 {
            return Err(Error::config("max_iterations must be at least 1"));
        }
        self.levy.validate()
    }
}

/// Which move a flower made.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Global,
    Local,
}

/// Move counts for one sweep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    pub global_moves: usize,
    pub local_moves: usize,
}

/// `x + step ⊙ (gbest - x)`, clamped.
pub fn apply_global_step<T: Scalar>(x: &[T], gbest: &[T], step: &[T], space: &SearchSpace<T>) -> Result<Vec<T>> {
    space.check_len(x.len())?;
    space.check_len(gbest.len())?;
    space.check_len(step.len())?;
    let mut out: Vec<T> = x.iter().zip(gbest).zip(step).map(|((&xi, &gi), &li)| xi + li * (gi - xi)).collect();
    space.project(&mut out);
    Ok(out)
}

/// `x + eps * (xj - xk)`, clamped.
pub fn apply_local_step<T: Scalar>(x: &[T], xj: &[T], xk: &[T], eps: T, space: &SearchSpace<T>) -> Result<Vec<T>> {
    space.check_len(x.len())?;
    space.check_len(xj.len())?;
    space.check_len(xk.len())?;
    let mut out: Vec<T> = x.iter().zip(xj).zip(xk).map(|((&xi, &a), &b)| xi + eps * (a - b)).collect();
    space.project(&mut out);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Fpa<T> {
    config: FpaConfig<T>,
    sampler: LevySampler<T>,
    last_step: StepStats,
}

impl<T: Scalar> Fpa<T> {
    pub fn new(config: FpaConfig<T>) -> Result<Self> {
        config.validate()?;
        Ok(Self { config, sampler: LevySampler::new(config.levy)?, last_step: StepStats::default() })
    }

    pub fn config(&self) -> &FpaConfig<T> {
        &self.config
    }

    /// Move counts of the most recent sweep.
    pub fn last_step(&self) -> StepStats {
        self.last_step
    }

    /// Global pollination proposal for `x`; inputs are left untouched.
    pub fn global_pollination(
        &self,
        x: &Candidate<T>,
        gbest: &Candidate<T>,
        space: &SearchSpace<T>,
        rng: &mut RngStream,
    ) -> Result<Vec<T>> {
        space.check_len(x.position.len())?;
        let step = self.sampler.step_vector(space.dim(), rng);
        apply_global_step(&x.position, &gbest.position, &step, space)
    }

    /// Local pollination proposal for `x` with a fresh `ε`.
    pub fn local_pollination(
        x: &Candidate<T>,
        xj: &Candidate<T>,
        xk: &Candidate<T>,
        space: &SearchSpace<T>,
        rng: &mut RngStream,
    ) -> Result<Vec<T>> {
        let eps = rng.uniform_unit();
        apply_local_step(&x.position, &xj.position, &xk.position, eps, space)
    }

    /// Proposal for flower `i` against the current population.
    pub fn pollinate(&self, i: usize, pop: &Population<T>, space: &SearchSpace<T>, rng: &mut RngStream) -> (Vec<T>, Branch) {
        let members = pop.members();
        let x = &members[i].position;
        let dim = space.dim();
        let mut out = Vec::with_capacity(dim);
        let branch = if rng.uniform_unit::<T>() < self.config.p {
            let g = &pop.best().position;
            out.extend(x.iter().zip(g).map(|(&xi, &gi)| xi + self.sampler.draw(rng) * (gi - xi)));
            Branch::Global
        } else {
            let j = rng.index(members.len());
            let k = rng.index(members.len());
            let eps: T = rng.uniform_unit();
            let (xj, xk) = (&members[j].position, &members[k].position);
            out.extend(x.iter().zip(xj).zip(xk).map(|((&xi, &a), &b)| xi + eps * (a - b)));
            Branch::Local
        };
        space.project(&mut out);
        (out, branch)
    }

    /// One sweep over all flowers; exactly `n` evaluations.
    pub fn fpa_step(&mut self, pop: &mut Population<T>, ev: &mut Evaluator<'_, T>, rng: &mut RngStream) -> StepStats {
        let space = ev.space();
        let mut stats = StepStats::default();
        for i in 0..pop.len() {
            let (proposal, branch) = self.pollinate(i, pop, space, rng);
            match branch {
                Branch::Global => stats.global_moves += 1,
                Branch::Local => stats.local_moves += 1,
            }
            let candidate = ev.evaluate(proposal);
            pop.offer(i, candidate);
        }
        pop.refresh_best();
        self.last_step = stats;
        stats
    }

    pub fn run(&mut self, problem: &Problem<T>, rng: &mut RngStream, opts: RunOptions) -> Result<RunRecord<T>> {
        drive(self, problem, rng, opts)
    }
}

impl<T: Scalar> Optimizer<T> for Fpa<T> {
    fn id(&self) -> &'static str {
        "fpa"
    }

    fn budget(&self) -> Budget {
        Budget {
            population: self.config.n,
            max_iterations: self.config.max_iterations,
            stop_on_target: self.config.stop_on_target,
        }
    }

    fn initialize(&mut self, ev: &mut Evaluator<'_, T>, rng: &mut RngStream) -> Result<Population<T>> {
        init_population(ev, self.config.n, rng)
    }

    fn step(&mut self, pop: &mut Population<T>, ev: &mut Evaluator<'_, T>, rng: &mut RngStream) {
        self.fpa_step(pop, ev, rng);
    }
}

/// Single FPA run with default run options.
pub fn fpa_run<T: Scalar>(problem: &Problem<T>, cfg: FpaConfig<T>, rng: &mut RngStream) -> Result<RunRecord<T>> {
    Fpa::new(cfg)?.run(problem, rng, RunOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Objective;

    fn cand(position: Vec<f64>) -> Candidate<f64> {
        Candidate { position, value: 0.0, violation: 0.0, evals_stamp: 0 }
    }

    fn sphere(dim: usize) -> Problem<f64> {
        let space = SearchSpace::cube(dim, -5.12, 5.12).unwrap();
        let obj = Objective::new(|x: &[f64]| x.iter().map(|v| v * v).sum()).with_target(0.0);
        Problem::new("sphere", space, obj)
    }

    #[test]
    fn config_validation() {
        let ok = FpaConfig::<f64>::default();
        assert!(ok.validate().is_ok());
        assert!(FpaConfig { p: 1.5, ..ok }.validate().is_err());
        assert!(FpaConfig { p: -0.1, ..ok }.validate().is_err());
        assert!(FpaConfig { n: 1, ..ok }.validate().is_err());
        assert!(FpaConfig { max_iterations: 0, ..ok }.validate().is_err());
    }

    #[test]
    fn global_step_examples() {
        let line = SearchSpace::cube(1, -10.0, 10.0).unwrap();
        assert_eq!(apply_global_step(&[0.0], &[1.0], &[0.5], &line).unwrap(), vec![0.5]);

        let square = SearchSpace::cube(2, -5.0, 5.0).unwrap();
        let out = apply_global_step(&[0.0, 0.0], &[1.0, 1.0], &[100.0, 100.0], &square).unwrap();
        assert_eq!(out, vec![5.0, 5.0]);

        assert!(apply_global_step(&[0.0], &[1.0, 1.0], &[0.5, 0.5], &square).is_err());
    }

    #[test]
    fn global_step_at_best_is_null() {
        let fpa = Fpa::new(FpaConfig::<f64>::default()).unwrap();
        let space = SearchSpace::cube(3, -5.0, 5.0).unwrap();
        let x = cand(vec![1.0, -2.0, 3.0]);
        let mut rng = RngStream::new(3);
        for _ in 0..50 {
            assert_eq!(fpa.global_pollination(&x, &x, &space, &mut rng).unwrap(), x.position);
        }
    }

    #[test]
    fn local_step_examples() {
        let space = SearchSpace::cube(2, -5.0, 5.0).unwrap();
        let out = apply_local_step(&[0.0, 0.0], &[2.0, 0.0], &[0.0, 0.0], 0.25, &space).unwrap();
        assert_eq!(out, vec![0.5, 0.0]);

        let (x, xj) = (cand(vec![1.0, 1.0]), cand(vec![3.0, -2.0]));
        let mut rng = RngStream::new(8);
        for _ in 0..20 {
            let out = Fpa::local_pollination(&x, &xj, &xj, &space, &mut rng).unwrap();
            assert_eq!(out, x.position);
        }
        assert!(Fpa::local_pollination(&x, &cand(vec![1.0]), &xj, &space, &mut rng).is_err());
    }

    #[test]
    fn local_step_stays_on_segment() {
        let space = SearchSpace::cube(2, -100.0, 100.0).unwrap();
        let (x, xj, xk) = (cand(vec![1.0, 2.0]), cand(vec![4.0, -1.0]), cand(vec![0.0, 3.0]));
        let mut rng = RngStream::new(21);
        for _ in 0..200 {
            let out = Fpa::local_pollination(&x, &xj, &xk, &space, &mut rng).unwrap();
            // out = x + eps * (4, -4), eps in [0, 1)
            let eps = (out[0] - 1.0) / 4.0;
            assert!((0.0..1.0).contains(&eps));
            assert!((out[1] - (2.0 - 4.0 * eps)).abs() < 1e-12);
        }
    }

    #[test]
    fn branch_forcing() {
        let problem = sphere(3);
        for (p, global) in [(1.0, true), (0.0, false)] {
            let mut fpa = Fpa::new(FpaConfig { p, ..FpaConfig::default() }).unwrap();
            let mut ev = Evaluator::new(&problem);
            let mut rng = RngStream::new(4);
            let mut pop = fpa.initialize(&mut ev, &mut rng).unwrap();
            let stats = fpa.fpa_step(&mut pop, &mut ev, &mut rng);
            if global {
                assert_eq!(stats, StepStats { global_moves: 25, local_moves: 0 });
            } else {
                assert_eq!(stats, StepStats { global_moves: 0, local_moves: 25 });
            }
            assert_eq!(ev.count(), 50);
        }
    }

    #[test]
    fn step_never_worsens_best() {
        let problem = sphere(5);
        let mut fpa = Fpa::new(FpaConfig::<f64>::default()).unwrap();
        let mut ev = Evaluator::new(&problem);
        let mut rng = RngStream::new(10);
        let mut pop = fpa.initialize(&mut ev, &mut rng).unwrap();
        for _ in 0..200 {
            let before = pop.best().value;
            fpa.fpa_step(&mut pop, &mut ev, &mut rng);
            assert!(pop.best().value <= before);
            assert!(pop.members().iter().all(|m| m.value >= pop.best().value));
        }
    }

    #[test]
    fn constant_objective_succeeds_immediately() {
        let space = SearchSpace::cube(4, -1.0, 1.0).unwrap();
        let problem = Problem::new("flat", space, Objective::new(|_: &[f64]| 3.5).with_target(3.5));
        let rec = fpa_run(&problem, FpaConfig::default(), &mut RngStream::new(1)).unwrap();
        assert!(rec.success);
        assert_eq!(rec.iterations, 0);
        assert_eq!(rec.evaluations, 25);
    }

    #[test]
    fn single_iteration_accounting() {
        let space = SearchSpace::cube(2, -5.0, 5.0).unwrap();
        let problem = Problem::new("hard", space, Objective::new(|_: &[f64]| 1.0).with_target(0.0));
        let cfg = FpaConfig { max_iterations: 1, ..FpaConfig::default() };
        let rec = fpa_run(&problem, cfg, &mut RngStream::new(1)).unwrap();
        assert!(!rec.success);
        assert_eq!(rec.iterations, 1);
        assert_eq!(rec.evaluations, 50);
    }

    #[test]
    fn missing_target_rejected() {
        let space = SearchSpace::cube(2, -5.0, 5.0).unwrap();
        let problem = Problem::new("untargeted", space, Objective::new(|x: &[f64]| x[0]));
        let err = fpa_run(&problem, FpaConfig::default(), &mut RngStream::new(1)).unwrap_err();
        assert!(matches!(err, Error::MissingTarget(_)));
        let cfg = FpaConfig { stop_on_target: false, max_iterations: 3, ..FpaConfig::default() };
        let rec = fpa_run(&problem, cfg, &mut RngStream::new(1)).unwrap();
        assert_eq!(rec.iterations, 3);
        assert!(!rec.success);
    }

    #[test]
    fn solves_small_sphere() {
        let rec = fpa_run(&sphere(2), FpaConfig::default(), &mut RngStream::new(77)).unwrap();
        assert!(rec.success, "{rec:?}");
        assert!(rec.best_value <= 1e-5);
        assert_eq!(rec.evaluations, 25 * (rec.iterations as u64 + 1));
    }

    #[test]
    fn runs_in_single_precision() {
        let space = SearchSpace::cube(2, -5.12f32, 5.12).unwrap();
        let obj = Objective::new(|x: &[f32]| x.iter().map(|v| v * v).sum()).with_target(0.0);
        let problem = Problem::new("sphere32", space, obj);
        let rec = fpa_run(&problem, FpaConfig::default(), &mut RngStream::new(5)).unwrap();
        assert!(rec.success);
    }
}
