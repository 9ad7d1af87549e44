//! Generational real-coded GA.
//!
//! Binary tournament selection, whole-arithmetic crossover
//! (`c1 = a·p + (1-a)·q`, `c2 = (1-a)·p + a·q`, `a ~ U[0,1)`), per-gene Gaussian
//! mutation with standard deviation `mutation_scale × box width`, and a single
//! elite carried over in place of the worst child.

use crate::error::{Error, Result};
use crate::problem::{init_population, Evaluator, Population, Problem};
use crate::rng::RngStream;
use crate::run::{drive, Budget, Optimizer, RunOptions, RunRecord};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaConfig<T> {
    /// Population size. With odd `n` the last pair contributes one child.
    pub n: usize,
    pub crossover_prob: T,
    /// Per-gene mutation probability.
    pub mutation_prob: T,
    /// Mutation standard deviation as a fraction of each coordinate's range.
    pub mutation_scale: T,
    pub max_iterations: usize,
    pub stop_on_target: bool,
}

impl<T: Scalar> Default for GaConfig<T> {
    fn default() -> Self {
        Self {
            n: 25,
            crossover_prob: T::lit(0.95),
            mutation_prob: T::lit(0.05),
            mutation_scale: T::lit(0.1),
            max_iterations: 500_000,
            stop_on_target: true,
        }
    }
}

impl<T: Scalar> GaConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config(format!("ga population must be at least 2, got {}", self.n)));
        }
        for (name, p) in [("crossover", self.crossover_prob), ("mutation", self.mutation_prob)] {
            if !(p >= T::zero() && p <= T::one()) {
                return Err(Error::config(format!("{name} probability must lie in [0, 1], got {p}")));
            }
        }
        if !(self.mutation_scale >= T::zero()) {
            return Err(Error::config("mutation scale must be non-negative"));
        }
        if self.max_iterations == 0 {
            return Err(Error::config("max_iterations must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Ga<T> {
    config: GaConfig<T>,
}

impl<T: Scalar> Ga<T> {
    pub fn new(config: GaConfig<T>) -> Result<Self> {
        config.validate()?;
        Ok(Self { config })
    }

    pub fn config(&self) -> &GaConfig<T> {
        &self.config
    }

    fn tournament(pop: &Population<T>, rng: &mut RngStream) -> usize {
        let i = rng.index(pop.len());
        let j = rng.index(pop.len());
        if pop.members()[j].beats(&pop.members()[i]) {
            j
        } else {
            i
        }
    }

    fn mutate(&self, x: &mut [T], ev: &Evaluator<'_, T>, rng: &mut RngStream) {
        let space = ev.space();
        for (k, v) in x.iter_mut().enumerate() {
            if rng.uniform_unit::<T>() < self.config.mutation_prob {
                *v = *v + rng.standard_normal::<T>() * self.config.mutation_scale * space.width(k);
            }
        }
        space.project(x);
    }

    pub fn run(&mut self, problem: &Problem<T>, rng: &mut RngStream, opts: RunOptions) -> Result<RunRecord<T>> {
        drive(self, problem, rng, opts)
    }
}

impl<T: Scalar> Optimizer<T> for Ga<T> {
    fn id(&self) -> &'static str {
        "ga"
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
        let elite = pop.best().clone();
        let n = pop.len();
        let mut children = Vec::with_capacity(n);
        while children.len() < n {
            let p = &pop.members()[Self::tournament(pop, rng)].position;
            let q = &pop.members()[Self::tournament(pop, rng)].position;
            let (mut c1, mut c2) = if rng.uniform_unit::<T>() < self.config.crossover_prob {
                let a: T = rng.uniform_unit();
                let b = T::one() - a;
                (
                    p.iter().zip(q).map(|(&u, &v)| a * u + b * v).collect::<Vec<_>>(),
                    p.iter().zip(q).map(|(&u, &v)| b * u + a * v).collect::<Vec<_>>(),
                )
            } else {
                (p.clone(), q.clone())
            };
            self.mutate(&mut c1, ev, rng);
            self.mutate(&mut c2, ev, rng);
            children.push(ev.evaluate(c1));
            if children.len() < n {
                children.push(ev.evaluate(c2));
            }
        }
        let mut next = Population::from_members(children).expect("population is non-empty");
        let worst = next.worst_index();
        if elite.beats(&next.members()[worst]) {
            next.replace(worst, elite);
            next.refresh_best();
        }
        *pop = next;
    }
}

pub fn ga_run<T: Scalar>(problem: &Problem<T>, cfg: GaConfig<T>, rng: &mut RngStream) -> Result<RunRecord<T>> {
    Ga::new(cfg)?.run(problem, rng, RunOptions::default())
}
