//! Shared run loop: initialization, target test, iteration cap and trace.

use crate::error::{Error, Result};
use crate::problem::{Evaluator, Population, Problem};
use crate::rng::RngStream;
use crate::Scalar;

/// Population size and stopping rules common to all algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub population: usize,
    pub max_iterations: usize,
    pub stop_on_target: bool,
}

/// One population-based optimizer. `initialize` consumes exactly `population`
/// evaluations and every `step` consumes exactly `population` more.
pub trait Optimizer<T: Scalar> {
    fn id(&self) -> &'static str;

    fn budget(&self) -> Budget;

    fn initialize(&mut self, ev: &mut Evaluator<'_, T>, rng: &mut RngStream) -> Result<Population<T>>;

    fn step(&mut self, pop: &mut Population<T>, ev: &mut Evaluator<'_, T>, rng: &mut RngStream);
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracePoint<T> {
    pub iteration: usize,
    pub best_value: T,
}

/// Outcome of one independent run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord<T> {
    pub algorithm: String,
    pub run_index: usize,
    pub population: usize,
    pub iterations: usize,
    pub evaluations: u64,
    pub success: bool,
    pub best_value: T,
    pub best_violation: T,
    pub best_position: Vec<T>,
    pub trace_stride: usize,
    /// Best-so-far value at iteration 0, every `trace_stride` iterations, and at the last iteration.
    pub trace: Vec<TracePoint<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub run_index: usize,
    pub trace_stride: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { run_index: 0, trace_stride: 1 }
    }
}

/// Runs `opt` on `problem` until the target is met (when stopping on target)
/// or the iteration cap is reached.
pub fn drive<T: Scalar, O: Optimizer<T> + ?Sized>(
    opt: &mut O,
    problem: &Problem<T>,
    rng: &mut RngStream,
    opts: RunOptions,
) -> Result<RunRecord<T>> {
    drive_observed(opt, problem, rng, opts, |_, _| {})
}

/// [`drive`] with a callback after initialization (iteration 0) and after every step.
pub fn drive_observed<T: Scalar, O: Optimizer<T> + ?Sized>(
    opt: &mut O,
    problem: &Problem<T>,
    rng: &mut RngStream,
    opts: RunOptions,
    mut observe: impl FnMut(usize, &Population<T>),
) -> Result<RunRecord<T>> {
    let budget = opt.budget();
    if opts.trace_stride == 0 {
        return Err(Error::config("trace stride must be at least 1"));
    }
    if budget.max_iterations == 0 {
        return Err(Error::config("max_iterations must be at least 1"));
    }
    if budget.stop_on_target && problem.objective().known_target().is_none() {
        return Err(Error::MissingTarget(format!(
            "`{}` has no known optimum but stop_on_target is set",
            problem.name()
        )));
    }

    let mut ev = Evaluator::new(problem);
    let mut pop = opt.initialize(&mut ev, rng)?;
    observe(0, &pop);

    let mut trace = vec![TracePoint { iteration: 0, best_value: pop.best().value }];
    let mut t = 0;
    loop {
        let hit = problem.reached_target(pop.best().score()).unwrap_or(false);
        if (budget.stop_on_target && hit) || t == budget.max_iterations {
            break;
        }
        opt.step(&mut pop, &mut ev, rng);
        t += 1;
        observe(t, &pop);
        if t % opts.trace_stride == 0 {
            trace.push(TracePoint { iteration: t, best_value: pop.best().value });
        }
    }
    if trace.last().map(|p| p.iteration) != Some(t) {
        trace.push(TracePoint { iteration: t, best_value: pop.best().value });
    }

    let best = pop.best();
    Ok(RunRecord {
        algorithm: opt.id().to_string(),
        run_index: opts.run_index,
        population: budget.population,
        iterations: t,
        evaluations: ev.count(),
        success: problem.reached_target(best.score()).unwrap_or(false),
        best_value: best.value,
        best_violation: best.violation,
        best_position: best.position.clone(),
        trace_stride: opts.trace_stride,
        trace,
    })
}
