//! Problem definition, search-space geometry and population bookkeeping.
//!
//! Everything here is minimization. Maximization objectives are wrapped with
//! [`Objective::maximize`], which negates them on ingestion.

use std::fmt;
use std::sync::Arc;

use crate::constrained::{feasibility_better, Choice};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::Scalar;

/// Feasible box `[lower_i, upper_i]` with an optional lattice step per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpace<T> {
    lower: Vec<T>,
    upper: Vec<T>,
    steps: Vec<Option<T>>,
}

impl<T: Scalar> SearchSpace<T> {
    pub fn new(lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::config("search space needs at least one dimension"));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), got: upper.len() });
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::config(format!(
                    "coordinate {i}: lower bound {lo} must be finite and below upper bound {hi}"
                )));
            }
        }
        let steps = vec![None; lower.len()];
        Ok(Self { lower, upper, steps })
    }

    /// The same interval on every coordinate.
    pub fn cube(dim: usize, lower: T, upper: T) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    /// Restricts coordinate `coord` to `lower + k * step`.
    pub fn with_step(mut self, coord: usize, step: T) -> Result<Self> {
        if coord >= self.dim() {
            return Err(Error::config(format!("no coordinate {coord} in a {}-d space", self.dim())));
        }
        if !(step > T::zero()) || step > self.upper[coord] - self.lower[coord] {
            return Err(Error::config(format!("lattice step {step} invalid for coordinate {coord}")));
        }
        self.steps[coord] = Some(step);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn steps(&self) -> &[Option<T>] {
        &self.steps
    }

    pub fn width(&self, coord: usize) -> T {
        self.upper[coord] - self.lower[coord]
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim()
            && x.iter().zip(self.lower.iter().zip(&self.upper)).all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    /// Per-coordinate projection onto the box. Interior coordinates are returned unchanged.
    pub fn clamp(&self, x: &[T]) -> Result<Vec<T>> {
        self.check_len(x.len())?;
        let mut out = x.to_vec();
        self.clamp_in_place(&mut out);
        Ok(out)
    }

    pub(crate) fn clamp_in_place(&self, x: &mut [T]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            // NaN goes to the lower bound rather than poisoning the population.
            *v = if v.is_nan() { *lo } else { v.max(*lo).min(*hi) };
        }
    }

    /// Clamp, then round lattice coordinates to the nearest admissible value.
    pub fn project(&self, x: &mut [T]) {
        self.clamp_in_place(x);
        for (i, step) in self.steps.iter().enumerate() {
            if let Some(step) = *step {
                let lo = self.lower[i];
                let mut v = lo + ((x[i] - lo) / step).round() * step;
                if v > self.upper[i] {
                    v = v - step;
                }
                x[i] = v;
            }
        }
    }

    /// Uniform point in the box, projected onto any lattice coordinates.
    pub fn sample_uniform(&self, rng: &mut RngStream) -> Vec<T> {
        let mut x: Vec<T> = self
            .lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| lo + rng.uniform_unit::<T>() * (hi - lo))
            .collect();
        self.project(&mut x);
        x
    }

    pub(crate) fn check_len(&self, got: usize) -> Result<()> {
        if got == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got })
        }
    }
}

/// How close the best value must come to the known target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance<T> {
    /// `|f - f*| <= tol`
    Absolute(T),
    /// `|f - f*| <= tol * |f*|`
    Relative(T),
}

impl<T: Scalar> Tolerance<T> {
    pub fn within(&self, value: T, target: T) -> bool {
        let gap = (value - target).abs();
        match *self {
            Tolerance::Absolute(tol) => gap <= tol,
            Tolerance::Relative(tol) => gap <= tol * target.abs(),
        }
    }

    pub fn amount(&self) -> T {
        match *self {
            Tolerance::Absolute(t) | Tolerance::Relative(t) => t,
        }
    }

    /// Same kind, different amount.
    pub fn with_amount(self, amount: T) -> Self {
        match self {
            Tolerance::Absolute(_) => Tolerance::Absolute(amount),
            Tolerance::Relative(_) => Tolerance::Relative(amount),
        }
    }
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Tolerance::Absolute(T::lit(1e-5))
    }
}

impl<T: fmt::Display> fmt::Display for Tolerance<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Absolute(t) => write!(f, "abs:{t}"),
            Tolerance::Relative(t) => write!(f, "rel:{t}"),
        }
    }
}

pub type ObjectiveFn<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;
pub type ConstraintFn<T> = Arc<dyn Fn(&[T]) -> Vec<T> + Send + Sync>;

/// Deterministic objective with an optional known optimum.
#[derive(Clone)]
pub struct Objective<T> {
    func: ObjectiveFn<T>,
    known_target: Option<T>,
    tolerance: Tolerance<T>,
}

impl<T: Scalar> Objective<T> {
    pub fn new(func: impl Fn(&[T]) -> T + Send + Sync + 'static) -> Self {
        Self { func: Arc::new(func), known_target: None, tolerance: Tolerance::default() }
    }

    /// Wraps a function to be maximized; the stored objective is its negation.
    pub fn maximize(func: impl Fn(&[T]) -> T + Send + Sync + 'static) -> Self {
        Self::new(move |x: &[T]| -func(x))
    }

    pub fn with_target(mut self, target: T) -> Self {
        self.known_target = Some(target);
        self
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance<T>) -> Result<Self> {
        if !(tolerance.amount() > T::zero()) {
            return Err(Error::config(format!("target tolerance must be positive, got {tolerance}")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn evaluate(&self, x: &[T]) -> T {
        (self.func)(x)
    }

    pub fn known_target(&self) -> Option<T> {
        self.known_target
    }

    pub fn tolerance(&self) -> Tolerance<T> {
        self.tolerance
    }

    /// `None` when no target is known.
    pub fn is_hit(&self, value: T) -> Option<bool> {
        self.known_target.map(|t| self.tolerance.within(value, t))
    }
}

impl<T: fmt::Debug> fmt::Debug for Objective<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Objective")
            .field("known_target", &self.known_target)
            .field("tolerance", &self.tolerance)
            .finish_non_exhaustive()
    }
}

/// Objective plus box, optionally with inequality constraints `g_i(x) <= 0`.
#[derive(Clone)]
pub struct Problem<T> {
    name: String,
    space: SearchSpace<T>,
    objective: Objective<T>,
    constraints: Option<ConstraintFn<T>>,
}

impl<T: Scalar> Problem<T> {
    pub fn new(name: impl Into<String>, space: SearchSpace<T>, objective: Objective<T>) -> Self {
        Self { name: name.into(), space, objective, constraints: None }
    }

    pub fn with_constraints(mut self, g: impl Fn(&[T]) -> Vec<T> + Send + Sync + 'static) -> Self {
        self.constraints = Some(Arc::new(g));
        self
    }

    /// Replaces the target tolerance.
    pub fn with_tolerance(mut self, tolerance: Tolerance<T>) -> Result<Self> {
        self.objective = self.objective.with_tolerance(tolerance)?;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &SearchSpace<T> {
        &self.space
    }

    pub fn objective(&self) -> &Objective<T> {
        &self.objective
    }

    pub fn is_constrained(&self) -> bool {
        self.constraints.is_some()
    }

    pub fn constraint_values(&self, x: &[T]) -> Vec<T> {
        self.constraints.as_ref().map(|g| g(x)).unwrap_or_default()
    }

    /// Objective value and total constraint violation at `x`.
    ///
    /// NaN is mapped to +inf so that an undefined value can never win a comparison.
    pub fn score(&self, x: &[T]) -> Score<T> {
        let value = self.objective.evaluate(x);
        let violation = match &self.constraints {
            Some(g) => crate::constrained::violation(&g(x)),
            None => T::zero(),
        };
        Score { value: nan_to_inf(value), violation: nan_to_inf(violation) }
    }

    /// Whether `score` meets the known target (feasibly). `None` without a target.
    pub fn reached_target(&self, score: Score<T>) -> Option<bool> {
        self.objective.is_hit(score.value).map(|hit| hit && score.violation == T::zero())
    }
}

impl<T: fmt::Debug> fmt::Debug for Problem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("space", &self.space)
            .field("objective", &self.objective)
            .field("constrained", &self.constraints.is_some())
            .finish()
    }
}

fn nan_to_inf<T: Scalar>(v: T) -> T {
    if v.is_nan() {
        T::infinity()
    } else {
        v
    }
}

/// Objective value together with total constraint violation (zero when feasible).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Score<T> {
    pub value: T,
    pub violation: T,
}

impl<T: Scalar> Score<T> {
    pub fn feasible(value: T) -> Self {
        Self { value, violation: T::zero() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate<T> {
    pub position: Vec<T>,
    pub value: T,
    pub violation: T,
    /// Evaluation counter value at the time `value` was computed.
    pub evals_stamp: u64,
}

impl<T: Scalar> Candidate<T> {
    pub fn score(&self) -> Score<T> {
        Score { value: self.value, violation: self.violation }
    }

    pub fn is_feasible(&self) -> bool {
        self.violation == T::zero()
    }

    /// True when `self` should replace `incumbent`. Ties keep the incumbent.
    pub fn beats(&self, incumbent: &Candidate<T>) -> bool {
        feasibility_better(incumbent.score(), self.score()) == Choice::Second
    }
}

/// The candidate with the smaller value; `a` on ties.
pub fn better<'a, T: Scalar>(a: &'a Candidate<T>, b: &'a Candidate<T>) -> &'a Candidate<T> {
    if b.value < a.value {
        b
    } else {
        a
    }
}

/// Counts evaluations of one problem over one run.
pub struct Evaluator<'a, T> {
    problem: &'a Problem<T>,
    count: u64,
}

impl<'a, T: Scalar> Evaluator<'a, T> {
    pub fn new(problem: &'a Problem<T>) -> Self {
        Self { problem, count: 0 }
    }

    pub fn problem(&self) -> &'a Problem<T> {
        self.problem
    }

    pub fn space(&self) -> &'a SearchSpace<T> {
        self.problem.space()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn evaluate(&mut self, position: Vec<T>) -> Candidate<T> {
        let Score { value, violation } = self.problem.score(&position);
        self.count += 1;
        Candidate { position, value, violation, evals_stamp: self.count }
    }
}

/// Fixed-size set of candidates plus the best one (g*).
#[derive(Clone, Debug, PartialEq)]
pub struct Population<T> {
    members: Vec<Candidate<T>>,
    best: Candidate<T>,
}

impl<T: Scalar> Population<T> {
    pub fn from_members(members: Vec<Candidate<T>>) -> Result<Self> {
        let best = members
            .iter()
            .skip(1)
            .fold(members.first().ok_or_else(|| Error::config("empty population"))?, |acc, c| {
                if c.beats(acc) {
                    c
                } else {
                    acc
                }
            })
            .clone();
        Ok(Self { members, best })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Candidate<T>] {
        &self.members
    }

    pub fn best(&self) -> &Candidate<T> {
        &self.best
    }

    /// Replaces member `i` with `candidate` when it is strictly better. Does not touch g*.
    pub fn offer(&mut self, i: usize, candidate: Candidate<T>) -> bool {
        if candidate.beats(&self.members[i]) {
            self.members[i] = candidate;
            true
        } else {
            false
        }
    }

    /// Unconditional replacement. Does not touch g*.
    pub fn replace(&mut self, i: usize, candidate: Candidate<T>) {
        self.members[i] = candidate;
    }

    /// Re-scans the members and promotes any that beat the stored best.
    pub fn refresh_best(&mut self) {
        let mut best = &self.best;
        for c in &self.members {
            if c.beats(best) {
                best = c;
            }
        }
        if !std::ptr::eq(best, &self.best) {
            self.best = best.clone();
        }
    }

    /// Index of the worst member under the feasibility ordering (last on ties).
    pub fn worst_index(&self) -> usize {
        let mut worst = 0;
        for (i, c) in self.members.iter().enumerate().skip(1) {
            if !c.beats(&self.members[worst]) {
                worst = i;
            }
        }
        worst
    }
}

/// `n` uniformly drawn, evaluated candidates. Advances the evaluation counter by `n`.
pub fn init_population<T: Scalar>(
    ev: &mut Evaluator<'_, T>,
    n: usize,
    rng: &mut RngStream,
) -> Result<Population<T>> {
    if n < 2 {
        return Err(Error::config(format!("population size must be at least 2, got {n}")));
    }
    let members = (0..n)
        .map(|_| {
            let x = ev.space().sample_uniform(rng);
            ev.evaluate(x)
        })
        .collect();
    Population::from_members(members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere_problem(dim: usize, lo: f64, hi: f64) -> Problem<f64> {
        let space = SearchSpace::cube(dim, lo, hi).unwrap();
        Problem::new("sphere", space, Objective::new(|x: &[f64]| x.iter().map(|v| v * v).sum()))
    }

    fn cand(value: f64) -> Candidate<f64> {
        Candidate { position: vec![value], value, violation: 0.0, evals_stamp: 0 }
    }

    #[test]
    fn space_rejects_bad_bounds() {
        assert!(SearchSpace::new(vec![1.0], vec![1.0]).is_err());
        assert!(SearchSpace::new(vec![2.0], vec![1.0]).is_err());
        assert!(SearchSpace::<f64>::new(vec![], vec![]).is_err());
        assert!(SearchSpace::new(vec![0.0, 0.0], vec![1.0]).is_err());
    }

    #[test]
    fn clamp_examples() {
        let unit = SearchSpace::cube(1, 0.0, 1.0).unwrap();
        assert_eq!(unit.clamp(&[0.5]).unwrap(), vec![0.5]);
        assert_eq!(unit.clamp(&[-3.7]).unwrap(), vec![0.0]);
        let cube = SearchSpace::cube(3, -5.0, 5.0).unwrap();
        assert_eq!(cube.clamp(&[6.0, -6.0, 0.0]).unwrap(), vec![5.0, -5.0, 0.0]);
        assert!(matches!(cube.clamp(&[0.0]), Err(Error::DimensionMismatch { expected: 3, got: 1 })));
    }

    #[test]
    fn lattice_projection() {
        let s = SearchSpace::new(vec![0.0625, 10.0], vec![99.0 * 0.0625, 200.0])
            .unwrap()
            .with_step(0, 0.0625)
            .unwrap();
        let mut x = vec![0.80, 42.3];
        s.project(&mut x);
        assert_eq!(x, vec![0.8125, 42.3]);
        let mut x = vec![100.0, 500.0];
        s.project(&mut x);
        assert_eq!(x, vec![99.0 * 0.0625, 200.0]);
        assert!(s.clone().with_step(2, 1.0).is_err());
        assert!(s.with_step(1, -1.0).is_err());
    }

    #[test]
    fn better_prefers_incumbent_on_ties() {
        let (a, b) = (cand(1.0), cand(2.0));
        assert_eq!(better(&a, &b), &a);
        assert_eq!(better(&b, &a), &a);
        let (a, b) = (cand(1.0), Candidate { evals_stamp: 9, ..cand(1.0) });
        assert_eq!(better(&a, &b).evals_stamp, 0);
    }

    #[test]
    fn init_population_contract() {
        let p = sphere_problem(2, -5.12, 5.12);
        let mut ev = Evaluator::new(&p);
        let pop = init_population(&mut ev, 25, &mut RngStream::new(42)).unwrap();
        assert_eq!(pop.len(), 25);
        assert_eq!(ev.count(), 25);
        assert!(pop.members().iter().all(|c| p.space().contains(&c.position)));
        let min = pop.members().iter().map(|c| c.value).fold(f64::INFINITY, f64::min);
        assert_eq!(pop.best().value, min);

        let mut ev2 = Evaluator::new(&p);
        let again = init_population(&mut ev2, 25, &mut RngStream::new(42)).unwrap();
        assert_eq!(pop, again);
    }

    #[test]
    fn init_population_in_tiny_box() {
        let p = sphere_problem(2, 0.0, 1e-12);
        let mut ev = Evaluator::new(&p);
        let pop = init_population(&mut ev, 25, &mut RngStream::new(1)).unwrap();
        for c in pop.members() {
            assert!(c.position.iter().all(|&v| (0.0..=1e-12).contains(&v)));
        }
    }

    #[test]
    fn init_population_rejects_small_n() {
        let p = sphere_problem(2, -1.0, 1.0);
        let mut ev = Evaluator::new(&p);
        assert!(init_population(&mut ev, 1, &mut RngStream::new(1)).is_err());
        assert_eq!(ev.count(), 0);
    }

    #[test]
    fn nan_scores_never_win() {
        let space = SearchSpace::cube(1, -1.0, 1.0).unwrap();
        let p = Problem::new("nan", space, Objective::new(|_: &[f64]| f64::NAN));
        let s = p.score(&[0.0]);
        assert_eq!(s.value, f64::INFINITY);
    }

    #[test]
    fn maximize_negates() {
        let obj = Objective::maximize(|x: &[f64]| x[0]);
        assert_eq!(obj.evaluate(&[3.0]), -3.0);
    }

    #[test]
    fn tolerance_must_be_positive() {
        let obj = Objective::new(|_: &[f64]| 0.0);
        assert!(obj.clone().with_tolerance(Tolerance::Absolute(0.0)).is_err());
        assert!(obj.with_tolerance(Tolerance::Relative(1e-4)).is_ok());
        assert!(Tolerance::Relative(1e-4).within(6060.0, 6059.714));
        assert!(!Tolerance::Absolute(1e-5).within(1e-4, 0.0));
    }

    #[test]
    fn refresh_best_and_worst() {
        let mut pop = Population::from_members(vec![cand(3.0), cand(1.0), cand(2.0)]).unwrap();
        assert_eq!(pop.best().value, 1.0);
        assert_eq!(pop.worst_index(), 0);
        assert!(pop.offer(0, cand(0.5)));
        assert!(!pop.offer(2, cand(2.0)));
        assert_eq!(pop.best().value, 1.0);
        pop.refresh_best();
        assert_eq!(pop.best().value, 0.5);
    }
}
