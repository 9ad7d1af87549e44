//! Inequality-constraint handling and the pressure-vessel design problem.
//!
//! Constraints are `g_i(x) <= 0`. Solvers compare candidates with
//! [`feasibility_better`]: a feasible point beats an infeasible one, feasible
//! points compare by objective, infeasible points by total violation.

use crate::error::{Error, Result};
use crate::problem::{Objective, Problem, Score, SearchSpace, Tolerance};
use crate::Scalar;

/// Which of two compared items wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    First,
    Second,
}

/// Feasibility-rule comparison with `a` as the incumbent: `Second` only when `b`
/// is strictly better.
pub fn feasibility_better<T: Scalar>(a: Score<T>, b: Score<T>) -> Choice {
    let zero = T::zero();
    let b_wins = match (a.violation <= zero, b.violation <= zero) {
        (true, true) => b.value < a.value,
        (true, false) => false,
        (false, true) => true,
        (false, false) => b.violation < a.violation,
    };
    if b_wins {
        Choice::Second
    } else {
        Choice::First
    }
}

/// Sum of positive parts of the constraint values; zero iff all `g_i <= 0`.
pub fn violation<T: Scalar>(g: &[T]) -> T {
    g.iter().fold(T::zero(), |acc, &gi| acc + gi.max(T::zero()))
}

/// Published best cost for the vessel design.
pub const PRESSURE_VESSEL_BEST: f64 = 6059.714;

/// Optimal cost when both thicknesses vary continuously, reached at
/// `length = 200` with `g1`, `g2` and `g3` active.
pub const PRESSURE_VESSEL_CONTINUOUS_BEST: f64 = 5_885.332_773_616_458;

/// Plate thicknesses are sold in multiples of this (inches).
pub const THICKNESS_STEP: f64 = 0.0625;

/// Cylindrical pressure-vessel design, all dimensions in inches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PressureVesselSolution<T> {
    /// Head thickness.
    pub d1: T,
    /// Body thickness.
    pub d2: T,
    /// Inner radius.
    pub r: T,
    /// Length of the cylindrical section.
    pub length: T,
}

impl<T: Scalar> PressureVesselSolution<T> {
    pub fn from_slice(x: &[T]) -> Result<Self> {
        match *x {
            [d1, d2, r, length] => Ok(Self { d1, d2, r, length }),
            _ => Err(Error::DimensionMismatch { expected: 4, got: x.len() }),
        }
    }

    pub fn to_vec(self) -> Vec<T> {
        vec![self.d1, self.d2, self.r, self.length]
    }

    pub fn reference_best() -> Self {
        Self { d1: T::lit(0.8125), d2: T::lit(0.4375), r: T::lit(42.0984), length: T::lit(176.6366) }
    }
}

/// Material, forming and welding cost.
pub fn pv_objective<T: Scalar>(s: &PressureVesselSolution<T>) -> T {
    let PressureVesselSolution { d1, d2, r, length } = *s;
    T::lit(0.6224) * d1 * r * length
        + T::lit(1.7781) * d2 * r * r
        + T::lit(3.1661) * d1 * d1 * length
        + T::lit(19.84) * d1 * d1 * r
}

/// `[g1, g2, g3, g4]`, each feasible when `<= 0`.
pub fn pv_constraints<T: Scalar>(s: &PressureVesselSolution<T>) -> [T; 4] {
    let PressureVesselSolution { d1, d2, r, length } = *s;
    let pi = T::PI();
    [
        -d1 + T::lit(0.0193) * r,
        -d2 + T::lit(0.00954) * r,
        -pi * r * r * length - T::lit(4.0 / 3.0) * pi * r * r * r + T::lit(1_296_000.0),
        length - T::lit(240.0),
    ]
}

/// How the two thickness variables are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThicknessModel {
    /// Thicknesses snap to multiples of [`THICKNESS_STEP`].
    #[default]
    Discrete,
    /// Thicknesses vary continuously within their bounds.
    Continuous,
}

impl ThicknessModel {
    /// Best known cost under this model.
    pub fn best_cost(self) -> f64 {
        match self {
            ThicknessModel::Discrete => PRESSURE_VESSEL_BEST,
            ThicknessModel::Continuous => PRESSURE_VESSEL_CONTINUOUS_BEST,
        }
    }
}

/// The vessel as a constrained [`Problem`] over `(d1, d2, r, length)`.
///
/// Bounds: `0.0625 <= d1, d2 <= 99 * 0.0625`, `10 <= r, length <= 200`. The
/// target is [`ThicknessModel::best_cost`] with relative tolerance `1e-4`.
pub fn pressure_vessel<T: Scalar>(model: ThicknessModel) -> Problem<T> {
    let step = T::lit(THICKNESS_STEP);
    let lower = vec![step, step, T::lit(10.0), T::lit(10.0)];
    let upper = vec![T::lit(99.0) * step, T::lit(99.0) * step, T::lit(200.0), T::lit(200.0)];
    let mut space = SearchSpace::new(lower, upper).expect("static bounds are valid");
    if model == ThicknessModel::Discrete {
        space = space
            .with_step(0, step)
            .and_then(|s| s.with_step(1, step))
            .expect("static lattice is valid");
    }
    let objective = Objective::new(|x: &[T]| pv_objective(&as_solution(x)))
        .with_target(T::lit(model.best_cost()))
        .with_tolerance(Tolerance::Relative(T::lit(1e-4)))
        .expect("positive tolerance");
    let name = match model {
        ThicknessModel::Discrete => "pressure-vessel",
        ThicknessModel::Continuous => "pressure-vessel-continuous",
    };
    Problem::new(name, space, objective).with_constraints(|x: &[T]| pv_constraints(&as_solution(x)).to_vec())
}

fn as_solution<T: Scalar>(x: &[T]) -> PressureVesselSolution<T> {
    PressureVesselSolution { d1: x[0], d2: x[1], r: x[2], length: x[3] }
}
