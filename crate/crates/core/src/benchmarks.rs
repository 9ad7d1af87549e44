//! The ten continuous test functions with their domains and known optima.
//!
//! All functions are minimized. Easom and Shubert are defined in two
//! dimensions only; the others accept any dimension (Rosenbrock needs two).

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::problem::{Objective, Problem, SearchSpace, Tolerance};
use crate::Scalar;

pub fn ackley<T: Scalar>(x: &[T]) -> T {
    let d = T::lit(x.len() as f64);
    let two_pi = T::lit(2.0) * T::PI();
    let (sq, cos) = x.iter().fold((T::zero(), T::zero()), |(s, c), &v| (s + v * v, c + (two_pi * v).cos()));
    T::lit(-20.0) * (T::lit(-0.2) * (sq / d).sqrt()).exp() - (cos / d).exp() + T::lit(20.0) + T::E()
}

/// De Jong's first function.
pub fn sphere<T: Scalar>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |s, &v| s + v * v)
}

/// Two-dimensional; only `x[0]` and `x[1]` are read.
pub fn easom<T: Scalar>(x: &[T]) -> T {
    let (a, b) = (x[0], x[1]);
    let pi = T::PI();
    -a.cos() * b.cos() * (-((a - pi).powi(2) + (b - pi).powi(2))).exp()
}

pub fn griewank<T: Scalar>(x: &[T]) -> T {
    let sum = x.iter().fold(T::zero(), |s, &v| s + v * v) / T::lit(4000.0);
    let prod = x
        .iter()
        .enumerate()
        .fold(T::one(), |p, (i, &v)| p * (v / T::lit((i + 1) as f64).sqrt()).cos());
    sum - prod + T::one()
}

/// Steepness `m = 10`.
pub fn michalewicz<T: Scalar>(x: &[T]) -> T {
    let pi = T::PI();
    -x.iter().enumerate().fold(T::zero(), |s, (i, &v)| {
        let inner = (T::lit((i + 1) as f64) * v * v / pi).sin();
        s + v.sin() * inner.powi(20)
    })
}

pub fn rastrigin<T: Scalar>(x: &[T]) -> T {
    let two_pi = T::lit(2.0) * T::PI();
    let ten = T::lit(10.0);
    x.iter().fold(ten * T::lit(x.len() as f64), |s, &v| s + v * v - ten * (two_pi * v).cos())
}

pub fn rosenbrock<T: Scalar>(x: &[T]) -> T {
    x.windows(2).fold(T::zero(), |s, w| {
        s + (w[0] - T::one()).powi(2) + T::lit(100.0) * (w[1] - w[0] * w[0]).powi(2)
    })
}

pub fn schwefel<T: Scalar>(x: &[T]) -> T {
    -x.iter().fold(T::zero(), |s, &v| s + v * v.abs().sqrt().sin())
}

/// Yang's forest-like function: `(Σ|x_i|) · exp(-Σ sin(x_i²))`.
pub fn yang_forest<T: Scalar>(x: &[T]) -> T {
    let (abs, sin) = x.iter().fold((T::zero(), T::zero()), |(a, s), &v| (a + v.abs(), s + (v * v).sin()));
    abs * (-sin).exp()
}

/// Two-dimensional with five terms per factor; only `x[0]` and `x[1]` are read.
pub fn shubert<T: Scalar>(x: &[T]) -> T {
    shubert_factor(x[0]) * shubert_factor(x[1])
}

fn shubert_factor<T: Scalar>(v: T) -> T {
    (1..=5).fold(T::zero(), |s, i| {
        let i = T::lit(f64::from(i));
        s + i * (i + (i + T::one()) * v).cos()
    })
}

/// Per-coordinate minimum of Schwefel's function.
pub const SCHWEFEL_MIN: f64 = -418.982_887_272_433_7;
pub const SCHWEFEL_ARGMIN: f64 = 420.968_746_359_982;
/// Global minimum of the two-dimensional Shubert function.
pub const SHUBERT_MIN: f64 = -186.730_908_831_023_8;
/// One of the eighteen global minimizers.
pub const SHUBERT_ARGMIN: [f64; 2] = [4.858_056_878_859_825_5, -7.083_506_407_651_559_6];

/// Minimizer of `-sin(x) sin^20(i x² / π)` on `[0, π]` for `i = 1..=16`.
/// Michalewicz is separable, so these coordinates give the global minimizer.
pub const MICHALEWICZ_ARGMIN: [f64; 16] = [
    2.202_905_520_172_609_3,
    FRAC_PI_2,
    1.284_991_570_552_924_4,
    1.923_058_469_866_362_8,
    1.720_469_772_565_841_3,
    FRAC_PI_2,
    1.454_413_971_362_379,
    1.756_086_520_945_026_4,
    1.655_717_416_821_029_1,
    FRAC_PI_2,
    1.497_728_803_556_070_9,
    1.696_616_300_797_461_1,
    1.630_076_080_396_455_3,
    FRAC_PI_2,
    1.517_546_114_667_673,
    1.666_064_511_726_264_8,
];

/// Global minimum of Michalewicz in dimension `d` (index `d - 1`).
pub const MICHALEWICZ_MIN: [f64; 16] = [
    -0.801_303_410_098_552_5,
    -1.801_303_410_098_552_5,
    -2.760_394_679_994_558_5,
    -3.698_857_098_466_641_9,
    -4.687_658_179_088_146,
    -5.687_658_179_088_146,
    -6.680_885_314_444_028,
    -7.663_757_350_716_238,
    -8.660_151_715_641_341,
    -9.660_151_715_641_341,
    -10.657_482_257_192_11,
    -11.649_574_998_714_792,
    -12.647_817_985_597_96,
    -13.647_817_985_597_96,
    -14.646_400_190_319_405,
    -15.641_864_818_949_964,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Benchmark {
    Michalewicz,
    Rosenbrock,
    Sphere,
    Schwefel,
    Ackley,
    Rastrigin,
    Easom,
    Griewank,
    Yang,
    Shubert,
}

impl Benchmark {
    /// Table order.
    pub const ALL: [Benchmark; 10] = [
        Benchmark::Michalewicz,
        Benchmark::Rosenbrock,
        Benchmark::Sphere,
        Benchmark::Schwefel,
        Benchmark::Ackley,
        Benchmark::Rastrigin,
        Benchmark::Easom,
        Benchmark::Griewank,
        Benchmark::Yang,
        Benchmark::Shubert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Benchmark::Michalewicz => "michalewicz",
            Benchmark::Rosenbrock => "rosenbrock",
            Benchmark::Sphere => "sphere",
            Benchmark::Schwefel => "schwefel",
            Benchmark::Ackley => "ackley",
            Benchmark::Rastrigin => "rastrigin",
            Benchmark::Easom => "easom",
            Benchmark::Griewank => "griewank",
            Benchmark::Yang => "yang",
            Benchmark::Shubert => "shubert",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Benchmark::Michalewicz => "Michalewicz",
            Benchmark::Rosenbrock => "Rosenbrock",
            Benchmark::Sphere => "De Jong",
            Benchmark::Schwefel => "Schwefel",
            Benchmark::Ackley => "Ackley",
            Benchmark::Rastrigin => "Rastrigin",
            Benchmark::Easom => "Easom",
            Benchmark::Griewank => "Griewank",
            Benchmark::Yang => "Yang",
            Benchmark::Shubert => "Shubert",
        }
    }

    /// Dimension used in the comparison table.
    pub fn table_dim(self) -> usize {
        match self {
            Benchmark::Michalewicz | Benchmark::Rosenbrock | Benchmark::Yang => 16,
            Benchmark::Sphere => 256,
            Benchmark::Schwefel | Benchmark::Ackley => 128,
            Benchmark::Rastrigin | Benchmark::Griewank => 16,
            Benchmark::Easom | Benchmark::Shubert => 2,
        }
    }

    pub fn bounds(self) -> (f64, f64) {
        match self {
            Benchmark::Michalewicz => (0.0, std::f64::consts::PI),
            Benchmark::Rosenbrock => (-5.0, 5.0),
            Benchmark::Sphere | Benchmark::Rastrigin => (-5.12, 5.12),
            Benchmark::Schwefel => (-500.0, 500.0),
            Benchmark::Ackley => (-32.768, 32.768),
            Benchmark::Easom => (-100.0, 100.0),
            Benchmark::Griewank => (-600.0, 600.0),
            Benchmark::Yang => (-2.0 * std::f64::consts::PI, 2.0 * std::f64::consts::PI),
            Benchmark::Shubert => (-10.0, 10.0),
        }
    }

    pub fn supports_dim(self, dim: usize) -> bool {
        match self {
            Benchmark::Easom | Benchmark::Shubert => dim == 2,
            Benchmark::Rosenbrock => dim >= 2,
            _ => dim >= 1,
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Benchmark::Michalewicz => 1e-3,
            _ => 1e-5,
        }
    }

    pub fn f_star(self, dim: usize) -> Option<f64> {
        match self {
            Benchmark::Easom => Some(-1.0),
            Benchmark::Shubert => Some(SHUBERT_MIN),
            Benchmark::Schwefel => Some(SCHWEFEL_MIN * dim as f64),
            Benchmark::Michalewicz => MICHALEWICZ_MIN.get(dim.checked_sub(1)?).copied(),
            _ => Some(0.0),
        }
    }

    pub fn x_star(self, dim: usize) -> Option<Vec<f64>> {
        match self {
            Benchmark::Easom => Some(vec![std::f64::consts::PI; 2]),
            Benchmark::Shubert => Some(SHUBERT_ARGMIN.to_vec()),
            Benchmark::Schwefel => Some(vec![SCHWEFEL_ARGMIN; dim]),
            Benchmark::Rosenbrock => Some(vec![1.0; dim]),
            Benchmark::Michalewicz => MICHALEWICZ_ARGMIN.get(..dim).map(<[f64]>::to_vec),
            _ => Some(vec![0.0; dim]),
        }
    }

    pub fn function<T: Scalar>(self) -> fn(&[T]) -> T {
        match self {
            Benchmark::Michalewicz => michalewicz,
            Benchmark::Rosenbrock => rosenbrock,
            Benchmark::Sphere => sphere,
            Benchmark::Schwefel => schwefel,
            Benchmark::Ackley => ackley,
            Benchmark::Rastrigin => rastrigin,
            Benchmark::Easom => easom,
            Benchmark::Griewank => griewank,
            Benchmark::Yang => yang_forest,
            Benchmark::Shubert => shubert,
        }
    }

    /// Full specification at the table dimension.
    pub fn spec<T: Scalar>(self) -> BenchmarkSpec<T> {
        self.spec_with_dim(self.table_dim()).expect("table dimension is supported")
    }

    pub fn spec_with_dim<T: Scalar>(self, dim: usize) -> Result<BenchmarkSpec<T>> {
        if !self.supports_dim(dim) {
            return Err(Error::config(format!("{} is not defined in dimension {dim}", self.name())));
        }
        let (lo, hi) = self.bounds();
        let space = SearchSpace::cube(dim, T::lit(lo), T::lit(hi))?;
        let f_star = self.f_star(dim).map(T::lit);
        let mut objective = Objective::new(self.function::<T>())
            .with_tolerance(Tolerance::Absolute(T::lit(self.tolerance())))?;
        if let Some(t) = f_star {
            objective = objective.with_target(t);
        }
        Ok(BenchmarkSpec {
            benchmark: self,
            table_dim: self.table_dim(),
            problem: Problem::new(self.name(), space, objective),
            f_star,
            x_star: self.x_star(dim).map(|x| x.into_iter().map(T::lit).collect()),
        })
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Benchmark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['-', '_', ' '], "");
        let alias = match key.as_str() {
            "dejong" => Some(Benchmark::Sphere),
            "yangforest" | "forest" => Some(Benchmark::Yang),
            "michaelwicz" => Some(Benchmark::Michalewicz),
            "griewangk" => Some(Benchmark::Griewank),
            _ => None,
        };
        alias.or_else(|| Benchmark::ALL.into_iter().find(|b| b.name() == key)).ok_or_else(|| {
            Error::UnknownBenchmark {
                name: s.to_string(),
                available: Benchmark::ALL.map(Benchmark::name).join(", "),
            }
        })
    }
}

/// A benchmark instantiated at one dimension.
#[derive(Clone, Debug)]
pub struct BenchmarkSpec<T> {
    pub benchmark: Benchmark,
    pub table_dim: usize,
    pub problem: Problem<T>,
    pub f_star: Option<T>,
    pub x_star: Option<Vec<T>>,
}

impl<T: Scalar> BenchmarkSpec<T> {
    pub fn name(&self) -> &'static str {
        self.benchmark.name()
    }

    pub fn dim(&self) -> usize {
        self.problem.space().dim()
    }
}

/// Spec for `name` at its table dimension.
pub fn lookup<T: Scalar>(name: &str) -> Result<BenchmarkSpec<T>> {
    Ok(name.parse::<Benchmark>()?.spec())
}

pub fn lookup_with_dim<T: Scalar>(name: &str, dim: usize) -> Result<BenchmarkSpec<T>> {
    name.parse::<Benchmark>()?.spec_with_dim(dim)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimumCheck {
    pub name: &'static str,
    pub dim: usize,
    pub f_star: f64,
    pub value: f64,
    pub abs_error: f64,
}

/// Evaluates every benchmark at its known minimizer: each at the table
/// dimension, plus two-dimensional Michalewicz.
pub fn evaluate_all_at_optima() -> Vec<OptimumCheck> {
    Benchmark::ALL
        .iter()
        .map(|&b| (b, b.table_dim()))
        .chain([(Benchmark::Michalewicz, 2)])
        .filter_map(|(b, dim)| {
            let spec = b.spec_with_dim::<f64>(dim).ok()?;
            let (x, f_star) = (spec.x_star?, spec.f_star?);
            let value = spec.problem.objective().evaluate(&x);
            Some(OptimumCheck { name: b.name(), dim, f_star, value, abs_error: (value - f_star).abs() })
        })
        .collect()
}

/// One line per benchmark: `name=… dim=… lower=… upper=… f_star=… tolerance=…`.
pub fn registry_text() -> String {
    Benchmark::ALL
        .iter()
        .map(|&b| {
            let (lo, hi) = b.bounds();
            let f_star = b.f_star(b.table_dim()).map_or_else(|| "NA".to_string(), |v| v.to_string());
            format!(
                "name={} dim={} lower={lo} upper={hi} f_star={f_star} tolerance={}\n",
                b.name(),
                b.table_dim(),
                b.tolerance()
            )
        })
        .collect()
}
