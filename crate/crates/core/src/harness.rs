//! Experiment orchestration: repeated seeded runs, summary statistics,
//! convergence-error curves and CSV export.
//!
//! Run `r` of algorithm slot `a` always uses `RngStream::derive(seed, a, r)`,
//! so parallel and sequential execution give identical records.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::baselines::{Ga, GaConfig, Pso, PsoConfig};
use crate::benchmarks::Benchmark;
use crate::constrained::{feasibility_better, pressure_vessel, Choice, ThicknessModel};
use crate::error::{Error, Result};
use crate::flower::{Fpa, FpaConfig};
use crate::problem::{Problem, Score};
use crate::rng::RngStream;
use crate::run::{RunOptions, RunRecord};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemId {
    Benchmark { benchmark: Benchmark, dim: usize },
    PressureVessel(ThicknessModel),
}

impl ProblemId {
    pub fn benchmark(benchmark: Benchmark) -> Self {
        ProblemId::Benchmark { benchmark, dim: benchmark.table_dim() }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProblemId::Benchmark { benchmark, .. } => benchmark.name(),
            ProblemId::PressureVessel(ThicknessModel::Discrete) => "pressure-vessel",
            ProblemId::PressureVessel(ThicknessModel::Continuous) => "pressure-vessel-continuous",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ProblemId::Benchmark { dim, .. } => *dim,
            ProblemId::PressureVessel(_) => 4,
        }
    }

    pub fn build<T: Scalar>(&self) -> Result<Problem<T>> {
        match *self {
            ProblemId::Benchmark { benchmark, dim } => Ok(benchmark.spec_with_dim(dim)?.problem),
            ProblemId::PressureVessel(model) => Ok(pressure_vessel(model)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlgorithmConfig<T> {
    Fpa(FpaConfig<T>),
    Ga(GaConfig<T>),
    Pso(PsoConfig<T>),
}

impl<T: Scalar> AlgorithmConfig<T> {
    /// Default configuration for `fpa`, `ga` or `pso`.
    pub fn by_id(id: &str) -> Result<Self> {
        match id.trim().to_ascii_lowercase().as_str() {
            "fpa" => Ok(AlgorithmConfig::Fpa(FpaConfig::default())),
            "ga" => Ok(AlgorithmConfig::Ga(GaConfig::default())),
            "pso" => Ok(AlgorithmConfig::Pso(PsoConfig::default())),
            _ => Err(Error::UnknownAlgorithm(id.to_string())),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            AlgorithmConfig::Fpa(_) => "fpa",
            AlgorithmConfig::Ga(_) => "ga",
            AlgorithmConfig::Pso(_) => "pso",
        }
    }

    pub fn population(&self) -> usize {
        match self {
            AlgorithmConfig::Fpa(c) => c.n,
            AlgorithmConfig::Ga(c) => c.n,
            AlgorithmConfig::Pso(c) => c.n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AlgorithmConfig::Fpa(c) => c.validate(),
            AlgorithmConfig::Ga(c) => c.validate(),
            AlgorithmConfig::Pso(c) => c.validate(),
        }
    }

    pub fn set_max_iterations(&mut self, max_iterations: usize) {
        match self {
            AlgorithmConfig::Fpa(c) => c.max_iterations = max_iterations,
            AlgorithmConfig::Ga(c) => c.max_iterations = max_iterations,
            AlgorithmConfig::Pso(c) => c.max_iterations = max_iterations,
        }
    }

    pub fn set_stop_on_target(&mut self, stop: bool) {
        match self {
            AlgorithmConfig::Fpa(c) => c.stop_on_target = stop,
            AlgorithmConfig::Ga(c) => c.stop_on_target = stop,
            AlgorithmConfig::Pso(c) => c.stop_on_target = stop,
        }
    }

    pub fn run(&self, problem: &Problem<T>, rng: &mut RngStream, opts: RunOptions) -> Result<RunRecord<T>> {
        match *self {
            AlgorithmConfig::Fpa(c) => Fpa::new(c)?.run(problem, rng, opts),
            AlgorithmConfig::Ga(c) => Ga::new(c)?.run(problem, rng, opts),
            AlgorithmConfig::Pso(c) => Pso::new(c)?.run(problem, rng, opts),
        }
    }

    /// `key=value` description of every parameter.
    pub fn describe(&self) -> String {
        match self {
            AlgorithmConfig::Fpa(c) => format!(
                "n={} p={} lambda={} scale={} max_iterations={} stop_on_target={}",
                c.n, c.p, c.levy.lambda, c.levy.scale, c.max_iterations, c.stop_on_target
            ),
            AlgorithmConfig::Ga(c) => format!(
                "n={} crossover_prob={} mutation_prob={} mutation_scale={} max_iterations={} stop_on_target={}",
                c.n, c.crossover_prob, c.mutation_prob, c.mutation_scale, c.max_iterations, c.stop_on_target
            ),
            AlgorithmConfig::Pso(c) => format!(
                "n={} c1={} c2={} inertia_start={} inertia_end={} inertia_horizon={} vmax_fraction={} max_iterations={} stop_on_target={}",
                c.n,
                c.c1,
                c.c2,
                c.inertia_start,
                c.inertia_end,
                c.inertia_horizon.map_or_else(|| "max_iterations".to_string(), |h| h.to_string()),
                c.vmax_fraction,
                c.max_iterations,
                c.stop_on_target
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentPlan<T> {
    pub problem: ProblemId,
    pub algorithms: Vec<AlgorithmConfig<T>>,
    pub runs: usize,
    pub master_seed: u64,
    pub trace_stride: usize,
    /// Replaces the amount of the problem's target tolerance, keeping its kind.
    pub tolerance: Option<T>,
}

impl<T: Scalar> ExperimentPlan<T> {
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::config("runs must be at least 1"));
        }
        if self.trace_stride == 0 {
            return Err(Error::config("trace stride must be at least 1"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::config("plan lists no algorithms"));
        }
        self.algorithms.iter().try_for_each(AlgorithmConfig::validate)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// All runs of all algorithms, ordered by algorithm slot then run index.
pub fn run_experiment<T: Scalar>(plan: &ExperimentPlan<T>) -> Result<Vec<RunRecord<T>>> {
    run_experiment_with(plan, Execution::Parallel)
}

pub fn run_experiment_with<T: Scalar>(plan: &ExperimentPlan<T>, execution: Execution) -> Result<Vec<RunRecord<T>>> {
    plan.validate()?;
    let mut problem = plan.problem.build::<T>()?;
    if let Some(tol) = plan.tolerance {
        let kind = problem.objective().tolerance();
        problem = problem.with_tolerance(kind.with_amount(tol))?;
    }
    let jobs: Vec<(usize, usize)> =
        (0..plan.algorithms.len()).flat_map(|a| (0..plan.runs).map(move |r| (a, r))).collect();
    let one = |&(a, r): &(usize, usize)| {
        let mut rng = RngStream::derive(plan.master_seed, a as u64, r as u64);
        let opts = RunOptions { run_index: r, trace_stride: plan.trace_stride };
        plan.algorithms[a].run(&problem, &mut rng, opts)
    };
    match execution {
        Execution::Sequential => jobs.iter().map(one).collect(),
        Execution::Parallel => jobs.par_iter().map(one).collect(),
    }
}

/// Table-style statistics for one algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub algorithm: String,
    pub runs: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Over successful runs; `None` when there are none.
    pub mean_iterations: Option<f64>,
    /// Sample standard deviation over successful runs; `None` with fewer than two.
    pub std_iterations: Option<f64>,
    pub mean_evaluations: Option<f64>,
}

/// Mean ± sample std of iterations over the successful runs of `algorithm`.
///
/// Integer sums keep the result independent of record order.
pub fn summarize<T: Scalar>(records: &[RunRecord<T>], algorithm: &str) -> Result<Summary> {
    let mine: Vec<&RunRecord<T>> = records.iter().filter(|r| r.algorithm == algorithm).collect();
    if mine.is_empty() {
        return Err(Error::config(format!("no records for algorithm `{algorithm}`")));
    }
    let ok: Vec<&&RunRecord<T>> = mine.iter().filter(|r| r.success).collect();
    let k = ok.len() as u128;
    let sum: u128 = ok.iter().map(|r| r.iterations as u128).sum();
    let sum_sq: u128 = ok.iter().map(|r| (r.iterations as u128).pow(2)).sum();
    let evals: u128 = ok.iter().map(|r| u128::from(r.evaluations)).sum();
    let mean_iterations = (k > 0).then(|| sum as f64 / k as f64);
    let std_iterations = (k > 1).then(|| (((k * sum_sq - sum * sum) as f64) / ((k * (k - 1)) as f64)).sqrt());
    Ok(Summary {
        algorithm: algorithm.to_string(),
        runs: mine.len(),
        successes: ok.len(),
        success_rate: ok.len() as f64 / mine.len() as f64,
        mean_iterations,
        std_iterations,
        mean_evaluations: (k > 0).then(|| evals as f64 / k as f64),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint<T> {
    pub iteration: usize,
    pub mean_abs_error: T,
}

/// Mean over runs of `|best_value(t) - f_star|` on the union of traced
/// iterations. A run that stopped early carries its final value forward.
pub fn error_curve<T: Scalar>(records: &[RunRecord<T>], f_star: Option<T>) -> Result<Vec<CurvePoint<T>>> {
    let f_star = f_star.ok_or_else(|| Error::MissingTarget("error curve needs the optimum value".into()))?;
    let Some(first) = records.first() else {
        return Ok(Vec::new());
    };
    if records.iter().any(|r| r.trace_stride != first.trace_stride) {
        return Err(Error::config("records were traced with different strides"));
    }
    let mut grid: Vec<usize> = records.iter().flat_map(|r| r.trace.iter().map(|p| p.iteration)).collect();
    grid.sort_unstable();
    grid.dedup();

    let mut cursors = vec![0usize; records.len()];
    let n = T::lit(records.len() as f64);
    let mut curve = Vec::with_capacity(grid.len());
    for &t in &grid {
        let mut total = T::zero();
        for (rec, cur) in records.iter().zip(cursors.iter_mut()) {
            while *cur + 1 < rec.trace.len() && rec.trace[*cur + 1].iteration <= t {
                *cur += 1;
            }
            total = total + (rec.trace[*cur].best_value - f_star).abs();
        }
        curve.push(CurvePoint { iteration: t, mean_abs_error: total / n });
    }
    Ok(curve)
}

/// Least-squares line through `(iteration, ln D)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Leading share of the traced horizon left out of [`fit_log_error`].
pub const BURN_IN_FRACTION: f64 = 0.1;

/// Fits `ln D` against iteration over points at or after
/// [`BURN_IN_FRACTION`] of the last traced iteration, skipping `D = 0`.
/// `None` with fewer than three usable points or no spread in either axis.
pub fn fit_log_error<T: Scalar>(curve: &[CurvePoint<T>]) -> Option<LogLinearFit> {
    let horizon = curve.last()?.iteration as f64;
    let pts: Vec<(f64, f64)> = curve
        .iter()
        .map(|p| (p.iteration as f64, p.mean_abs_error.to_f64_lossy()))
        .filter(|&(t, d)| t >= BURN_IN_FRACTION * horizon && d > 0.0 && d.is_finite())
        .map(|(t, d)| (t, d.ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x / n, b + y / n));
    let (sxx, sxy, syy) = pts.iter().fold((0.0, 0.0, 0.0), |(a, b, c), &(x, y)| {
        (a + (x - mx).powi(2), b + (x - mx) * (y - my), c + (y - my).powi(2))
    });
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some(LogLinearFit { slope, intercept: my - slope * mx, r_squared: sxy * sxy / (sxx * syy), points: pts.len() })
}

/// One row of the summary CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub benchmark: String,
    pub dim: usize,
    pub summary: Summary,
}

pub const SUMMARY_HEADER: [&str; 7] =
    ["benchmark", "dim", "algorithm", "mean_iters", "std_iters", "success_rate", "mean_evals"];
pub const TRACE_HEADER: [&str; 4] = ["algorithm", "run", "iteration", "best_value"];
pub const CURVE_HEADER: [&str; 3] = ["algorithm", "iteration", "mean_abs_error"];

const UNDEFINED: &str = "NA";

fn opt_field(v: Option<f64>) -> String {
    v.map_or_else(|| UNDEFINED.to_string(), |x| x.to_string())
}

fn writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    let file = File::create(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    Ok(csv::Writer::from_writer(BufWriter::new(file)))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv { path: path.to_path_buf(), source }
}

fn write_rows<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = writer(path)?;
    w.write_record(header).map_err(csv_err(path))?;
    for row in rows {
        w.write_record(row).map_err(csv_err(path))?;
    }
    w.flush().map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let found = r.headers().map_err(csv_err(path))?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(Error::Parse { path: path.to_path_buf(), message: format!("unexpected header {found:?}") });
    }
    r.records().collect::<std::result::Result<Vec<_>, _>>().map_err(csv_err(path))
}

fn parse_field<V: std::str::FromStr>(path: &Path, rec: &csv::StringRecord, i: usize) -> Result<V> {
    let raw = rec.get(i).unwrap_or_default();
    raw.parse().map_err(|_| Error::Parse { path: path.to_path_buf(), message: format!("bad field {i}: `{raw}`") })
}

fn parse_opt(path: &Path, rec: &csv::StringRecord, i: usize) -> Result<Option<f64>> {
    if rec.get(i) == Some(UNDEFINED) {
        Ok(None)
    } else {
        parse_field(path, rec, i).map(Some)
    }
}

pub fn write_summary_csv(path: impl AsRef<Path>, rows: &[SummaryRow]) -> Result<()> {
    write_rows(
        path.as_ref(),
        &SUMMARY_HEADER,
        rows.iter().map(|row| {
            let s = &row.summary;
            vec![
                row.benchmark.clone(),
                row.dim.to_string(),
                s.algorithm.clone(),
                opt_field(s.mean_iterations),
                opt_field(s.std_iterations),
                s.success_rate.to_string(),
                opt_field(s.mean_evaluations),
            ]
        }),
    )
}

/// Reads back a summary CSV. Run and success counts are not stored and come back as zero.
pub fn read_summary_csv(path: impl AsRef<Path>) -> Result<Vec<SummaryRow>> {
    let path = path.as_ref();
    read_rows(path, &SUMMARY_HEADER)?
        .iter()
        .map(|rec| {
            Ok(SummaryRow {
                benchmark: parse_field(path, rec, 0)?,
                dim: parse_field(path, rec, 1)?,
                summary: Summary {
                    algorithm: parse_field(path, rec, 2)?,
                    runs: 0,
                    successes: 0,
                    mean_iterations: parse_opt(path, rec, 3)?,
                    std_iterations: parse_opt(path, rec, 4)?,
                    success_rate: parse_field(path, rec, 5)?,
                    mean_evaluations: parse_opt(path, rec, 6)?,
                },
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow<T> {
    pub algorithm: String,
    pub run: usize,
    pub iteration: usize,
    pub best_value: T,
}

pub fn write_trace_csv<T: Scalar>(path: impl AsRef<Path>, records: &[RunRecord<T>]) -> Result<()> {
    write_rows(
        path.as_ref(),
        &TRACE_HEADER,
        records.iter().flat_map(|r| {
            r.trace.iter().map(move |p| {
                vec![r.algorithm.clone(), r.run_index.to_string(), p.iteration.to_string(), p.best_value.to_string()]
            })
        }),
    )
}

pub fn read_trace_csv<T: Scalar>(path: impl AsRef<Path>) -> Result<Vec<TraceRow<T>>> {
    let path = path.as_ref();
    read_rows(path, &TRACE_HEADER)?
        .iter()
        .map(|rec| {
            Ok(TraceRow {
                algorithm: parse_field(path, rec, 0)?,
                run: parse_field(path, rec, 1)?,
                iteration: parse_field(path, rec, 2)?,
                best_value: parse_field(path, rec, 3)?,
            })
        })
        .collect()
}

/// Curves keyed by algorithm id.
pub type NamedCurve<T> = (String, Vec<CurvePoint<T>>);

pub fn write_curve_csv<T: Scalar>(path: impl AsRef<Path>, curves: &[NamedCurve<T>]) -> Result<()> {
    write_rows(
        path.as_ref(),
        &CURVE_HEADER,
        curves.iter().flat_map(|(alg, pts)| {
            pts.iter().map(move |p| vec![alg.clone(), p.iteration.to_string(), p.mean_abs_error.to_string()])
        }),
    )
}

pub fn read_curve_csv<T: Scalar>(path: impl AsRef<Path>) -> Result<Vec<NamedCurve<T>>> {
    let path = path.as_ref();
    let mut out: Vec<NamedCurve<T>> = Vec::new();
    for rec in read_rows(path, &CURVE_HEADER)? {
        let alg: String = parse_field(path, &rec, 0)?;
        let point = CurvePoint { iteration: parse_field(path, &rec, 1)?, mean_abs_error: parse_field(path, &rec, 2)? };
        match out.last_mut() {
            Some((name, pts)) if *name == alg => pts.push(point),
            _ => out.push((alg, vec![point])),
        }
    }
    Ok(out)
}

/// `key=value` description of a plan plus the interpretation flags behind the statistics.
pub fn metadata_text<T: Scalar>(plan: &ExperimentPlan<T>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "problem={}", plan.problem.name());
    let _ = writeln!(s, "dim={}", plan.problem.dim());
    let _ = writeln!(s, "runs={}", plan.runs);
    let _ = writeln!(s, "master_seed={}", plan.master_seed);
    let _ = writeln!(s, "trace_stride={}", plan.trace_stride);
    if let Some(tol) = plan.tolerance {
        let _ = writeln!(s, "tolerance={tol}");
    }
    let _ = writeln!(s, "stream_derivation=splitmix(master_seed, algorithm_slot, run_index)");
    for (i, a) in plan.algorithms.iter().enumerate() {
        let _ = writeln!(s, "algorithm.{i}={} {}", a.id(), a.describe());
    }
    let _ = writeln!(s, "stats_over=successful_runs");
    let _ = writeln!(s, "std_denominator=n-1");
    let _ = writeln!(s, "boundary=clamp");
    let _ = writeln!(s, "ties=incumbent");
    let _ = writeln!(s, "error_curve=mean_abs(best_so_far - f_star), forward_fill");
    s
}

pub fn write_metadata<T: Scalar>(path: impl AsRef<Path>, plan: &ExperimentPlan<T>) -> Result<()> {
    let path = path.as_ref();
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let mut f = File::create(path).map_err(io)?;
    f.write_all(metadata_text(plan).as_bytes()).map_err(io)
}

/// All ten benchmarks × {GA, PSO, FPA} at their table dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct Table1Study<T> {
    pub runs: usize,
    pub master_seed: u64,
    pub ga: GaConfig<T>,
    pub pso: PsoConfig<T>,
    pub fpa: FpaConfig<T>,
    pub tolerance: Option<T>,
    pub execution: Execution,
}

impl<T: Scalar> Default for Table1Study<T> {
    fn default() -> Self {
        Self {
            runs: 20,
            master_seed: 0,
            ga: GaConfig::default(),
            pso: PsoConfig::default(),
            fpa: FpaConfig::default(),
            tolerance: None,
            execution: Execution::Parallel,
        }
    }
}

impl<T: Scalar> Table1Study<T> {
    pub fn plan(&self, benchmark: Benchmark) -> ExperimentPlan<T> {
        ExperimentPlan {
            problem: ProblemId::benchmark(benchmark),
            algorithms: vec![AlgorithmConfig::Ga(self.ga), AlgorithmConfig::Pso(self.pso), AlgorithmConfig::Fpa(self.fpa)],
            runs: self.runs,
            master_seed: self.master_seed,
            trace_stride: usize::MAX,
            tolerance: self.tolerance,
        }
    }

    /// Thirty summary rows in table order.
    pub fn run(&self) -> Result<Vec<SummaryRow>> {
        self.run_benchmarks(&Benchmark::ALL)
    }

    pub fn run_benchmarks(&self, benchmarks: &[Benchmark]) -> Result<Vec<SummaryRow>> {
        let mut rows = Vec::with_capacity(benchmarks.len() * 3);
        for &b in benchmarks {
            let plan = self.plan(b);
            let records = run_experiment_with(&plan, self.execution)?;
            for alg in &plan.algorithms {
                rows.push(SummaryRow {
                    benchmark: b.name().to_string(),
                    dim: plan.problem.dim(),
                    summary: summarize(&records, alg.id())?,
                });
            }
        }
        Ok(rows)
    }
}

/// `mean ± std (rate%)` table with one row per benchmark and one column per algorithm.
pub fn render_table(rows: &[SummaryRow]) -> String {
    let mut algorithms: Vec<&str> = Vec::new();
    let mut benches: Vec<(&str, usize)> = Vec::new();
    for r in rows {
        if !algorithms.contains(&r.summary.algorithm.as_str()) {
            algorithms.push(&r.summary.algorithm);
        }
        if !benches.contains(&(r.benchmark.as_str(), r.dim)) {
            benches.push((&r.benchmark, r.dim));
        }
    }
    let cell = |s: &Summary| {
        let pct = (s.success_rate * 100.0).round();
        match (s.mean_iterations, s.std_iterations) {
            (Some(m), Some(sd)) => format!("{m:.0} ± {sd:.0} ({pct}%)"),
            (Some(m), None) => format!("{m:.0} ({pct}%)"),
            _ => format!("- ({pct}%)"),
        }
    };
    let mut table: Vec<Vec<String>> = vec![std::iter::once("Function".to_string())
        .chain(algorithms.iter().map(|a| a.to_uppercase()))
        .collect()];
    for &(b, d) in &benches {
        let label = b.parse::<Benchmark>().map_or_else(|_| b.to_string(), |bm| bm.display_name().to_string());
        let mut line = vec![format!("{label} (d={d})")];
        for a in &algorithms {
            let found = rows.iter().find(|r| r.benchmark == b && r.dim == d && r.summary.algorithm == *a);
            line.push(found.map_or_else(String::new, |r| cell(&r.summary)));
        }
        table.push(line);
    }
    let widths: Vec<usize> =
        (0..table[0].len()).map(|c| table.iter().map(|l| l[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for (i, line) in table.iter().enumerate() {
        let cols: Vec<String> = line
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (v, w))| {
                let pad = w - v.chars().count();
                if c == 0 {
                    format!("{v}{}", " ".repeat(pad))
                } else {
                    format!("{}{v}", " ".repeat(pad))
                }
            })
            .collect();
        out.push_str(cols.join("  ").trim_end());
        out.push('\n');
        if i == 0 {
            out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::TracePoint;

    fn record(alg: &str, iterations: usize, success: bool) -> RunRecord<f64> {
        RunRecord {
            algorithm: alg.to_string(),
            run_index: 0,
            population: 25,
            iterations,
            evaluations: 25 * (iterations as u64 + 1),
            success,
            best_value: 0.0,
            best_violation: 0.0,
            best_position: vec![0.0],
            trace_stride: 1,
            trace: vec![TracePoint { iteration: 0, best_value: 0.0 }],
        }
    }

    fn traced(values: &[(usize, f64)]) -> RunRecord<f64> {
        RunRecord {
            trace: values.iter().map(|&(iteration, best_value)| TracePoint { iteration, best_value }).collect(),
            ..record("fpa", values.last().unwrap().0, true)
        }
    }

    #[test]
    fn summarize_examples() {
        let s = summarize(&[record("fpa", 10, true), record("fpa", 10, true), record("fpa", 10, true)], "fpa").unwrap();
        assert_eq!((s.mean_iterations, s.std_iterations, s.success_rate), (Some(10.0), Some(0.0), 1.0));

        let s = summarize(&[record("fpa", 8, true), record("fpa", 12, true), record("fpa", 500, false)], "fpa").unwrap();
        assert_eq!(s.mean_iterations, Some(10.0));
        assert!((s.std_iterations.unwrap() - 8f64.sqrt()).abs() < 1e-12);
        assert!((s.success_rate - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.mean_evaluations, Some(25.0 * 11.0));

        let s = summarize(&[record("ga", 100, false)], "ga").unwrap();
        assert_eq!(s.success_rate, 0.0);
        assert_eq!((s.mean_iterations, s.std_iterations, s.mean_evaluations), (None, None, None));

        assert!(summarize(&[record("ga", 1, true)], "pso").is_err());
    }

    #[test]
    fn error_curve_examples() {
        let curve = error_curve(&[traced(&[(0, 5.0), (1, 3.0)])], Some(1.0)).unwrap();
        assert_eq!(
            curve,
            vec![CurvePoint { iteration: 0, mean_abs_error: 4.0 }, CurvePoint { iteration: 1, mean_abs_error: 2.0 }]
        );
        assert!(error_curve(&[traced(&[(0, 5.0)])], None).is_err());
    }

    #[test]
    fn error_curve_forward_fills() {
        let a = traced(&[(0, 4.0), (1, 2.0), (2, 1.0), (3, 0.0)]);
        let b = traced(&[(0, 2.0), (1, 0.0)]);
        let curve = error_curve(&[a, b], Some(0.0)).unwrap();
        let d: Vec<f64> = curve.iter().map(|p| p.mean_abs_error).collect();
        assert_eq!(d, vec![3.0, 1.0, 0.5, 0.0]);
    }

    #[test]
    fn log_fit_recovers_rate() {
        let curve: Vec<CurvePoint<f64>> =
            (0..=100).map(|t| CurvePoint { iteration: t, mean_abs_error: 5.0 * (-0.03 * t as f64).exp() }).collect();
        let fit = fit_log_error(&curve).unwrap();
        assert!((fit.slope + 0.03).abs() < 1e-12);
        assert!((fit.intercept - 5f64.ln()).abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.points, 91);
    }

    #[test]
    fn log_fit_skips_burn_in_and_zeros() {
        let mut curve: Vec<CurvePoint<f64>> =
            (0..=10).map(|t| CurvePoint { iteration: t * 10, mean_abs_error: 2f64.powi(-(t as i32)) }).collect();
        curve[0].mean_abs_error = 1e9;
        curve[10].mean_abs_error = 0.0;
        let fit = fit_log_error(&curve).unwrap();
        assert_eq!(fit.points, 9);
        assert!((fit.slope + 2f64.ln() / 10.0).abs() < 1e-12);
        assert!(fit_log_error::<f64>(&[]).is_none());
        let flat = vec![CurvePoint { iteration: 0, mean_abs_error: 1.0 }; 1];
        assert!(fit_log_error(&flat).is_none());
    }

    #[test]
    fn error_curve_rejects_mixed_strides() {
        let a = traced(&[(0, 4.0)]);
        let b = RunRecord { trace_stride: 5, ..traced(&[(0, 1.0)]) };
        assert!(error_curve(&[a, b], Some(0.0)).is_err());
    }

    #[test]
    fn table_rendering() {
        let rows = vec![
            SummaryRow {
                benchmark: "michalewicz".into(),
                dim: 16,
                summary: Summary {
                    algorithm: "fpa".into(),
                    runs: 100,
                    successes: 100,
                    success_rate: 1.0,
                    mean_iterations: Some(3341.0),
                    std_iterations: Some(649.0),
                    mean_evaluations: Some(83525.0),
                },
            },
            SummaryRow {
                benchmark: "michalewicz".into(),
                dim: 16,
                summary: Summary {
                    algorithm: "ga".into(),
                    runs: 100,
                    successes: 0,
                    success_rate: 0.0,
                    mean_iterations: None,
                    std_iterations: None,
                    mean_evaluations: None,
                },
            },
        ];
        let text = render_table(&rows);
        assert!(text.contains("Michalewicz (d=16)"));
        assert!(text.contains("3341 ± 649 (100%)"));
        assert!(text.contains("- (0%)"));
    }

    #[test]
    fn plan_validation() {
        let plan = ExperimentPlan::<f64> {
            problem: ProblemId::benchmark(Benchmark::Sphere),
            algorithms: vec![],
            runs: 1,
            master_seed: 0,
            trace_stride: 1,
            tolerance: None,
        };
        assert!(plan.validate().is_err());
        let plan = ExperimentPlan { algorithms: vec![AlgorithmConfig::by_id("fpa").unwrap()], runs: 0, ..plan };
        assert!(plan.validate().is_err());
        assert!(AlgorithmConfig::<f64>::by_id("sa").is_err());
    }
}

/// Repeated fixed-horizon runs on the pressure vessel for the convergence curve.
#[derive(Clone, Debug, PartialEq)]
pub struct VesselStudy<T> {
    pub model: ThicknessModel,
    pub runs: usize,
    pub iterations: usize,
    pub master_seed: u64,
    pub algorithms: Vec<AlgorithmConfig<T>>,
    pub tolerance: Option<T>,
    pub execution: Execution,
}

impl<T: Scalar> Default for VesselStudy<T> {
    fn default() -> Self {
        Self {
            model: ThicknessModel::Discrete,
            runs: 40,
            iterations: 2000,
            master_seed: 0,
            algorithms: vec![AlgorithmConfig::Fpa(FpaConfig::default())],
            tolerance: None,
            execution: Execution::Parallel,
        }
    }
}

/// Records and per-algorithm error curves of a [`VesselStudy`].
#[derive(Clone, Debug, PartialEq)]
pub struct VesselOutcome<T> {
    pub records: Vec<RunRecord<T>>,
    pub curves: Vec<NamedCurve<T>>,
}

impl<T: Scalar> VesselOutcome<T> {
    /// Best run of `algorithm` under the feasibility rules.
    pub fn best(&self, algorithm: &str) -> Option<&RunRecord<T>> {
        self.records.iter().filter(|r| r.algorithm == algorithm).reduce(|a, b| {
            let score = |r: &RunRecord<T>| Score { value: r.best_value, violation: r.best_violation };
            match feasibility_better(score(a), score(b)) {
                Choice::First => a,
                Choice::Second => b,
            }
        })
    }
}

impl<T: Scalar> VesselStudy<T> {
    /// Every run goes the full horizon and is traced at every iteration.
    pub fn plan(&self) -> ExperimentPlan<T> {
        let algorithms = self
            .algorithms
            .iter()
            .map(|a| {
                let mut a = *a;
                a.set_max_iterations(self.iterations);
                a.set_stop_on_target(false);
                a
            })
            .collect();
        ExperimentPlan {
            problem: ProblemId::PressureVessel(self.model),
            algorithms,
            runs: self.runs,
            master_seed: self.master_seed,
            trace_stride: 1,
            tolerance: self.tolerance,
        }
    }

    pub fn run(&self) -> Result<VesselOutcome<T>> {
        let plan = self.plan();
        let records = run_experiment_with(&plan, self.execution)?;
        let f_star = T::lit(self.model.best_cost());
        let curves = plan
            .algorithms
            .iter()
            .map(|a| {
                let mine: Vec<RunRecord<T>> = records.iter().filter(|r| r.algorithm == a.id()).cloned().collect();
                Ok((a.id().to_string(), error_curve(&mine, Some(f_star))?))
            })
            .collect::<Result<_>>()?;
        Ok(VesselOutcome { records, curves })
    }
}
