use std::path::{Path, PathBuf};

use fpa::benchmarks::{self, Benchmark};
use fpa::constrained::{pv_constraints, PressureVesselSolution, ThicknessModel};
use fpa::harness::{
    error_curve, fit_log_error, render_table, run_experiment, summarize, write_curve_csv, write_metadata,
    write_summary_csv, AlgorithmConfig, ExperimentPlan, NamedCurve, ProblemId, SummaryRow, Table1Study, VesselStudy,
};
use fpa::{Error, Result};

use crate::settings::Flags;

/// Iteration cap used when `--max-iters` is not given.
pub const DEFAULT_MAX_ITERS: usize = 50_000;
pub const DEFAULT_VESSEL_ITERS: usize = 2000;

/// Configured algorithms named by `--algorithm` (default `default`).
fn algorithms(flags: &Flags, default: &str, max_iters: usize) -> Result<Vec<AlgorithmConfig<f64>>> {
    let name = flags.algorithm.as_deref().unwrap_or(default);
    let ids: Vec<&str> = if name == "all" { vec!["ga", "pso", "fpa"] } else { vec![name] };
    ids.into_iter()
        .map(|id| {
            let mut a = AlgorithmConfig::by_id(id)?;
            configure(&mut a, flags, max_iters);
            a.validate()?;
            Ok(a)
        })
        .collect()
}

fn configure(a: &mut AlgorithmConfig<f64>, flags: &Flags, max_iters: usize) {
    a.set_max_iterations(max_iters);
    match a {
        AlgorithmConfig::Fpa(c) => {
            c.n = flags.n.unwrap_or(c.n);
            c.p = flags.p.unwrap_or(c.p);
            c.levy.lambda = flags.lambda.unwrap_or(c.levy.lambda);
            c.levy.scale = flags.scale.unwrap_or(c.levy.scale);
        }
        AlgorithmConfig::Ga(c) => c.n = flags.n.unwrap_or(c.n),
        AlgorithmConfig::Pso(c) => c.n = flags.n.unwrap_or(c.n),
    }
}

fn problem_id(flags: &Flags) -> Result<ProblemId> {
    let name = flags.benchmark.as_deref().ok_or_else(|| Error::config("--benchmark is required"))?;
    let benchmark: Benchmark = name.parse()?;
    let dim = flags.dim.unwrap_or(benchmark.table_dim());
    benchmark.spec_with_dim::<f64>(dim)?;
    Ok(ProblemId::Benchmark { benchmark, dim })
}

fn check_tol(flags: &Flags) -> Result<Option<f64>> {
    match flags.tol {
        Some(t) if !(t > 0.0) => Err(Error::config(format!("--tol must be positive, got {t}"))),
        t => Ok(t),
    }
}

fn check_runs(runs: usize) -> Result<usize> {
    if runs == 0 {
        return Err(Error::config("--runs must be at least 1"));
    }
    Ok(runs)
}

/// `t1.csv` gets `t1.meta` next to it.
fn metadata_path(out: &Path) -> PathBuf {
    out.with_extension("meta")
}

fn write_outputs(out: Option<&Path>, plan: &ExperimentPlan<f64>, rows: &[SummaryRow]) -> Result<()> {
    if let Some(out) = out {
        write_summary_csv(out, rows)?;
        write_metadata(metadata_path(out), plan)?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

pub fn run(flags: &Flags) -> Result<()> {
    let plan = ExperimentPlan {
        problem: problem_id(flags)?,
        algorithms: algorithms(flags, "fpa", flags.max_iters.unwrap_or(DEFAULT_MAX_ITERS))?,
        runs: check_runs(flags.runs.unwrap_or(20))?,
        master_seed: flags.seed.unwrap_or(0),
        trace_stride: usize::MAX,
        tolerance: check_tol(flags)?,
    };
    let records = run_experiment(&plan)?;
    let rows = plan
        .algorithms
        .iter()
        .map(|a| {
            Ok(SummaryRow {
                benchmark: plan.problem.name().to_string(),
                dim: plan.problem.dim(),
                summary: summarize(&records, a.id())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    print!("{}", render_table(&rows));
    write_outputs(flags.out.as_deref(), &plan, &rows)
}

pub fn table1(flags: &Flags) -> Result<()> {
    let max_iters = flags.max_iters.unwrap_or(DEFAULT_MAX_ITERS);
    let mut study = Table1Study::<f64> {
        runs: check_runs(flags.runs.unwrap_or(20))?,
        master_seed: flags.seed.unwrap_or(0),
        tolerance: check_tol(flags)?,
        ..Table1Study::default()
    };
    for a in algorithms(flags, "all", max_iters)? {
        match a {
            AlgorithmConfig::Fpa(c) => study.fpa = c,
            AlgorithmConfig::Ga(c) => study.ga = c,
            AlgorithmConfig::Pso(c) => study.pso = c,
        }
    }
    let benches: Vec<Benchmark> = match &flags.benchmark {
        Some(name) => vec![name.parse()?],
        None => Benchmark::ALL.to_vec(),
    };
    let rows = study.run_benchmarks(&benches)?;
    print!("{}", render_table(&rows));
    write_outputs(flags.out.as_deref(), &study.plan(benches[0]), &rows)
}

pub fn vessel(flags: &Flags) -> Result<()> {
    let study = VesselStudy::<f64> {
        model: ThicknessModel::Discrete,
        runs: check_runs(flags.runs.unwrap_or(40))?,
        iterations: flags.max_iters.unwrap_or(DEFAULT_VESSEL_ITERS),
        master_seed: flags.seed.unwrap_or(0),
        algorithms: algorithms(flags, "fpa", 1)?,
        tolerance: check_tol(flags)?,
        ..VesselStudy::default()
    };
    let outcome = study.run()?;
    for (alg, curve) in &outcome.curves {
        let best = outcome.best(alg).ok_or_else(|| Error::config(format!("no runs for {alg}")))?;
        let s = PressureVesselSolution::from_slice(&best.best_position)?;
        println!("{alg}: best f = {:.6}", best.best_value);
        println!("  d1 = {:.6}  d2 = {:.6}  r = {:.6}  length = {:.6}", s.d1, s.d2, s.r, s.length);
        println!("  g = {:.6?}  feasible = {}", pv_constraints(&s), best.best_violation == 0.0);
        if let Some(fit) = fit_log_error(curve) {
            println!("  ln D slope = {:.4e}  r2 = {:.3}", fit.slope, fit.r_squared);
        }
    }
    if let Some(out) = &flags.out {
        write_curve_csv(out, &outcome.curves)?;
        write_metadata(metadata_path(out), &study.plan())?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

pub fn curve(flags: &Flags) -> Result<()> {
    let problem = problem_id(flags)?;
    let plan = ExperimentPlan {
        problem,
        algorithms: algorithms(flags, "all", flags.max_iters.unwrap_or(DEFAULT_MAX_ITERS))?,
        runs: check_runs(flags.runs.unwrap_or(20))?,
        master_seed: flags.seed.unwrap_or(0),
        trace_stride: 1,
        tolerance: check_tol(flags)?,
    };
    let f_star = match problem {
        ProblemId::Benchmark { benchmark, dim } => benchmark.f_star(dim),
        ProblemId::PressureVessel(model) => Some(model.best_cost()),
    };
    let records = run_experiment(&plan)?;
    let curves = plan
        .algorithms
        .iter()
        .map(|a| {
            let mine: Vec<_> = records.iter().filter(|r| r.algorithm == a.id()).cloned().collect();
            Ok((a.id().to_string(), error_curve(&mine, f_star)?))
        })
        .collect::<Result<Vec<NamedCurve<f64>>>>()?;
    for (alg, pts) in &curves {
        if let Some(last) = pts.last() {
            println!("{alg}: final mean error {:e} at iteration {}", last.mean_abs_error, last.iteration);
        }
    }
    let out = flags.out.as_deref().ok_or_else(|| Error::config("--out is required for curve"))?;
    write_curve_csv(out, &curves)?;
    write_metadata(metadata_path(out), &plan)?;
    println!("wrote {}", out.display());
    Ok(())
}

pub fn list_benchmarks() {
    print!("{}", benchmarks::registry_text());
}
