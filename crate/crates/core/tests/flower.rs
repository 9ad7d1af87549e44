use fpa::benchmarks;
use fpa::flower::{Branch, Fpa};
use fpa::run::{drive_observed, RunOptions};
use fpa::{init_population, Evaluator, FpaConfig, Objective, Population, Problem, RngStream, SearchSpace};
use proptest::prelude::*;

fn rastrigin(dim: usize) -> Problem<f64> {
    benchmarks::lookup_with_dim("rastrigin", dim).unwrap().problem
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// With the global branch forced and one stream per flower, relabelling
    /// the flowers relabels the proposals.
    #[test]
    fn global_branch_is_permutation_equivariant(seed in any::<u64>(), perm in Just((0..10).collect::<Vec<usize>>()).prop_shuffle()) {
        let problem = rastrigin(3);
        let mut ev = Evaluator::new(&problem);
        let pop = init_population(&mut ev, 10, &mut RngStream::new(seed)).unwrap();
        let shuffled = Population::from_members(perm.iter().map(|&i| pop.members()[i].clone()).collect()).unwrap();
        let fpa = Fpa::new(FpaConfig { n: 10, p: 1.0, ..FpaConfig::default() }).unwrap();
        let stream = |i: usize| RngStream::derive(seed, 1, i as u64);
        for (k, &i) in perm.iter().enumerate() {
            let (a, ba) = fpa.pollinate(i, &pop, problem.space(), &mut stream(i));
            let (b, bb) = fpa.pollinate(k, &shuffled, problem.space(), &mut stream(i));
            prop_assert_eq!(ba, Branch::Global);
            prop_assert_eq!(bb, Branch::Global);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn runs_respect_invariants(seed in any::<u64>(), p in 0.0f64..=1.0, n in 2usize..12) {
        let problem = rastrigin(4);
        let cfg = FpaConfig { n, p, max_iterations: 60, ..FpaConfig::default() };
        let mut fpa = Fpa::new(cfg).unwrap();
        let mut last = f64::INFINITY;
        let mut ok = true;
        let rec = drive_observed(&mut fpa, &problem, &mut RngStream::new(seed), RunOptions::default(), |_, pop| {
            ok &= pop.best().value <= last;
            ok &= pop.members().iter().all(|m| problem.space().contains(&m.position));
            last = pop.best().value;
        }).unwrap();
        prop_assert!(ok);
        prop_assert_eq!(rec.evaluations, (n * (rec.iterations + 1)) as u64);
        prop_assert!(rec.trace.windows(2).all(|w| w[1].best_value <= w[0].best_value));
        prop_assert_eq!(rec.trace.len(), rec.iterations + 1);
    }
}

#[test]
fn single_iteration_with_unreachable_target() {
    let space = SearchSpace::cube(2, -1.0, 1.0).unwrap();
    let objective = Objective::new(|x: &[f64]| 1.0 + x[0] * x[0]).with_target(-5.0);
    let problem = Problem::new("offset", space, objective);
    let cfg = FpaConfig { max_iterations: 1, ..FpaConfig::default() };
    let rec = fpa::fpa_run(&problem, cfg, &mut RngStream::new(0)).unwrap();
    assert!(!rec.success);
    assert_eq!(rec.iterations, 1);
    assert_eq!(rec.evaluations, 50);
}

#[test]
fn replay_is_bitwise() {
    let problem = rastrigin(5);
    let cfg = FpaConfig { max_iterations: 200, ..FpaConfig::default() };
    let a = fpa::fpa_run(&problem, cfg, &mut RngStream::new(77)).unwrap();
    let b = fpa::fpa_run(&problem, cfg, &mut RngStream::new(77)).unwrap();
    assert_eq!(a.best_value.to_bits(), b.best_value.to_bits());
    assert_eq!(a.best_position, b.best_position);
    assert_eq!(a.trace, b.trace);
}
