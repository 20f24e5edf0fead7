//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use cutplan::rational::{int, ratio, to_fraction_string};
use cutplan::{
    brute_force_plan, confidence_bound, default_strategies, enumerate_lp_vertices, find_n_zero,
    integer_plan, optimize_fractions, shortest_path_check, solve_lp, CutsetMatrix, LpProblem,
    LpSolution, LpSolver, LpStatus, Named, Rational, Registry, RemainderPolicy, SimplexSolver,
};
use cutplan_cli::{CacheStatus, FractionCache, Options, Pipeline, StructureDocument};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

/// ln(20) / 8000 to 40 significant digits, from an independent
/// arbitrary-precision evaluation.
const GOLDEN_Q_UPPER: f64 = 3.744_665_341_942_488_741_794_029_470_178e-4;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn five_component_doc() -> StructureDocument {
    let names = ["C1", "C2", "C3", "C4", "C5"].map(String::from).to_vec();
    let sets = [vec!["C1", "C2"], vec!["C2", "C3"], vec!["C1", "C3", "C4"], vec!["C5"]]
        .iter()
        .map(|s| s.iter().map(|c| c.to_string()).collect())
        .collect();
    StructureDocument::from_cutsets(names, sets)
}

fn five_component() -> CutsetMatrix {
    CutsetMatrix::from_sets(5, vec![vec![0, 1], vec![1, 2], vec![0, 2, 3], vec![4]]).unwrap()
}

fn random_structure(rng: &mut ChaCha8Rng, max_m: usize, max_sets: usize) -> CutsetMatrix {
    let m = rng.gen_range(1..=max_m);
    let count = rng.gen_range(1..=max_sets);
    let sets = (0..count)
        .map(|_| {
            let mask = rng.gen_range(1u32..(1 << m));
            (0..m).filter(|&j| mask >> j & 1 == 1).collect()
        })
        .collect();
    CutsetMatrix::from_sets(m, sets).unwrap()
}

fn criterion_1_golden() -> Check {
    let start = Instant::now();
    let opts = Options {
        tests: Some(20003),
        alpha: 0.05,
        ..Options::default()
    };
    let outcome = Pipeline::default().run(&five_component_doc(), &opts).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let r = &outcome.report;

    let f: Vec<&str> = r.fractions.components.iter().map(|c| c.fraction.exact.as_str()).collect();
    ensure(f == ["1/5", "1/5", "1/5", "0", "2/5"], || format!("f = {f:?}"))?;
    ensure(r.fractions.cutset_fraction.exact == "2/5", || {
        format!("g = {}", r.fractions.cutset_fraction.exact)
    })?;
    ensure(r.fractions.n_zero == 5, || format!("N0 = {}", r.fractions.n_zero))?;
    let plan = r.plan.as_ref().ok_or("no plan")?;
    ensure(plan.n_minus == 20000, || format!("N- = {}", plan.n_minus))?;
    ensure(plan.tests == [4000, 4000, 4000, 0, 8000], || format!("plan = {:?}", plan.tests))?;
    ensure(plan.n_min == 8000, || format!("N_min = {}", plan.n_min))?;
    let q = r.bound.as_ref().ok_or("no bound")?.q_upper;
    let rel = ((q - GOLDEN_Q_UPPER) / GOLDEN_Q_UPPER).abs();
    ensure(rel <= 1e-12, || format!("q_upper = {q:e}, relative error {rel:e}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;

    // the same numbers straight from the library, as exact rationals
    let fp = optimize_fractions(&five_component()).map_err(|e| e.to_string())?;
    ensure(
        fp.fractions == [ratio(1, 5), ratio(1, 5), ratio(1, 5), int(0), ratio(2, 5)]
            && fp.cutset_fraction == ratio(2, 5),
        || "library fractions differ".into(),
    )?;
    Ok(format!("q_upper = {q:.12e} (rel err {rel:.1e}), {elapsed:?}"))
}

fn criterion_2_symmetric() -> Check {
    let y = CutsetMatrix::k_good_of_n(2, 3).unwrap();
    let fp = optimize_fractions(&y).map_err(|e| e.to_string())?;
    ensure(fp.fractions == vec![ratio(1, 3); 3] && fp.cutset_fraction == ratio(2, 3), || {
        format!("2oo3 gave f = {:?}, g = {}", fp.fractions, fp.cutset_fraction)
    })?;

    let mut checked = 0;
    for n in 1..=5usize {
        for k in 1..=n {
            let y = CutsetMatrix::k_good_of_n(k, n).unwrap();
            let fp = optimize_fractions(&y).map_err(|e| e.to_string())?;
            let uniform = ratio(1, n as i64);
            let g = ratio((n - k + 1) as i64, n as i64);
            ensure(fp.fractions.iter().all(|f| *f == uniform), || {
                format!("{k}-of-{n}: f = {:?}", fp.fractions)
            })?;
            ensure(fp.cutset_fraction == g, || format!("{k}-of-{n}: g = {}", fp.cutset_fraction))?;
            for budget in [fp.n_zero, 2 * fp.n_zero, 4 * fp.n_zero] {
                let oracle = brute_force_plan(&y, budget).map_err(|e| e.to_string())?;
                let expected = &g * int(budget as i64);
                ensure(int(oracle.best_n_min as i64) == expected, || {
                    format!("{k}-of-{n}, N = {budget}: oracle {} vs g·N {expected}", oracle.best_n_min)
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("2oo3 exact; {checked} k-of-n structures cross-checked"))
}

fn criterion_3_oracle_optimality() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut structures = 0;
    let mut budgets = 0;
    while structures < 60 {
        let y = random_structure(&mut rng, 5, 6);
        if y.num_cutsets() > 6 {
            continue;
        }
        let fp = optimize_fractions(&y).map_err(|e| e.to_string())?;
        if fp.n_zero > 40 {
            continue;
        }
        for n_minus in (1..=40 / fp.n_zero).map(|k| k * fp.n_zero) {
            let plan = integer_plan(&y, &fp, n_minus, RemainderPolicy::Unallocated)
                .map_err(|e| e.to_string())?;
            let oracle = brute_force_plan(&y, n_minus).map_err(|e| e.to_string())?;
            let g_n = &fp.cutset_fraction * int(n_minus as i64);
            ensure(
                int(oracle.best_n_min as i64) == g_n && plan.n_min == oracle.best_n_min,
                || {
                    format!(
                        "{:?} at N- = {n_minus}: oracle {}, g·N- = {g_n}, plan {}",
                        y.rows(),
                        oracle.best_n_min,
                        plan.n_min
                    )
                },
            )?;
            budgets += 1;
        }
        structures += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{structures} structures, {budgets} budgets, {elapsed:?}"))
}

fn criterion_4_simplex() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut optimal = 0;
    let mut infeasible = 0;
    for _ in 0..200 {
        let s = rng.gen_range(1..=5);
        let m = rng.gen_range(1..=5);
        let matrix: Vec<Vec<Rational>> = (0..s)
            .map(|_| (0..m).map(|_| int(rng.gen_range(0..=1))).collect())
            .collect();
        let lp = LpProblem::new(vec![int(1); m], matrix, vec![int(1); s]).unwrap();
        let sol = solve_lp(&lp);
        let reference = enumerate_lp_vertices(&lp).map_err(|e| e.to_string())?;
        ensure(sol.status == reference.status, || {
            format!("status {:?} vs {:?} on {:?}", sol.status, reference.status, lp)
        })?;
        match sol.status {
            LpStatus::Optimal => {
                ensure(sol.objective == reference.objective, || {
                    format!("objective {} vs {}", sol.objective, reference.objective)
                })?;
                sol.verify_certificate(&lp)?;
                optimal += 1;
            }
            _ => infeasible += 1,
        }
    }
    Ok(format!("{optimal} optimal with certificates, {infeasible} infeasible, all agree"))
}

fn corpus() -> Vec<(String, CutsetMatrix)> {
    let mut out = vec![("five-component".to_string(), five_component())];
    for n in 1..=5 {
        for k in 1..=n {
            out.push((format!("{k}-of-{n}"), CutsetMatrix::k_good_of_n(k, n).unwrap()));
        }
        out.push((format!("series-{n}"), CutsetMatrix::series(n).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for i in 0..40 {
        out.push((format!("random-{i}"), random_structure(&mut rng, 7, 8)));
    }
    out
}

fn criterion_5_path_bound() -> Check {
    let corpus = corpus();
    for (name, y) in &corpus {
        let fp = optimize_fractions(y).map_err(|e| e.to_string())?;
        let cmp = shortest_path_check(&fp, y).map_err(|e| format!("{name}: {e}"))?;
        let inv_p = Rational::new(1.into(), (cmp.path_length as i64).into());
        ensure(fp.cutset_fraction >= inv_p, || format!("{name}: g < 1/P"))?;
    }
    let opts = Options {
        tests: Some(20003),
        ..Options::default()
    };
    let report = Pipeline::default()
        .run(&five_component_doc(), &opts)
        .map_err(|e| e.to_string())?
        .report;
    let path = &report.path_comparison;
    ensure(path.path_length == 3 && path.path_n_min == Some(6667), || {
        format!("P = {}, floor(N/P) = {:?}", path.path_length, path.path_n_min)
    })?;
    let row = report.strategies.iter().find(|s| s.strategy == "shortest-path").ok_or("no row")?;
    ensure(row.n_min == 6667, || format!("path strategy N_min = {}", row.n_min))?;
    Ok(format!("{} structures satisfy g >= 1/P; floor(20003/3) = 6667 reported", corpus.len()))
}

fn criterion_6_n_zero() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=4);
        let fractions: Vec<Rational> = (0..len)
            .map(|_| {
                let d = rng.gen_range(1..=50i64);
                ratio(rng.gen_range(0..=d), d)
            })
            .collect();
        // count k upwards until every k * f_j is integral
        let mut k = 1i64;
        while !fractions.iter().all(|f| (f * int(k)).is_integer()) {
            k += 1;
        }
        let lcm = find_n_zero(&fractions);
        ensure(lcm == BigUint::from(k as u64), || {
            format!("{:?}: lcm {lcm} vs search {k}", fractions.iter().map(to_fraction_string).collect::<Vec<_>>())
        })?;
    }
    Ok("1000 vectors agree".into())
}

struct CountingSolver {
    inner: SimplexSolver,
    calls: Arc<AtomicUsize>,
}

impl Named for CountingSolver {
    fn name(&self) -> &'static str {
        "simplex"
    }

    fn description(&self) -> &'static str {
        "simplex with a call counter"
    }
}

impl LpSolver for CountingSolver {
    fn solve(&self, problem: &LpProblem) -> cutplan::Result<LpSolution> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.inner.solve(problem)
    }
}

fn criterion_7_cache() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let calls = Arc::new(AtomicUsize::new(0));
    let mut solvers = Registry::new("solver");
    solvers.register(Box::new(CountingSolver {
        inner: SimplexSolver,
        calls: calls.clone(),
    }) as Box<dyn LpSolver>);
    let cached = Pipeline::new(solvers, default_strategies());
    let fresh = Pipeline::default();
    let doc = five_component_doc();

    let first = Options {
        tests: Some(5),
        cache: Some(FractionCache::new(dir.path())),
        ..Options::default()
    };
    let outcome = cached.run(&doc, &first).map_err(|e| e.to_string())?;
    ensure(outcome.cache_status == CacheStatus::Miss, || "first run was not a miss".into())?;
    let after_first = calls.load(Ordering::SeqCst);
    ensure(after_first > 0, || "first run did not call the solver".into())?;

    let budgets: Vec<u64> = (0..20).map(|i| 5 + i * 997).collect();
    for &n in &budgets {
        let opts = Options {
            tests: Some(n),
            cache: Some(FractionCache::new(dir.path())),
            ..Options::default()
        };
        let outcome = cached.run(&doc, &opts).map_err(|e| e.to_string())?;
        ensure(outcome.cache_status == CacheStatus::Hit, || format!("N = {n}: not a hit"))?;
        let reference = fresh
            .run(&doc, &Options { tests: Some(n), ..Options::default() })
            .map_err(|e| e.to_string())?;
        ensure(outcome.report.to_json() == reference.report.to_json(), || {
            format!("N = {n}: cached report differs from fresh solve")
        })?;
    }
    let total = calls.load(Ordering::SeqCst);
    ensure(total == after_first, || {
        format!("{} extra LP solves after the first run", total - after_first)
    })?;
    Ok(format!("{} budgets served from one LP solve, reports byte-identical", budgets.len()))
}

fn criterion_8_clamp() -> Check {
    for n_min in [0, 1] {
        let q = confidence_bound(n_min, 0.05).map_err(|e| e.to_string())?.q_upper;
        ensure(q == 1.0, || format!("n_min = {n_min}: q = {q}"))?;
    }
    let mut last = 1.0;
    for n_min in 1..=10_000 {
        let q = confidence_bound(n_min, 0.05).map_err(|e| e.to_string())?.q_upper;
        ensure(q <= last, || format!("q increased at n_min = {n_min}"))?;
        last = q;
    }
    Ok("clamped at n_min <= 1, nonincreasing up to 10^4".into())
}

#[test]
fn acceptance_suite() {
    let criteria: [Criterion; 8] = [
        ("1 golden five-component reproduction", criterion_1_golden),
        ("2 symmetric structures", criterion_2_symmetric),
        ("3 oracle optimality at N-", criterion_3_oracle_optimality),
        ("4 simplex vs vertex enumeration", criterion_4_simplex),
        ("5 shortest-path bound", criterion_5_path_bound),
        ("6 N0 lcm vs increment search", criterion_6_n_zero),
        ("7 cache reuse", criterion_7_cache),
        ("8 bound clamp and monotonicity", criterion_8_clamp),
    ];
    let mut failures = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{elapsed:.2?}]"),
            Err(reason) => {
                println!("FAIL  criterion {name}: {reason}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
