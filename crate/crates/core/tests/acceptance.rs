//! Acceptance criteria, run sequentially so timings do not interfere.
//!
//! Prints one `PASS`/`FAIL` line per criterion and exits nonzero if any fail.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use majpop::cli::random_instance;
use majpop::completion::feasible_min_remaining;
use majpop::instance::Instance;
use majpop::lattice::{covers, join, join_recursive, meet, LatticePair};
use majpop::majcore::{conjugate, equivalent, majorized, sort_desc, sort_desc_signed, Partition};
use majpop::oracle::{certify, enumerate_attainable, partitions, Budget, CheckStatus};
use majpop::solvers::{enumerate_optima, ominus, oplus, peak_shave, valley_fill, TiePolicy};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

/// All partitions of one size, with their prefix sums.
type Universe = (Vec<Partition>, Vec<Vec<u128>>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, format!("took {elapsed:?}, limit {limit:?}"))
}

fn p(v: &[u64]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn policies() -> Vec<TiePolicy> {
    TiePolicy::all_with_seeds(0..50)
}

fn golden_conjugate() -> Outcome {
    let start = Instant::now();
    let got = conjugate(&[5, 4, 2, 1], 7).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(got.parts() == [4, 3, 2, 2, 1, 0, 0], format!("got {got}"))?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("{got} in {elapsed:?}"))
}

fn peak_shaving_value() -> Outcome {
    let ps = policies();
    let start = Instant::now();
    for &pol in &ps {
        let res = peak_shave(&[7, 6, 5, 4, 4], &[4, 4, 3, 1, 1], pol).map_err(|e| e.to_string())?;
        ensure(
            res.canonical_objective == [3, 3, 3, 2, 2],
            format!("{pol}: {:?}", res.canonical_objective),
        )?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_millis(10))?;
    Ok(format!("{} policies agree on [3 3 3 2 2] in {elapsed:?}", ps.len()))
}

fn reversed_rows() -> Outcome {
    let c = [7, 6, 5, 4, 4];
    let r = [1, 1, 3, 4, 4];
    for pol in policies() {
        let res = peak_shave(&c, &r, pol).map_err(|e| e.to_string())?;
        ensure(
            equivalent(&res.objective, &[3, 3, 3, 2, 2]).unwrap(),
            format!("{pol}: {:?}", res.objective),
        )?;
    }
    let optima =
        enumerate_optima(&Instance::min_remaining(c.to_vec(), r.to_vec()), 1_000_000).map_err(|e| e.to_string())?;
    ensure(
        optima.iter().any(|o| o.objective == [2, 3, 2, 3, 3]),
        "[2 3 2 3 3] not reachable",
    )?;
    Ok(format!(
        "reversed rows stay equivalent; {} tie outcomes include [2 3 2 3 3]",
        optima.len()
    ))
}

fn valley_filling_value() -> Outcome {
    let b = [8, 6, 5, 2, 2];
    let r = [4, 3, 3, 2, 1];
    for pol in policies() {
        let res = valley_fill(&b, &r, pol).map_err(|e| e.to_string())?;
        ensure(
            res.canonical_objective == [8, 8, 7, 7, 6],
            format!("{pol}: {:?}", res.canonical_objective),
        )?;
    }
    let optima =
        enumerate_optima(&Instance::min_combined(b.to_vec(), r.to_vec()), 1_000_000).map_err(|e| e.to_string())?;
    for want in [[8, 7, 8, 6, 7], [8, 8, 7, 6, 7]] {
        ensure(
            optima.iter().any(|o| o.objective == want),
            format!("{want:?} not reachable"),
        )?;
    }
    Ok(format!("[8 8 7 7 6] for all policies; {} tie outcomes", optima.len()))
}

fn lattice_golden() -> Outcome {
    let pair = LatticePair::new(p(&[5, 2, 2, 2]), p(&[4, 3, 3, 1])).map_err(|e| e.to_string())?;
    let (a, b) = (join(&pair), join_recursive(&pair));
    ensure(a.parts() == [5, 3, 2, 1], format!("conjugate-dual join {a}"))?;
    ensure(b.parts() == [5, 3, 2, 1], format!("recursive join {b}"))?;
    Ok(format!("both methods give {a}"))
}

fn canonical_set(inst: &Instance) -> Result<Vec<Partition>, String> {
    let set = enumerate_attainable(inst, Budget::default()).map_err(|e| e.to_string())?;
    Ok(set
        .vectors
        .iter()
        .map(|v| Partition::new(sort_desc_signed(v).into_iter().map(|e| e as u64).collect()).unwrap())
        .collect())
}

fn non_lattice() -> Outcome {
    let start = Instant::now();
    let canon = canonical_set(&Instance::min_remaining(vec![8, 6, 6, 6, 4, 4, 4], vec![4, 2]))?;
    let common = p(&[6, 6, 6, 4, 4, 4, 2]);
    let u = p(&[7, 6, 5, 4, 4, 4, 2]);
    let v = p(&[6, 6, 6, 5, 4, 3, 2]);
    let w = p(&[6, 6, 6, 4, 4, 3, 3]);
    let z = p(&[6, 6, 5, 5, 4, 4, 2]);
    for (hi, lo) in [(&u, &common), (&v, &common), (&common, &w), (&common, &z)] {
        ensure(covers(hi, lo).unwrap(), format!("{hi} does not cover {lo}"))?;
    }
    for q in [&u, &v, &w, &z] {
        ensure(canon.contains(q), format!("{q} is not attainable"))?;
    }
    ensure(!canon.contains(&common), format!("{common} is attainable"))?;
    let first = start.elapsed();
    within(first, Duration::from_secs(5))?;

    let start = Instant::now();
    let canon = canonical_set(&Instance::min_combined(vec![4, 4, 4, 2, 2, 2, 0], vec![4, 2]))?;
    let common = p(&[6, 4, 4, 4, 2, 2, 2]);
    ensure(!canon.contains(&common), format!("{common} is attainable"))?;
    let second = start.elapsed();
    within(second, Duration::from_secs(5))?;
    Ok(format!("both common covers absent ({first:?}, {second:?})"))
}

fn oracle_sweep() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let budget = Budget {
        max_n: 5,
        max_total: 20,
    };
    let total = 300;
    let mut feasible = 0;
    let mut witnesses = 0;
    for k in 0..total {
        // Half the instances are wider so non-lattice structure can appear.
        let wide = k >= total / 2;
        let n = if wide {
            rng.random_range(6..=7usize)
        } else {
            rng.random_range(1..=5usize)
        };
        let m = if wide {
            rng.random_range(1..=3usize)
        } else {
            rng.random_range(1..=5usize)
        };
        let budget = if wide { Budget::default() } else { budget };
        let r: Vec<u64> = (0..m).map(|_| rng.random_range(0..=4u64.min(n as u64))).collect();
        let top = if wide { 8 } else { 4 };
        let v: Vec<u64> = (0..n).map(|_| rng.random_range(0..=top)).collect();
        let inst = if k % 2 == 0 {
            Instance::min_remaining(v, r)
        } else {
            Instance::min_combined(v, r)
        };
        let report = certify(&inst, budget).map_err(|e| format!("{inst:?}: {e}"))?;
        if let Some(bad) = report.checks.iter().find(|c| c.status == CheckStatus::Fail) {
            return Err(format!("{inst:?}: check {} failed: {}", bad.id, bad.witness));
        }
        feasible += report.feasible as usize;
        witnesses += (report.check("g").unwrap().status == CheckStatus::Pass) as usize;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "{total} instances ({feasible} feasible, {witnesses} with non-lattice witnesses), zero failures in {elapsed:?}"
    ))
}

fn vec_strategy(len: usize, max: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..=max, len)
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let cases = 1000;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))?;
    Ok(cases)
}

fn signed(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&e| e as i64).collect()
}

/// Random `x ≺ y` by Robin Hood transfers applied to `y`.
fn flatten(y: &[u64], moves: &[(usize, usize)]) -> Vec<u64> {
    let mut x = y.to_vec();
    let n = x.len();
    for &(a, b) in moves {
        let (a, b) = (a % n, b % n);
        if x[a] >= x[b] + 2 {
            x[a] -= 1;
            x[b] += 1;
        }
    }
    x
}

fn property_suites() -> Outcome {
    let mut counts = Vec::new();

    counts.push(run_property(
        "sorting preserves elementwise order",
        (1usize..8).prop_flat_map(|n| (vec_strategy(n, 20), vec_strategy(n, 20))),
        |(x, d)| {
            let y: Vec<u64> = x.iter().zip(&d).map(|(&a, &b)| a.saturating_sub(b)).collect();
            let (xs, ys) = (sort_desc(&x), sort_desc(&y));
            prop_assert!(ys.parts().iter().zip(xs.parts()).all(|(a, b)| a <= b));
            Ok(())
        },
    )?);

    counts.push(run_property(
        "sorted differences and opposite-order sums are flattest",
        (1usize..8).prop_flat_map(|n| (vec_strategy(n, 20), vec_strategy(n, 20))),
        |(x, y)| {
            let xd = signed(sort_desc(&x).parts());
            let yd = signed(sort_desc(&y).parts());
            let ya: Vec<i64> = yd.iter().rev().copied().collect();
            let yv = signed(&y);
            let diff = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<i64>>();
            let sum = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| p + q).collect::<Vec<i64>>();
            prop_assert!(majorized(&diff(&xd, &yd), &diff(&xd, &yv)).unwrap());
            prop_assert!(majorized(&sum(&xd, &ya), &sum(&xd, &yv)).unwrap());
            Ok(())
        },
    )?);

    counts.push(run_property(
        "moving units to later positions preserves majorization",
        (1usize..8).prop_flat_map(|n| {
            (
                vec_strategy(n, 12),
                prop::collection::vec((0usize..8, 0usize..8), 0..12),
                prop::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n),
                prop::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n),
                any::<bool>(),
            )
        }),
        |(y, moves, a, b, add)| {
            let k = a.len().min(b.len());
            let (a, b) = (&a[..k], &b[..k]);
            let lo: Vec<usize> = a.iter().zip(b).map(|(&s, &t)| s.min(t)).collect();
            let hi: Vec<usize> = a.iter().zip(b).map(|(&s, &t)| s.max(t)).collect();
            let x = flatten(&y, &moves);
            let mut xv = signed(sort_desc(&x).parts());
            let mut yv = signed(sort_desc(&y).parts());
            // Subtract at earlier positions of x than of y, or add at later ones.
            let (px, qy) = if add { (&hi, &lo) } else { (&lo, &hi) };
            let step = if add { 1 } else { -1 };
            for (&i, &j) in px.iter().zip(qy) {
                xv[i] += step;
                yv[j] += step;
            }
            prop_assert!(majorized(&xv, &yv).unwrap(), "x={:?} y={:?}", xv, yv);
            Ok(())
        },
    )?);

    counts.push(run_property(
        "canonical values compose across row blocks",
        (1usize..6).prop_flat_map(|n| {
            (
                vec_strategy(n, 8),
                prop::collection::vec(0..=n as u64, 0..5),
                prop::collection::vec(0..=n as u64, 0..5),
            )
        }),
        |(b, r, s)| {
            let rs: Vec<u64> = r.iter().chain(&s).copied().collect();
            let staged = oplus(oplus(&b, &r).unwrap().parts(), &s).unwrap();
            prop_assert_eq!(&staged, &oplus(&b, &rs).unwrap());
            let flipped = oplus(oplus(&b, &s).unwrap().parts(), &r).unwrap();
            prop_assert_eq!(&staged, &flipped);
            if feasible_min_remaining(&b, &rs) {
                let staged = ominus(ominus(&b, &r).unwrap().parts(), &s).unwrap();
                prop_assert_eq!(&staged, &ominus(&b, &rs).unwrap());
            }
            Ok(())
        },
    )?);

    Ok(format!("4 suites x {:?} cases, zero failures", counts))
}

fn mean_time(m: usize, n: usize, repeats: usize, rng: &mut ChaCha8Rng) -> f64 {
    // One untimed warm-up run per size.
    let (c, r) = random_instance(m, n, rng);
    std::hint::black_box(peak_shave(&c, &r, TiePolicy::LowestIndex).unwrap());
    let mut total = 0.0;
    for _ in 0..repeats {
        let (c, r) = random_instance(m, n, rng);
        let start = Instant::now();
        std::hint::black_box(peak_shave(&c, &r, TiePolicy::LowestIndex).unwrap());
        total += start.elapsed().as_secs_f64();
    }
    total / repeats as f64
}

fn scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sizes = [250, 500, 1000];
    let repeats = 15;
    let by_m: Vec<f64> = sizes.iter().map(|&m| mean_time(m, 1000, repeats, &mut rng)).collect();
    let by_n: Vec<f64> = sizes.iter().map(|&n| mean_time(1000, n, repeats, &mut rng)).collect();
    let ratios = |t: &[f64]| t.windows(2).map(|w| w[1] / w[0]).collect::<Vec<f64>>();
    let (rm, rn) = (ratios(&by_m), ratios(&by_n));
    let (c, r) = random_instance(2000, 2000, &mut rng);
    let start = Instant::now();
    peak_shave(&c, &r, TiePolicy::LowestIndex).unwrap();
    let big = start.elapsed();
    let summary = format!(
        "m-doubling ratios {:.2?}, n-doubling ratios {:.2?}, 2000x2000 in {big:?}",
        rm, rn
    );
    for q in rm.iter().chain(&rn) {
        ensure(
            (1.5..=2.8).contains(q),
            format!("ratio {q:.2} outside [1.5, 2.8]; {summary}"),
        )?;
    }
    within(big, Duration::from_secs(1))?;
    Ok(summary)
}

fn lattice_agreement() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0usize;
    for tau in 1..=10u64 {
        for len in 1..=tau as usize {
            let universe = partitions(tau, len);
            let keys: Vec<Vec<u128>> = universe.iter().map(|q| q.prefix_sums()).collect();
            for x in &universe {
                for y in &universe {
                    check_pair(x, y, &universe, &keys)?;
                    exhaustive += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut cache: HashMap<(u64, usize), Universe> = HashMap::new();
    for _ in 0..500 {
        let tau = rng.random_range(1..=30u64);
        let len = rng.random_range(1..=tau as usize);
        let (universe, keys) = cache.entry((tau, len)).or_insert_with(|| {
            let u = partitions(tau, len);
            let k = u.iter().map(|q| q.prefix_sums()).collect();
            (u, k)
        });
        let x = &universe[rng.random_range(0..universe.len())];
        let y = &universe[rng.random_range(0..universe.len())];
        check_pair(x, y, universe, keys)?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "{exhaustive} exhaustive pairs (tau <= 10) + 500 random pairs (tau <= 30) in {elapsed:?}"
    ))
}

/// Compares meet/join against the brute-force bounds over `universe`.
fn check_pair(x: &Partition, y: &Partition, universe: &[Partition], keys: &[Vec<u128>]) -> Result<(), String> {
    let pair = LatticePair::new(x.clone(), y.clone()).unwrap();
    let (lo, hi, rec) = (meet(&pair), join(&pair), join_recursive(&pair));
    ensure(hi == rec, format!("join {hi} != recursive {rec} for {x}, {y}"))?;
    let (px, py) = (x.prefix_sums(), y.prefix_sums());
    let le = |a: &[u128], b: &[u128]| a.iter().zip(b).all(|(s, t)| s <= t);
    let lower: Vec<usize> = (0..universe.len())
        .filter(|&k| le(&keys[k], &px) && le(&keys[k], &py))
        .collect();
    let upper: Vec<usize> = (0..universe.len())
        .filter(|&k| le(&px, &keys[k]) && le(&py, &keys[k]))
        .collect();
    let glb = lower.iter().find(|&&k| lower.iter().all(|&w| le(&keys[w], &keys[k])));
    let lub = upper.iter().find(|&&k| upper.iter().all(|&w| le(&keys[k], &keys[w])));
    ensure(
        glb.map(|&k| &universe[k]) == Some(&lo),
        format!("meet {lo} is not the glb of {x}, {y}"),
    )?;
    ensure(
        lub.map(|&k| &universe[k]) == Some(&hi),
        format!("join {hi} is not the lub of {x}, {y}"),
    )?;
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 golden conjugate", golden_conjugate),
        ("2 peak shaving canonical value, all policies", peak_shaving_value),
        ("3 reversed rows, equivalent value and traced outcome", reversed_rows),
        (
            "4 valley filling canonical value and tie outcomes",
            valley_filling_value,
        ),
        ("5 lattice join golden value", lattice_golden),
        ("6 non-attainable common covers", non_lattice),
        ("7 oracle certification sweep", oracle_sweep),
        ("8 property suites", property_suites),
        ("9 linear scaling", scaling),
        ("10 lattice method agreement", lattice_agreement),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
