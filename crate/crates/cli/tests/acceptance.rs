//! One line per acceptance criterion. Expected values come from small
//! closed-form oracles written out here, not from the library formulas.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use hilldraw::constructions::{
    blowup, perturb, perturb_config, recursive_construct, seed_four, BlowupPlan, ConstructionPlan,
    LevelParams, PlanNode, SeedArrangement, Side, Staircase,
};
use hilldraw::corpus::{constructions, random_assignment, random_configs};
use hilldraw::hill::{
    add_apex, build_dn, count_crossings, count_crossings_aggregated, delete_vertex, extend_full,
    extend_partial, hill_number, strength, verify, FormulaId,
};
use hilldraw::io::{parse_drawing, serialize_drawing};
use hilldraw::montecarlo::{
    k4_census, ratio_experiment, trial_rng, DistributionSpec, ExperimentConfig,
};
use hilldraw::{Tolerances, UnitVec3};

enum Verdict {
    Pass(String),
    Fail(String),
    Unverified(String),
}

type Check = Result<String, String>;
type Criterion = Box<dyn Fn() -> Verdict>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tol() -> Tolerances {
    Tolerances::default()
}

/// Hill number from the floor product.
fn hill(n: u64) -> u64 {
    (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4
}

/// Crossings of the doubled configuration, counted per pair of great
/// circles: half of C(k,2)(k-2)(k-3).
fn dn(k: u64) -> u64 {
    k * (k - 1) / 2 * (k - 2) * (k - 3) / 2
}

fn random_apex(rng: &mut rand_chacha::ChaCha8Rng) -> UnitVec3 {
    DistributionSpec::Uniform.sample(rng)
}

fn formula_table() -> Check {
    let expected = [0u64, 0, 1, 3, 9, 18, 36, 60, 100, 150, 225, 315];
    let start = Instant::now();
    let got: Vec<u64> = (3..=14).map(|n| hill_number(n).unwrap()).collect();
    let elapsed = start.elapsed();
    ensure(got == expected, || format!("table {got:?}"))?;
    for n in 3..=14u64 {
        let closed = if n % 2 == 0 {
            n * (n - 2) * (n - 2) * (n - 4) / 64
        } else {
            (n - 1) * (n - 1) * (n - 3) * (n - 3) / 64
        };
        ensure(closed == got[n as usize - 3] && hill(n) == closed, || {
            format!("n={n}")
        })?;
    }
    ensure(elapsed < Duration::from_millis(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("H(3..14) = {got:?} in {elapsed:?}"))
}

fn dn_counts() -> Check {
    let start = Instant::now();
    let mut rng = trial_rng(2, 0);
    let mut drawings = 0;
    for k in 3..=10u64 {
        for (i, c) in random_configs(k as usize, 100, 20, &tol())
            .unwrap()
            .iter()
            .enumerate()
        {
            let d = build_dn(c, &tol()).unwrap();
            let total = count_crossings(&d, &tol()).unwrap().total as u64;
            ensure(total == dn(k), || {
                format!("k={k} config {i}: {total} != {}", dn(k))
            })?;
            let asg = random_assignment(c, &mut rng, &tol());
            let full = extend_full(c, &asg, &tol()).unwrap();
            let report = count_crossings(&full, &tol()).unwrap();
            for (e, edge) in full
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.is_half_circle())
            {
                let hits = report
                    .pairs
                    .iter()
                    .filter(|&&(a, b)| {
                        (a == e && !full.edges()[b].is_half_circle())
                            || (b == e && !full.edges()[a].is_half_circle())
                    })
                    .count() as u64;
                let want = (k - 1) * (k - 2) / 2;
                ensure(hits == want, || {
                    format!(
                        "k={k} config {i}: half-circle {}-{} crosses {hits} arcs, want {want}",
                        edge.u, edge.v
                    )
                })?;
            }
            drawings += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{drawings} configurations, k = 3..10, in {:.2?}",
        elapsed
    ))
}

fn hill_drawings() -> Check {
    let mut rng = trial_rng(3, 0);
    let mut built = 0;
    for k in 3..=10u64 {
        let n = 2 * k;
        for con in constructions(k as usize, &tol()).unwrap() {
            let label = con.label();
            let s = strength(&con.config, &con.assignment, &tol()).unwrap();
            ensure(s == 0, || format!("{label}: strength {s}"))?;
            let d = extend_full(&con.config, &con.assignment, &tol()).unwrap();
            let r = count_crossings(&d, &tol()).unwrap();
            ensure(r.total as u64 == hill(n), || {
                format!("{label}: {} != H({n})", r.total)
            })?;
            let per = (n - 2) * (n - 2) * (n - 4) / 16;
            ensure(r.per_vertex.iter().all(|&p| p as u64 == per), || {
                format!("{label}: per-vertex {:?} != {per}", r.per_vertex)
            })?;
            for v in 0..n as usize {
                let c = count_crossings(&delete_vertex(&d, v, &tol()).unwrap(), &tol())
                    .unwrap()
                    .total;
                ensure(c as u64 == hill(n - 1), || {
                    format!("{label}: delete {v} gives {c}")
                })?;
            }
            let mut apexes = 0;
            while apexes < 20 {
                if let Ok(a) = add_apex(&con.config, &con.assignment, random_apex(&mut rng), &tol())
                {
                    let c = count_crossings(&a, &tol()).unwrap().total;
                    ensure(c as u64 == hill(n + 1), || {
                        format!("{label}: apex gives {c}")
                    })?;
                    apexes += 1;
                }
            }
            built += 1;
        }
    }
    Ok(format!(
        "{built} constructions from single/two/four, k = 3..10"
    ))
}

fn partial_extensions() -> Check {
    let mut cases = 0;
    for k in 4..=8u64 {
        let n = 2 * k;
        for con in constructions(k as usize, &tol()).unwrap().iter() {
            for t in 0..=k {
                let subset: Vec<usize> = (t as usize..k as usize).collect();
                let d = extend_partial(&con.config, &con.assignment, &subset, &tol()).unwrap();
                let got = count_crossings(&d, &tol()).unwrap().total as u64;
                let want = hill(n) - t * (k - 1) * (k - 2) / 2;
                ensure(got == want, || {
                    format!("{} t={t}: {got} != {want}", con.label())
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (construction, t) cases, k = 4..8"))
}

fn oracle_equivalence() -> Check {
    let mut drawings = Vec::new();
    for k in 3..=10 {
        for c in random_configs(k, 100, 50, &tol()).unwrap() {
            drawings.push(build_dn(&c, &tol()).unwrap());
        }
        for con in constructions(k, &tol()).unwrap() {
            drawings.push(build_dn(&con.config, &tol()).unwrap());
        }
    }
    for (i, d) in drawings.iter().enumerate() {
        let a = count_crossings(d, &tol()).unwrap().total;
        let b = count_crossings_aggregated(d, &tol()).unwrap();
        ensure(a == b, || format!("drawing {i}: {a} != {b}"))?;
    }
    ensure(drawings.len() >= 800, || {
        format!("only {} drawings", drawings.len())
    })?;
    Ok(format!("{} M_n drawings agree", drawings.len()))
}

fn diversity() -> Check {
    use Side::{Above, Below};
    let vectors = [
        [Below, Below, Below],
        [Below, Below, Above],
        [Below, Above, Below],
        [Above, Below, Below],
        [Below, Above, Above],
        [Above, Above, Below],
    ];
    let mut sets: Vec<HashSet<(usize, usize)>> = Vec::new();
    for sides in vectors {
        let plan = ConstructionPlan {
            seed: SeedArrangement::Single,
            levels: vec![
                LevelParams {
                    eps: 1.0,
                    staircase: Some(Staircase {
                        delta0: 0.15,
                        eta0: 0.15,
                    }),
                },
                LevelParams {
                    eps: 0.005,
                    staircase: None,
                },
            ],
            roots: vec![PlanNode::leaf(3).with_children(
                sides
                    .iter()
                    .map(|&s| Some(PlanNode::leaf(2).with_side(s)))
                    .collect(),
            )],
            shrink: 0.5,
            max_retries: 8,
        };
        let (c, a) = recursive_construct(&plan, &tol()).map_err(|e| e.to_string())?;
        ensure(c.k() == 6, || format!("k = {}", c.k()))?;
        let r = count_crossings(&extend_full(&c, &a, &tol()).unwrap(), &tol()).unwrap();
        ensure(r.total as u64 == hill(12), || {
            format!("{sides:?}: total {}", r.total)
        })?;
        sets.push(r.pairs.into_iter().collect());
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            ensure(sets[i] != sets[j], || {
                format!("flag vectors {i} and {j} coincide")
            })?;
        }
    }
    Ok(format!(
        "{} flag vectors at k=6, pairwise distinct pair sets, all totals H(12) = 150",
        sets.len()
    ))
}

fn monte_carlo() -> Check {
    let start = Instant::now();
    let cfg = ExperimentConfig::uniform(60, 30, 2024);
    let a = ratio_experiment(&cfg, &tol()).unwrap();
    let b = ratio_experiment(&cfg, &tol()).unwrap();
    ensure(
        a.counts == b.counts && a.mean_ratio.to_bits() == b.mean_ratio.to_bits(),
        || "experiment not reproducible".into(),
    )?;
    ensure((0.95..=1.15).contains(&a.mean_ratio), || {
        format!("mean ratio {}", a.mean_ratio)
    })?;
    let c1 = k4_census(100_000, &DistributionSpec::Uniform, 2024, &tol()).unwrap();
    let c2 = k4_census(100_000, &DistributionSpec::Uniform, 2024, &tol()).unwrap();
    ensure(c1 == c2, || "census not reproducible".into())?;
    let frac = c1.fraction_at_least(1);
    ensure((frac - 0.375).abs() <= 0.02, || {
        format!("K_4 crossing fraction {frac}")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "n=60 mean cr/H = {:.4}; K_4 fraction {frac:.4} (>=2 crossings: {}); reproducible; {:.2?}",
        a.mean_ratio,
        c1.histogram[2] + c1.histogram[3],
        elapsed
    ))
}

fn performance() -> Verdict {
    let run = || -> Result<(usize, String), String> {
        let seed = seed_four(&tol()).map_err(|e| e.to_string())?;
        let (c, a) = blowup(&seed, &BlowupPlan::new(vec![13, 13, 12, 12], 0.2), &tol())
            .map_err(|e| e.to_string())?;
        let d = extend_full(&c, &a, &tol()).map_err(|e| e.to_string())?;
        ensure(d.edges().len() == 4950, || {
            format!("{} edges", d.edges().len())
        })?;
        let timed = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let start = Instant::now();
            let r = pool
                .install(|| count_crossings(&d, &tol()))
                .map_err(|e| e.to_string());
            (r, start.elapsed())
        };
        let (r1, t1) = timed(1);
        let r1 = r1?;
        ensure(r1.total as u64 == hill(100), || {
            format!("total {}", r1.total)
        })?;
        ensure(t1 < Duration::from_secs(10), || {
            format!("single thread took {t1:?}")
        })?;
        let (r4, t4) = timed(4);
        ensure(r4? == r1, || "4-thread report differs".into())?;
        let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
        let speedup = t1.as_secs_f64() / t4.as_secs_f64();
        let detail = format!(
            "K_100 total {} in {t1:.2?} on 1 thread, {t4:.2?} on 4 (x{speedup:.2}), identical counts",
            r1.total
        );
        if cores >= 4 {
            ensure(speedup >= 3.0, || format!("{detail}; speedup below 3"))?;
        }
        Ok((cores, detail))
    };
    match run() {
        Ok((cores, detail)) if cores < 4 => Verdict::Unverified(format!(
            "{detail}; speedup not measurable with {cores} core(s)"
        )),
        Ok((_, detail)) => Verdict::Pass(detail),
        Err(e) => Verdict::Fail(e),
    }
}

fn robustness() -> Check {
    let mut rng = trial_rng(9, 0);
    let mut drawings = 0;
    for k in 3..=10 {
        for con in constructions(k, &tol()).unwrap() {
            let before = count_crossings(
                &extend_full(&con.config, &con.assignment, &tol()).unwrap(),
                &tol(),
            )
            .unwrap();
            let (c, a) = perturb(&con.config, &con.assignment, 1e-6, &mut rng, &tol())
                .map_err(|e| format!("{}: {e}", con.label()))?;
            let after = count_crossings(&extend_full(&c, &a, &tol()).unwrap(), &tol()).unwrap();
            ensure(before == after, || {
                format!("{}: counts changed", con.label())
            })?;
            drawings += 1;
        }
        for c in random_configs(k, 100, 50, &tol()).unwrap() {
            let before = count_crossings(&build_dn(&c, &tol()).unwrap(), &tol()).unwrap();
            let moved = perturb_config(&c, 1e-6, &mut rng, &tol()).map_err(|e| e.to_string())?;
            let after = count_crossings(&build_dn(&moved, &tol()).unwrap(), &tol()).unwrap();
            ensure(before == after, || "random D_n counts changed".into())?;
            drawings += 1;
        }
    }

    // hand-corrupted files through the binary
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_hilldraw");
    let good = dir.path().join("k8.json");
    let status = Command::new(bin)
        .args([
            "generate",
            "--seed-arrangement",
            "single",
            "--multiplicities",
            "4",
            "-o",
        ])
        .arg(&good)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.code() == Some(0), || "generate failed".into())?;

    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let edge = doc["edges"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["curve"] == "half_circle")
        .unwrap();
    for c in edge["midpoint"].as_array_mut().unwrap() {
        *c = serde_json::json!(-c.as_f64().unwrap());
    }
    let flipped = dir.path().join("flipped.json");
    std::fs::write(&flipped, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    // the flipped half-circle now meets each of the other three
    expect_verify_failure(bin, &flipped, 21, 18)?;

    let strength_one = dir.path().join("strength1.json");
    std::fs::write(
        &strength_one,
        serialize_drawing(&strength_one_k8()).unwrap(),
    )
    .unwrap();
    expect_verify_failure(bin, &strength_one, 19, 18)?;

    Ok(format!(
        "{drawings} drawings unchanged under 1e-6 perturbation; corrupted files exit 1 with 21 vs 18 and 19 vs 18"
    ))
}

fn strength_one_k8() -> hilldraw::Drawing {
    let mut rng = trial_rng(19, 18);
    for c in random_configs(4, 1000, 19, &tol()).unwrap() {
        let asg = random_assignment(&c, &mut rng, &tol());
        if strength(&c, &asg, &tol()).unwrap() == 1 {
            let d = extend_full(&c, &asg, &tol()).unwrap();
            let back = parse_drawing(&serialize_drawing(&d).unwrap(), &tol()).unwrap();
            assert_eq!(
                verify(&back, &tol())
                    .unwrap()
                    .check(FormulaId::Eq1)
                    .unwrap()
                    .observed,
                19
            );
            return d;
        }
    }
    panic!("no strength-1 assignment");
}

fn expect_verify_failure(
    bin: &str,
    file: &std::path::Path,
    observed: u64,
    expected: u64,
) -> Result<(), String> {
    let out = Command::new(bin)
        .arg("verify")
        .arg(file)
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(1), || {
        format!("verify exited {:?}", out.status.code())
    })?;
    let line = format!("Eq1: expected {expected}, observed {observed} FAIL");
    ensure(stdout.contains(&line), || {
        format!("missing '{line}' in:\n{stdout}")
    })
}

fn main() {
    let criteria: Vec<(&str, Criterion)> = vec![
        ("formula table", Box::new(|| formula_table().into_verdict())),
        ("D_n counts", Box::new(|| dn_counts().into_verdict())),
        ("Hill drawings", Box::new(|| hill_drawings().into_verdict())),
        ("M_n,t", Box::new(|| partial_extensions().into_verdict())),
        (
            "oracle equivalence",
            Box::new(|| oracle_equivalence().into_verdict()),
        ),
        ("diversity", Box::new(|| diversity().into_verdict())),
        ("Monte Carlo", Box::new(|| monte_carlo().into_verdict())),
        ("performance", Box::new(performance)),
        ("robustness", Box::new(|| robustness().into_verdict())),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Verdict::Fail(format!("panicked: {msg}"))
        });
        let (status, detail) = match verdict {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Unverified(d) => ("UNVERIFIED", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} ({name}): {status} - {detail}", i + 1);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

trait IntoVerdict {
    fn into_verdict(self) -> Verdict;
}

impl IntoVerdict for Check {
    fn into_verdict(self) -> Verdict {
        match self {
            Ok(d) => Verdict::Pass(d),
            Err(d) => Verdict::Fail(d),
        }
    }
}
