mod common;

use std::collections::HashSet;

use common::random_unit;
use hilldraw::constructions::*;
use hilldraw::corpus::constructions;
use hilldraw::hill::*;
use hilldraw::montecarlo::trial_rng;
use hilldraw::sphere::is_general_position;
use hilldraw::Tolerances;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn every_seed_and_multiplicity_vector_gives_a_hill_drawing() {
    let mut rng = trial_rng(31, 0);
    let mut seen = 0;
    for k in 3..=10usize {
        let n = 2 * k as u64;
        for con in constructions(k, &tol()).unwrap() {
            seen += 1;
            let label = con.label();
            assert_eq!(con.config.k(), k);
            assert_eq!(
                strength(&con.config, &con.assignment, &tol()).unwrap(),
                0,
                "{label}"
            );
            assert!(is_general_position(con.config.base(), &tol()).unwrap());
            let d = extend_full(&con.config, &con.assignment, &tol()).unwrap();
            let r = verify(&d, &tol()).unwrap();
            assert!(r.passed, "{label}: {:?}", r.failures().collect::<Vec<_>>());
            assert_eq!(r.total as u64, hill_number(n).unwrap());
            // per-vertex checks are part of the K_n report
            assert_eq!(
                r.checks
                    .iter()
                    .filter(|c| c.formula == FormulaId::CorB)
                    .count(),
                2 * k
            );
            for v in 0..2 * k {
                let del = delete_vertex(&d, v, &tol()).unwrap();
                assert_eq!(
                    crossing_total(&del, &tol()).unwrap() as u64,
                    hill_number(n - 1).unwrap()
                );
            }
            let mut added = 0;
            while added < 20 {
                if let Ok(a) = add_apex(&con.config, &con.assignment, random_unit(&mut rng), &tol())
                {
                    assert_eq!(
                        crossing_total(&a, &tol()).unwrap() as u64,
                        hill_number(n + 1).unwrap()
                    );
                    added += 1;
                }
            }
        }
    }
    assert_eq!(seen, 8 + 44 + 210);
}

#[test]
fn documented_examples() {
    let (c, a) = blowup(
        &seed_two(&tol()).unwrap(),
        &BlowupPlan::new(vec![2, 2], 0.05),
        &tol(),
    )
    .unwrap();
    assert_eq!(
        crossing_total(&extend_full(&c, &a, &tol()).unwrap(), &tol()).unwrap(),
        18
    );
    let (c, a) = blowup(&seed_single(), &BlowupPlan::new(vec![4], 0.1), &tol()).unwrap();
    assert_eq!(c.n(), 8);
    assert_eq!(
        crossing_total(&extend_full(&c, &a, &tol()).unwrap(), &tol()).unwrap(),
        18
    );
}

#[test]
fn children_stay_in_the_neighborhood() {
    for (seed, mults, eps) in [
        (SeedArrangement::Single, vec![7], 0.3),
        (SeedArrangement::Two, vec![3, 4], 0.05),
        (SeedArrangement::Four, vec![2, 1, 3, 2], 0.1),
        (SeedArrangement::Four, vec![1, 1, 1, 1], 0.02),
    ] {
        let parent = seed.build(&tol()).unwrap();
        let out =
            blowup_arrangement(&parent, &BlowupPlan::new(mults.clone(), eps), &tol()).unwrap();
        assert_eq!(out.len(), mults.iter().sum::<usize>());
        let owners = mults
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i, m));
        for (child, owner) in out.halves().iter().zip(owners) {
            let p = &parent.halves()[owner];
            for s in 0..=200 {
                let x = child.point_at(std::f64::consts::PI * s as f64 / 200.0);
                assert!(p.distance_to(&x) <= eps, "{seed} {mults:?}");
            }
            assert!(child.p() != p.p());
        }
    }
}

fn depth_two(sides: [Side; 3]) -> ConstructionPlan {
    ConstructionPlan {
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
    }
}

#[test]
fn above_below_flags_give_distinct_drawings_with_equal_totals() {
    use Side::{Above, Below};
    let vectors = [
        [Below, Below, Below],
        [Below, Below, Above],
        [Below, Above, Below],
        [Above, Below, Below],
        [Below, Above, Above],
        [Above, Above, Below],
    ];
    let mut sets = Vec::new();
    for sides in vectors {
        let plan = depth_two(sides);
        assert_eq!(plan.total_pairs(), 6);
        let (c, a) = recursive_construct(&plan, &tol()).unwrap();
        let d = extend_full(&c, &a, &tol()).unwrap();
        let r = verify(&d, &tol()).unwrap();
        assert!(r.passed, "{sides:?}");
        assert_eq!(r.total, 150);
        sets.push(
            r.crossings
                .unwrap()
                .pairs
                .into_iter()
                .collect::<HashSet<_>>(),
        );
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            assert_ne!(
                sets[i], sets[j],
                "flag vectors {i} and {j} give the same crossing pairs"
            );
        }
    }
}

#[test]
fn mixed_depth_trees() {
    let plan = ConstructionPlan {
        seed: SeedArrangement::Four,
        levels: vec![
            LevelParams {
                eps: 0.2,
                staircase: None,
            },
            LevelParams {
                eps: 0.004,
                staircase: None,
            },
        ],
        roots: vec![
            PlanNode::leaf(2)
                .with_children(vec![Some(PlanNode::leaf(2).with_side(Side::Above)), None]),
            PlanNode::leaf(1),
            PlanNode::leaf(3).with_children(vec![None, Some(PlanNode::leaf(2)), None]),
            PlanNode::leaf(1),
        ],
        shrink: 0.5,
        max_retries: 8,
    };
    assert_eq!(plan.total_pairs(), 9);
    let (c, a) = recursive_construct(&plan, &tol()).unwrap();
    assert_eq!(c.k(), 9);
    assert!(
        verify(&extend_full(&c, &a, &tol()).unwrap(), &tol())
            .unwrap()
            .passed
    );
    let json = serde_json::to_string(&plan).unwrap();
    assert_eq!(
        serde_json::from_str::<ConstructionPlan>(&json).unwrap(),
        plan
    );
}

#[test]
fn failing_level_names_the_tree_path() {
    let mut plan = depth_two([Side::Below; 3]);
    plan.levels[1] = LevelParams {
        eps: 1e-9,
        staircase: Some(Staircase {
            delta0: 1.0,
            eta0: 1.0,
        }),
    };
    plan.max_retries = 1;
    let err = recursive_construct(&plan, &tol()).unwrap_err().to_string();
    assert!(err.contains("level 2") && err.contains("0/1"), "{err}");
}

#[test]
fn small_perturbations_preserve_every_count() {
    let mut rng = trial_rng(41, 0);
    for k in 3..=10usize {
        for con in constructions(k, &tol()).unwrap() {
            let (c, a) = perturb(&con.config, &con.assignment, 1e-6, &mut rng, &tol())
                .unwrap_or_else(|e| panic!("{}: {e}", con.label()));
            let before = count_crossings(
                &extend_full(&con.config, &con.assignment, &tol()).unwrap(),
                &tol(),
            )
            .unwrap();
            let after = count_crossings(&extend_full(&c, &a, &tol()).unwrap(), &tol()).unwrap();
            assert_eq!(before, after, "{}", con.label());
        }
    }
}

#[test]
fn zero_perturbation_is_the_identity() {
    let con = &constructions(5, &tol()).unwrap()[0];
    let (c, a) = perturb(
        &con.config,
        &con.assignment,
        0.0,
        &mut trial_rng(1, 1),
        &tol(),
    )
    .unwrap();
    assert_eq!(c, con.config);
    assert_eq!(a, con.assignment);
}

#[test]
fn large_perturbations_can_fail() {
    let mut rng = trial_rng(43, 0);
    let cons = constructions(8, &tol()).unwrap();
    let failures = cons
        .iter()
        .filter(|con| perturb(&con.config, &con.assignment, 0.5, &mut rng, &tol()).is_err())
        .count();
    assert!(failures > 0);
}
