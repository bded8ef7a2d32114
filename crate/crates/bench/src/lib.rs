//! Inputs shared by the benchmarks.

use hilldraw::constructions::{blowup, seed_four, BlowupPlan, SeedArrangement};
use hilldraw::hill::{build_dn, extend_full, geodesic_complete};
use hilldraw::montecarlo::{sample_points, DistributionSpec};
use hilldraw::{AntipodalConfig, Drawing, HalfCircleAssignment, Tolerances};

fn hill_parts(n: usize) -> (AntipodalConfig, HalfCircleAssignment) {
    assert!(
        n.is_multiple_of(2) && n >= 8,
        "n must be even and at least 8"
    );
    let tol = Tolerances::default();
    let k = n / 2;
    let mults: Vec<usize> = (0..4).map(|i| k / 4 + usize::from(i < k % 4)).collect();
    let eps = SeedArrangement::Four.default_eps();
    blowup(
        &seed_four(&tol).unwrap(),
        &BlowupPlan::new(mults, eps),
        &tol,
    )
    .unwrap()
}

/// A drawing of `K_n` with `H(n)` crossings, `n` even and at least 8.
pub fn hill_kn(n: usize) -> Drawing {
    let (config, asg) = hill_parts(n);
    extend_full(&config, &asg, &Tolerances::default()).unwrap()
}

/// The matching-free part of `hill_kn(n)`.
pub fn hill_dn(n: usize) -> Drawing {
    build_dn(&hill_parts(n).0, &Tolerances::default()).unwrap()
}

/// Geodesic `K_n` on uniform random points.
pub fn random_kn(n: usize, seed: u64) -> Drawing {
    let pts = sample_points(n, &DistributionSpec::Uniform, seed).unwrap();
    geodesic_complete(&pts, &Tolerances::default()).unwrap()
}
