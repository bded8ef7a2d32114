//! Reproducible families of configurations shared by tests and benchmarks.

use rand::Rng;

use crate::constructions::{blowup, BlowupPlan, SeedArrangement};
use crate::error::Result;
use crate::hill::{double, AntipodalConfig, HalfCircleAssignment};
use crate::montecarlo::{sample_points_with, trial_rng, DistributionSpec};
use crate::sphere::Tolerances;

/// Ordered compositions of `total` into `parts` positive integers.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return if total >= 1 {
            vec![vec![total]]
        } else {
            vec![]
        };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A strength-0 configuration and how it was made.
#[derive(Clone, Debug)]
pub struct Construction {
    pub seed: SeedArrangement,
    pub multiplicities: Vec<usize>,
    pub config: AntipodalConfig,
    pub assignment: HalfCircleAssignment,
}

impl Construction {
    pub fn label(&self) -> String {
        format!("{}{:?}", self.seed, self.multiplicities)
    }
}

/// Blowups of every seed with every multiplicity vector of total `k`, at the
/// seed's default neighborhood radius.
pub fn constructions(k: usize, tol: &Tolerances) -> Result<Vec<Construction>> {
    let mut out = Vec::new();
    for seed in [
        SeedArrangement::Single,
        SeedArrangement::Two,
        SeedArrangement::Four,
    ] {
        let arr = seed.build(tol)?;
        for multiplicities in compositions(k, seed.size()) {
            let plan = BlowupPlan::new(multiplicities.clone(), seed.default_eps());
            let (config, assignment) = blowup(&arr, &plan, tol)?;
            out.push(Construction {
                seed,
                multiplicities,
                config,
                assignment,
            });
        }
    }
    Ok(out)
}

/// `count` uniformly random general-position configurations with `k` base
/// points, reproducible from `seed`.
pub fn random_configs(
    k: usize,
    count: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Vec<AntipodalConfig>> {
    let mut rng = trial_rng(seed, k as u64);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let base = sample_points_with(k, &DistributionSpec::Uniform, &mut rng, tol)?;
        // the doubled set also needs every vertex off every arc
        if let Ok(c) = double(&base, tol) {
            if crate::hill::build_dn(&c, tol).is_ok() {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Uniformly random midpoints for `config`, resampled until every
/// half-circle avoids all vertices.
pub fn random_assignment<R: Rng + ?Sized>(
    config: &AntipodalConfig,
    rng: &mut R,
    tol: &Tolerances,
) -> HalfCircleAssignment {
    loop {
        let mids: Vec<_> = (0..config.k())
            .map(|_| DistributionSpec::Uniform.sample(rng))
            .collect();
        if let Ok(asg) = HalfCircleAssignment::new(config, &mids, tol) {
            return asg;
        }
    }
}
