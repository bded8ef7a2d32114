//! Crossing counts of geodesic drawings of `K_n` on random points.
//!
//! Every trial draws from its own ChaCha stream `(seed, trial)`, so results
//! do not depend on how trials are scheduled across threads.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::Vector3;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hill::{crossing_total, geodesic_complete, hill_number};
use crate::sphere::{is_general_position, Tolerances, UnitVec3};

const MAX_RESAMPLES: usize = 100;

/// Point distribution on the sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistributionSpec {
    Uniform,
    /// Uniform on the cap of angular radius `theta` around `(0, 0, 1)`.
    Cap {
        theta: f64,
    },
    /// Samples `base`, then replaces the point by its antipode with
    /// probability one half.
    AntipodalSymmetrized {
        base: Box<DistributionSpec>,
    },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            DistributionSpec::Uniform => Ok(()),
            DistributionSpec::Cap { theta } => {
                if *theta > 0.0 && *theta <= PI {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("cap angle {theta} outside (0, pi]")))
                }
            }
            DistributionSpec::AntipodalSymmetrized { base } => base.validate(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> UnitVec3 {
        match self {
            DistributionSpec::Uniform => loop {
                let g = Vector3::new(
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                );
                if g.norm() > 1e-9 {
                    if let Some(u) = UnitVec3::normalize(g) {
                        return u;
                    }
                }
            },
            DistributionSpec::Cap { theta } => {
                // area on a cap is uniform in z
                let z: f64 = rng.random_range(theta.cos()..=1.0);
                let phi: f64 = rng.random_range(0.0..2.0 * PI);
                let r = (1.0 - z * z).max(0.0).sqrt();
                UnitVec3::from_xyz(r * phi.cos(), r * phi.sin(), z)
            }
            DistributionSpec::AntipodalSymmetrized { base } => {
                let p = base.sample(rng);
                if rng.random_bool(0.5) {
                    -p
                } else {
                    p
                }
            }
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionSpec::Uniform => f.write_str("uniform"),
            DistributionSpec::Cap { theta } => write!(f, "cap:{theta}"),
            DistributionSpec::AntipodalSymmetrized { base } => write!(f, "symmetric:{base}"),
        }
    }
}

/// Parses `uniform`, `cap:THETA` and `symmetric:BASE`.
impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spec = if s == "uniform" {
            DistributionSpec::Uniform
        } else if let Some(theta) = s.strip_prefix("cap:") {
            let theta = theta
                .parse()
                .map_err(|_| Error::Domain(format!("bad cap angle '{theta}'")))?;
            DistributionSpec::Cap { theta }
        } else if let Some(base) = s.strip_prefix("symmetric:") {
            DistributionSpec::AntipodalSymmetrized {
                base: Box::new(base.parse()?),
            }
        } else {
            return Err(Error::Domain(format!("unknown distribution '{s}'")));
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub distribution: DistributionSpec,
}

impl ExperimentConfig {
    pub fn uniform(n: usize, trials: usize, seed: u64) -> Self {
        Self {
            n,
            trials,
            seed,
            distribution: DistributionSpec::Uniform,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::Domain(format!("n = {} is below 4", self.n)));
        }
        if self.trials == 0 {
            return Err(Error::Domain("at least one trial is required".into()));
        }
        self.distribution.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub hill_number: u64,
    pub counts: Vec<u64>,
    pub mean_ratio: f64,
    /// Sample variance (denominator `trials - 1`; 0 for a single trial).
    pub variance_ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub runtime_secs: f64,
}

/// Generator for one trial of an experiment.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws `n` points, resampling the whole set until it is in general
/// position.
pub fn sample_points_with<R: Rng + ?Sized>(
    n: usize,
    dist: &DistributionSpec,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<Vec<UnitVec3>> {
    dist.validate()?;
    for _ in 0..MAX_RESAMPLES {
        let pts: Vec<_> = (0..n).map(|_| dist.sample(rng)).collect();
        if n < 3 || is_general_position(&pts, tol)? {
            return Ok(pts);
        }
    }
    Err(Error::Sampling(format!(
        "no general-position sample of {n} points from {dist} in {MAX_RESAMPLES} attempts"
    )))
}

pub fn sample_points(n: usize, dist: &DistributionSpec, seed: u64) -> Result<Vec<UnitVec3>> {
    sample_points_with(n, dist, &mut trial_rng(seed, 0), &Tolerances::default())
}

fn drawing_cr_with<R: Rng + ?Sized>(
    n: usize,
    dist: &DistributionSpec,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<u64> {
    let mut last = None;
    for _ in 0..MAX_RESAMPLES {
        let pts = sample_points_with(n, dist, rng, tol)?;
        let counted = geodesic_complete(&pts, tol).and_then(|d| crossing_total(&d, tol));
        match counted {
            Ok(c) => return Ok(c as u64),
            Err(e @ (Error::Degenerate(_) | Error::DegenerateEdgePair { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling(format!(
        "every sample was degenerate; last: {}",
        last.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// Crossing count of the geodesic `K_n` drawing on `n` random points.
pub fn random_drawing_cr(n: usize, dist: &DistributionSpec, seed: u64) -> Result<u64> {
    drawing_cr_with(n, dist, &mut trial_rng(seed, 0), &Tolerances::default())
}

/// Crossing count of trial `trial` of an experiment.
pub fn trial_cr(config: &ExperimentConfig, trial: u64, tol: &Tolerances) -> Result<u64> {
    drawing_cr_with(
        config.n,
        &config.distribution,
        &mut trial_rng(config.seed, trial),
        tol,
    )
}

pub fn ratio_experiment(config: &ExperimentConfig, tol: &Tolerances) -> Result<ExperimentResult> {
    config.validate()?;
    let start = Instant::now();
    let hill = hill_number(config.n as u64)?;
    let counts: Vec<u64> = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| trial_cr(config, t, tol))
        .collect::<Result<_>>()?;
    let ratios: Vec<f64> = counts.iter().map(|&c| c as f64 / hill as f64).collect();
    let len = ratios.len() as f64;
    let mean = ratios.iter().sum::<f64>() / len;
    let variance = if ratios.len() > 1 {
        ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (len - 1.0)
    } else {
        0.0
    };
    Ok(ExperimentResult {
        config: config.clone(),
        hill_number: hill,
        counts,
        mean_ratio: mean,
        variance_ratio: variance,
        min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        max_ratio: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        runtime_secs: start.elapsed().as_secs_f64(),
    })
}

/// Histogram of crossing counts of random geodesic `K_4` drawings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct K4Census {
    pub trials: usize,
    pub seed: u64,
    pub distribution: DistributionSpec,
    /// `histogram[c]` trials had `c` crossings, `c` in `0..=3`.
    pub histogram: [u64; 4],
}

impl K4Census {
    pub fn fraction(&self, crossings: usize) -> f64 {
        self.histogram[crossings] as f64 / self.trials as f64
    }

    pub fn fraction_at_least(&self, crossings: usize) -> f64 {
        (crossings..4).map(|c| self.fraction(c)).sum()
    }
}

pub fn k4_census(
    trials: usize,
    dist: &DistributionSpec,
    seed: u64,
    tol: &Tolerances,
) -> Result<K4Census> {
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let config = ExperimentConfig {
        n: 4,
        trials,
        seed,
        distribution: dist.clone(),
    };
    config.validate()?;
    let counts: Vec<u64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| trial_cr(&config, t, tol))
        .collect::<Result<_>>()?;
    let mut histogram = [0u64; 4];
    for c in counts {
        let slot = histogram
            .get_mut(c as usize)
            .ok_or_else(|| Error::Sampling(format!("K_4 drawing with {c} crossings")))?;
        *slot += 1;
    }
    Ok(K4Census {
        trials,
        seed,
        distribution: dist.clone(),
        histogram,
    })
}
