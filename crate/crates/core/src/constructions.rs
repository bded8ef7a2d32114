//! Strength-0 configurations: seed arrangements of pairwise disjoint
//! half-circles and their blowups.
//!
//! Blowing up a half-circle `C` from `p` through `m` to `-p` replaces it with
//! `m` half-circles `C_1..C_m` near `C`. Child `i` lives on the great circle
//! through `x_i`, the point of the complementary half `p` rotated by
//! `-delta_i` along the circle of `C`, tilted by `eta_i` about the `x_i`
//! axis toward the chosen side. Its endpoint is `x_i` moved back along the
//! tilted circle by `sigma_i`, which takes both endpoints off the circle of
//! `C`. With `delta_i = i * delta0`, `eta_i = i * eta0` and
//! `sigma_i = i * delta0`, the circles of `C_i` and `C_j` meet at about
//! `-(i + j) * delta0` along `C`, strictly between the start points of the
//! two children, so each contains a different one of the two intersection
//! points and they are disjoint.
//!
//! Every level is validated after construction (disjointness, general
//! position, vertices off every half-circle's great circle, containment in
//! the neighborhood of the parent); on failure the offsets shrink and the
//! level is rebuilt.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Rotation3, Unit, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hill::{crossing_half_circle_pairs, double, AntipodalConfig, HalfCircleAssignment};
use crate::sphere::{general_position_violation, rotate, HalfCircle, Tolerances, UnitVec3};

/// Pairwise disjoint half-circles whose endpoints are in general position.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfCircleArrangement {
    halves: Vec<HalfCircle>,
}

impl HalfCircleArrangement {
    pub fn new(halves: Vec<HalfCircle>, tol: &Tolerances) -> Result<Self> {
        validate_halves(&halves, tol).map_err(Error::Construction)?;
        Ok(Self { halves })
    }

    pub fn halves(&self) -> &[HalfCircle] {
        &self.halves
    }

    pub fn len(&self) -> usize {
        self.halves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halves.is_empty()
    }

    /// Antipodal configuration on the endpoints with these half-circles as
    /// its assignment. Needs at least three half-circles.
    pub fn to_config(&self, tol: &Tolerances) -> Result<(AntipodalConfig, HalfCircleAssignment)> {
        let base: Vec<_> = self.halves.iter().map(HalfCircle::p).collect();
        let mids: Vec<_> = self.halves.iter().map(HalfCircle::m).collect();
        let config = double(&base, tol)?;
        let asg = HalfCircleAssignment::new(&config, &mids, tol)?;
        Ok((config, asg))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Below,
    Above,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Below => 1.0,
            Side::Above => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Side::Below => Side::Above,
            Side::Above => Side::Below,
        }
    }
}

/// Named seed arrangements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedArrangement {
    Single,
    Two,
    Four,
}

impl SeedArrangement {
    pub fn build(self, tol: &Tolerances) -> Result<HalfCircleArrangement> {
        match self {
            SeedArrangement::Single => Ok(seed_single()),
            SeedArrangement::Two => seed_two(tol),
            SeedArrangement::Four => seed_four(tol),
        }
    }

    /// Neighborhood radius that keeps blowups of this seed well separated
    /// from the other seed half-circles and well inside general position.
    pub fn default_eps(self) -> f64 {
        match self {
            SeedArrangement::Single => 1.0,
            SeedArrangement::Two => 0.5,
            SeedArrangement::Four => 0.2,
        }
    }

    pub fn size(self) -> usize {
        match self {
            SeedArrangement::Single => 1,
            SeedArrangement::Two => 2,
            SeedArrangement::Four => 4,
        }
    }
}

impl fmt::Display for SeedArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedArrangement::Single => "single",
            SeedArrangement::Two => "two",
            SeedArrangement::Four => "four",
        })
    }
}

impl FromStr for SeedArrangement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(SeedArrangement::Single),
            "two" => Ok(SeedArrangement::Two),
            "four" => Ok(SeedArrangement::Four),
            other => Err(Error::Domain(format!("unknown seed arrangement '{other}'"))),
        }
    }
}

/// Fixed rotation taking the axis-aligned seeds off the coordinate planes.
fn generic_frame(v: Vector3<f64>) -> UnitVec3 {
    let axis = Unit::new_normalize(Vector3::new(0.31, -0.52, 0.79));
    let w = Rotation3::from_axis_angle(&axis, 0.713) * v;
    UnitVec3::normalize(w).expect("rotation of a nonzero vector")
}

fn seed_half(p: [f64; 3], m: [f64; 3]) -> HalfCircle {
    let p = generic_frame(Vector3::from(p));
    let m = generic_frame(Vector3::from(m));
    HalfCircle::new(p, m, &Tolerances::default()).expect("seed half-circles are well formed")
}

/// Half of the equator.
pub fn seed_single() -> HalfCircleArrangement {
    HalfCircleArrangement {
        halves: vec![seed_half([1., 0., 0.], [0., 1., 0.])],
    }
}

/// Half of the equator and a disjoint pole-to-pole half meridian.
pub fn seed_two(tol: &Tolerances) -> Result<HalfCircleArrangement> {
    HalfCircleArrangement::new(
        vec![
            seed_half([1., 0., 0.], [0., 1., 0.]),
            seed_half([0., 0., 1.], [0., -1., 0.]),
        ],
        tol,
    )
}

/// Four pairwise disjoint half-circles, about half a radian apart.
pub fn seed_four(tol: &Tolerances) -> Result<HalfCircleArrangement> {
    const SEED: [([f64; 3], [f64; 3]); 4] = [
        ([-0.6963, 0.2443, -0.6749], [-0.3333, 0.7228, 0.6055]),
        ([-0.1781, 0.0707, 0.9815], [-0.9527, -0.2621, -0.1540]),
        ([-0.2816, 0.9520, -0.1198], [0.9340, 0.3006, 0.1929]),
        ([-0.6335, -0.6300, 0.4492], [0.3296, -0.7449, -0.5800]),
    ];
    HalfCircleArrangement::new(SEED.iter().map(|&(p, m)| seed_half(p, m)).collect(), tol)
}

/// Initial staircase offsets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Staircase {
    pub delta0: f64,
    pub eta0: f64,
}

impl Staircase {
    /// `delta0 = eta0 = eps / (4 m)`.
    pub fn for_neighborhood(eps: f64, multiplicity: usize) -> Self {
        let s = eps / (4.0 * multiplicity as f64);
        Self { delta0: s, eta0: s }
    }

    fn scaled(self, factor: f64) -> Self {
        Self {
            delta0: self.delta0 * factor,
            eta0: self.eta0 * factor,
        }
    }
}

/// Blowup parameters for one arrangement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupPlan {
    /// Children per arrangement half-circle, each at least 1.
    pub multiplicities: Vec<usize>,
    /// Angular radius of the neighborhood the children must stay in.
    pub eps: f64,
    /// Offsets; defaults to `Staircase::for_neighborhood` per half-circle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub staircase: Option<Staircase>,
    /// Side per half-circle; missing entries are `below`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sides: Vec<Side>,
    #[serde(default = "default_shrink")]
    pub shrink: f64,
    #[serde(default = "default_retries")]
    pub max_retries: usize,
}

fn default_shrink() -> f64 {
    0.5
}

fn default_retries() -> usize {
    8
}

impl BlowupPlan {
    pub fn new(multiplicities: Vec<usize>, eps: f64) -> Self {
        Self {
            multiplicities,
            eps,
            staircase: None,
            sides: Vec::new(),
            shrink: default_shrink(),
            max_retries: default_retries(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::Domain("eps must be positive".into()));
        }
        if self.multiplicities.contains(&0) {
            return Err(Error::Domain("multiplicities must be at least 1".into()));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::Domain("shrink factor must lie in (0, 1)".into()));
        }
        if let Some(s) = self.staircase {
            if !(s.delta0 > 0.0 && s.eta0 > 0.0) {
                return Err(Error::Domain("staircase offsets must be positive".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
struct Job {
    multiplicity: usize,
    eps: f64,
    side: Side,
    staircase: Staircase,
}

/// Children of `parent`, in staircase order.
fn emit(parent: &HalfCircle, job: &Job, scale: f64) -> Vec<HalfCircle> {
    let p = *parent.p().as_vector();
    let m = *parent.m().as_vector();
    let n = parent.normal();
    let st = job.staircase.scaled(scale);
    let side = job.side.sign();
    (1..=job.multiplicity)
        .map(|i| {
            let i = i as f64;
            let (delta, eta, sigma) = (i * st.delta0, i * st.eta0, i * st.delta0);
            let x = p * delta.cos() - m * delta.sin();
            let along = p * delta.sin() + m * delta.cos();
            let dir = along * eta.cos() - n * (side * eta.sin());
            let start = x * sigma.cos() - dir * sigma.sin();
            let mid = x * sigma.sin() + dir * sigma.cos();
            let start = UnitVec3::normalize(start).expect("unit combination");
            let mid = UnitVec3::normalize(mid).expect("unit combination");
            HalfCircle::new(start, mid, &Tolerances::default()).expect("orthogonal by construction")
        })
        .collect()
}

/// Disjointness, general position and vertices off every great circle.
fn validate_halves(halves: &[HalfCircle], tol: &Tolerances) -> std::result::Result<(), String> {
    match crossing_half_circle_pairs(halves, tol) {
        Ok(pairs) if pairs.is_empty() => {}
        Ok(pairs) => {
            let (i, j) = pairs[0];
            return Err(format!(
                "strength is {} (half-circles {i} and {j} cross)",
                pairs.len()
            ));
        }
        Err(e) => return Err(format!("strength check failed: {e}")),
    }
    let ends: Vec<_> = halves.iter().map(HalfCircle::p).collect();
    if let Some((i, j, k)) = general_position_violation(&ends, tol.tau_gp) {
        return Err(format!(
            "endpoints {i}, {j}, {k} are not in general position"
        ));
    }
    for (i, h) in halves.iter().enumerate() {
        let n = h.normal();
        for (j, q) in ends.iter().enumerate() {
            if i != j && n.dot(q.as_vector()).abs() <= tol.tau_gp {
                return Err(format!(
                    "endpoint {j} lies on the great circle of half-circle {i}"
                ));
            }
        }
    }
    Ok(())
}

const CONTAINMENT_SAMPLES: usize = 64;

fn contained(child: &HalfCircle, parent: &HalfCircle, eps: f64) -> bool {
    (0..=CONTAINMENT_SAMPLES).all(|s| {
        let t = std::f64::consts::PI * s as f64 / CONTAINMENT_SAMPLES as f64;
        parent.distance_to(&child.point_at(t)) <= eps
    })
}

/// Emitted half-circles plus, for each, the index of its parent in the
/// input list.
struct Level {
    halves: Vec<HalfCircle>,
    parent: Vec<usize>,
}

/// Blows up every item with a job, keeps the others, validates the union,
/// and retries with shrunken offsets.
fn run_level(
    items: &[(HalfCircle, Option<Job>)],
    shrink: f64,
    max_retries: usize,
    tol: &Tolerances,
) -> std::result::Result<Level, String> {
    let mut last = String::new();
    for attempt in 0..=max_retries {
        let scale = shrink.powi(attempt as i32);
        let mut level = Level {
            halves: Vec::new(),
            parent: Vec::new(),
        };
        for (idx, (h, job)) in items.iter().enumerate() {
            match job {
                Some(job) => {
                    for child in emit(h, job, scale) {
                        level.halves.push(child);
                        level.parent.push(idx);
                    }
                }
                None => {
                    level.halves.push(*h);
                    level.parent.push(idx);
                }
            }
        }
        let check = validate_halves(&level.halves, tol).and_then(|_| {
            for (child, &idx) in level.halves.iter().zip(&level.parent) {
                if let (parent, Some(job)) = &items[idx] {
                    if !contained(child, parent, job.eps) {
                        return Err(format!(
                            "a child of half-circle {idx} leaves its {}-neighborhood",
                            job.eps
                        ));
                    }
                }
            }
            Ok(())
        });
        match check {
            Ok(()) => return Ok(level),
            Err(e) => last = e,
        }
    }
    Err(format!("{last} after {} attempts", max_retries + 1))
}

/// Blows up every half-circle of `arr`; the result is again an arrangement.
pub fn blowup_arrangement(
    arr: &HalfCircleArrangement,
    plan: &BlowupPlan,
    tol: &Tolerances,
) -> Result<HalfCircleArrangement> {
    plan.validate()?;
    if plan.multiplicities.len() != arr.len() {
        return Err(Error::Domain(format!(
            "{} multiplicities for {} half-circles",
            plan.multiplicities.len(),
            arr.len()
        )));
    }
    let items: Vec<_> = arr
        .halves
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let multiplicity = plan.multiplicities[i];
            let job = Job {
                multiplicity,
                eps: plan.eps,
                side: plan.sides.get(i).copied().unwrap_or_default(),
                staircase: plan
                    .staircase
                    .unwrap_or_else(|| Staircase::for_neighborhood(plan.eps, multiplicity)),
            };
            (*h, Some(job))
        })
        .collect();
    let level =
        run_level(&items, plan.shrink, plan.max_retries, tol).map_err(Error::Construction)?;
    Ok(HalfCircleArrangement {
        halves: level.halves,
    })
}

/// Blows up `arr` and returns the antipodal configuration of the result.
pub fn blowup(
    arr: &HalfCircleArrangement,
    plan: &BlowupPlan,
    tol: &Tolerances,
) -> Result<(AntipodalConfig, HalfCircleAssignment)> {
    blowup_arrangement(arr, plan, tol)?.to_config(tol)
}

/// One node of a recursive construction: how to blow up one half-circle
/// and, optionally, what to do with each of its children.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanNode {
    pub multiplicity: usize,
    #[serde(default)]
    pub side: Side,
    /// Empty, or one entry per child; `None` keeps that child as emitted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Option<PlanNode>>,
}

impl PlanNode {
    pub fn leaf(multiplicity: usize) -> Self {
        Self {
            multiplicity,
            side: Side::Below,
            children: Vec::new(),
        }
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn with_children(mut self, children: Vec<Option<PlanNode>>) -> Self {
        self.children = children;
        self
    }

    fn depth(&self) -> usize {
        1 + self
            .children
            .iter()
            .flatten()
            .map(PlanNode::depth)
            .max()
            .unwrap_or(0)
    }
}

/// Neighborhood and offsets used at one depth.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelParams {
    pub eps: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub staircase: Option<Staircase>,
}

/// A seed arrangement and a tree of blowups over it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub seed: SeedArrangement,
    /// Parameters per depth; the last entry is reused for deeper levels.
    pub levels: Vec<LevelParams>,
    /// One node per seed half-circle.
    pub roots: Vec<PlanNode>,
    #[serde(default = "default_shrink")]
    pub shrink: f64,
    #[serde(default = "default_retries")]
    pub max_retries: usize,
}

impl ConstructionPlan {
    /// Single-level plan: blow up each seed half-circle once.
    pub fn flat(seed: SeedArrangement, multiplicities: &[usize], eps: f64) -> Self {
        Self {
            seed,
            levels: vec![LevelParams {
                eps,
                staircase: None,
            }],
            roots: multiplicities.iter().map(|&m| PlanNode::leaf(m)).collect(),
            shrink: default_shrink(),
            max_retries: default_retries(),
        }
    }

    /// `depth`-level plan: the first half-circle emitted at each level is
    /// blown up again into `inner` half-circles, with the neighborhood
    /// radius halving per level.
    pub fn nested(
        seed: SeedArrangement,
        multiplicities: &[usize],
        depth: usize,
        inner: usize,
        eps: f64,
    ) -> Self {
        fn chain(m: usize, below: usize, inner: usize) -> PlanNode {
            let node = PlanNode::leaf(m);
            if below == 0 {
                return node;
            }
            let mut children = vec![None; m];
            children[0] = Some(chain(inner, below - 1, inner));
            node.with_children(children)
        }
        let depth = depth.max(1);
        let mut plan = Self::flat(seed, multiplicities, eps);
        plan.levels = (0..depth)
            .map(|l| LevelParams {
                eps: eps * 0.5f64.powi(l as i32),
                staircase: None,
            })
            .collect();
        if let Some(&first) = multiplicities.first() {
            plan.roots[0] = chain(first, depth - 1, inner);
        }
        plan
    }

    pub fn depth(&self) -> usize {
        self.roots.iter().map(PlanNode::depth).max().unwrap_or(0)
    }

    /// Number of half-circles after the last level.
    pub fn total_pairs(&self) -> usize {
        fn count(node: &PlanNode) -> usize {
            if node.children.is_empty() {
                node.multiplicity
            } else {
                node.children
                    .iter()
                    .map(|c| c.as_ref().map_or(1, count))
                    .sum()
            }
        }
        self.roots.iter().map(count).sum()
    }

    fn level(&self, depth: usize) -> Result<LevelParams> {
        self.levels
            .get(depth)
            .or(self.levels.last())
            .copied()
            .ok_or_else(|| Error::Domain("construction plan has no level parameters".into()))
    }

    fn validate(&self) -> Result<()> {
        if self.roots.len() != self.seed.size() {
            return Err(Error::Domain(format!(
                "seed '{}' has {} half-circles but the plan has {} roots",
                self.seed,
                self.seed.size(),
                self.roots.len()
            )));
        }
        fn check(node: &PlanNode, path: &str) -> Result<()> {
            if node.multiplicity == 0 {
                return Err(Error::Domain(format!(
                    "node {path}: multiplicity must be at least 1"
                )));
            }
            if !node.children.is_empty() && node.children.len() != node.multiplicity {
                return Err(Error::Domain(format!(
                    "node {path}: {} children for multiplicity {}",
                    node.children.len(),
                    node.multiplicity
                )));
            }
            for (i, c) in node.children.iter().enumerate() {
                if let Some(c) = c {
                    check(c, &format!("{path}/{i}"))?;
                }
            }
            Ok(())
        }
        for (i, r) in self.roots.iter().enumerate() {
            check(r, &i.to_string())?;
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::Domain("shrink factor must lie in (0, 1)".into()));
        }
        for l in &self.levels {
            if !(l.eps > 0.0 && l.eps.is_finite()) {
                return Err(Error::Domain("eps must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Applies the plan level by level: the half-circles emitted at one level
/// form the arrangement for the next.
pub fn recursive_arrangement(
    plan: &ConstructionPlan,
    tol: &Tolerances,
) -> Result<HalfCircleArrangement> {
    plan.validate()?;
    let seed = plan.seed.build(tol)?;
    // (half-circle, pending node, tree path)
    let mut current: Vec<(HalfCircle, Option<&PlanNode>, String)> = seed
        .halves
        .iter()
        .zip(&plan.roots)
        .enumerate()
        .map(|(i, (h, node))| (*h, Some(node), i.to_string()))
        .collect();
    let mut depth = 0;
    while current.iter().any(|(_, node, _)| node.is_some()) {
        let params = plan.level(depth)?;
        let items: Vec<_> = current
            .iter()
            .map(|(h, node, _)| {
                let job = node.map(|node| Job {
                    multiplicity: node.multiplicity,
                    eps: params.eps,
                    side: node.side,
                    staircase: params.staircase.unwrap_or_else(|| {
                        Staircase::for_neighborhood(params.eps, node.multiplicity)
                    }),
                });
                (*h, job)
            })
            .collect();
        let level = run_level(&items, plan.shrink, plan.max_retries, tol).map_err(|e| {
            let paths: Vec<_> = current
                .iter()
                .filter(|(_, node, _)| node.is_some())
                .map(|(_, _, p)| p.as_str())
                .collect();
            Error::Construction(format!(
                "level {} (nodes {}): {e}",
                depth + 1,
                paths.join(", ")
            ))
        })?;
        // children of a node are consecutive in the level output
        let mut next = Vec::with_capacity(level.halves.len());
        let mut ordinal = vec![0usize; current.len()];
        for (h, &idx) in level.halves.iter().zip(&level.parent) {
            let (_, node, path) = &current[idx];
            let child_no = ordinal[idx];
            ordinal[idx] += 1;
            let (pending, child_path) = match node {
                Some(node) => (
                    node.children.get(child_no).and_then(Option::as_ref),
                    format!("{path}/{child_no}"),
                ),
                None => (None, path.clone()),
            };
            next.push((*h, pending, child_path));
        }
        current = next;
        depth += 1;
    }
    Ok(HalfCircleArrangement {
        halves: current.into_iter().map(|(h, _, _)| h).collect(),
    })
}

/// Recursive construction to an antipodal configuration of strength 0.
pub fn recursive_construct(
    plan: &ConstructionPlan,
    tol: &Tolerances,
) -> Result<(AntipodalConfig, HalfCircleAssignment)> {
    recursive_arrangement(plan, tol)?.to_config(tol)
}

/// Uniform random rotation (from a normalized Gaussian quaternion).
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Rotation3<f64> {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            let quat = nalgebra::UnitQuaternion::from_quaternion(nalgebra::Quaternion::new(
                q[0], q[1], q[2], q[3],
            ));
            return quat.to_rotation_matrix();
        }
    }
}

fn rotated(v: &UnitVec3, rot: &Rotation3<f64>) -> UnitVec3 {
    UnitVec3::normalize(rot * v.as_vector()).expect("rotation of a unit vector")
}

/// Applies one rotation to a configuration and its assignment.
pub fn rotate_construction(
    config: &AntipodalConfig,
    asg: &HalfCircleAssignment,
    rot: &Rotation3<f64>,
    tol: &Tolerances,
) -> Result<(AntipodalConfig, HalfCircleAssignment)> {
    let base: Vec<_> = config.base().iter().map(|p| rotated(p, rot)).collect();
    let mids: Vec<_> = asg.midpoints().iter().map(|m| rotated(m, rot)).collect();
    let config = double(&base, tol)?;
    let asg = HalfCircleAssignment::new(&config, &mids, tol)?;
    Ok((config, asg))
}

fn jitter<R: Rng + ?Sized>(v: &UnitVec3, magnitude: f64, rng: &mut R) -> UnitVec3 {
    loop {
        let g = Vector3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        let axis = g - v.as_vector() * v.as_vector().dot(&g);
        if let Some(axis) = UnitVec3::normalize(axis).filter(|_| axis.norm() > 1e-3) {
            let angle = rng.random_range(0.0..=magnitude);
            return rotate(v, &axis, angle);
        }
    }
}

/// Moves every base point by at most `magnitude` radians and re-validates
/// general position.
pub fn perturb_config<R: Rng + ?Sized>(
    config: &AntipodalConfig,
    magnitude: f64,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<AntipodalConfig> {
    if magnitude == 0.0 {
        return Ok(config.clone());
    }
    let base: Vec<_> = config
        .base()
        .iter()
        .map(|p| jitter(p, magnitude, rng))
        .collect();
    double(&base, tol).map_err(|e| Error::Perturbation(e.to_string()))
}

/// Moves every base point and midpoint by at most `magnitude` radians and
/// re-validates general position and strength 0.
pub fn perturb<R: Rng + ?Sized>(
    config: &AntipodalConfig,
    asg: &HalfCircleAssignment,
    magnitude: f64,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<(AntipodalConfig, HalfCircleAssignment)> {
    if magnitude == 0.0 {
        return Ok((config.clone(), asg.clone()));
    }
    let moved = perturb_config(config, magnitude, rng, tol)?;
    let mids: Vec<_> = asg
        .midpoints()
        .iter()
        .map(|m| jitter(m, magnitude, rng))
        .collect();
    let new_asg = HalfCircleAssignment::new(&moved, &mids, tol)
        .map_err(|e| Error::Perturbation(e.to_string()))?;
    let s = crate::hill::strength(&moved, &new_asg, tol)
        .map_err(|e| Error::Perturbation(e.to_string()))?;
    if s != 0 {
        return Err(Error::Perturbation(format!(
            "perturbed assignment has strength {s}"
        )));
    }
    Ok((moved, new_asg))
}
