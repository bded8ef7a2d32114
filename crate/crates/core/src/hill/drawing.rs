//! Antipodal configurations, half-circle assignments and drawings.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::{
    general_position_violation, half_half_kernel, GeodesicArc, HalfCircle, Tolerances, UnitVec3,
};

/// A base set `P` of `k >= 3` points in general position together with the
/// doubled set `P` followed by the antipodes. Vertex `i` is paired with
/// `i + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntipodalConfig {
    base: Vec<UnitVec3>,
    doubled: Vec<UnitVec3>,
}

impl AntipodalConfig {
    pub fn k(&self) -> usize {
        self.base.len()
    }

    pub fn n(&self) -> usize {
        self.doubled.len()
    }

    pub fn base(&self) -> &[UnitVec3] {
        &self.base
    }

    pub fn doubled(&self) -> &[UnitVec3] {
        &self.doubled
    }

    /// Antipodal partner of vertex `i`.
    pub fn pair(&self, i: usize) -> usize {
        let k = self.k();
        if i < k {
            i + k
        } else {
            i - k
        }
    }

    fn pairing(&self) -> Vec<Option<usize>> {
        (0..self.n()).map(|i| Some(self.pair(i))).collect()
    }
}

/// Adds the antipode of every point of `base`.
pub fn double(base: &[UnitVec3], tol: &Tolerances) -> Result<AntipodalConfig> {
    if base.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "an antipodal configuration needs k >= 3 base points, got {}",
            base.len()
        )));
    }
    if let Some((i, j, k)) = general_position_violation(base, tol.tau_gp) {
        return Err(Error::Degenerate(format!(
            "base points {i}, {j}, {k} lie on a common great circle"
        )));
    }
    let doubled = base
        .iter()
        .copied()
        .chain(base.iter().map(|p| -*p))
        .collect();
    Ok(AntipodalConfig {
        base: base.to_vec(),
        doubled,
    })
}

/// One midpoint witness per antipodal pair; midpoint `i` belongs to the
/// half-circle from `base[i]` to its antipode.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfCircleAssignment {
    midpoints: Vec<UnitVec3>,
}

impl HalfCircleAssignment {
    /// Orthonormalizes every midpoint against its base point. Rejects a
    /// midpoint whose half-circle passes within `tau_gp` of another vertex.
    pub fn new(config: &AntipodalConfig, midpoints: &[UnitVec3], tol: &Tolerances) -> Result<Self> {
        if midpoints.len() != config.k() {
            return Err(Error::DegenerateInput(format!(
                "expected {} midpoints, got {}",
                config.k(),
                midpoints.len()
            )));
        }
        let halves = midpoints
            .iter()
            .zip(config.base())
            .map(|(m, p)| HalfCircle::new(*p, *m, tol))
            .collect::<Result<Vec<_>>>()?;
        let asg = Self {
            midpoints: halves.iter().map(HalfCircle::m).collect(),
        };
        asg.check_off_vertices(config, tol)?;
        Ok(asg)
    }

    pub fn midpoints(&self) -> &[UnitVec3] {
        &self.midpoints
    }

    pub fn half_circle(&self, config: &AntipodalConfig, i: usize) -> HalfCircle {
        HalfCircle::from_parts_unchecked(config.base()[i], self.midpoints[i])
    }

    pub fn half_circles(&self, config: &AntipodalConfig) -> Vec<HalfCircle> {
        (0..config.k())
            .map(|i| self.half_circle(config, i))
            .collect()
    }

    /// Flips midpoint `i` to its antipode, selecting the complementary half.
    pub fn flipped(&self, i: usize) -> Self {
        let mut midpoints = self.midpoints.clone();
        midpoints[i] = -midpoints[i];
        Self { midpoints }
    }

    fn check_off_vertices(&self, config: &AntipodalConfig, tol: &Tolerances) -> Result<()> {
        let k = config.k();
        for (i, h) in self.half_circles(config).iter().enumerate() {
            let n = h.normal();
            for (w, v) in config.base().iter().enumerate() {
                if w != i && n.dot(v.as_vector()).abs() <= tol.tau_gp {
                    return Err(Error::Degenerate(format!(
                        "half-circle {i} passes within tau_gp of vertex {w} or {}",
                        w + k
                    )));
                }
            }
        }
        Ok(())
    }
}

impl HalfCircle {
    pub(crate) fn from_parts_unchecked(p: UnitVec3, m: UnitVec3) -> Self {
        // callers hold midpoints that were orthonormalized on construction
        HalfCircle::new(p, m, &Tolerances::default())
            .unwrap_or_else(|_| panic!("midpoint {m} was not orthonormalized against {p}"))
    }
}

/// Number of crossing pairs among the assignment's half-circles.
pub fn strength(
    config: &AntipodalConfig,
    asg: &HalfCircleAssignment,
    tol: &Tolerances,
) -> Result<usize> {
    Ok(crossing_half_circle_pairs(&asg.half_circles(config), tol)?.len())
}

/// Index pairs `(i, j)`, `i < j`, of crossing half-circles.
pub fn crossing_half_circle_pairs(
    halves: &[HalfCircle],
    tol: &Tolerances,
) -> Result<Vec<(usize, usize)>> {
    let normals: Vec<_> = halves.iter().map(HalfCircle::normal).collect();
    let mut out = Vec::new();
    for i in 0..halves.len() {
        for j in i + 1..halves.len() {
            let p1 = halves[i].p();
            let p2 = halves[j].p();
            if (p1.as_vector() - p2.as_vector()).norm() <= tol.tau_gp
                || (p1.as_vector() + p2.as_vector()).norm() <= tol.tau_gp
            {
                return Err(Error::Degenerate(format!(
                    "half-circles {i} and {j} share an endpoint pair"
                )));
            }
            let crosses = half_half_kernel(
                &normals[i],
                p1.as_vector(),
                &normals[j],
                p2.as_vector(),
                tol.tau_sign,
            )
            .map_err(|_| Error::Degenerate(format!("half-circles {i} and {j} are degenerate")))?;
            if crosses {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Which graph a drawing claims to draw. Determines the expected edge set and
/// the closed-form crossing count used by verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DrawingKind {
    /// `K_n` minus the perfect matching of antipodal pairs.
    #[serde(rename = "M_n")]
    Mn,
    /// `K_n` minus `t` of the antipodal matching edges.
    #[serde(rename = "M_n_t")]
    Mnt { t: usize },
    /// Full antipodal drawing of `K_n`.
    #[serde(rename = "K_n")]
    Kn,
    /// A full antipodal drawing with one vertex removed.
    #[serde(rename = "K_n_minus_vertex")]
    KnMinusVertex,
    /// A full antipodal drawing plus one apex joined to every vertex.
    #[serde(rename = "K_n_plus_apex")]
    KnPlusApex,
    /// Geodesic drawing of `K_n` on arbitrary points, no antipodal structure.
    #[serde(rename = "geodesic")]
    Geodesic,
}

impl fmt::Display for DrawingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DrawingKind::Mn => write!(f, "M_n"),
            DrawingKind::Mnt { t } => write!(f, "M_n_t(t={t})"),
            DrawingKind::Kn => write!(f, "K_n"),
            DrawingKind::KnMinusVertex => write!(f, "K_n_minus_vertex"),
            DrawingKind::KnPlusApex => write!(f, "K_n_plus_apex"),
            DrawingKind::Geodesic => write!(f, "geodesic"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Curve {
    Arc,
    /// Half-circle between an antipodal pair through `midpoint`.
    HalfCircle {
        midpoint: UnitVec3,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub curve: Curve,
}

impl Edge {
    pub fn arc(u: usize, v: usize) -> Self {
        Self {
            u: u.min(v),
            v: u.max(v),
            curve: Curve::Arc,
        }
    }

    pub fn half_circle(u: usize, v: usize, midpoint: UnitVec3) -> Self {
        Self {
            u: u.min(v),
            v: u.max(v),
            curve: Curve::HalfCircle { midpoint },
        }
    }

    pub fn is_half_circle(&self) -> bool {
        matches!(self.curve, Curve::HalfCircle { .. })
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

/// Construction metadata carried through serialization.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_arrangement: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub history: Vec<String>,
}

/// A drawing on the sphere: vertices, an optional antipodal pairing and one
/// curve per edge. Construction validates that the edge set matches the
/// declared kind and that no vertex lies on another edge's curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Drawing {
    vertices: Vec<UnitVec3>,
    pairing: Vec<Option<usize>>,
    kind: DrawingKind,
    edges: Vec<Edge>,
    provenance: Provenance,
}

impl Drawing {
    pub fn new(
        vertices: Vec<UnitVec3>,
        pairing: Vec<Option<usize>>,
        kind: DrawingKind,
        mut edges: Vec<Edge>,
        provenance: Provenance,
        tol: &Tolerances,
    ) -> Result<Self> {
        edges.sort_by_key(|e| (e.u, e.v));
        let d = Self {
            vertices,
            pairing,
            kind,
            edges,
            provenance,
        };
        d.validate(tol)?;
        Ok(d)
    }

    pub fn vertices(&self) -> &[UnitVec3] {
        &self.vertices
    }

    pub fn pairing(&self) -> &[Option<usize>] {
        &self.pairing
    }

    pub fn pair_of(&self, v: usize) -> Option<usize> {
        self.pairing[v]
    }

    pub fn kind(&self) -> DrawingKind {
        self.kind
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn provenance_mut(&mut self) -> &mut Provenance {
        &mut self.provenance
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search_by_key(&key, |e| (e.u, e.v)).ok()
    }

    /// Geodesic arc of edge `i`, or `None` for a half-circle edge.
    pub fn arc(&self, i: usize) -> Option<GeodesicArc> {
        let e = &self.edges[i];
        match e.curve {
            Curve::Arc => Some(GeodesicArc::from_parts_unchecked(
                self.vertices[e.u],
                self.vertices[e.v],
            )),
            Curve::HalfCircle { .. } => None,
        }
    }

    /// Half-circle of edge `i`, oriented from its lower-index endpoint.
    pub fn half_circle(&self, i: usize) -> Option<HalfCircle> {
        let e = &self.edges[i];
        match e.curve {
            Curve::HalfCircle { midpoint } => Some(HalfCircle::from_parts_unchecked(
                self.vertices[e.u],
                midpoint,
            )),
            Curve::Arc => None,
        }
    }

    /// Recovers the configuration and assignment of a full antipodal drawing
    /// (kind `K_n`). Base points are the lower-index member of each pair.
    pub fn antipodal_parts(
        &self,
        tol: &Tolerances,
    ) -> Result<(AntipodalConfig, HalfCircleAssignment)> {
        if self.kind != DrawingKind::Kn {
            return Err(Error::DegenerateInput(format!(
                "antipodal parts need a K_n drawing, got {}",
                self.kind
            )));
        }
        let mut base = Vec::new();
        let mut midpoints = Vec::new();
        for (i, p) in self.vertices.iter().enumerate() {
            let j = self.pairing[i].expect("validated K_n drawing pairs every vertex");
            if i < j {
                let e = self
                    .edge_index(i, j)
                    .expect("validated K_n drawing has every edge");
                let Curve::HalfCircle { midpoint } = self.edges[e].curve else {
                    unreachable!("matching edges of K_n are half-circles")
                };
                base.push(*p);
                midpoints.push(midpoint);
            }
        }
        let config = double(&base, tol)?;
        let asg = HalfCircleAssignment::new(&config, &midpoints, tol)?;
        Ok((config, asg))
    }

    fn validate(&self, tol: &Tolerances) -> Result<()> {
        let n = self.vertices.len();
        if self.pairing.len() != n {
            return Err(Error::Document(format!(
                "pairing has {} entries for {n} vertices",
                self.pairing.len()
            )));
        }
        for (i, p) in self.pairing.iter().enumerate() {
            if let Some(j) = *p {
                if j >= n || j == i || self.pairing[j] != Some(i) {
                    return Err(Error::Document(format!(
                        "pairing of vertex {i} is not symmetric"
                    )));
                }
                let gap = (self.vertices[i].as_vector() + self.vertices[j].as_vector()).norm();
                if gap > 2.0 * tol.tau_norm {
                    return Err(Error::Document(format!(
                        "paired vertices {i} and {j} are not antipodal (gap {gap})"
                    )));
                }
            }
        }
        self.validate_edge_set()?;
        self.validate_curves(tol)
    }

    fn validate_edge_set(&self) -> Result<()> {
        let n = self.vertices.len();
        let unpaired = self.pairing.iter().filter(|p| p.is_none()).count();
        let needs_unpaired = match self.kind {
            DrawingKind::Mn | DrawingKind::Mnt { .. } | DrawingKind::Kn => Some(0),
            DrawingKind::KnMinusVertex | DrawingKind::KnPlusApex => Some(1),
            DrawingKind::Geodesic => Some(n),
        };
        if needs_unpaired != Some(unpaired) {
            return Err(Error::Document(format!(
                "kind {} expects {} unpaired vertices, found {unpaired}",
                self.kind,
                needs_unpaired.unwrap_or(0)
            )));
        }
        let mut seen = HashSet::new();
        let mut halves = 0usize;
        for (idx, e) in self.edges.iter().enumerate() {
            if e.u >= n || e.v >= n || e.u == e.v {
                return Err(Error::Document(format!(
                    "edges[{idx}] has invalid endpoints"
                )));
            }
            if !seen.insert((e.u, e.v)) {
                return Err(Error::Document(format!(
                    "edges[{idx}] duplicates edge ({}, {})",
                    e.u, e.v
                )));
            }
            let matching = self.pairing[e.u] == Some(e.v);
            match (matching, e.is_half_circle()) {
                (true, false) => {
                    return Err(Error::Document(format!(
                        "edges[{idx}] joins an antipodal pair but is not a half-circle"
                    )))
                }
                (false, true) => {
                    return Err(Error::Document(format!(
                        "edges[{idx}] is a half-circle between non-antipodal vertices"
                    )))
                }
                (true, true) => halves += 1,
                (false, false) => {}
            }
        }
        let pairs = (n - unpaired) / 2;
        let arcs_expected = n * (n - 1) / 2 - pairs;
        let arcs = self.edges.len() - halves;
        if arcs != arcs_expected {
            return Err(Error::Document(format!(
                "kind {} expects {arcs_expected} geodesic arcs, found {arcs}",
                self.kind
            )));
        }
        let halves_ok = match self.kind {
            DrawingKind::Mn | DrawingKind::Geodesic => halves == 0,
            DrawingKind::Mnt { t } => t <= pairs && halves == pairs - t,
            DrawingKind::Kn | DrawingKind::KnMinusVertex | DrawingKind::KnPlusApex => {
                halves == pairs
            }
        };
        if !halves_ok {
            return Err(Error::Document(format!(
                "kind {} does not admit {halves} half-circles over {pairs} antipodal pairs",
                self.kind
            )));
        }
        Ok(())
    }

    fn validate_curves(&self, tol: &Tolerances) -> Result<()> {
        for (idx, e) in self.edges.iter().enumerate() {
            let a = self.vertices[e.u];
            let b = self.vertices[e.v];
            match e.curve {
                Curve::Arc => {
                    let arc = GeodesicArc::new(a, b, tol)
                        .map_err(|err| Error::Document(format!("edges[{idx}]: {err}")))?;
                    let normal = arc.normal();
                    for (w, x) in self.vertices.iter().enumerate() {
                        if e.touches(w) || self.is_paired_with_endpoint(w, e) {
                            continue;
                        }
                        // det small and x strictly between a and b
                        if normal.dot(x.as_vector()).abs() <= tol.tau_gp && det_between(&a, &b, x) {
                            return Err(Error::Degenerate(format!(
                                "vertex {w} lies on edge ({}, {})",
                                e.u, e.v
                            )));
                        }
                    }
                }
                Curve::HalfCircle { midpoint } => {
                    if a.dot(&midpoint).abs() > tol.tau_perp {
                        return Err(Error::Document(format!(
                            "edges[{idx}]: midpoint is not orthogonal to its endpoint"
                        )));
                    }
                    let normal = a.cross(&midpoint);
                    for (w, x) in self.vertices.iter().enumerate() {
                        if e.touches(w) {
                            continue;
                        }
                        if normal.dot(x.as_vector()).abs() <= tol.tau_gp {
                            return Err(Error::Degenerate(format!(
                                "vertex {w} lies on the great circle of half-circle ({}, {})",
                                e.u, e.v
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn is_paired_with_endpoint(&self, w: usize, e: &Edge) -> bool {
        self.pairing[w].is_some_and(|p| e.touches(p))
    }
}

/// `x` projects strictly inside the short arc from `a` to `b`.
fn det_between(a: &UnitVec3, b: &UnitVec3, x: &UnitVec3) -> bool {
    let n = a.cross(b);
    let alpha = x.cross(b).dot(&n);
    let beta = a.cross(x).dot(&n);
    alpha > 0.0 && beta > 0.0
}

impl GeodesicArc {
    pub(crate) fn from_parts_unchecked(a: UnitVec3, b: UnitVec3) -> Self {
        GeodesicArc::new(a, b, &Tolerances::default())
            .unwrap_or_else(|_| panic!("arc endpoints {a} and {b} are degenerate"))
    }
}

/// Geodesic drawing of `M_n`: every non-antipodal pair joined by its
/// shorter great-circle arc.
pub fn build_dn(config: &AntipodalConfig, tol: &Tolerances) -> Result<Drawing> {
    let n = config.n();
    let mut edges = Vec::with_capacity(n * (n - 1) / 2 - config.k());
    for u in 0..n {
        for v in u + 1..n {
            if config.pair(u) != v {
                edges.push(Edge::arc(u, v));
            }
        }
    }
    Drawing::new(
        config.doubled().to_vec(),
        config.pairing(),
        DrawingKind::Mn,
        edges,
        Provenance::default(),
        tol,
    )
}

/// `D_n` plus the half-circles of every pair: a drawing of `K_n`.
pub fn extend_full(
    config: &AntipodalConfig,
    asg: &HalfCircleAssignment,
    tol: &Tolerances,
) -> Result<Drawing> {
    let all: Vec<usize> = (0..config.k()).collect();
    let mut d = extend_with(config, asg, &all, tol)?;
    d.kind = DrawingKind::Kn;
    Ok(d)
}

/// `D_n` plus the half-circles of the pairs in `subset` (base indices): a
/// drawing of `M_{n,t}` with `t = k - |subset|`.
pub fn extend_partial(
    config: &AntipodalConfig,
    asg: &HalfCircleAssignment,
    subset: &[usize],
    tol: &Tolerances,
) -> Result<Drawing> {
    extend_with(config, asg, subset, tol)
}

fn extend_with(
    config: &AntipodalConfig,
    asg: &HalfCircleAssignment,
    subset: &[usize],
    tol: &Tolerances,
) -> Result<Drawing> {
    let k = config.k();
    let chosen: HashSet<usize> = subset.iter().copied().collect();
    if chosen.len() != subset.len() || chosen.iter().any(|&i| i >= k) {
        return Err(Error::Domain(format!(
            "subset must contain distinct base indices below {k}"
        )));
    }
    if asg.midpoints.len() != k {
        return Err(Error::DegenerateInput(
            "assignment does not match configuration".into(),
        ));
    }
    let dn = build_dn(config, tol)?;
    let mut edges = dn.edges;
    let mut sorted: Vec<usize> = chosen.into_iter().collect();
    sorted.sort_unstable();
    for &i in &sorted {
        edges.push(Edge::half_circle(i, i + k, asg.midpoints[i]));
    }
    Drawing::new(
        dn.vertices,
        dn.pairing,
        DrawingKind::Mnt {
            t: k - sorted.len(),
        },
        edges,
        Provenance::default(),
        tol,
    )
}

/// Removes vertex `v` and its incident edges from a full antipodal drawing.
pub fn delete_vertex(d: &Drawing, v: usize, tol: &Tolerances) -> Result<Drawing> {
    if d.kind != DrawingKind::Kn {
        return Err(Error::DegenerateInput(format!(
            "delete_vertex needs a K_n drawing, got {}",
            d.kind
        )));
    }
    let n = d.vertex_count();
    if v >= n {
        return Err(Error::Domain(format!("vertex {v} out of range 0..{n}")));
    }
    let reindex = |w: usize| if w > v { w - 1 } else { w };
    let vertices = d
        .vertices
        .iter()
        .enumerate()
        .filter(|(w, _)| *w != v)
        .map(|(_, p)| *p)
        .collect();
    let pairing = d
        .pairing
        .iter()
        .enumerate()
        .filter(|(w, _)| *w != v)
        .map(|(_, p)| p.filter(|&q| q != v).map(reindex))
        .collect();
    let edges = d
        .edges
        .iter()
        .filter(|e| !e.touches(v))
        .map(|e| Edge {
            u: reindex(e.u),
            v: reindex(e.v),
            curve: e.curve,
        })
        .collect();
    let mut provenance = d.provenance.clone();
    provenance.history.push(format!("delete_vertex {v}"));
    Drawing::new(
        vertices,
        pairing,
        DrawingKind::KnMinusVertex,
        edges,
        provenance,
        tol,
    )
}

/// Adds vertex `q` joined by geodesic arcs to every vertex of the full
/// antipodal drawing.
///
/// `q` must be in general position with respect to the base set and must
/// avoid the great circle of every half-circle; otherwise a degenerate
/// configuration error is returned and the caller should resample `q`.
pub fn add_apex(
    config: &AntipodalConfig,
    asg: &HalfCircleAssignment,
    q: UnitVec3,
    tol: &Tolerances,
) -> Result<Drawing> {
    let mut points = config.base().to_vec();
    points.push(q);
    if let Some((i, j, l)) = general_position_violation(&points, tol.tau_gp) {
        return Err(Error::Degenerate(format!(
            "apex is not in general position (triple {i}, {j}, {l}); resample the apex"
        )));
    }
    for (i, h) in asg.half_circles(config).iter().enumerate() {
        if h.normal().dot(q.as_vector()).abs() <= tol.tau_gp {
            return Err(Error::Degenerate(format!(
                "apex lies on the great circle of half-circle {i}; resample the apex"
            )));
        }
    }
    let full = extend_full(config, asg, tol)?;
    let n = full.vertex_count();
    let mut vertices = full.vertices;
    vertices.push(q);
    let mut pairing = full.pairing;
    pairing.push(None);
    let mut edges = full.edges;
    edges.extend((0..n).map(|v| Edge::arc(v, n)));
    let provenance = Provenance {
        history: vec!["add_apex".into()],
        ..Provenance::default()
    };
    Drawing::new(
        vertices,
        pairing,
        DrawingKind::KnPlusApex,
        edges,
        provenance,
        tol,
    )
}

/// Geodesic drawing of `K_n` on arbitrary points (no pairing).
pub fn geodesic_complete(points: &[UnitVec3], tol: &Tolerances) -> Result<Drawing> {
    let n = points.len();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| Edge::arc(u, v)))
        .collect();
    Drawing::new(
        points.to_vec(),
        vec![None; n],
        DrawingKind::Geodesic,
        edges,
        Provenance::default(),
        tol,
    )
}

/// Smallest general-position margin over triples of distinct, non-paired
/// vertices of an antipodal configuration; equals the base-set margin.
pub fn config_margin(config: &AntipodalConfig) -> f64 {
    crate::sphere::general_position_margin(config.base())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn v(x: f64, y: f64, z: f64) -> UnitVec3 {
        UnitVec3::from_xyz(x, y, z)
    }

    fn frame() -> Vec<UnitVec3> {
        vec![v(1., 0., 0.), v(0., 1., 0.), v(0., 0., 1.)]
    }

    #[test]
    fn doubling_adds_exact_antipodes() {
        let c = double(&frame(), &tol()).unwrap();
        assert_eq!(c.n(), 6);
        assert_eq!(c.doubled()[3], v(-1., 0., 0.));
        assert_eq!(c.doubled()[4], v(0., -1., 0.));
        assert_eq!(c.doubled()[5], v(0., 0., -1.));
        assert_eq!(c.pair(1), 4);
        assert_eq!(c.pair(4), 1);
    }

    #[test]
    fn doubling_rejects_coplanar_base() {
        let base = [v(1., 0., 0.), v(0., 1., 0.), v(1., 1., 0.), v(0., 0., 1.)];
        assert!(matches!(double(&base, &tol()), Err(Error::Degenerate(_))));
        assert!(double(&frame()[..2], &tol()).is_err());
    }

    #[test]
    fn dn_edge_counts() {
        let c = double(&frame(), &tol()).unwrap();
        let d = build_dn(&c, &tol()).unwrap();
        assert_eq!(d.edges().len(), 12);
        assert_eq!(d.kind(), DrawingKind::Mn);
        for i in 0..d.edges().len() {
            assert!(d.arc(i).unwrap().length() < std::f64::consts::PI);
        }
        let c4 = double(
            &[
                v(1., 0.1, 0.2),
                v(0.1, 1., -0.3),
                v(-0.2, 0.3, 1.),
                v(1., 1., 1.),
            ],
            &tol(),
        )
        .unwrap();
        assert_eq!(build_dn(&c4, &tol()).unwrap().edges().len(), 24);
    }

    #[test]
    fn extend_full_has_all_edges() {
        let c = double(&frame(), &tol()).unwrap();
        let asg =
            HalfCircleAssignment::new(&c, &[v(0., 1., 1.), v(1., 0., -1.), v(1., -1., 0.)], &tol())
                .unwrap();
        let d = extend_full(&c, &asg, &tol()).unwrap();
        assert_eq!(d.edges().len(), 15);
        assert_eq!(d.kind(), DrawingKind::Kn);
        let (c2, a2) = d.antipodal_parts(&tol()).unwrap();
        assert_eq!(c2, c);
        assert_eq!(a2, asg);
    }

    #[test]
    fn midpoint_through_vertex_is_rejected() {
        let c = double(&frame(), &tol()).unwrap();
        // half-circle of vertex 0 through vertex 1
        let res =
            HalfCircleAssignment::new(&c, &[v(0., 1., 0.), v(1., 0., -1.), v(1., -1., 0.)], &tol());
        assert!(matches!(res, Err(Error::Degenerate(_))));
    }

    #[test]
    fn delete_vertex_reindexes() {
        let c = double(&frame(), &tol()).unwrap();
        let asg =
            HalfCircleAssignment::new(&c, &[v(0., 1., 1.), v(1., 0., -1.), v(1., -1., 0.)], &tol())
                .unwrap();
        let d = extend_full(&c, &asg, &tol()).unwrap();
        let e = delete_vertex(&d, 1, &tol()).unwrap();
        assert_eq!(e.vertex_count(), 5);
        assert_eq!(e.edges().len(), 10);
        assert_eq!(e.pair_of(3), None);
        assert_eq!(e.pair_of(0), Some(2));
        assert!(delete_vertex(&d, 6, &tol()).is_err());
        assert!(delete_vertex(&e, 0, &tol()).is_err());
    }

    #[test]
    fn apex_antipodal_to_base_point_is_rejected() {
        let c = double(
            &[v(1., 0.1, 0.2), v(0.1, 1., -0.3), v(-0.2, 0.3, 1.)],
            &tol(),
        )
        .unwrap();
        let asg =
            HalfCircleAssignment::new(&c, &[v(0., 1., 1.), v(1., 0., -1.), v(1., -1., 0.)], &tol())
                .unwrap();
        let q = -c.base()[0];
        assert!(matches!(
            add_apex(&c, &asg, q, &tol()),
            Err(Error::Degenerate(_))
        ));
        let ok = add_apex(&c, &asg, v(0.5, -0.7, 0.3), &tol()).unwrap();
        assert_eq!(ok.vertex_count(), 7);
        assert_eq!(ok.edges().len(), 21);
    }

    #[test]
    fn mismatched_edge_sets_are_rejected() {
        let c = double(&frame(), &tol()).unwrap();
        let d = build_dn(&c, &tol()).unwrap();
        let mut edges = d.edges().to_vec();
        edges.pop();
        let res = Drawing::new(
            d.vertices().to_vec(),
            d.pairing().to_vec(),
            DrawingKind::Mn,
            edges,
            Provenance::default(),
            &tol(),
        );
        assert!(matches!(res, Err(Error::Document(_))));
        let res = Drawing::new(
            d.vertices().to_vec(),
            vec![None; 6],
            DrawingKind::Mn,
            d.edges().to_vec(),
            Provenance::default(),
            &tol(),
        );
        assert!(res.is_err());
    }
}
