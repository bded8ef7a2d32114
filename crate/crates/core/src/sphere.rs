//! Spherical primitives: unit vectors, orientation, geodesic arcs,
//! half-circles and the crossing predicates everything else is built on.
//!
//! Every crossing predicate reduces to the signs of a few 3x3 determinants.
//! For two great circles with normals `N1 = a x b` and `N2 = c x d` the
//! intersection direction is
//!
//! ```text
//! x = N1 x N2 = det(a,b,d) c - det(a,b,c) d = det(c,d,a) b - det(c,d,b) a
//! ```
//!
//! so the barycentric coefficients of `x` in each arc are determinants of
//! the input points, and no normalization or inverse trigonometry is needed.
//! A determinant whose magnitude is at most `tau_sign` is treated as
//! undecidable and reported as a degenerate configuration.

use std::fmt;
use std::ops::Neg;

use nalgebra::{Rotation3, Unit, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numeric margins used by every predicate.
/// Fields missing from a serialized value take their defaults.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Allowed deviation of `|v|^2` from 1.
    pub tau_norm: f64,
    /// Allowed `|p . m|` for a half-circle midpoint witness.
    pub tau_perp: f64,
    /// General-position margin on triple determinants.
    pub tau_gp: f64,
    /// Dead zone of sign predicates.
    pub tau_sign: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tau_norm: 1e-12,
            tau_perp: 1e-12,
            tau_gp: 1e-9,
            tau_sign: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [self.tau_norm, self.tau_perp, self.tau_gp, self.tau_sign];
        if all.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::Domain(
                "all tolerances must be positive and finite".into(),
            ));
        }
        if self.tau_sign >= self.tau_gp {
            return Err(Error::Domain("tau_sign must be smaller than tau_gp".into()));
        }
        Ok(())
    }
}

/// A point on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVec3(Vector3<f64>);

impl UnitVec3 {
    /// Checked constructor: the coordinates must already be unit length
    /// within `tau_norm`.
    pub fn new(x: f64, y: f64, z: f64, tol: &Tolerances) -> Result<Self> {
        let v = Vector3::new(x, y, z);
        let n2 = v.norm_squared();
        if !n2.is_finite() || (n2 - 1.0).abs() > tol.tau_norm {
            return Err(Error::DegenerateInput(format!(
                "({x}, {y}, {z}) is not a unit vector (|v|^2 = {n2})"
            )));
        }
        Ok(Self(v))
    }

    /// Normalizes an arbitrary vector; `None` for (near) zero input.
    pub fn normalize(v: Vector3<f64>) -> Option<Self> {
        let n = v.norm();
        (n.is_finite() && n > 1e-300).then(|| Self(v / n))
    }

    /// Normalizes `(x, y, z)`; panics on a zero vector. Intended for literals.
    pub fn from_xyz(x: f64, y: f64, z: f64) -> Self {
        Self::normalize(Vector3::new(x, y, z)).expect("zero vector")
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.0.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.0.y
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.0.z
    }

    #[inline]
    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    #[inline]
    pub fn to_array(self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }

    #[inline]
    pub fn dot(&self, other: &UnitVec3) -> f64 {
        self.0.dot(&other.0)
    }

    #[inline]
    pub fn cross(&self, other: &UnitVec3) -> Vector3<f64> {
        self.0.cross(&other.0)
    }

    /// The diametrically opposite point.
    #[inline]
    pub fn antipode(self) -> Self {
        Self(-self.0)
    }

    /// Angular distance in radians.
    pub fn angle_to(&self, other: &UnitVec3) -> f64 {
        let s = self.cross(other).norm();
        let c = self.dot(other);
        s.atan2(c)
    }
}

impl Neg for UnitVec3 {
    type Output = UnitVec3;

    fn neg(self) -> UnitVec3 {
        self.antipode()
    }
}

impl fmt::Display for UnitVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0.x, self.0.y, self.0.z)
    }
}

/// `det[p q r] = p . (q x r)`.
#[inline]
pub fn det(p: &UnitVec3, q: &UnitVec3, r: &UnitVec3) -> f64 {
    p.0.dot(&q.0.cross(&r.0))
}

/// The antipode `-p`.
pub fn antipode(p: UnitVec3) -> UnitVec3 {
    p.antipode()
}

/// Sign of `det[p q r]` with a dead zone of `tau_sign`.
pub fn orient(p: &UnitVec3, q: &UnitVec3, r: &UnitVec3, tol: &Tolerances) -> i8 {
    sign(det(p, q, r), tol.tau_sign)
}

#[inline]
fn sign(value: f64, dead_zone: f64) -> i8 {
    if value > dead_zone {
        1
    } else if value < -dead_zone {
        -1
    } else {
        0
    }
}

/// True iff no three of `points` lie on a common great circle, i.e. every
/// triple determinant exceeds `tau_gp` in magnitude.
pub fn is_general_position(points: &[UnitVec3], tol: &Tolerances) -> Result<bool> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "general position needs at least 3 points, got {}",
            points.len()
        )));
    }
    Ok(general_position_violation(points, tol.tau_gp).is_none())
}

/// First triple with `|det| <= margin`, if any. Vacuously `None` for fewer
/// than three points.
pub(crate) fn general_position_violation(
    points: &[UnitVec3],
    margin: f64,
) -> Option<(usize, usize, usize)> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            let c = points[i].cross(&points[j]);
            for (k, p) in points.iter().enumerate().skip(j + 1) {
                if c.dot(&p.0).abs() <= margin {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Smallest triple determinant magnitude; `f64::INFINITY` for fewer than
/// three points.
pub fn general_position_margin(points: &[UnitVec3]) -> f64 {
    let n = points.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let c = points[i].cross(&points[j]);
            for p in &points[j + 1..] {
                best = best.min(c.dot(&p.0).abs());
            }
        }
    }
    best
}

/// Rotates `v` about `axis` by `angle` radians (right-hand rule).
pub fn rotate(v: &UnitVec3, axis: &UnitVec3, angle: f64) -> UnitVec3 {
    let rot = Rotation3::from_axis_angle(&Unit::new_unchecked(axis.0), angle);
    let w = rot * v.0;
    UnitVec3(w / w.norm())
}

/// The shorter great-circle segment between two points that are neither
/// equal nor antipodal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicArc {
    a: UnitVec3,
    b: UnitVec3,
}

impl GeodesicArc {
    pub fn new(a: UnitVec3, b: UnitVec3, tol: &Tolerances) -> Result<Self> {
        if a.cross(&b).norm() <= tol.tau_gp {
            return Err(Error::Degenerate(format!(
                "arc endpoints {a} and {b} are equal or antipodal"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> UnitVec3 {
        self.a
    }

    pub fn b(&self) -> UnitVec3 {
        self.b
    }

    /// Unnormalized normal `a x b` of the supporting great circle.
    pub fn normal(&self) -> Vector3<f64> {
        self.a.cross(&self.b)
    }

    /// The arc between the antipodes of the endpoints.
    pub fn antipodal(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
        }
    }

    /// Arc length in radians, always in `(0, pi)`.
    pub fn length(&self) -> f64 {
        self.a.angle_to(&self.b)
    }

    /// Point at fraction `s` in `[0, 1]` of the way from `a` to `b`.
    pub fn point_at(&self, s: f64) -> UnitVec3 {
        let theta = self.length();
        let w = self.a.0 * ((1.0 - s) * theta).sin() + self.b.0 * (s * theta).sin();
        UnitVec3(w / w.norm())
    }
}

/// Half of a great circle from `p` through the witness `m` to `-p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfCircle {
    p: UnitVec3,
    m: UnitVec3,
}

impl HalfCircle {
    /// Builds a half-circle, projecting `m` onto the plane orthogonal to `p`
    /// and renormalizing.
    pub fn new(p: UnitVec3, m: UnitVec3, tol: &Tolerances) -> Result<Self> {
        let proj = m.0 - p.0 * p.0.dot(&m.0);
        let m = UnitVec3::normalize(proj)
            .filter(|_| proj.norm() > tol.tau_gp)
            .ok_or_else(|| {
                Error::Degenerate(format!("midpoint witness {m} is parallel to endpoint {p}"))
            })?;
        // one refinement step keeps |p . m| at rounding level
        let m = UnitVec3::normalize(m.0 - p.0 * p.0.dot(&m.0)).unwrap_or(m);
        if p.dot(&m).abs() > tol.tau_perp {
            return Err(Error::Degenerate(format!(
                "midpoint {m} not orthogonal to {p} after orthonormalization"
            )));
        }
        Ok(Self { p, m })
    }

    pub fn p(&self) -> UnitVec3 {
        self.p
    }

    pub fn m(&self) -> UnitVec3 {
        self.m
    }

    /// Unit normal `p x m` of the supporting great circle.
    pub fn normal(&self) -> Vector3<f64> {
        self.p.cross(&self.m)
    }

    /// The other half of the same great circle.
    pub fn complement(&self) -> Self {
        Self {
            p: self.p,
            m: -self.m,
        }
    }

    /// `cos t * p + sin t * m` for `t` in `[0, pi]`.
    pub fn point_at(&self, t: f64) -> UnitVec3 {
        let w = self.p.0 * t.cos() + self.m.0 * t.sin();
        UnitVec3(w / w.norm())
    }

    /// Angular distance from `x` to this (closed) half-circle.
    pub fn distance_to(&self, x: &UnitVec3) -> f64 {
        let n = self.normal();
        let h = x.0.dot(&n);
        let proj = x.0 - n * h;
        if proj.dot(&self.m.0) >= 0.0 && proj.norm() > 0.0 {
            h.abs().atan2(proj.norm())
        } else {
            x.angle_to(&self.p).min(x.angle_to(&-self.p))
        }
    }
}

/// Undecidable predicate: some determinant fell inside the dead zone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct DeadZone;

/// Arc-arc crossing from precomputed normals `n1 = a x b`, `n2 = c x d`.
#[inline]
pub(crate) fn arc_arc_kernel(
    n1: &Vector3<f64>,
    a: &Vector3<f64>,
    b: &Vector3<f64>,
    n2: &Vector3<f64>,
    c: &Vector3<f64>,
    d: &Vector3<f64>,
    dead_zone: f64,
) -> Result<bool, DeadZone> {
    let abc = sign(n1.dot(c), dead_zone);
    let abd = sign(n1.dot(d), dead_zone);
    let cda = sign(n2.dot(a), dead_zone);
    let cdb = sign(n2.dot(b), dead_zone);
    if abc == 0 || abd == 0 || cda == 0 || cdb == 0 {
        return Err(DeadZone);
    }
    // x = abd*c - abc*d = cda*b - cdb*a
    Ok(abd == -abc && cda == -cdb && abd == cda)
}

/// Half-circle/arc crossing; `nh = p x m`, `ne = c x d`.
#[inline]
pub(crate) fn half_arc_kernel(
    nh: &Vector3<f64>,
    p: &Vector3<f64>,
    ne: &Vector3<f64>,
    c: &Vector3<f64>,
    d: &Vector3<f64>,
    dead_zone: f64,
) -> Result<bool, DeadZone> {
    let hc = sign(nh.dot(c), dead_zone);
    let hd = sign(nh.dot(d), dead_zone);
    let ep = sign(ne.dot(p), dead_zone);
    if hc == 0 || hd == 0 || ep == 0 {
        return Err(DeadZone);
    }
    // x = hd*c - hc*d; its m-coefficient is ep
    Ok(hd == -hc && hd == ep)
}

/// Half-circle/half-circle crossing; `n1 = p1 x m1`, `n2 = p2 x m2`.
#[inline]
pub(crate) fn half_half_kernel(
    n1: &Vector3<f64>,
    p1: &Vector3<f64>,
    n2: &Vector3<f64>,
    p2: &Vector3<f64>,
    dead_zone: f64,
) -> Result<bool, DeadZone> {
    let s12 = sign(n1.dot(p2), dead_zone);
    let s21 = sign(n2.dot(p1), dead_zone);
    if s12 == 0 || s21 == 0 {
        return Err(DeadZone);
    }
    Ok(s12 == -s21)
}

fn same_or_antipodal(a: &UnitVec3, b: &UnitVec3, margin: f64) -> bool {
    (a.0 - b.0).norm() <= margin || (a.0 + b.0).norm() <= margin
}

fn coplanar(n1: &Vector3<f64>, n2: &Vector3<f64>, margin: f64) -> bool {
    let (l1, l2) = (n1.norm(), n2.norm());
    n1.cross(n2).norm() <= margin * l1 * l2
}

/// True iff the open arcs share an interior point.
///
/// Arcs sharing an endpoint, or with an endpoint of one antipodal to an
/// endpoint of the other, never cross. Arcs on a common great circle are a
/// degenerate configuration.
pub fn arcs_cross(e1: &GeodesicArc, e2: &GeodesicArc, tol: &Tolerances) -> Result<bool> {
    let (n1, n2) = (e1.normal(), e2.normal());
    if coplanar(&n1, &n2, tol.tau_gp) {
        return Err(Error::Degenerate(
            "arcs lie on a common great circle".into(),
        ));
    }
    for x in [&e1.a, &e1.b] {
        for y in [&e2.a, &e2.b] {
            if same_or_antipodal(x, y, tol.tau_gp) {
                return Ok(false);
            }
        }
    }
    arc_arc_kernel(&n1, &e1.a.0, &e1.b.0, &n2, &e2.a.0, &e2.b.0, tol.tau_sign).map_err(|_| {
        Error::Degenerate("an arc endpoint lies on the other arc's great circle".into())
    })
}

/// True iff the half-circle meets the open arc.
pub fn half_circle_crosses_arc(h: &HalfCircle, e: &GeodesicArc, tol: &Tolerances) -> Result<bool> {
    let (nh, ne) = (h.normal(), e.normal());
    if coplanar(&nh, &ne, tol.tau_gp) {
        return Err(Error::Degenerate(
            "half-circle and arc share a great circle".into(),
        ));
    }
    if [&e.a, &e.b]
        .into_iter()
        .any(|x| same_or_antipodal(x, &h.p, tol.tau_gp))
    {
        return Err(Error::Degenerate(
            "arc endpoint coincides with a half-circle endpoint".into(),
        ));
    }
    half_arc_kernel(&nh, &h.p.0, &ne, &e.a.0, &e.b.0, tol.tau_sign).map_err(|_| {
        Error::Degenerate(
            "arc endpoint or half-circle endpoint lies on the other great circle".into(),
        )
    })
}

/// True iff the two half-circles meet.
pub fn half_circles_cross(h1: &HalfCircle, h2: &HalfCircle, tol: &Tolerances) -> Result<bool> {
    let (n1, n2) = (h1.normal(), h2.normal());
    if coplanar(&n1, &n2, tol.tau_gp) {
        return Err(Error::Degenerate(
            "half-circles share a great circle".into(),
        ));
    }
    if same_or_antipodal(&h1.p, &h2.p, tol.tau_gp) {
        return Err(Error::Degenerate(
            "half-circles share an endpoint pair".into(),
        ));
    }
    half_half_kernel(&n1, &h1.p.0, &n2, &h2.p.0, tol.tau_sign).map_err(|_| {
        Error::Degenerate("a half-circle endpoint lies on the other great circle".into())
    })
}
