//! Crossing count of `D_n` by great-circle pairs.
//!
//! For base points `p, q` the four arcs between `p, q, -p, -q` tile one great
//! circle (a basic 4-cycle). Two such circles meet in an antipodal pair of
//! points. This counter locates both points by angle along each circle and
//! attributes each to the arc containing it; an intersection landing on a
//! vertex (circles sharing a base point) contributes nothing. It shares no
//! code with the determinant predicates and serves as an oracle for them.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;

use super::drawing::{Drawing, DrawingKind};
use crate::error::{Error, Result};
use crate::sphere::Tolerances;

struct BasicCycle {
    /// orthonormal frame: `e1` is the first base point
    e1: Vector3<f64>,
    e2: Vector3<f64>,
    normal: Vector3<f64>,
    /// angle of the second base point, in `(0, pi)`
    theta: f64,
    /// vertex index at angles `0, theta, pi, theta + pi`
    corners: [usize; 4],
}

impl BasicCycle {
    fn new(d: &Drawing, p: usize, q: usize, k: usize) -> Self {
        let vp = d.vertices()[p].as_vector();
        let vq = d.vertices()[q].as_vector();
        let e1 = *vp;
        let e2 = (vq - e1 * e1.dot(vq)).normalize();
        let theta = vq.dot(&e2).atan2(vq.dot(&e1));
        Self {
            e1,
            e2,
            normal: e1.cross(&e2),
            theta,
            corners: [p, q, p + k, q + k],
        }
    }

    fn angle_of(&self, x: &Vector3<f64>) -> f64 {
        x.dot(&self.e2).atan2(x.dot(&self.e1)).rem_euclid(TAU)
    }

    /// Arc (as a vertex pair) whose interior holds angle `phi`, or `None`
    /// when `phi` sits on a corner within `margin`.
    fn locate(&self, phi: f64, margin: f64) -> Result<Option<(usize, usize)>> {
        let stops = [0.0, self.theta, PI, self.theta + PI, TAU];
        if stops.iter().any(|&stop| (phi - stop).abs() <= margin) {
            return Ok(None);
        }
        for (s, &stop) in stops.iter().enumerate() {
            if s + 1 < stops.len() && phi > stop && phi < stops[s + 1] {
                let a = self.corners[s];
                let b = self.corners[(s + 1) % 4];
                return Ok(Some((a.min(b), a.max(b))));
            }
        }
        Err(Error::Degenerate(format!(
            "angle {phi} could not be located"
        )))
    }
}

/// Crossing pairs of a drawing produced by `build_dn`, located by
/// intersecting basic 4-cycles. Sorted like `CrossingReport::pairs`.
pub fn aggregated_crossing_pairs(d: &Drawing, tol: &Tolerances) -> Result<Vec<(usize, usize)>> {
    let n = d.vertex_count();
    let k = n / 2;
    let canonical = d.kind() == DrawingKind::Mn
        && n.is_multiple_of(2)
        && (0..k).all(|i| d.pair_of(i) == Some(i + k));
    if !canonical {
        return Err(Error::DegenerateInput(
            "aggregated counting needs an M_n drawing in doubled layout".into(),
        ));
    }
    let cycles: Vec<((usize, usize), BasicCycle)> = (0..k)
        .flat_map(|p| (p + 1..k).map(move |q| (p, q)))
        .map(|(p, q)| ((p, q), BasicCycle::new(d, p, q, k)))
        .collect();
    // an intersection is a vertex only when two circles share a base point;
    // anything else must be well inside an arc
    let margin = tol.tau_gp;
    let mut pairs = Vec::new();
    for (a, (_, c1)) in cycles.iter().enumerate() {
        for (_, c2) in cycles.iter().skip(a + 1) {
            let x = c1.normal.cross(&c2.normal);
            let len = x.norm();
            if len <= tol.tau_gp {
                return Err(Error::Degenerate("two basic 4-cycles coincide".into()));
            }
            let x = x / len;
            for dir in [x, -x] {
                let on1 = c1.locate(c1.angle_of(&dir), margin)?;
                let on2 = c2.locate(c2.angle_of(&dir), margin)?;
                match (on1, on2) {
                    (Some(e), Some(f)) => {
                        let i = d.edge_index(e.0, e.1).expect("cycle arcs are edges");
                        let j = d.edge_index(f.0, f.1).expect("cycle arcs are edges");
                        pairs.push((i.min(j), i.max(j)));
                    }
                    (None, None) => {}
                    _ => {
                        return Err(Error::Degenerate(
                            "a cycle intersection lies on a vertex of only one cycle".into(),
                        ))
                    }
                }
            }
        }
    }
    pairs.sort_unstable();
    Ok(pairs)
}

/// Total crossings of `D_n` by great-circle pair attribution.
pub fn count_crossings_aggregated(d: &Drawing, tol: &Tolerances) -> Result<usize> {
    Ok(aggregated_crossing_pairs(d, tol)?.len())
}
