//! Test oracles that share no code with the determinant predicates.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::Vector3;
use rand::Rng;
use rand_distr::StandardNormal;

use hilldraw::UnitVec3;

/// A great-circle curve `cos(t) s + sin(t) d` for `t` in `[0, span]`.
#[derive(Clone, Copy, Debug)]
pub struct Param {
    pub s: Vector3<f64>,
    pub d: Vector3<f64>,
    pub span: f64,
}

impl Param {
    pub fn arc(a: &UnitVec3, b: &UnitVec3) -> Self {
        let (a, b) = (*a.as_vector(), *b.as_vector());
        let d = (b - a * a.dot(&b)).normalize();
        Self {
            s: a,
            d,
            span: d.dot(&b).atan2(a.dot(&b)),
        }
    }

    pub fn half(p: &UnitVec3, m: &UnitVec3) -> Self {
        let (p, m) = (*p.as_vector(), *m.as_vector());
        Self {
            s: p,
            d: (m - p * p.dot(&m)).normalize(),
            span: PI,
        }
    }

    pub fn at(&self, t: f64) -> Vector3<f64> {
        self.s * t.cos() + self.d * t.sin()
    }

    fn angle_of(&self, x: &Vector3<f64>) -> f64 {
        x.dot(&self.d).atan2(x.dot(&self.s))
    }
}

/// Resolution below which the oracle declines to answer.
pub const ORACLE_RESOLUTION: f64 = 1e-7;

/// Whether the two open curves cross, found by bisecting the first curve
/// against the second curve's plane and then locating the hit by angle
/// along the second curve. `None` when the answer is within resolution of
/// changing. Each curve is shorter than a full circle, so it meets the other
/// great circle at most once in its interior.
pub fn oracle_cross(c1: &Param, c2: &Param) -> Option<bool> {
    let n2 = c2.s.cross(&c2.d);
    let f = |t: f64| n2.dot(&c1.at(t));
    let (f0, f1) = (f(0.0), f(c1.span));
    if f0.abs() < ORACLE_RESOLUTION || f1.abs() < ORACLE_RESOLUTION {
        return None;
    }
    if (f0 > 0.0) == (f1 > 0.0) {
        // no sign change, unless the curve dips through and back
        let mid = f(c1.span / 2.0);
        return if (mid > 0.0) == (f0 > 0.0) || mid.abs() < ORACLE_RESOLUTION {
            Some(false)
        } else {
            None
        };
    }
    let (mut lo, mut hi) = (0.0, c1.span);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (f0 > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = c1.at(0.5 * (lo + hi));
    let phi = c2.angle_of(&x);
    if phi.abs() < ORACLE_RESOLUTION || (phi - c2.span).abs() < ORACLE_RESOLUTION {
        return None;
    }
    Some(phi > 0.0 && phi < c2.span)
}

pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> UnitVec3 {
    loop {
        let g = Vector3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if g.norm() > 1e-6 {
            return UnitVec3::normalize(g).unwrap();
        }
    }
}
