//! Two-disk orthographic rendering: the left disk shows the hemisphere
//! `z >= 0` seen from `+z`, the right disk the hemisphere `z < 0` seen from
//! `-z` (mirrored in `x`), so antipodal points sit at mirrored positions.

use std::fmt::Write;

use nalgebra::Vector3;

use crate::hill::{crossing_total, Curve, Drawing};
use crate::sphere::{Tolerances, UnitVec3};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Projection {
    #[default]
    Orthographic,
}

pub const SEGMENTS_PER_CURVE: usize = 96;

const RADIUS: f64 = 200.0;
const MARGIN: f64 = 20.0;
const TOP: f64 = 40.0;

fn disk_center(back: bool) -> (f64, f64) {
    let cx = MARGIN
        + RADIUS
        + if back {
            2.0 * RADIUS + 2.0 * MARGIN
        } else {
            0.0
        };
    (cx, TOP + RADIUS)
}

fn project(v: &Vector3<f64>, back: bool) -> (f64, f64) {
    let (cx, cy) = disk_center(back);
    let x = if back { -v.x } else { v.x };
    (cx + RADIUS * x, cy - RADIUS * v.y)
}

fn is_back(v: &Vector3<f64>) -> bool {
    v.z < 0.0
}

fn sample_curve(d: &Drawing, u: usize, v: usize, curve: &Curve) -> Vec<Vector3<f64>> {
    let a = *d.vertices()[u].as_vector();
    let b = *d.vertices()[v].as_vector();
    let (start, dir, span) = match curve {
        Curve::Arc => {
            let span = a.dot(&b).clamp(-1.0, 1.0).acos();
            let dir = (b - a * a.dot(&b)).normalize();
            (a, dir, span)
        }
        Curve::HalfCircle { midpoint } => (a, *midpoint.as_vector(), std::f64::consts::PI),
    };
    (0..=SEGMENTS_PER_CURVE)
        .map(|s| {
            let t = span * s as f64 / SEGMENTS_PER_CURVE as f64;
            start * t.cos() + dir * t.sin()
        })
        .collect()
}

/// SVG path data, split into one subpath per hemisphere visit.
fn path_data(points: &[Vector3<f64>]) -> String {
    let mut out = String::new();
    let mut prev: Option<&Vector3<f64>> = None;
    for p in points {
        match prev {
            None => {
                let (x, y) = project(p, is_back(p));
                let _ = write!(out, "M{x:.2},{y:.2}");
            }
            Some(q) if is_back(q) != is_back(p) => {
                // close the old subpath on the rim and open a new one there
                let s = q.z / (q.z - p.z);
                let rim = UnitVec3::normalize(q + (p - q) * s)
                    .map(|r| *r.as_vector())
                    .unwrap_or(*p);
                let (x0, y0) = project(&rim, is_back(q));
                let (x1, y1) = project(&rim, is_back(p));
                let (x, y) = project(p, is_back(p));
                let _ = write!(out, " L{x0:.2},{y0:.2} M{x1:.2},{y1:.2} L{x:.2},{y:.2}");
            }
            Some(_) => {
                let (x, y) = project(p, is_back(p));
                let _ = write!(out, " L{x:.2},{y:.2}");
            }
        }
        prev = Some(p);
    }
    out
}

fn pair_color(d: &Drawing, v: usize) -> String {
    match d.pair_of(v) {
        Some(w) => {
            let slot = v.min(w);
            let k = d.vertex_count().max(2) / 2;
            let rank = d.pairing()[..slot]
                .iter()
                .enumerate()
                .filter(|(i, p)| p.is_some_and(|j| *i < j))
                .count();
            format!("hsl({:.0},70%,45%)", 360.0 * rank as f64 / k as f64)
        }
        None => "#222".into(),
    }
}

/// Renders `d`; the annotation reports the crossing count, or says it is
/// undetermined when a predicate is degenerate.
pub fn export_svg(d: &Drawing, _projection: Projection, tol: &Tolerances) -> String {
    let width = 4.0 * RADIUS + 4.0 * MARGIN;
    let height = 2.0 * RADIUS + TOP + MARGIN;
    let crossings = match crossing_total(d, tol) {
        Ok(c) => c.to_string(),
        Err(_) => "undetermined".into(),
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        "<style>.edge{{fill:none;stroke:#345;stroke-width:1}}.half-circle{{stroke:#c33;stroke-width:1.6}}.rim{{fill:#fafafa;stroke:#999}}</style>"
    );
    for back in [false, true] {
        let (cx, cy) = disk_center(back);
        let _ = writeln!(
            out,
            r#"<circle class="rim" cx="{cx}" cy="{cy}" r="{RADIUS}"/>"#
        );
        let label = if back {
            "z < 0 (from below)"
        } else {
            "z >= 0 (from above)"
        };
        let _ = writeln!(
            out,
            r#"<text x="{cx}" y="{}" text-anchor="middle" font-size="12">{label}</text>"#,
            TOP - 8.0
        );
    }
    for e in d.edges() {
        let class = match e.curve {
            Curve::Arc => "edge arc",
            Curve::HalfCircle { .. } => "edge half-circle",
        };
        let pts = sample_curve(d, e.u, e.v, &e.curve);
        let _ = writeln!(
            out,
            r#"<path class="{class}" data-u="{}" data-v="{}" d="{}"/>"#,
            e.u,
            e.v,
            path_data(&pts)
        );
    }
    for (i, v) in d.vertices().iter().enumerate() {
        let p = v.as_vector();
        let (x, y) = project(p, is_back(p));
        let _ = writeln!(
            out,
            r#"<circle class="vertex" data-index="{i}" cx="{x:.2}" cy="{y:.2}" r="4" fill="{}"/>"#,
            pair_color(d, i)
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="annotation" x="{MARGIN}" y="18" font-size="14">{} on {} vertices, crossings: {crossings}</text>"#,
        d.kind(),
        d.vertex_count()
    );
    out.push_str("</svg>\n");
    out
}
