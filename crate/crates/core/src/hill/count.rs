//! Brute-force crossing counting over all edge pairs.
//!
//! Adjacent edges are skipped by index before any predicate runs, and so are
//! pairs of arcs with antipodal endpoints (known from the pairing map): such
//! arcs meet only on the great circle through the antipodal pair, at a
//! vertex, never in their interiors.
//!
//! Rows of the pair triangle are evaluated in parallel and concatenated in
//! row order, so the pair list and every total are independent of the
//! thread count.

use nalgebra::Vector3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::drawing::{Curve, Drawing};
use crate::error::{Error, Result};
use crate::sphere::{arc_arc_kernel, half_arc_kernel, half_half_kernel, DeadZone, Tolerances};

/// Crossings of a drawing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub total: usize,
    /// Crossings each edge takes part in.
    pub per_edge: Vec<usize>,
    /// Crossings involving an edge incident to each vertex.
    pub per_vertex: Vec<usize>,
    /// Crossing edge pairs `(i, j)` with `i < j`, sorted.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Copy)]
struct EdgeGeom {
    u: usize,
    v: usize,
    pu: Option<usize>,
    pv: Option<usize>,
    half: bool,
    a: Vector3<f64>,
    b: Vector3<f64>,
    normal: Vector3<f64>,
}

fn geometry(d: &Drawing) -> Vec<EdgeGeom> {
    let verts = d.vertices();
    d.edges()
        .iter()
        .map(|e| {
            let a = *verts[e.u].as_vector();
            let b = *verts[e.v].as_vector();
            let (half, normal) = match e.curve {
                Curve::Arc => (false, a.cross(&b)),
                Curve::HalfCircle { midpoint } => (true, a.cross(midpoint.as_vector())),
            };
            EdgeGeom {
                u: e.u,
                v: e.v,
                pu: d.pair_of(e.u),
                pv: d.pair_of(e.v),
                half,
                a,
                b,
                normal,
            }
        })
        .collect()
}

#[inline]
fn pair_crosses(e: &EdgeGeom, f: &EdgeGeom, dead_zone: f64) -> Result<bool, DeadZone> {
    if e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v {
        return Ok(false);
    }
    match (e.half, f.half) {
        (false, false) => {
            let antipodal = [e.pu, e.pv]
                .into_iter()
                .flatten()
                .any(|p| p == f.u || p == f.v);
            if antipodal {
                return Ok(false);
            }
            arc_arc_kernel(&e.normal, &e.a, &e.b, &f.normal, &f.a, &f.b, dead_zone)
        }
        (true, false) => half_arc_kernel(&e.normal, &e.a, &f.normal, &f.a, &f.b, dead_zone),
        (false, true) => half_arc_kernel(&f.normal, &f.a, &e.normal, &e.a, &e.b, dead_zone),
        (true, true) => half_half_kernel(&e.normal, &e.a, &f.normal, &f.a, dead_zone),
    }
}

fn row(geom: &[EdgeGeom], i: usize, dead_zone: f64) -> Result<Vec<usize>> {
    let e = &geom[i];
    let mut hits = Vec::new();
    for (j, f) in geom.iter().enumerate().skip(i + 1) {
        match pair_crosses(e, f, dead_zone) {
            Ok(true) => hits.push(j),
            Ok(false) => {}
            Err(DeadZone) => {
                return Err(Error::DegenerateEdgePair {
                    first: i,
                    second: j,
                })
            }
        }
    }
    Ok(hits)
}

fn row_count(geom: &[EdgeGeom], i: usize, dead_zone: f64) -> Result<usize> {
    let e = &geom[i];
    let mut hits = 0;
    for (j, f) in geom.iter().enumerate().skip(i + 1) {
        match pair_crosses(e, f, dead_zone) {
            Ok(true) => hits += 1,
            Ok(false) => {}
            Err(DeadZone) => {
                return Err(Error::DegenerateEdgePair {
                    first: i,
                    second: j,
                })
            }
        }
    }
    Ok(hits)
}

/// Counts every crossing of `d` and records per-edge and per-vertex
/// participation.
pub fn count_crossings(d: &Drawing, tol: &Tolerances) -> Result<CrossingReport> {
    let geom = geometry(d);
    let rows: Vec<Vec<usize>> = (0..geom.len())
        .into_par_iter()
        .map(|i| row(&geom, i, tol.tau_sign))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = rows
        .into_iter()
        .enumerate()
        .flat_map(|(i, hits)| hits.into_iter().map(move |j| (i, j)))
        .collect();
    Ok(report_from_pairs(d, pairs))
}

/// Total number of crossings without materializing the pair list.
pub fn crossing_total(d: &Drawing, tol: &Tolerances) -> Result<usize> {
    let geom = geometry(d);
    (0..geom.len())
        .into_par_iter()
        .map(|i| row_count(&geom, i, tol.tau_sign))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Builds the per-edge and per-vertex tallies for a sorted pair list.
pub fn report_from_pairs(d: &Drawing, pairs: Vec<(usize, usize)>) -> CrossingReport {
    let edges = d.edges();
    let mut per_edge = vec![0; edges.len()];
    let mut per_vertex = vec![0; d.vertex_count()];
    for &(i, j) in &pairs {
        per_edge[i] += 1;
        per_edge[j] += 1;
        for w in [edges[i].u, edges[i].v, edges[j].u, edges[j].v] {
            per_vertex[w] += 1;
        }
    }
    CrossingReport {
        total: pairs.len(),
        per_edge,
        per_vertex,
        pairs,
    }
}
