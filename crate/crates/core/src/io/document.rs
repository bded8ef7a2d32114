//! JSON documents for drawings and verification reports.
//!
//! Coordinates are written as the shortest decimal that reads back to the
//! same binary64 value, so a parsed drawing counts exactly like the one that
//! was written.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hill::{Curve, Drawing, DrawingKind, Edge, Provenance, VerificationReport};
use crate::sphere::{Tolerances, UnitVec3};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub index: usize,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveType {
    Arc,
    HalfCircle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub curve: CurveType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub midpoint: Option<[f64; 3]>,
}

/// On-disk form of a `Drawing`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingDocument {
    pub format_version: u32,
    /// One of `M_n`, `M_n_t`, `K_n`, `K_n_minus_vertex`, `K_n_plus_apex`,
    /// `geodesic`.
    pub kind: String,
    /// Number of missing matching edges, for `M_n_t` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub vertices: Vec<VertexRecord>,
    #[serde(default)]
    pub pairing: Vec<[usize; 2]>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub provenance: Provenance,
}

fn kind_name(kind: DrawingKind) -> (&'static str, Option<usize>) {
    match kind {
        DrawingKind::Mn => ("M_n", None),
        DrawingKind::Mnt { t } => ("M_n_t", Some(t)),
        DrawingKind::Kn => ("K_n", None),
        DrawingKind::KnMinusVertex => ("K_n_minus_vertex", None),
        DrawingKind::KnPlusApex => ("K_n_plus_apex", None),
        DrawingKind::Geodesic => ("geodesic", None),
    }
}

fn parse_kind(name: &str, t: Option<usize>) -> Result<DrawingKind> {
    let kind = match (name, t) {
        ("M_n", None) => DrawingKind::Mn,
        ("M_n_t", Some(t)) => DrawingKind::Mnt { t },
        ("M_n_t", None) => return Err(Error::Document("kind: M_n_t needs field 't'".into())),
        ("K_n", None) => DrawingKind::Kn,
        ("K_n_minus_vertex", None) => DrawingKind::KnMinusVertex,
        ("K_n_plus_apex", None) => DrawingKind::KnPlusApex,
        ("geodesic", None) => DrawingKind::Geodesic,
        (_, Some(_))
            if [
                "M_n",
                "K_n",
                "K_n_minus_vertex",
                "K_n_plus_apex",
                "geodesic",
            ]
            .contains(&name) =>
        {
            return Err(Error::Document(format!("t: not allowed for kind {name}")))
        }
        (other, _) => return Err(Error::Document(format!("kind: unknown kind '{other}'"))),
    };
    Ok(kind)
}

impl DrawingDocument {
    pub fn from_drawing(d: &Drawing) -> Self {
        let (kind, t) = kind_name(d.kind());
        let vertices = d
            .vertices()
            .iter()
            .enumerate()
            .map(|(index, v)| VertexRecord {
                index,
                x: v.x(),
                y: v.y(),
                z: v.z(),
            })
            .collect();
        let pairing = d
            .pairing()
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.filter(|&j| i < j).map(|j| [i, j]))
            .collect();
        let edges = d
            .edges()
            .iter()
            .map(|e| match e.curve {
                Curve::Arc => EdgeRecord {
                    u: e.u,
                    v: e.v,
                    curve: CurveType::Arc,
                    midpoint: None,
                },
                Curve::HalfCircle { midpoint } => EdgeRecord {
                    u: e.u,
                    v: e.v,
                    curve: CurveType::HalfCircle,
                    midpoint: Some(midpoint.to_array()),
                },
            })
            .collect();
        Self {
            format_version: FORMAT_VERSION,
            kind: kind.into(),
            t,
            vertices,
            pairing,
            edges,
            provenance: d.provenance().clone(),
        }
    }

    /// Validates the document and builds the drawing it describes.
    pub fn to_drawing(&self, tol: &Tolerances) -> Result<Drawing> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "format_version: unsupported version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        let kind = parse_kind(&self.kind, self.t)?;
        let n = self.vertices.len();
        let mut vertices = Vec::with_capacity(n);
        for (i, v) in self.vertices.iter().enumerate() {
            if v.index != i {
                return Err(Error::Document(format!(
                    "vertices[{i}].index: expected {i}, found {}",
                    v.index
                )));
            }
            let p = UnitVec3::new(v.x, v.y, v.z, tol)
                .map_err(|e| Error::Document(format!("vertices[{i}]: {e}")))?;
            vertices.push(p);
        }
        let mut pairing = vec![None; n];
        for (idx, &[a, b]) in self.pairing.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return Err(Error::Document(format!(
                    "pairing[{idx}]: invalid vertex pair [{a}, {b}]"
                )));
            }
            if pairing[a].is_some() || pairing[b].is_some() {
                return Err(Error::Document(format!(
                    "pairing[{idx}]: vertex paired twice"
                )));
            }
            pairing[a] = Some(b);
            pairing[b] = Some(a);
        }
        if matches!(
            kind,
            DrawingKind::Mn | DrawingKind::Mnt { .. } | DrawingKind::Kn
        ) && self.pairing.len() * 2 != n
        {
            return Err(Error::Document(format!(
                "pairing: kind {} needs every vertex paired ({} pairs for {n} vertices)",
                self.kind,
                self.pairing.len()
            )));
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (idx, e) in self.edges.iter().enumerate() {
            let edge = match (e.curve, e.midpoint) {
                (CurveType::Arc, None) => Edge::arc(e.u, e.v),
                (CurveType::HalfCircle, Some([x, y, z])) => {
                    let m = UnitVec3::new(x, y, z, tol)
                        .map_err(|err| Error::Document(format!("edges[{idx}].midpoint: {err}")))?;
                    Edge::half_circle(e.u, e.v, m)
                }
                (CurveType::Arc, Some(_)) => {
                    return Err(Error::Document(format!(
                        "edges[{idx}].midpoint: not allowed on an arc"
                    )))
                }
                (CurveType::HalfCircle, None) => {
                    return Err(Error::Document(format!(
                        "edges[{idx}].midpoint: required for a half-circle"
                    )))
                }
            };
            if e.u >= n || e.v >= n {
                return Err(Error::Document(format!(
                    "edges[{idx}]: endpoint out of range for {n} vertices"
                )));
            }
            edges.push(edge);
        }
        Drawing::new(vertices, pairing, kind, edges, self.provenance.clone(), tol).map_err(|e| {
            match e {
                Error::Document(_) => e,
                other => Error::Document(other.to_string()),
            }
        })
    }
}

pub fn serialize_drawing(d: &Drawing) -> Result<String> {
    Ok(serde_json::to_string_pretty(
        &DrawingDocument::from_drawing(d),
    )?)
}

/// Parses and validates a drawing document. JSON syntax and schema errors
/// carry line and column; semantic errors name the offending field.
pub fn parse_drawing(text: &str, tol: &Tolerances) -> Result<Drawing> {
    let doc: DrawingDocument = serde_json::from_str(text)
        .map_err(|e| Error::Document(format!("line {} column {}: {e}", e.line(), e.column())))?;
    doc.to_drawing(tol)
}

/// Verification outcome as written by `verify --report`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format_version: u32,
    #[serde(flatten)]
    pub report: VerificationReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossing_pairs: Option<Vec<[usize; 2]>>,
}

impl ReportDocument {
    pub fn new(report: VerificationReport, with_pairs: bool) -> Self {
        let crossing_pairs = with_pairs
            .then_some(report.crossings.as_ref())
            .flatten()
            .map(|c| c.pairs.iter().map(|&(i, j)| [i, j]).collect());
        Self {
            format_version: FORMAT_VERSION,
            report,
            crossing_pairs,
        }
    }
}
