//! Compares geometric crossing counts against the closed forms that apply to
//! a drawing's kind.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::count::{count_crossings, CrossingReport};
use super::drawing::{Drawing, DrawingKind};
use super::formulas::{
    dn_crossings, half_circle_increment, hill_number, m_nt_target, per_vertex_target,
};
use crate::error::Result;
use crate::sphere::Tolerances;

/// Identifier of the closed form behind a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaId {
    /// Total equals the Hill number of the vertex count.
    Eq1,
    /// Arc-arc crossings equal `k(k-1)(k-2)(k-3)/4`.
    ThmDn,
    /// A half-circle crosses `(k-1)(k-2)/2` arcs.
    ThmDnHalf,
    /// `M_{n,t}` total equals `H(n) - t(k-1)(k-2)/2 + s`.
    CorMnt,
    /// Per-vertex participation equals `(n-2)^2 (n-4) / 16`.
    CorB,
    /// Vertex deletion leaves the Hill number of `n - 1`.
    CorC,
    /// Apex addition yields the Hill number of `n + 1`.
    CorD,
    /// Per-vertex tallies sum to four times the total.
    Sum4,
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub formula: FormulaId,
    /// Vertex or edge index for per-item checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<usize>,
    pub predicted: u64,
    pub observed: u64,
    pub pass: bool,
}

impl Check {
    fn new(formula: FormulaId, subject: Option<usize>, predicted: u64, observed: u64) -> Self {
        Self {
            formula,
            subject,
            predicted,
            observed,
            pass: predicted == observed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: DrawingKind,
    pub vertex_count: usize,
    pub total: usize,
    /// Crossings among the half-circles themselves.
    pub strength: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip)]
    pub crossings: Option<CrossingReport>,
}

impl VerificationReport {
    pub fn check(&self, formula: FormulaId) -> Option<&Check> {
        self.checks.iter().find(|c| c.formula == formula)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Counts `d` and evaluates every closed form applicable to its kind.
pub fn verify(d: &Drawing, tol: &Tolerances) -> Result<VerificationReport> {
    let report = count_crossings(d, tol)?;
    Ok(verify_report(d, report))
}

/// Evaluates the checks for an already computed crossing report.
pub fn verify_report(d: &Drawing, report: CrossingReport) -> VerificationReport {
    let n = d.vertex_count() as u64;
    let total = report.total as u64;
    let edges = d.edges();
    let mut checks = Vec::new();

    let mut arc_arc = 0u64;
    let mut strength = 0u64;
    let mut half_hits = vec![0u64; edges.len()];
    for &(i, j) in &report.pairs {
        match (edges[i].is_half_circle(), edges[j].is_half_circle()) {
            (false, false) => arc_arc += 1,
            (true, true) => strength += 1,
            (true, false) => half_hits[i] += 1,
            (false, true) => half_hits[j] += 1,
        }
    }

    checks.push(Check::new(
        FormulaId::Sum4,
        None,
        4 * total,
        report.per_vertex.iter().sum::<usize>() as u64,
    ));

    let antipodal = matches!(
        d.kind(),
        DrawingKind::Mn | DrawingKind::Mnt { .. } | DrawingKind::Kn
    );
    if antipodal {
        let k = n / 2;
        checks.push(Check::new(FormulaId::ThmDn, None, dn_crossings(k), arc_arc));
        for (i, e) in edges.iter().enumerate() {
            if e.is_half_circle() {
                checks.push(Check::new(
                    FormulaId::ThmDnHalf,
                    Some(i),
                    half_circle_increment(k),
                    half_hits[i],
                ));
            }
        }
    }

    match d.kind() {
        DrawingKind::Mn | DrawingKind::Geodesic => {}
        DrawingKind::Mnt { t } => {
            if let Ok(target) = m_nt_target(n, t as u64) {
                checks.push(Check::new(
                    FormulaId::CorMnt,
                    None,
                    target + strength,
                    total,
                ));
            }
        }
        DrawingKind::Kn => {
            if let Ok(h) = hill_number(n) {
                checks.push(Check::new(FormulaId::Eq1, None, h, total));
            }
            if let Ok(per) = per_vertex_target(n) {
                for (v, &obs) in report.per_vertex.iter().enumerate() {
                    checks.push(Check::new(FormulaId::CorB, Some(v), per, obs as u64));
                }
            }
        }
        DrawingKind::KnMinusVertex => {
            if let Ok(h) = hill_number(n) {
                checks.push(Check::new(FormulaId::CorC, None, h, total));
            }
        }
        DrawingKind::KnPlusApex => {
            if let Ok(h) = hill_number(n) {
                checks.push(Check::new(FormulaId::CorD, None, h, total));
            }
        }
    }

    let passed = checks.iter().all(|c| c.pass);
    VerificationReport {
        kind: d.kind(),
        vertex_count: d.vertex_count(),
        total: report.total,
        strength: strength as usize,
        checks,
        passed,
        crossings: Some(report),
    }
}
