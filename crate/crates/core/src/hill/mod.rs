//! Antipodal drawings of `M_n`, `M_{n,t}` and `K_n`, their crossing counts
//! and the closed forms they must match.

mod aggregated;
mod count;
mod drawing;
mod formulas;
mod verify;

pub use aggregated::{aggregated_crossing_pairs, count_crossings_aggregated};
pub use count::{count_crossings, crossing_total, report_from_pairs, CrossingReport};
pub use drawing::{
    add_apex, build_dn, config_margin, crossing_half_circle_pairs, delete_vertex, double,
    extend_full, extend_partial, geodesic_complete, strength, AntipodalConfig, Curve, Drawing,
    DrawingKind, Edge, HalfCircleAssignment, Provenance,
};
pub use formulas::{
    dn_crossings, half_circle_increment, hill_number, m_nt_target, per_vertex_target,
};
pub use verify::{verify, verify_report, Check, FormulaId, VerificationReport};
