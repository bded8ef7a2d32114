//! Antipodal geodesic drawings of complete graphs on the unit sphere with
//! the Hill number of crossings.

pub mod constructions;
pub mod corpus;
mod error;
pub mod hill;
pub mod io;
pub mod montecarlo;
pub mod sphere;

pub use error::{Error, Result};
pub use hill::{
    AntipodalConfig, CrossingReport, Drawing, DrawingKind, Edge, HalfCircleAssignment,
    VerificationReport,
};
pub use sphere::{GeodesicArc, HalfCircle, Tolerances, UnitVec3};
