//! Drawing and report documents, and SVG export.

mod document;
mod svg;

pub use document::{
    parse_drawing, serialize_drawing, CurveType, DrawingDocument, EdgeRecord, ReportDocument,
    VertexRecord, FORMAT_VERSION,
};
pub use svg::{export_svg, Projection, SEGMENTS_PER_CURVE};
