//! Exact convex cells, cutout polyhedra, planar polygons and line arrangements.

mod arrangement;
mod cell;
mod generator;
mod lp;
mod polygon;

pub use arrangement::{class_representative, Arrangement2D, ArrangementClass, ClassId};
pub use cell::{cell_contains, ConvexCell, LinearConstraint, Normalized, Relation};
pub use generator::{canonical_generator, cutout_polyhedron, CanonicalGenerator};
pub use lp::{cell_is_empty, max_strict_slack, SlackOutcome};
pub use polygon::{cell_vertices_2d, convex_combination, FlaggedPolygon, FlaggedVertex, Point2, PolygonShape};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero normal vector")]
    ZeroNormal,
    #[error("cycle is not shift compatible: {0}")]
    ShiftIncompatible(String),
    #[error("cell is unbounded")]
    Unbounded,
    #[error("cell is empty")]
    Empty,
    #[error("operation requires dimension 2, got {0}")]
    NotPlanar(usize),
    #[error("degenerate hull: {0}")]
    DegenerateHull(String),
    #[error("integer overflow in exact geometry")]
    Overflow,
    #[error("malformed cell record: {0}")]
    Malformed(String),
}
