//! Region characterization inside a convex hull of parameters.
//!
//! [`region_witnesses`] computes a witness set valid for every parameter of a
//! hull. [`algorithm2`] cuts the hull into the classes of the induced line
//! arrangement and walks them, collecting the cycles whose cutout cells cover
//! the non-finite part. [`algorithm1`] instead covers the hull with
//! characteristic cells of probe parameters.

mod algo1;
mod algo2;
mod hull;
mod report;
mod witnesses;

pub use algo1::{algorithm1, DecompositionCell};
pub use algo2::{
    algorithm2, algorithm2_detailed, graph_cycles, line_generators, select_next_class, Algorithm2Run, ClassFlag,
    CycleSearch, SuccessorGraph, Walker,
};
pub use hull::HullSpec;
pub use report::{CutoutReport, ReportHeader};
pub use witnesses::{
    region_witnesses, region_witnesses_default, tau_bar, tau_bar_star, Provenance, RegionWitnesses,
    DEFAULT_BLOWUP_FACTOR, DEFAULT_VERTEX_BUDGET,
};

use thiserror::Error;

use srs_core::dynamics::DynamicsError;
use srs_core::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid hull: {0}")]
    InvalidHull(String),
    #[error("region iteration not stationary: {size} points exceed the limit {limit}")]
    NonStationary { size: usize, limit: usize },
    #[error("operation supports dimension 2 only, got {0}")]
    DimensionUnsupported(usize),
    #[error("classes {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
}
