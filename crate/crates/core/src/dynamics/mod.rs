//! Exact SRS dynamics for a single rational parameter.

mod lattice;
mod map;
mod param;
mod stability;
mod witness;

pub use lattice::{Cycle, LatticePoint};
pub use map::{orbit, orbit_with_default_cap, tau, tau_star, Orbit, DEFAULT_ORBIT_CAP};
pub use param::ParameterVector;
pub use stability::{is_interior, is_schur_stable};
pub use witness::{
    characteristic_cell, decide_finiteness, decide_on_graph, witness_set, witness_set_with_budget, FinitenessDecision,
    Verdict, WitnessGraph, DEFAULT_WITNESS_BUDGET,
};

pub use witness::characteristic_cell_of;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parameter vector must have at least one entry")]
    EmptyParameter,
    #[error("no repeat within {cap} steps")]
    CapExceeded { cap: usize },
    #[error("parameter is not an interior point of the eventually periodic region")]
    NotInterior,
    #[error("witness set exceeded the budget of {budget} vertices")]
    ResourceLimit { budget: usize },
    #[error("lattice coordinate overflow")]
    Overflow,
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
}
