//! Exact shift radix system dynamics and rational polyhedral geometry.
//!
//! Everything in this crate works over exact rationals and integers. Parameters
//! are [`ParameterVector`]s of reduced fractions, lattice points are integer
//! vectors, and all geometry (cells, strips, arrangements) is evaluated without
//! floating point.
//!
//! The main entry points:
//!
//! * [`dynamics`]: the maps `tau` / `tau_star`, orbits, witness sets and the
//!   finiteness decision for a single parameter.
//! * [`geometry`]: convex cells with strict constraints, cutout cells of cycles,
//!   planar polygon extraction and 2D line arrangements.
//! * [`par`]: the data-parallel map used by the batch front ends, with a
//!   sequential fallback when the `parallel` feature is off.

pub mod dynamics;
pub mod geometry;
pub mod par;
pub mod rational;

pub use dynamics::{
    characteristic_cell, decide_finiteness, is_interior, orbit, tau, tau_star, witness_set, Cycle, DynamicsError,
    FinitenessDecision, LatticePoint, Orbit, ParameterVector, Verdict, WitnessGraph,
};
pub use geometry::{
    canonical_generator, cutout_polyhedron, CanonicalGenerator, ConvexCell, FlaggedPolygon, GeometryError,
    LinearConstraint, Relation,
};
pub use rational::{parse_rational, parse_rational_list, Rational};
