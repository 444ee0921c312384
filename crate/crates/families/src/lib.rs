//! The parametrized cycle families `C_0 … C_6` along the line `r_1 = 1`, their
//! expected cutout polygons, and an exact certificate that a set of half-planes
//! cuts out a given flagged polygon.

mod certificate;
mod construct;
mod expected;

pub use certificate::{verify_equality, CheckResult, EqualityCertificate};
pub use construct::{concat, family_cycle, family_points, shuffle, FamilyCycle};
pub use expected::{expected_polygon, ExpectedFlag, ExpectedPolygon};

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use srs_core::dynamics::{Cycle, DynamicsError};
use srs_core::geometry::{cell_vertices_2d, cutout_polyhedron, FlaggedPolygon, GeometryError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    C0,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [Self::C0, Self::C1, Self::C2, Self::C3, Self::C4, Self::C5, Self::C6];

    /// Smallest admissible index.
    pub fn min_n(self) -> u32 {
        match self {
            Self::C0 | Self::C2 | Self::C6 => 1,
            _ => 2,
        }
    }

    /// Largest admissible index, if bounded.
    pub fn max_n(self) -> Option<u32> {
        match self {
            Self::C0 => Some(2),
            _ => None,
        }
    }

    pub fn check(self, n: u32) -> Result<(), FamilyError> {
        if n < self.min_n() || self.max_n().is_some_and(|m| n > m) {
            return Err(FamilyError::InvalidIndex { family: self, n });
        }
        Ok(())
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", *self as u8)
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digits = t.strip_prefix('C').or_else(|| t.strip_prefix('c')).unwrap_or(t);
        match digits.parse::<usize>() {
            Ok(k) if k < 7 => Ok(Self::ALL[k]),
            _ => Err(FamilyError::UnknownFamily(s.to_string())),
        }
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("index {n} is outside the range of family {family}")]
    InvalidIndex { family: FamilyId, n: u32 },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("no shift-compatible order: {0}")]
    NoCompatibleOrder(String),
    #[error("the polygon is unbounded")]
    UnboundedPolygon,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// Outcome of checking one family member against its expected polygon.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: FamilyId,
    pub n: u32,
    pub reordered: bool,
    pub pass: bool,
    /// The computed closure equals the expected vertices and flags.
    pub polygon_match: bool,
    pub certificate: EqualityCertificate,
    /// The expected polygon with every flag resolved.
    pub polygon: FlaggedPolygon,
    pub cycle: Cycle,
    /// Flags not read from the printed table, with how they were obtained.
    pub notes: Vec<String>,
}

/// Builds the cycle, its cutout cell and the expected polygon, and checks that
/// the cell is exactly that polygon.
pub fn verify_family(id: FamilyId, n: u32) -> Result<FamilyReport, FamilyError> {
    let fc = family_cycle(id, n)?;
    let cell = cutout_polyhedron(&fc.cycle)?;
    let computed = match cell_vertices_2d(&cell) {
        Ok(p) => p,
        Err(GeometryError::Unbounded) => return Err(FamilyError::UnboundedPolygon),
        Err(e) => return Err(e.into()),
    };
    let expected = expected_polygon(id, n)?;
    let (polygon, notes) = expected.resolve(&cell)?;
    let certificate = verify_equality(cell.constraints(), &polygon);
    let polygon_match = polygon == computed;
    Ok(FamilyReport {
        family: id,
        n,
        reordered: fc.reordered,
        pass: polygon_match && certificate.pass,
        polygon_match,
        certificate,
        polygon,
        cycle: fc.cycle,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_and_print() {
        assert_eq!("C4".parse::<FamilyId>().unwrap(), FamilyId::C4);
        assert_eq!("c0".parse::<FamilyId>().unwrap(), FamilyId::C0);
        assert!("C7".parse::<FamilyId>().is_err());
        assert_eq!(FamilyId::C6.to_string(), "C6");
        assert!(FamilyId::C0.check(3).is_err());
        assert!(FamilyId::C1.check(1).is_err());
        assert!(FamilyId::C6.check(1).is_ok());
    }

    #[test]
    fn small_members_verify() {
        for (id, n) in [
            (FamilyId::C6, 1),
            (FamilyId::C0, 1),
            (FamilyId::C2, 1),
            (FamilyId::C5, 2),
        ] {
            let r = verify_family(id, n).unwrap();
            assert!(r.pass, "{id}({n}): {:?}", r.certificate);
        }
    }
}
