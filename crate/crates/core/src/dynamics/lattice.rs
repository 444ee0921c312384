use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{tau, DynamicsError, ParameterVector};

/// An integer point `a ∈ Z^d`.
///
/// Entries are `i64`; every map in this crate checks for overflow and reports
/// [`DynamicsError::Overflow`] rather than wrapping.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub SmallVec<[i64; 4]>);

impl LatticePoint {
    pub fn new(entries: &[i64]) -> Self {
        Self(SmallVec::from_slice(entries))
    }

    pub fn zero(d: usize) -> Self {
        Self(SmallVec::from_elem(0, d))
    }

    /// The signed unit vector `sign · e_i`.
    pub fn unit(d: usize, i: usize, sign: i64) -> Self {
        let mut p = Self::zero(d);
        p.0[i] = sign;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn checked_neg(&self) -> Result<Self, DynamicsError> {
        self.0
            .iter()
            .map(|x| x.checked_neg().ok_or(DynamicsError::Overflow))
            .collect::<Result<SmallVec<_>, _>>()
            .map(Self)
    }

    /// Whether the last `d-1` entries of `self` equal the first `d-1` entries of `next`.
    pub fn shifts_into(&self, next: &Self) -> bool {
        self.dim() == next.dim() && self.0[1..] == next.0[..next.dim() - 1]
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        Self(SmallVec::from_vec(v))
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A shift-compatible tuple of distinct lattice points, read cyclically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<LatticePoint>", into = "Vec<LatticePoint>")]
pub struct Cycle {
    points: Vec<LatticePoint>,
}

impl Cycle {
    pub fn new(points: Vec<LatticePoint>) -> Result<Self, DynamicsError> {
        let Some(first) = points.first() else {
            return Err(DynamicsError::InvalidCycle("empty cycle".into()));
        };
        let d = first.dim();
        if d == 0 {
            return Err(DynamicsError::InvalidCycle("zero-dimensional points".into()));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != d) {
            return Err(DynamicsError::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
        let n = points.len();
        for i in 0..n {
            let (a, b) = (&points[i], &points[(i + 1) % n]);
            if !a.shifts_into(b) {
                return Err(DynamicsError::InvalidCycle(format!("{a} does not shift into {b}")));
            }
        }
        let mut sorted: Vec<&LatticePoint> = points.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(DynamicsError::InvalidCycle("repeated point".into()));
        }
        Ok(Self { points })
    }

    /// Builds a cycle without checking shift compatibility. Used for
    /// reporting tuples that failed validation.
    pub(crate) fn new_unchecked(points: Vec<LatticePoint>) -> Self {
        Self { points }
    }

    pub fn trivial(d: usize) -> Self {
        Self {
            points: vec![LatticePoint::zero(d)],
        }
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.points.len() == 1 && self.points[0].is_zero()
    }

    /// The rotation starting at the lexicographically smallest point.
    pub fn normalized(&self) -> Self {
        let start = (0..self.points.len())
            .min_by(|&i, &j| self.points[i].cmp(&self.points[j]))
            .unwrap_or(0);
        let mut points = self.points.clone();
        points.rotate_left(start);
        Self { points }
    }

    /// Whether `tau(r, ·)` maps every point to its cyclic successor.
    pub fn is_cycle_of(&self, r: &ParameterVector) -> Result<bool, DynamicsError> {
        let n = self.points.len();
        for i in 0..n {
            if tau(r, &self.points[i])? != self.points[(i + 1) % n] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl TryFrom<Vec<LatticePoint>> for Cycle {
    type Error = DynamicsError;
    fn try_from(points: Vec<LatticePoint>) -> Result<Self, Self::Error> {
        Self::new(points)
    }
}

impl From<Cycle> for Vec<LatticePoint> {
    fn from(c: Cycle) -> Self {
        c.points
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}
