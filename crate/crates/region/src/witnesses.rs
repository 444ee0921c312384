use num_traits::ToPrimitive;
use rustc_hash::FxHashSet;
use serde::Serialize;

use super::{HullSpec, RegionError};
use srs_core::dynamics::{witness_set, DynamicsError, LatticePoint, ParameterVector};
use srs_core::rational::{floor, Rational};

pub const DEFAULT_BLOWUP_FACTOR: i64 = 4;
pub const DEFAULT_VERTEX_BUDGET: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    RegionIteration,
    Union,
    UserSupplied,
}

/// A finite set of witnesses shared by every parameter of a hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionWitnesses {
    points: Vec<LatticePoint>,
    provenance: Provenance,
}

impl RegionWitnesses {
    pub fn new(mut points: Vec<LatticePoint>, provenance: Provenance) -> Self {
        points.sort();
        points.dedup();
        Self { points, provenance }
    }

    /// Union of the witness sets of the hull corners. This is not a superset of
    /// the witnesses of interior points in general.
    pub fn vertex_union(hull: &HullSpec) -> Result<Self, RegionError> {
        let mut pts = Vec::new();
        for r in hull.vertex_parameters() {
            pts.extend(witness_set(&r)?.vertices().iter().cloned());
        }
        Ok(Self::new(pts, Provenance::Union))
    }

    pub fn user_supplied(points: Vec<LatticePoint>) -> Self {
        Self::new(points, Provenance::UserSupplied)
    }

    /// Sorted, without duplicates.
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn contains(&self, a: &LatticePoint) -> bool {
        self.points.binary_search(a).is_ok()
    }

    pub fn index_of(&self, a: &LatticePoint) -> Option<usize> {
        self.points.binary_search(a).ok()
    }
}

/// Floors of `r·a` over the hull corners, as `(min, max)`.
fn floor_range(corners: &[ParameterVector], a: &[i64]) -> Result<(i64, i64), DynamicsError> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for r in corners {
        let f = r.floor_dot(a)?;
        lo = lo.min(f);
        hi = hi.max(f);
    }
    Ok((lo, hi))
}

fn shifted(a: &[i64], m: i64) -> LatticePoint {
    let mut p = LatticePoint(a[1..].iter().copied().collect());
    p.0.push(-m);
    p
}

fn tau_bar_at(corners: &[ParameterVector], a: &LatticePoint, out: &mut Vec<LatticePoint>) -> Result<(), DynamicsError> {
    let (lo, hi) = floor_range(corners, a.entries())?;
    for m in lo..=hi {
        if m == i64::MIN {
            return Err(DynamicsError::Overflow);
        }
        out.push(shifted(a.entries(), m));
    }
    Ok(())
}

fn tau_bar_star_at(
    corners: &[ParameterVector],
    a: &LatticePoint,
    out: &mut Vec<LatticePoint>,
) -> Result<(), DynamicsError> {
    let start = out.len();
    tau_bar_at(corners, &a.checked_neg()?, out)?;
    for p in &mut out[start..] {
        *p = p.checked_neg()?;
    }
    Ok(())
}

/// All images `τ_r(a)` for `r` in the hull: `(a_2, …, a_d, −m)` for every
/// integer `m` between the smallest and largest floor of `r·a` at the corners.
pub fn tau_bar(hull: &HullSpec, a: &LatticePoint) -> Result<Vec<LatticePoint>, RegionError> {
    if a.dim() != hull.dim() {
        return Err(DynamicsError::DimensionMismatch {
            expected: hull.dim(),
            found: a.dim(),
        }
        .into());
    }
    let mut out = Vec::new();
    tau_bar_at(&hull.vertex_parameters(), a, &mut out)?;
    Ok(out)
}

/// `−τ̄(−a)`.
pub fn tau_bar_star(hull: &HullSpec, a: &LatticePoint) -> Result<Vec<LatticePoint>, RegionError> {
    if a.dim() != hull.dim() {
        return Err(DynamicsError::DimensionMismatch {
            expected: hull.dim(),
            found: a.dim(),
        }
        .into());
    }
    let mut out = Vec::new();
    tau_bar_star_at(&hull.vertex_parameters(), a, &mut out)?;
    Ok(out)
}

pub fn region_witnesses_default(hull: &HullSpec) -> Result<RegionWitnesses, RegionError> {
    region_witnesses(
        hull,
        &Rational::from_integer(DEFAULT_BLOWUP_FACTOR.into()),
        DEFAULT_VERTEX_BUDGET,
    )
}

/// Closes `{±e_i}` under [`tau_bar`] and [`tau_bar_star`].
///
/// Gives up with `NonStationary` once the set grows beyond `blowup_factor`
/// times the largest witness set of a hull corner, or beyond `vertex_budget`.
pub fn region_witnesses(
    hull: &HullSpec,
    blowup_factor: &Rational,
    vertex_budget: usize,
) -> Result<RegionWitnesses, RegionError> {
    let corners = hull.vertex_parameters();
    let mut largest = 0usize;
    for r in &corners {
        largest = largest.max(witness_set(r)?.len());
    }
    let scaled = floor(&(blowup_factor * Rational::from_integer(largest.into())));
    let limit = scaled.to_usize().unwrap_or(usize::MAX).min(vertex_budget);

    let d = hull.dim();
    let mut seen: FxHashSet<LatticePoint> = FxHashSet::default();
    let mut stack = Vec::new();
    for i in 0..d {
        for sign in [1, -1] {
            let p = LatticePoint::unit(d, i, sign);
            seen.insert(p.clone());
            stack.push(p);
        }
    }
    let mut images = Vec::new();
    while let Some(a) = stack.pop() {
        images.clear();
        tau_bar_at(&corners, &a, &mut images)?;
        tau_bar_star_at(&corners, &a, &mut images)?;
        for b in images.drain(..) {
            if !seen.contains(&b) {
                seen.insert(b.clone());
                stack.push(b);
                if seen.len() > limit {
                    return Err(RegionError::NonStationary {
                        size: seen.len(),
                        limit,
                    });
                }
            }
        }
    }
    Ok(RegionWitnesses::new(
        seen.into_iter().collect(),
        Provenance::RegionIteration,
    ))
}
