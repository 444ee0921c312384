use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GeometryError;
use crate::rational::{common_denominator, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

/// `normal·x + offset {=, ≥, >} 0` with coprime integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearConstraint {
    relation: Relation,
    normal: Vec<BigInt>,
    offset: BigInt,
}

/// Result of normalizing a constraint; constant constraints collapse to a truth value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Constraint(LinearConstraint),
    True,
    False,
}

impl LinearConstraint {
    pub fn from_integers(mut normal: Vec<BigInt>, mut offset: BigInt, relation: Relation) -> Normalized {
        if normal.iter().all(Zero::is_zero) {
            let holds = match relation {
                Relation::Eq => offset.is_zero(),
                Relation::Ge => !offset.is_negative(),
                Relation::Gt => offset.is_positive(),
            };
            return if holds { Normalized::True } else { Normalized::False };
        }
        let g = normal.iter().fold(offset.abs(), |g, x| g.gcd(x));
        if !g.is_one() {
            normal.iter_mut().for_each(|x| *x /= &g);
            offset /= &g;
        }
        if relation == Relation::Eq && normal.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            normal.iter_mut().for_each(|x| *x = -&*x);
            offset = -offset;
        }
        Normalized::Constraint(Self {
            relation,
            normal,
            offset,
        })
    }

    pub fn from_rationals(normal: &[Rational], offset: &Rational, relation: Relation) -> Normalized {
        let q = common_denominator(normal.iter().chain(std::iter::once(offset)));
        let scale = |r: &Rational| r.numer() * (&q / r.denom());
        Self::from_integers(normal.iter().map(scale).collect(), scale(offset), relation)
    }

    pub fn from_i64(normal: &[i64], offset: i64, relation: Relation) -> Normalized {
        Self::from_integers(normal.iter().map(|&x| x.into()).collect(), offset.into(), relation)
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn is_strict(&self) -> bool {
        self.relation == Relation::Gt
    }

    /// `normal·x + offset`.
    pub fn value(&self, x: &[Rational]) -> Rational {
        let mut acc = BigRational::from_integer(self.offset.clone());
        for (a, xi) in self.normal.iter().zip(x) {
            if !a.is_zero() {
                acc += xi * a;
            }
        }
        acc
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let v = self.value(x);
        match self.relation {
            Relation::Eq => v.is_zero(),
            Relation::Ge => !v.is_negative(),
            Relation::Gt => v.is_positive(),
        }
    }

    /// Whether `x` lies on the boundary line `normal·x + offset = 0`.
    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.value(x).is_zero()
    }

    /// The same constraint with `>` relaxed to `≥`.
    pub fn closure(&self) -> Self {
        let mut c = self.clone();
        if c.relation == Relation::Gt {
            c.relation = Relation::Ge;
        }
        c
    }

    /// The row `[normal…, offset]` as rational strings.
    pub fn row_strings(&self) -> Vec<String> {
        self.normal
            .iter()
            .chain(std::iter::once(&self.offset))
            .map(|x| x.to_string())
            .collect()
    }
}

impl fmt::Debug for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, a) in self.normal.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if s.is_empty() {
                if a.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if a.is_negative() { " - " } else { " + " });
            }
            if !a.abs().is_one() {
                s.push_str(&a.abs().to_string());
            }
            s.push_str(&format!("r{}", i + 1));
        }
        if !self.offset.is_zero() {
            let sign = if self.offset.is_negative() { '-' } else { '+' };
            s.push_str(&format!(" {sign} {}", self.offset.abs()));
        }
        let rel = match self.relation {
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        };
        write!(f, "{s} {rel} 0")
    }
}

/// A conjunction of linear constraints in `R^d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConvexCell {
    dim: usize,
    constraints: Vec<LinearConstraint>,
    infeasible: bool,
}

impl ConvexCell {
    /// `R^d`.
    pub fn whole(dim: usize) -> Self {
        Self {
            dim,
            constraints: Vec::new(),
            infeasible: false,
        }
    }

    /// A cell known to be empty because a constant constraint is false.
    pub fn infeasible(dim: usize) -> Self {
        Self {
            dim,
            constraints: Vec::new(),
            infeasible: true,
        }
    }

    pub fn from_constraints(
        dim: usize,
        constraints: impl IntoIterator<Item = LinearConstraint>,
    ) -> Result<Self, GeometryError> {
        let mut cell = Self::whole(dim);
        for c in constraints {
            if c.dim() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
            cell.constraints.push(c);
        }
        cell.canonicalize();
        Ok(cell)
    }

    pub fn from_normalized(dim: usize, items: impl IntoIterator<Item = Normalized>) -> Self {
        let mut cell = Self::whole(dim);
        for n in items {
            match n {
                Normalized::Constraint(c) => {
                    debug_assert_eq!(c.dim(), dim);
                    cell.constraints.push(c);
                }
                Normalized::True => {}
                Normalized::False => cell.infeasible = true,
            }
        }
        cell.canonicalize();
        cell
    }

    fn canonicalize(&mut self) {
        if self.infeasible {
            self.constraints.clear();
            return;
        }
        self.constraints.sort();
        self.constraints.dedup();
        // A strict constraint implies the closed one with the same coefficients.
        let strict: std::collections::HashSet<(&[BigInt], &BigInt)> = self
            .constraints
            .iter()
            .filter(|c| c.relation == Relation::Gt)
            .map(|c| (c.normal.as_slice(), &c.offset))
            .collect();
        let redundant: Vec<bool> = self
            .constraints
            .iter()
            .map(|c| c.relation == Relation::Ge && strict.contains(&(c.normal.as_slice(), &c.offset)))
            .collect();
        let mut it = redundant.into_iter();
        self.constraints.retain(|_| !it.next().unwrap_or(false));
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    /// True when a constant constraint evaluated to false at construction.
    pub fn is_trivially_infeasible(&self) -> bool {
        self.infeasible
    }

    pub fn push(&mut self, c: Normalized) {
        match c {
            Normalized::Constraint(c) => self.constraints.push(c),
            Normalized::True => {}
            Normalized::False => self.infeasible = true,
        }
        self.canonicalize();
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut cell = Self {
            dim: self.dim,
            constraints: self.constraints.iter().chain(&other.constraints).cloned().collect(),
            infeasible: self.infeasible || other.infeasible,
        };
        cell.canonicalize();
        Ok(cell)
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool, GeometryError> {
        if x.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(!self.infeasible && self.constraints.iter().all(|c| c.holds(x)))
    }

    pub fn is_empty(&self) -> bool {
        super::cell_is_empty(self)
    }

    /// All strict constraints relaxed.
    pub fn closure(&self) -> Self {
        let mut cell = Self {
            dim: self.dim,
            constraints: self.constraints.iter().map(LinearConstraint::closure).collect(),
            infeasible: self.infeasible,
        };
        cell.canonicalize();
        cell
    }

    /// Drops constraints that do not touch the closure of a bounded planar cell.
    ///
    /// Unbounded, empty or non-planar cells are returned unchanged.
    pub fn simplified_2d(&self) -> Self {
        let Ok(poly) = super::cell_vertices_2d(self) else {
            return self.clone();
        };
        let pts: Vec<&[Rational]> = poly.vertices.iter().map(|v| &v.point[..]).collect();
        let full = poly.shape == super::PolygonShape::Polygon;
        let keep = |c: &LinearConstraint| {
            let tight = pts.iter().filter(|p| c.is_tight(p)).count();
            match c.relation {
                Relation::Gt => tight >= 1,
                _ if full => tight >= 2,
                _ => tight >= 1,
            }
        };
        let mut cell = Self {
            dim: self.dim,
            constraints: self.constraints.iter().filter(|c| keep(c)).cloned().collect(),
            infeasible: false,
        };
        cell.canonicalize();
        cell
    }

    pub fn to_record(&self) -> CellRecord {
        if self.infeasible {
            return CellRecord {
                eq: vec![],
                ge: vec![],
                gt: vec![vec!["0".to_string(); self.dim + 1]],
            };
        }
        let rows = |rel| {
            self.constraints
                .iter()
                .filter(|c| c.relation == rel)
                .map(LinearConstraint::row_strings)
                .collect()
        };
        CellRecord {
            eq: rows(Relation::Eq),
            ge: rows(Relation::Ge),
            gt: rows(Relation::Gt),
        }
    }

    pub fn from_record(rec: &CellRecord) -> Result<Self, GeometryError> {
        let mut dim = None;
        let mut items = Vec::new();
        for (rows, rel) in [
            (&rec.eq, Relation::Eq),
            (&rec.ge, Relation::Ge),
            (&rec.gt, Relation::Gt),
        ] {
            for row in rows {
                if row.is_empty() {
                    return Err(GeometryError::Malformed("empty row".into()));
                }
                let d = row.len() - 1;
                if *dim.get_or_insert(d) != d {
                    return Err(GeometryError::Malformed("rows of different length".into()));
                }
                let vals = row
                    .iter()
                    .map(|s| parse_rational(s).map_err(|e| GeometryError::Malformed(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                items.push(LinearConstraint::from_rationals(&vals[..d], &vals[d], rel));
            }
        }
        let dim = dim.ok_or_else(|| GeometryError::Malformed("cell record without rows".into()))?;
        Ok(Self::from_normalized(dim, items))
    }
}

/// Whether every constraint of `cell` holds at `point`.
pub fn cell_contains(cell: &ConvexCell, point: &[Rational]) -> Result<bool, GeometryError> {
    cell.contains(point)
}

impl fmt::Debug for ConvexCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ConvexCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.infeasible {
            return write!(f, "{{0 > 0}}");
        }
        if self.constraints.is_empty() {
            return write!(f, "R^{}", self.dim);
        }
        let parts: Vec<String> = self.constraints.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Serialized form `{"eq": [[a…, b]…], "ge": […], "gt": […]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub eq: Vec<Vec<String>>,
    pub ge: Vec<Vec<String>>,
    pub gt: Vec<Vec<String>>,
}

impl Serialize for ConvexCell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexCell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = CellRecord::deserialize(d)?;
        Self::from_record(&rec).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn c(n: &[i64], b: i64, rel: Relation) -> LinearConstraint {
        match LinearConstraint::from_i64(n, b, rel) {
            Normalized::Constraint(c) => c,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn normalization() {
        let k = c(&[2, 4], 6, Relation::Ge);
        assert_eq!((k.normal(), k.offset()), (&[1.into(), 2.into()][..], &3.into()));
        let k = c(&[-2, 4], 6, Relation::Eq);
        assert_eq!((k.normal(), k.offset()), (&[1.into(), (-2).into()][..], &(-3).into()));
        let k = c(&[-2, 4], 6, Relation::Gt);
        assert_eq!(k.normal()[0], (-1).into());
        assert_eq!(LinearConstraint::from_i64(&[0, 0], 1, Relation::Gt), Normalized::True);
        assert_eq!(LinearConstraint::from_i64(&[0, 0], 0, Relation::Gt), Normalized::False);
        let k = LinearConstraint::from_rationals(&[rat(1, 2), rat(1, 3)], &rat(-1, 6), Relation::Ge);
        assert_eq!(k, Normalized::Constraint(c(&[3, 2], -1, Relation::Ge)));
    }

    fn unit_cell() -> ConvexCell {
        // [-1, 0) × [0, 1)
        ConvexCell::from_constraints(
            2,
            [
                c(&[1, 0], 1, Relation::Ge),
                c(&[-1, 0], 0, Relation::Gt),
                c(&[0, 1], 0, Relation::Ge),
                c(&[0, -1], 1, Relation::Gt),
            ],
        )
        .unwrap()
    }

    #[test]
    fn containment() {
        let cell = unit_cell();
        assert!(cell.contains(&[rat(-1, 3), rat(1, 3)]).unwrap());
        assert!(!cell.contains(&[rat(0, 1), rat(0, 1)]).unwrap());
        assert!(cell.contains(&[rat(-1, 1), rat(0, 1)]).unwrap());
        assert!(ConvexCell::whole(2).contains(&[rat(7, 1), rat(-9, 2)]).unwrap());
        assert!(cell.contains(&[rat(0, 1)]).is_err());
    }

    #[test]
    fn dedup_and_subsumption() {
        let cell = ConvexCell::from_constraints(
            1,
            [
                c(&[1], 0, Relation::Ge),
                c(&[2], 0, Relation::Gt),
                c(&[1], 0, Relation::Ge),
            ],
        )
        .unwrap();
        assert_eq!(cell.constraints().len(), 1);
        assert!(cell.constraints()[0].is_strict());
    }

    #[test]
    fn record_round_trip() {
        let cell = unit_cell();
        let json = serde_json::to_string(&cell).unwrap();
        assert_eq!(
            json,
            r#"{"eq":[],"ge":[["0","1","0"],["1","0","1"]],"gt":[["-1","0","0"],["0","-1","1"]]}"#
        );
        let back: ConvexCell = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cell);
        let bad = ConvexCell::infeasible(2);
        let back: ConvexCell = serde_json::from_str(&serde_json::to_string(&bad).unwrap()).unwrap();
        assert!(back.is_trivially_infeasible());
    }
}
