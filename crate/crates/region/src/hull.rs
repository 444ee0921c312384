use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::RegionError;
use srs_core::dynamics::{is_interior, ParameterVector};
use srs_core::geometry::{ConvexCell, LinearConstraint, Point2, Relation};
use srs_core::rational::{format_rational, Rational};

/// The convex hull `H` of finitely many interior parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullSpec {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    cell: Option<ConvexCell>,
}

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counterclockwise hull corners without collinear points.
fn monotone_chain(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Vec<Rational>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Rational::zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Rational>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Rational::zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl HullSpec {
    /// Validates the points and computes their hull.
    ///
    /// Every point must be interior to the eventually periodic region. For
    /// `d ≤ 2` that region's interior is convex, so the whole hull is then
    /// interior as well; for `d > 2` this is assumed.
    pub fn new(points: Vec<Vec<Rational>>) -> Result<Self, RegionError> {
        let Some(d) = points.first().map(Vec::len) else {
            return Err(RegionError::InvalidHull("no points".into()));
        };
        if d == 0 || points.iter().any(|p| p.len() != d) {
            return Err(RegionError::InvalidHull("points of different dimension".into()));
        }
        for p in &points {
            let r = ParameterVector::new(p.clone())?;
            if !is_interior(&r) {
                return Err(RegionError::InvalidHull(format!("{r} is not an interior parameter")));
            }
        }
        let (vertices, cell) = match d {
            1 => {
                let lo = points.iter().min().expect("nonempty").clone();
                let hi = points.iter().max().expect("nonempty").clone();
                let cell = ConvexCell::from_normalized(
                    1,
                    [
                        LinearConstraint::from_rationals(&[Rational::from_integer(1.into())], &-&lo[0], Relation::Ge),
                        LinearConstraint::from_rationals(&[Rational::from_integer((-1).into())], &hi[0], Relation::Ge),
                    ],
                );
                let mut v = vec![lo, hi];
                v.dedup();
                (v, Some(cell))
            }
            2 => {
                let v = monotone_chain(points);
                let cell = polygon_cell(&v);
                (v, Some(cell))
            }
            _ => {
                let mut v = points;
                v.sort();
                v.dedup();
                (v, None)
            }
        };
        Ok(Self { dim: d, vertices, cell })
    }

    pub fn from_points2(points: &[Point2]) -> Result<Self, RegionError> {
        Self::new(points.iter().map(|p| p.to_vec()).collect())
    }

    /// The axis-parallel square `[x, x + side] × [y, y + side]`.
    pub fn square(x: &Rational, y: &Rational, side: &Rational) -> Result<Self, RegionError> {
        let (x1, y1) = (x + side, y + side);
        Self::new(vec![
            vec![x.clone(), y.clone()],
            vec![x1.clone(), y.clone()],
            vec![x1, y1.clone()],
            vec![x.clone(), y1],
        ])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Hull corners; counterclockwise for `d = 2`.
    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// The closed hull as a cell (`d ≤ 2`).
    pub fn cell(&self) -> Option<&ConvexCell> {
        self.cell.as_ref()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.vertices.len() > self.dim
    }

    pub fn vertex_parameters(&self) -> Vec<ParameterVector> {
        self.vertices
            .iter()
            .map(|v| ParameterVector::new(v.clone()).expect("validated at construction"))
            .collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.cell.as_ref().is_some_and(|c| c.contains(x).unwrap_or(false))
    }

    /// `(min, max)` over the corners, per coordinate.
    pub fn bounds(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for k in 0..self.dim {
                if v[k] < lo[k] {
                    lo[k] = v[k].clone();
                }
                if v[k] > hi[k] {
                    hi[k] = v[k].clone();
                }
            }
        }
        (lo, hi)
    }
}

fn polygon_cell(v: &[Vec<Rational>]) -> ConvexCell {
    let line = |p: &[Rational], q: &[Rational]| -> (Vec<Rational>, Rational) {
        (vec![&p[1] - &q[1], &q[0] - &p[0]], &p[0] * &q[1] - &q[0] * &p[1])
    };
    let items = match v.len() {
        1 => vec![
            LinearConstraint::from_rationals(
                &[Rational::from_integer(1.into()), Rational::zero()],
                &-&v[0][0],
                Relation::Eq,
            ),
            LinearConstraint::from_rationals(
                &[Rational::zero(), Rational::from_integer(1.into())],
                &-&v[0][1],
                Relation::Eq,
            ),
        ],
        2 => {
            let (n, c) = line(&v[0], &v[1]);
            let d: Vec<Rational> = vec![&v[1][0] - &v[0][0], &v[1][1] - &v[0][1]];
            let at = |p: &[Rational], dir: &[Rational]| -(&dir[0] * &p[0] + &dir[1] * &p[1]);
            let neg: Vec<Rational> = d.iter().map(|x| -x).collect();
            vec![
                LinearConstraint::from_rationals(&n, &c, Relation::Eq),
                LinearConstraint::from_rationals(&d, &at(&v[0], &d), Relation::Ge),
                LinearConstraint::from_rationals(&neg, &at(&v[1], &neg), Relation::Ge),
            ]
        }
        k => (0..k)
            .map(|i| {
                let (n, c) = line(&v[i], &v[(i + 1) % k]);
                LinearConstraint::from_rationals(&n, &c, Relation::Ge)
            })
            .collect(),
    };
    ConvexCell::from_normalized(2, items)
}

impl Serialize for HullSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let vs: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect();
        let mut st = s.serialize_struct("HullSpec", 1)?;
        st.serialize_field("vertices", &vs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use srs_core::rational::rat;

    fn p(x: (i64, i64), y: (i64, i64)) -> Vec<Rational> {
        vec![rat(x.0, x.1), rat(y.0, y.1)]
    }

    #[test]
    fn square_hull() {
        let h = HullSpec::new(vec![
            p((41, 50), (11, 25)),
            p((41, 50), (37, 100)),
            p((93, 100), (37, 100)),
            p((93, 100), (11, 25)),
            p((9, 10), (2, 5)),
        ])
        .unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert_eq!(h.vertices()[0], p((41, 50), (37, 100)));
        assert_eq!(h.vertices()[1], p((93, 100), (37, 100)));
        let cell = h.cell().unwrap();
        assert_eq!(cell.constraints().len(), 4);
        assert!(h.contains(&p((41, 50), (2, 5))));
        assert!(!h.contains(&p((1, 1), (2, 5))));
    }

    #[test]
    fn degenerate_hulls() {
        let h = HullSpec::new(vec![p((0, 1), (0, 1))]).unwrap();
        assert!(!h.is_full_dimensional());
        assert!(h.contains(&p((0, 1), (0, 1))));
        assert!(!h.contains(&p((1, 9), (0, 1))));
        let h = HullSpec::new(vec![p((-1, 2), (0, 1)), p((1, 2), (0, 1)), p((0, 1), (0, 1))]).unwrap();
        assert_eq!(h.vertices().len(), 2);
        assert!(h.contains(&p((1, 4), (0, 1))));
        assert!(!h.contains(&p((3, 4), (0, 1))));
    }

    #[test]
    fn rejects_points_outside_the_interior() {
        assert!(matches!(
            HullSpec::new(vec![p((1, 1), (0, 1))]),
            Err(RegionError::InvalidHull(_))
        ));
        assert!(matches!(HullSpec::new(vec![]), Err(RegionError::InvalidHull(_))));
    }
}
