use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{cell_is_empty, ConvexCell, GeometryError, LinearConstraint, Relation};
use crate::rational::{format_rational, Rational};

pub type Point2 = [Rational; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonShape {
    Polygon,
    Segment,
    Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlaggedVertex {
    pub point: Point2,
    pub contained: bool,
}

/// The closure of a bounded planar cell as a vertex list with containment flags.
///
/// `edges[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically for polygons).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlaggedPolygon {
    pub shape: PolygonShape,
    pub vertices: Vec<FlaggedVertex>,
    pub edges: Vec<bool>,
}

impl FlaggedPolygon {
    pub fn points(&self) -> Vec<Point2> {
        self.vertices.iter().map(|v| v.point.clone()).collect()
    }

    /// Endpoints of edge `i`.
    pub fn edge(&self, i: usize) -> (&Point2, &Point2) {
        let n = self.vertices.len();
        (&self.vertices[i].point, &self.vertices[(i + 1) % n].point)
    }

    /// The vertex average, which lies in the relative interior.
    pub fn interior_point(&self) -> Point2 {
        let w = vec![1; self.vertices.len()];
        convex_combination(&self.points(), &w)
    }

    /// Axis-aligned bounds `(min, max)` of the vertices.
    pub fn bounds(&self) -> (Point2, Point2) {
        let mut lo = self.vertices[0].point.clone();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for k in 0..2 {
                if v.point[k] < lo[k] {
                    lo[k] = v.point[k].clone();
                }
                if v.point[k] > hi[k] {
                    hi[k] = v.point[k].clone();
                }
            }
        }
        (lo, hi)
    }
}

impl Serialize for FlaggedPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct V {
            x: String,
            y: String,
            contained: bool,
        }
        let vs: Vec<V> = self
            .vertices
            .iter()
            .map(|v| V {
                x: format_rational(&v.point[0]),
                y: format_rational(&v.point[1]),
                contained: v.contained,
            })
            .collect();
        let mut st = s.serialize_struct("FlaggedPolygon", 3)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("vertices", &vs)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

/// `Σ w_i p_i / Σ w_i`.
pub fn convex_combination(points: &[Point2], weights: &[u64]) -> Point2 {
    let total: u64 = weights.iter().sum();
    let mut acc = [Rational::zero(), Rational::zero()];
    for (p, &w) in points.iter().zip(weights) {
        if w == 0 {
            continue;
        }
        let w = BigRational::from_integer(w.into());
        acc[0] += &p[0] * &w;
        acc[1] += &p[1] * &w;
    }
    let t = BigRational::from_integer(total.max(1).into());
    [&acc[0] / &t, &acc[1] / &t]
}

pub(crate) fn cross(o: &Point2, a: &Point2, b: &Point2) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn dot_dir(o: &Point2, a: &Point2, b: &Point2) -> Rational {
    (&a[0] - &o[0]) * (&b[0] - &a[0]) + (&a[1] - &o[1]) * (&b[1] - &a[1])
}

fn clip(poly: Vec<Point2>, c: &LinearConstraint, flip: bool) -> Vec<Point2> {
    let val = |p: &Point2| {
        let v = c.value(p);
        if flip {
            -v
        } else {
            v
        }
    };
    let n = poly.len();
    if n == 0 {
        return poly;
    }
    let vals: Vec<Rational> = poly.iter().map(val).collect();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + n - 1) % n;
        let (vp, vc) = (&vals[j], &vals[i]);
        let crosses = (vp.is_negative() && vc.is_positive()) || (vp.is_positive() && vc.is_negative());
        if crosses {
            let t = vp / (vp - vc);
            let (p, q) = (&poly[j], &poly[i]);
            out.push([&p[0] + (&q[0] - &p[0]) * &t, &p[1] + (&q[1] - &p[1]) * &t]);
        }
        if !vc.is_negative() {
            out.push(poly[i].clone());
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn drop_redundant(mut pts: Vec<Point2>) -> Vec<Point2> {
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let (a, b, c) = (&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]);
            if cross(a, b, c).is_zero() && dot_dir(a, b, c).is_positive() {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    if pts.len() >= 3 && pts.iter().skip(2).all(|p| cross(&pts[0], &pts[1], p).is_zero()) {
        // All collinear: keep the two extreme points.
        pts.sort();
        let last = pts.pop().expect("nonempty");
        pts.truncate(1);
        pts.push(last);
    }
    pts
}

/// Vertices of the closure of a bounded planar cell, counterclockwise from the
/// lexicographically smallest, with containment flags for vertices and edges.
pub fn cell_vertices_2d(cell: &ConvexCell) -> Result<FlaggedPolygon, GeometryError> {
    if cell.dim() != 2 {
        return Err(GeometryError::NotPlanar(cell.dim()));
    }
    if cell_is_empty(cell) {
        return Err(GeometryError::Empty);
    }
    let max_coef = cell
        .constraints()
        .iter()
        .flat_map(|c| c.normal().iter().chain(std::iter::once(c.offset())))
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // Every vertex of a bounded cell satisfies |coordinate| ≤ 2·C².
    let m = BigRational::from_integer(&max_coef * &max_coef * 2 + 1);
    let neg_m = -m.clone();
    let mut poly: Vec<Point2> = vec![
        [neg_m.clone(), neg_m.clone()],
        [m.clone(), neg_m.clone()],
        [m.clone(), m.clone()],
        [neg_m.clone(), m.clone()],
    ];
    for c in cell.constraints() {
        poly = clip(poly, c, false);
        if c.relation() == Relation::Eq {
            poly = clip(poly, c, true);
        }
    }
    let poly = drop_redundant(poly);
    if poly.is_empty() {
        return Err(GeometryError::Empty);
    }
    if poly
        .iter()
        .any(|p| p[0] == m || p[0] == neg_m || p[1] == m || p[1] == neg_m)
    {
        return Err(GeometryError::Unbounded);
    }
    let start = (0..poly.len()).min_by(|&i, &j| poly[i].cmp(&poly[j])).unwrap_or(0);
    let mut poly = poly;
    poly.rotate_left(start);

    let strict: Vec<&LinearConstraint> = cell.constraints().iter().filter(|c| c.is_strict()).collect();
    let inside = |p: &Point2| strict.iter().all(|c| c.holds(p));
    let shape = match poly.len() {
        1 => PolygonShape::Point,
        2 => PolygonShape::Segment,
        _ => PolygonShape::Polygon,
    };
    let n = poly.len();
    let edge_count = match shape {
        PolygonShape::Point => 0,
        PolygonShape::Segment => 1,
        PolygonShape::Polygon => n,
    };
    let edges = (0..edge_count)
        .map(|i| {
            inside(&convex_combination(
                &[poly[i].clone(), poly[(i + 1) % n].clone()],
                &[1, 1],
            ))
        })
        .collect();
    let vertices = poly
        .into_iter()
        .map(|p| FlaggedVertex {
            contained: inside(&p),
            point: p,
        })
        .collect();
    Ok(FlaggedPolygon { shape, vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{Cycle, LatticePoint};
    use crate::geometry::cutout_polyhedron;
    use crate::rational::rat;

    fn cell(rows: &[(&[i64], i64, Relation)]) -> ConvexCell {
        ConvexCell::from_normalized(
            2,
            rows.iter().map(|(n, b, rel)| LinearConstraint::from_i64(n, *b, *rel)),
        )
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point2 {
        [rat(x.0, x.1), rat(y.0, y.1)]
    }

    #[test]
    fn half_open_square() {
        let c = cell(&[
            (&[1, 0], 1, Relation::Ge),
            (&[-1, 0], 0, Relation::Gt),
            (&[0, 1], 0, Relation::Ge),
            (&[0, -1], 1, Relation::Gt),
        ]);
        let p = cell_vertices_2d(&c).unwrap();
        assert_eq!(p.shape, PolygonShape::Polygon);
        assert_eq!(
            p.points(),
            vec![
                pt((-1, 1), (0, 1)),
                pt((0, 1), (0, 1)),
                pt((0, 1), (1, 1)),
                pt((-1, 1), (1, 1))
            ]
        );
        let flags: Vec<bool> = p.vertices.iter().map(|v| v.contained).collect();
        assert_eq!(flags, vec![true, false, false, false]);
        assert_eq!(p.edges, vec![true, false, false, true]);
    }

    #[test]
    fn closed_square() {
        let c = cell(&[
            (&[1, 0], 0, Relation::Ge),
            (&[-1, 0], 1, Relation::Ge),
            (&[0, 1], 0, Relation::Ge),
            (&[0, -1], 1, Relation::Ge),
        ]);
        let p = cell_vertices_2d(&c).unwrap();
        assert!(p.vertices.iter().all(|v| v.contained) && p.edges.iter().all(|&e| e));
    }

    #[test]
    fn degenerate_segment_from_cycle() {
        let pi = Cycle::new(vec![LatticePoint::new(&[1, -1]), LatticePoint::new(&[-1, 1])]).unwrap();
        let c = cutout_polyhedron(&pi).unwrap();
        // On the line r2 = r1 + 1 the cell is unbounded, so clip it to a box.
        let boxed = c
            .intersect(&cell(&[(&[1, 0], 1, Relation::Ge), (&[-1, 0], 1, Relation::Ge)]))
            .unwrap();
        let p = cell_vertices_2d(&boxed).unwrap();
        assert_eq!(p.shape, PolygonShape::Segment);
        assert_eq!(p.points(), vec![pt((-1, 1), (0, 1)), pt((1, 1), (2, 1))]);
        assert!(c.contains(&[rat(0, 1), rat(1, 1)]).unwrap());
        assert_eq!(cell_vertices_2d(&c).unwrap_err(), GeometryError::Unbounded);
    }

    #[test]
    fn point_and_errors() {
        let c = cell(&[(&[1, 0], -1, Relation::Eq), (&[0, 2], -1, Relation::Eq)]);
        let p = cell_vertices_2d(&c).unwrap();
        assert_eq!(p.shape, PolygonShape::Point);
        assert_eq!(p.points(), vec![pt((1, 1), (1, 2))]);
        assert!(p.vertices[0].contained);
        let e = cell(&[(&[1, 0], 0, Relation::Gt), (&[-1, 0], 0, Relation::Gt)]);
        assert_eq!(cell_vertices_2d(&e).unwrap_err(), GeometryError::Empty);
        assert_eq!(
            cell_vertices_2d(&ConvexCell::whole(2)).unwrap_err(),
            GeometryError::Unbounded
        );
        assert_eq!(
            cell_vertices_2d(&ConvexCell::whole(3)).unwrap_err(),
            GeometryError::NotPlanar(3)
        );
    }

    #[test]
    fn simplification_keeps_the_set() {
        let c = cell(&[
            (&[1, 0], 0, Relation::Ge),
            (&[-1, 0], 1, Relation::Gt),
            (&[0, 1], 0, Relation::Ge),
            (&[0, -1], 1, Relation::Ge),
            (&[1, 1], 5, Relation::Gt),
            (&[-1, -1], 2, Relation::Ge),
        ]);
        let s = c.simplified_2d();
        assert_eq!(s.constraints().len(), 4);
        assert_eq!(cell_vertices_2d(&s).unwrap(), cell_vertices_2d(&c).unwrap());
    }
}
