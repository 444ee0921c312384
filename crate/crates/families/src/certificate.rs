use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use srs_core::geometry::{FlaggedPolygon, LinearConstraint, Point2, PolygonShape, Relation};
use srs_core::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub diagnostics: Vec<String>,
}

/// An exact check that a set of planar half-planes cuts out a flagged polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCertificate {
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl EqualityCertificate {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Half {
    normal: [BigInt; 2],
    offset: BigInt,
    strict: bool,
    label: usize,
}

impl Half {
    fn value(&self, p: &Point2) -> Rational {
        &p[0] * Rational::from_integer(self.normal[0].clone())
            + &p[1] * Rational::from_integer(self.normal[1].clone())
            + Rational::from_integer(self.offset.clone())
    }

    fn tight(&self, p: &Point2) -> bool {
        self.value(p).is_zero()
    }
}

fn halves(constraints: &[LinearConstraint]) -> Vec<Half> {
    let mut out = Vec::new();
    for (label, c) in constraints.iter().enumerate() {
        let normal = [c.normal()[0].clone(), c.normal()[1].clone()];
        let offset = c.offset().clone();
        if c.relation() == Relation::Eq {
            out.push(Half {
                normal: [-&normal[0], -&normal[1]],
                offset: -&offset,
                strict: false,
                label,
            });
        }
        out.push(Half {
            normal,
            offset,
            strict: c.relation() == Relation::Gt,
            label,
        });
    }
    out
}

fn show(p: &Point2) -> String {
    format!("({}, {})", p[0], p[1])
}

/// A face of the polygon: a vertex, or an edge given by its endpoints.
struct Face<'a> {
    points: Vec<&'a Point2>,
    contained: bool,
    /// The closure of the face is the whole polygon.
    whole: bool,
}

impl Face<'_> {
    fn on(&self, h: &Half) -> bool {
        self.points.iter().all(|p| h.tight(p))
    }

    fn describe(&self) -> String {
        match self.points.as_slice() {
            [p] => format!("vertex {}", show(p)),
            ps => format!("edge {} → {}", show(ps[0]), show(ps[1])),
        }
    }
}

fn faces(poly: &FlaggedPolygon) -> Vec<Face<'_>> {
    let single = poly.shape == PolygonShape::Point;
    let mut out: Vec<Face<'_>> = poly
        .vertices
        .iter()
        .map(|v| Face {
            points: vec![&v.point],
            contained: v.contained,
            whole: single,
        })
        .collect();
    for (i, &contained) in poly.edges.iter().enumerate() {
        let (p, q) = poly.edge(i);
        out.push(Face {
            points: vec![p, q],
            contained,
            whole: poly.shape == PolygonShape::Segment,
        });
    }
    out
}

fn result(name: &'static str, diagnostics: Vec<String>) -> CheckResult {
    CheckResult {
        name,
        pass: diagnostics.is_empty(),
        diagnostics,
    }
}

/// Checks that the half-planes `constraints` (in two variables) cut out
/// exactly `polygon`, including which vertices and edges belong to the set.
///
/// The checks are:
/// * `vertices_feasible`: every vertex satisfies the closure of every constraint;
/// * `closure_bounded`: the closed constraints leave no room beyond a segment
///   or point target;
/// * `excluded_faces_cut`: every excluded vertex or edge lies on the boundary of
///   a strict constraint;
/// * `proper_faces_supported`: every contained vertex or edge other than the
///   whole polygon lies on the boundary of a non-strict constraint that is not
///   tight on the whole polygon;
/// * `contained_faces_clear`: no contained vertex or edge lies on the
///   boundary of a strict constraint.
pub fn verify_equality(constraints: &[LinearConstraint], polygon: &FlaggedPolygon) -> EqualityCertificate {
    let hs = halves(constraints);
    if constraints.iter().any(|c| c.dim() != 2) || polygon.vertices.is_empty() {
        let check = result(
            "vertices_feasible",
            vec!["constraints or polygon are not planar".into()],
        );
        return EqualityCertificate {
            checks: vec![check],
            pass: false,
        };
    }
    let pts = polygon.points();
    let fs = faces(polygon);

    let mut d1 = Vec::new();
    for p in &pts {
        for h in &hs {
            if h.value(p).is_negative() {
                d1.push(format!("vertex {} violates constraint {}", show(p), h.label));
            }
        }
    }

    let mut d2 = Vec::new();
    match polygon.shape {
        PolygonShape::Polygon => {}
        PolygonShape::Segment => {
            let (p, q) = (&pts[0], &pts[1]);
            let dir = [&q[0] - &p[0], &q[1] - &p[1]];
            let on_line: Vec<&Half> = hs.iter().filter(|h| !h.strict && h.tight(p) && h.tight(q)).collect();
            let normal = [-&dir[1], dir[0].clone()];
            let side = |h: &Half| {
                &normal[0] * Rational::from_integer(h.normal[0].clone())
                    + &normal[1] * Rational::from_integer(h.normal[1].clone())
            };
            if !on_line.iter().any(|h| side(h).is_positive()) || !on_line.iter().any(|h| side(h).is_negative()) {
                d2.push("the segment's line is not closed off from both sides".into());
            }
        }
        PolygonShape::Point => {
            let p = &pts[0];
            let tight: Vec<&Half> = hs.iter().filter(|h| !h.strict && h.tight(p)).collect();
            let feasible_dir = |d: [BigInt; 2]| {
                tight
                    .iter()
                    .all(|h| !(&h.normal[0] * &d[0] + &h.normal[1] * &d[1]).is_negative())
            };
            let escapes = tight.is_empty()
                || tight.iter().any(|h| {
                    let perp = [-&h.normal[1], h.normal[0].clone()];
                    let back = [-&perp[0], -&perp[1]];
                    feasible_dir(perp) || feasible_dir(back)
                });
            if escapes {
                d2.push(format!(
                    "the closed constraints tight at {} do not pin it down",
                    show(p)
                ));
            }
        }
    }

    let mut d3 = Vec::new();
    let mut d4 = Vec::new();
    let mut d5 = Vec::new();
    for f in &fs {
        if f.contained {
            if let Some(h) = hs.iter().find(|h| h.strict && f.on(h)) {
                d5.push(format!(
                    "{} is contained but lies on strict constraint {}",
                    f.describe(),
                    h.label
                ));
            }
            if !f.whole
                && !hs
                    .iter()
                    .any(|h| !h.strict && f.on(h) && !pts.iter().all(|p| h.tight(p)))
            {
                d4.push(format!("{} is not supported by a closed constraint", f.describe()));
            }
        } else if !hs.iter().any(|h| h.strict && f.on(h)) {
            d3.push(format!("{} is excluded but lies on no strict constraint", f.describe()));
        }
    }

    let checks = vec![
        result("vertices_feasible", d1),
        result("closure_bounded", d2),
        result("excluded_faces_cut", d3),
        result("proper_faces_supported", d4),
        result("contained_faces_clear", d5),
    ];
    let pass = checks.iter().all(|c| c.pass);
    EqualityCertificate { checks, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use srs_core::geometry::{cell_vertices_2d, ConvexCell};

    fn cons(rows: &[(&[i64], i64, Relation)]) -> Vec<LinearConstraint> {
        let cell = ConvexCell::from_normalized(2, rows.iter().map(|(n, b, r)| LinearConstraint::from_i64(n, *b, *r)));
        cell.constraints().to_vec()
    }

    const HALF_OPEN: [(&[i64], i64, Relation); 4] = [
        (&[1, 0], 1, Relation::Ge),
        (&[-1, 0], 0, Relation::Gt),
        (&[0, 1], 0, Relation::Ge),
        (&[0, -1], 1, Relation::Gt),
    ];

    fn polygon_of(rows: &[(&[i64], i64, Relation)]) -> FlaggedPolygon {
        cell_vertices_2d(&ConvexCell::from_normalized(
            2,
            rows.iter().map(|(n, b, r)| LinearConstraint::from_i64(n, *b, *r)),
        ))
        .unwrap()
    }

    #[test]
    fn half_open_square_passes() {
        let poly = polygon_of(&HALF_OPEN);
        assert_eq!(poly.vertices.iter().filter(|v| v.contained).count(), 1);
        let cert = verify_equality(&cons(&HALF_OPEN), &poly);
        assert!(cert.pass, "{cert:?}");
    }

    #[test]
    fn dropping_a_strict_side_is_caught() {
        let poly = polygon_of(&HALF_OPEN);
        let fewer: Vec<_> = HALF_OPEN.iter().filter(|r| r.0 != [-1, 0]).cloned().collect();
        let cert = verify_equality(&cons(&fewer), &poly);
        assert!(!cert.pass);
        assert!(!cert.check("excluded_faces_cut").unwrap().pass);
    }

    #[test]
    fn closed_square_passes_and_wrong_flags_fail() {
        let rows: [(&[i64], i64, Relation); 4] = [
            (&[1, 0], 0, Relation::Ge),
            (&[-1, 0], 1, Relation::Ge),
            (&[0, 1], 0, Relation::Ge),
            (&[0, -1], 1, Relation::Ge),
        ];
        let mut poly = polygon_of(&rows);
        assert!(poly.vertices.iter().all(|v| v.contained));
        assert!(verify_equality(&cons(&rows), &poly).pass);
        poly.edges[2] = false;
        let cert = verify_equality(&cons(&rows), &poly);
        assert!(!cert.check("excluded_faces_cut").unwrap().pass);
    }

    #[test]
    fn points_and_segments() {
        let point: [(&[i64], i64, Relation); 3] = [
            (&[1, 0], 0, Relation::Ge),
            (&[0, 1], 0, Relation::Ge),
            (&[-1, -1], 0, Relation::Ge),
        ];
        let poly = polygon_of(&point);
        assert_eq!(poly.shape, PolygonShape::Point);
        assert!(verify_equality(&cons(&point), &poly).pass);
        // Only two of the three closing constraints: a cone, not a point.
        let cert = verify_equality(&cons(&point[..2]), &poly);
        assert!(!cert.check("closure_bounded").unwrap().pass);

        let seg: [(&[i64], i64, Relation); 3] = [
            (&[0, 1], 0, Relation::Eq),
            (&[1, 0], 0, Relation::Gt),
            (&[-1, 0], 1, Relation::Ge),
        ];
        let poly = polygon_of(&seg);
        assert_eq!(poly.shape, PolygonShape::Segment);
        assert!(verify_equality(&cons(&seg), &poly).pass);
        let cert = verify_equality(&cons(&seg[1..]), &poly);
        assert!(!cert.check("closure_bounded").unwrap().pass);
    }
}
