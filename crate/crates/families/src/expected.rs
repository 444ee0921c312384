use serde::Serialize;

use super::{FamilyError, FamilyId};
use srs_core::geometry::{ConvexCell, FlaggedPolygon, FlaggedVertex, LinearConstraint, Point2, PolygonShape};
use srs_core::rational::{format_rational, rat, Rational};

/// Where a containment flag of an expected polygon comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectedFlag {
    /// Read off the printed table.
    Printed(bool),
    /// Implied by a printed flag, e.g. an endpoint of an open edge is open.
    Forced(bool),
    /// Not legible in the table; taken from the cell itself.
    Derived,
}

impl ExpectedFlag {
    pub fn value(self) -> Option<bool> {
        match self {
            Self::Printed(b) | Self::Forced(b) => Some(b),
            Self::Derived => None,
        }
    }
}

/// Vertices of a tabulated cutout polygon with the flags of its vertices and
/// of the edges `vertices[i] → vertices[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedPolygon {
    pub vertices: Vec<Point2>,
    pub vertex_flags: Vec<ExpectedFlag>,
    pub edge_flags: Vec<ExpectedFlag>,
}

impl ExpectedPolygon {
    /// Builds a polygon from `(vertex, flag of the edge leaving it)` pairs.
    /// Vertices next to an open edge are forced open; the others are derived.
    fn from_row(row: Vec<(Point2, Option<bool>)>) -> Self {
        let n = row.len();
        let edge_flags: Vec<ExpectedFlag> = row
            .iter()
            .map(|(_, e)| e.map_or(ExpectedFlag::Derived, ExpectedFlag::Printed))
            .collect();
        let vertex_flags = (0..n)
            .map(|i| {
                let open = [edge_flags[i], edge_flags[(i + n - 1) % n]].contains(&ExpectedFlag::Printed(false));
                if open {
                    ExpectedFlag::Forced(false)
                } else {
                    ExpectedFlag::Derived
                }
            })
            .collect();
        Self {
            vertices: row.into_iter().map(|(p, _)| p).collect(),
            vertex_flags,
            edge_flags,
        }
    }

    /// Resolves every derived flag against `cell` and returns the polygon in
    /// the layout of [`srs_core::geometry::cell_vertices_2d`], along with a note
    /// for each flag that was not printed.
    pub fn resolve(&self, cell: &ConvexCell) -> Result<(FlaggedPolygon, Vec<String>), FamilyError> {
        let strict: Vec<&LinearConstraint> = cell.constraints().iter().filter(|c| c.is_strict()).collect();
        let inside = |p: &Point2| strict.iter().all(|c| c.holds(p));
        let mut notes = Vec::new();
        let n = self.vertices.len();
        let mut vertices = Vec::with_capacity(n);
        for (p, f) in self.vertices.iter().zip(&self.vertex_flags) {
            let contained = match f {
                ExpectedFlag::Printed(b) => *b,
                ExpectedFlag::Forced(b) => {
                    notes.push(format!("vertex {}: {} by an adjacent open edge", show(p), word(*b)));
                    *b
                }
                ExpectedFlag::Derived => {
                    let b = inside(p);
                    notes.push(format!("vertex {}: {} (from the cell)", show(p), word(b)));
                    b
                }
            };
            vertices.push(FlaggedVertex {
                point: p.clone(),
                contained,
            });
        }
        let mut edges = Vec::with_capacity(n);
        for (i, f) in self.edge_flags.iter().enumerate() {
            let (p, q) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            edges.push(match f.value() {
                Some(b) => b,
                None => {
                    let mid = [(&p[0] + &q[0]) / rat(2, 1), (&p[1] + &q[1]) / rat(2, 1)];
                    let b = inside(&mid);
                    notes.push(format!("edge {} → {}: {} (from the cell)", show(p), show(q), word(b)));
                    b
                }
            });
        }
        if signed_area(&self.vertices) < Rational::from_integer(0.into()) {
            // Reverse orientation; edge i now joins the reversed neighbours.
            vertices.reverse();
            edges.reverse();
            edges.rotate_left(1);
        }
        let start = (0..n)
            .min_by(|&i, &j| vertices[i].point.cmp(&vertices[j].point))
            .unwrap_or(0);
        vertices.rotate_left(start);
        edges.rotate_left(start);
        Ok((
            FlaggedPolygon {
                shape: PolygonShape::Polygon,
                vertices,
                edges,
            },
            notes,
        ))
    }
}

fn word(b: bool) -> &'static str {
    if b {
        "contained"
    } else {
        "excluded"
    }
}

fn show(p: &Point2) -> String {
    format!("({}, {})", format_rational(&p[0]), format_rational(&p[1]))
}

fn signed_area(ps: &[Point2]) -> Rational {
    let n = ps.len();
    (0..n)
        .map(|i| {
            let (p, q) = (&ps[i], &ps[(i + 1) % n]);
            &p[0] * &q[1] - &p[1] * &q[0]
        })
        .sum()
}

fn pt(x: (i64, i64), y: (i64, i64)) -> Point2 {
    [rat(x.0, x.1), rat(y.0, y.1)]
}

/// `(1 + s/a, t/a)` written as a point with numerators over `a`.
fn over(a: i64, x: i64, y: i64) -> Point2 {
    pt((x, a), (y, a))
}

const S: Option<bool> = Some(true);
const D: Option<bool> = Some(false);
const U: Option<bool> = None;

/// The tabulated cutout polygon of family member `id(n)`.
pub fn expected_polygon(id: FamilyId, n: u32) -> Result<ExpectedPolygon, FamilyError> {
    id.check(n)?;
    let n = i64::from(n);
    let row = match (id, n) {
        (FamilyId::C0, 1) => vec![
            (pt((3, 4), (3, 2)), S),
            (pt((1, 1), (5, 3)), D),
            (pt((7, 6), (11, 6)), D),
            (pt((1, 1), (2, 1)), D),
        ],
        (FamilyId::C0, _) => vec![
            (pt((25, 26), (15, 26)), S),
            (pt((1, 1), (1, 2)), S),
            (pt((28, 27), (16, 27)), D),
            (pt((1, 1), (3, 5)), D),
        ],
        (FamilyId::C1, _) => {
            let (a, b) = (4 * n * n - 4 * n + 2, 4 * n * n - 2);
            vec![
                (over(a, a - 1, a + 2 * n - 1), D),
                (pt((1, 1), (2 * n, 2 * n - 1)), D),
                (over(b, b + 1, b + 2 * n + 2), D),
                (pt((1, 1), (2 * n - 1, 2 * n - 2)), D),
            ]
        }
        (FamilyId::C2, 1) => vec![
            (pt((2, 3), (4, 3)), D),
            (pt((1, 1), (3, 2)), D),
            (pt((6, 5), (9, 5)), D),
            (pt((3, 4), (3, 2)), D),
        ],
        (FamilyId::C2, _) => {
            let (a, b) = (4 * n * n - 2 * n + 1, 4 * n * n + 2 * n - 1);
            vec![
                (over(a, a - 1, a + 2 * n - 1), D),
                (pt((1, 1), (2 * n + 1, 2 * n)), D),
                (over(b, b + 1, b + 2 * n + 2), D),
                (pt((1, 1), (2 * n, 2 * n - 1)), D),
            ]
        }
        (FamilyId::C3, _) => {
            let (a, b) = (4 * n * n + 6 * n - 1, 4 * n * n + 6 * n - 2);
            vec![
                (over(a, a - 1, a - 2 * n - 4), S),
                (pt((1, 1), (2 * n - 2, 2 * n - 1)), S),
                (over(b, b + 1, b - 2 * n - 3), S),
                (pt((1, 1), (2 * n - 1, 2 * n)), S),
            ]
        }
        (FamilyId::C4, 2) => vec![
            (pt((19, 20), (3, 5)), U),
            (pt((21, 22), (13, 22)), U),
            (pt((1, 1), (3, 5)), U),
            (pt((22, 21), (13, 21)), U),
            (pt((20, 19), (12, 19)), U),
            (pt((1, 1), (2, 3)), U),
        ],
        (FamilyId::C4, _) => {
            let (a, b) = (4 * n * n + 4 * n - 4, 4 * n * n + 4 * n - 5);
            vec![
                (over(a, a - 1, a - 2 * n - 4), S),
                (pt((1, 1), (2 * n - 3, 2 * n - 2)), D),
                (over(b, b + 1, b - 2 * n - 3), D),
                (pt((1, 1), (2 * n - 2, 2 * n - 1)), S),
            ]
        }
        (FamilyId::C5, 2) => vec![
            (pt((10, 11), (4, 11)), S),
            (pt((1, 1), (1, 3)), S),
            (pt((11, 10), (2, 5)), S),
            (pt((1, 1), (1, 2)), S),
        ],
        (FamilyId::C5, 3) => vec![
            (pt((14, 15), (4, 15)), S),
            (pt((1, 1), (1, 4)), S),
            (pt((19, 18), (5, 18)), D),
            (pt((1, 1), (1, 3)), D),
        ],
        (FamilyId::C5, 4) => vec![
            (pt((22, 23), (5, 23)), S),
            (pt((23, 24), (5, 24)), S),
            (pt((1, 1), (1, 5)), S),
            (pt((24, 23), (5, 23)), D),
            (pt((1, 1), (1, 4)), D),
        ],
        (FamilyId::C5, _) => {
            let (a, b, c) = (n * n + n + 3, n * n + 2 * n, n * n + 2 * n - 1);
            vec![
                (over(a, a - 1, n + 1), S),
                (over(b, b - 1, n + 1), S),
                (pt((1, 1), (1, n + 1)), S),
                (over(c, c + 1, n + 1), S),
                (over(a, a + 1, n + 1), D),
                (pt((1, 1), (1, n)), D),
            ]
        }
        (FamilyId::C6, 1) => vec![
            (pt((2, 3), (-1, 3)), S),
            (pt((1, 1), (-1, 1)), D),
            (pt((4, 3), (-2, 3)), D),
        ],
        (FamilyId::C6, _) => {
            let (a, b, c) = (n * n + 2, n * n + n + 1, n * n + 2 * n);
            vec![
                (over(a, a - 1, -n), S),
                (pt((1, 1), (-1, n)), D),
                (over(b, b + 1, -n - 1), D),
                (over(c, c + 1, -n - 1), D),
                (over(b, b - 1, -n), D),
            ]
        }
    };
    Ok(ExpectedPolygon::from_row(row))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_edges_force_their_endpoints_open() {
        let e = expected_polygon(FamilyId::C6, 1).unwrap();
        assert_eq!(e.vertex_flags, vec![ExpectedFlag::Forced(false); 3]);
        let e = expected_polygon(FamilyId::C3, 2).unwrap();
        assert_eq!(e.vertex_flags, vec![ExpectedFlag::Derived; 4]);
        let e = expected_polygon(FamilyId::C4, 2).unwrap();
        assert!(e.edge_flags.iter().all(|f| *f == ExpectedFlag::Derived));
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let mut e = expected_polygon(FamilyId::C2, 1).unwrap();
        let ccw = e.resolve(&ConvexCell::whole(2)).unwrap().0;
        e.vertices.reverse();
        e.vertex_flags.reverse();
        e.edge_flags.reverse();
        e.edge_flags.rotate_left(1);
        assert_eq!(e.resolve(&ConvexCell::whole(2)).unwrap().0, ccw);
    }
}
