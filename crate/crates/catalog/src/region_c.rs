use serde::Serialize;

use srs_core::dynamics::{is_interior, ParameterVector};
use srs_core::geometry::{cell_is_empty, ConvexCell, LinearConstraint, Point2, Relation};
use srs_core::rational::{int, rat, Rational};
use srs_region::HullSpec;

/// The region `C = C_1 \ C_2` with `C_1 = {x ≤ 1 − L}` and `C_2` a small open
/// quadrangle of width about `L` just left of `(1, 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionCDescription {
    pub k: Rational,
    pub l: Rational,
    /// Rational stand-in for `√2`; it must not be smaller than `√2`.
    pub sqrt2_upper: Rational,
    pub n_grid: i64,
}

impl Default for RegionCDescription {
    fn default() -> Self {
        Self {
            k: rat(1, 20),
            l: rat(1, 512),
            sqrt2_upper: rat(3, 2),
            n_grid: 8192,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RegionC {
    pub c1: ConvexCell,
    pub c2: ConvexCell,
    /// Vertices of `C_2`, counterclockwise.
    pub c2_vertices: Vec<Point2>,
    pub x_max: Rational,
}

/// A closed grid square `[x/n, (x+1)/n] × [y/n, (y+1)/n]`, cut back to
/// `x ≤ 1 − L` where it sticks out of `C_1`.
#[derive(Clone, Debug, Serialize)]
pub struct GridSquare {
    pub x: i64,
    pub y: i64,
    pub n: i64,
    pub clipped: bool,
    /// The square meets the removed quadrangle.
    pub meets_c2: bool,
    /// `None` if a corner is not an interior parameter.
    #[serde(skip)]
    pub hull: Option<HullSpec>,
}

impl RegionCDescription {
    pub fn cells(&self) -> RegionC {
        let (one, two) = (int(1), int(2));
        let s = &self.sqrt2_upper * &self.l;
        let a = [&one - &self.k, &two - &self.k];
        let b = [&one - &self.k + &s, &two - &self.k];
        let c = [&one - &s, &two - &s * int(2)];
        let d = [one.clone(), two.clone()];
        let c2_vertices = vec![a, b, c, d];
        let x_max = &one - &self.l;
        let c1 = ConvexCell::from_normalized(
            2,
            [LinearConstraint::from_rationals(
                &[int(-1), int(0)],
                &x_max,
                Relation::Ge,
            )],
        );
        RegionC {
            c1,
            c2: open_polygon(&c2_vertices),
            c2_vertices,
            x_max,
        }
    }
}

pub fn region_c_cells(desc: &RegionCDescription) -> RegionC {
    desc.cells()
}

/// The interior of a convex counterclockwise polygon.
fn open_polygon(ps: &[Point2]) -> ConvexCell {
    let n = ps.len();
    ConvexCell::from_normalized(
        2,
        (0..n).map(|i| {
            let (p, q) = (&ps[i], &ps[(i + 1) % n]);
            let normal = [-(&q[1] - &p[1]), &q[0] - &p[0]];
            let offset = -(&normal[0] * &p[0] + &normal[1] * &p[1]);
            LinearConstraint::from_rationals(&normal, &offset, Relation::Gt)
        }),
    )
}

impl RegionC {
    pub fn contains(&self, p: &Point2) -> bool {
        self.c1.contains(p).unwrap_or(false) && !self.c2.contains(p).unwrap_or(false)
    }

    /// Grid squares of side `1/n` with `x` and `y` in the given index ranges
    /// that meet `C`. Squares right of `x = 1 − L` are dropped, squares
    /// crossing it are cut back, and squares inside `C_2` are dropped.
    pub fn grid_squares(
        &self,
        n: i64,
        xs: std::ops::RangeInclusive<i64>,
        ys: std::ops::RangeInclusive<i64>,
    ) -> Vec<GridSquare> {
        let mut out = Vec::new();
        for x in xs {
            let x0 = rat(x, n);
            if x0 > self.x_max {
                continue;
            }
            let mut x1 = rat(x + 1, n);
            let clipped = x1 > self.x_max;
            if clipped {
                x1 = self.x_max.clone();
            }
            for y in ys.clone() {
                let (y0, y1) = (rat(y, n), rat(y + 1, n));
                let corners = [
                    [x0.clone(), y0.clone()],
                    [x1.clone(), y0.clone()],
                    [x1.clone(), y1.clone()],
                    [x0.clone(), y1.clone()],
                ];
                if corners.iter().all(|p| self.c2.contains(p).unwrap_or(false)) {
                    continue;
                }
                let rect = rectangle(&x0, &x1, &y0, &y1);
                let meets_c2 = rect.intersect(&self.c2).map(|c| !cell_is_empty(&c)).unwrap_or(false);
                let interior = corners.iter().all(|p| {
                    ParameterVector::new(p.to_vec())
                        .map(|r| is_interior(&r))
                        .unwrap_or(false)
                });
                let hull = if interior {
                    HullSpec::from_points2(if x0 == x1 { &corners[..2] } else { &corners }).ok()
                } else {
                    None
                };
                out.push(GridSquare {
                    x,
                    y,
                    n,
                    clipped,
                    meets_c2,
                    hull,
                });
            }
        }
        out
    }
}

fn rectangle(x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational) -> ConvexCell {
    let ge = |n: [i64; 2], b: Rational| LinearConstraint::from_rationals(&[int(n[0]), int(n[1])], &b, Relation::Ge);
    ConvexCell::from_normalized(
        2,
        [
            ge([1, 0], -x0),
            ge([-1, 0], x1.clone()),
            ge([0, 1], -y0),
            ge([0, -1], y1.clone()),
        ],
    )
}
