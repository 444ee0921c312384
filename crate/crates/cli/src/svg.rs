//! SVG region maps.
//!
//! Black marks parameters known to have the finiteness property, white marks
//! cutout regions and gray is unsettled. Cutout outlines are drawn solid
//! where the edge belongs to the cutout and dashed where it does not; a dot
//! marks a vertex that belongs to it.

use std::fmt::Write;

use anyhow::{Context, Result};
use serde_json::Value;
use srs_core::dynamics::Cycle;
use srs_core::geometry::{
    cell_vertices_2d, cutout_polyhedron, ConvexCell, LinearConstraint, Point2, PolygonShape, Relation,
};
use srs_core::rational::{format_rational, int, parse_rational, parse_rational_list, to_decimal, Rational};
use srs_region::HullSpec;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("the window is empty")]
    EmptyWindow,
}

/// An axis-parallel rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: Rational,
    pub y0: Rational,
    pub x1: Rational,
    pub y1: Rational,
}

impl Window {
    /// Parses `x0,y0,x1,y1`.
    pub fn parse(s: &str) -> Result<Self> {
        let v = parse_rational_list(s).with_context(|| format!("window {s:?}"))?;
        let [x0, y0, x1, y1]: [Rational; 4] = v
            .try_into()
            .map_err(|_| anyhow::anyhow!("window needs four numbers x0,y0,x1,y1"))?;
        Ok(Self { x0, y0, x1, y1 })
    }

    pub fn is_empty(&self) -> bool {
        self.x0 >= self.x1 || self.y0 >= self.y1
    }

    pub fn cell(&self) -> ConvexCell {
        let ge = |n: [i64; 2], b: Rational| LinearConstraint::from_rationals(&[int(n[0]), int(n[1])], &b, Relation::Ge);
        ConvexCell::from_normalized(
            2,
            [
                ge([1, 0], -&self.x0),
                ge([-1, 0], self.x1.clone()),
                ge([0, 1], -&self.y0),
                ge([0, -1], self.y1.clone()),
            ],
        )
    }

    fn bounding(points: impl IntoIterator<Item = Point2>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut w = Self {
            x0: first[0].clone(),
            y0: first[1].clone(),
            x1: first[0].clone(),
            y1: first[1].clone(),
        };
        for [x, y] in it {
            if x < w.x0 {
                w.x0 = x.clone();
            }
            if x > w.x1 {
                w.x1 = x;
            }
            if y < w.y0 {
                w.y0 = y.clone();
            }
            if y > w.y1 {
                w.y1 = y;
            }
        }
        Some(w)
    }
}

#[derive(Clone, Debug)]
pub struct SvgScene {
    pub window: Window,
    pub width_px: u32,
    /// Settled regions drawn black.
    pub inside: Vec<ConvexCell>,
    /// Cutout regions drawn white, on top of `inside`.
    pub outside: Vec<ConvexCell>,
    /// Cells whose outlines are drawn.
    pub outlines: Vec<ConvexCell>,
}

impl SvgScene {
    pub fn new(window: Window) -> Self {
        Self {
            window,
            width_px: 800,
            inside: Vec::new(),
            outside: Vec::new(),
            outlines: Vec::new(),
        }
    }

    /// Reads region JSONL: header lines add their hull to the settled area,
    /// cycle lines add the cutout cell (clipped to the hull of the preceding
    /// header), decomposition cell lines are filled by their verdict and
    /// `{"cutout": cell}` lines add a bare cutout cell. Without `window` the
    /// bounding box of all hulls is used.
    pub fn from_jsonl(text: &str, window: Option<Window>) -> Result<Self> {
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        let mut outlines = Vec::new();
        let mut hull_points: Vec<Point2> = Vec::new();
        let mut current_hull: Option<ConvexCell> = None;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let v: Value = serde_json::from_str(line).with_context(|| format!("line {}: not JSON", i + 1))?;
            let ctx = || format!("line {}", i + 1);
            if let Some(h) = v.get("hull") {
                let hull = read_hull(h).with_context(ctx)?;
                hull_points.extend(hull.vertices().iter().map(|p| [p[0].clone(), p[1].clone()]));
                let cell = hull.cell().cloned().context("hull is not planar")?;
                inside.push(cell.clone());
                current_hull = Some(cell);
            } else if let (Some(c), Some(f)) = (v.get("cell"), v.get("finite")) {
                let cell: ConvexCell = serde_json::from_value(c.clone()).with_context(ctx)?;
                if f.as_bool() == Some(true) {
                    inside.push(cell);
                } else {
                    outside.push(cell);
                }
            } else if let Some(c) = v.get("cycle") {
                let cycle: Cycle = serde_json::from_value(c.clone()).with_context(ctx)?;
                let cell = cutout_polyhedron(&cycle).with_context(ctx)?;
                outside.push(match &current_hull {
                    Some(h) => cell.intersect(h)?,
                    None => cell.clone(),
                });
                outlines.push(cell);
            } else if let Some(c) = v.get("cutout") {
                let cell: ConvexCell = serde_json::from_value(c.clone()).with_context(ctx)?;
                outside.push(cell.clone());
                outlines.push(cell);
            }
        }
        let window = match window {
            Some(w) => w,
            None => Window::bounding(hull_points).context("no hull in the input; pass a window")?,
        };
        Ok(Self {
            window,
            width_px: 800,
            inside,
            outside,
            outlines,
        })
    }
}

fn read_hull(v: &Value) -> Result<HullSpec> {
    let verts = v
        .get("vertices")
        .and_then(Value::as_array)
        .context("hull without vertices")?;
    let mut pts = Vec::new();
    for p in verts {
        let coords = p.as_array().context("vertex is not a list")?;
        pts.push(
            coords
                .iter()
                .map(|c| parse_rational(c.as_str().unwrap_or_default()).map_err(anyhow::Error::from))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(HullSpec::new(pts)?)
}

struct Frame {
    x0: Rational,
    y1: Rational,
    scale: Rational,
}

impl Frame {
    fn x(&self, x: &Rational) -> String {
        to_decimal(&((x - &self.x0) * &self.scale), 3)
    }

    fn y(&self, y: &Rational) -> String {
        to_decimal(&((&self.y1 - y) * &self.scale), 3)
    }

    fn pt(&self, p: &Point2) -> String {
        format!("{},{}", self.x(&p[0]), self.y(&p[1]))
    }
}

const OUTLINE: &str = "#d62728";

pub fn render_svg(scene: &SvgScene) -> Result<String, RenderError> {
    let w = &scene.window;
    if w.is_empty() {
        return Err(RenderError::EmptyWindow);
    }
    let width = Rational::from_integer(scene.width_px.max(1).into());
    let scale = &width / (&w.x1 - &w.x0);
    let height = (&w.y1 - &w.y0) * &scale;
    let frame = Frame {
        x0: w.x0.clone(),
        y1: w.y1.clone(),
        scale,
    };
    let wcell = w.cell();
    let (wd, ht) = (to_decimal(&width, 3), to_decimal(&height, 3));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{wd}" height="{ht}" viewBox="0 0 {wd} {ht}">"#
    );
    let _ = writeln!(
        s,
        "<desc>window [{}, {}] x [{}, {}]</desc>",
        format_rational(&w.x0),
        format_rational(&w.x1),
        format_rational(&w.y0),
        format_rational(&w.y1)
    );
    let _ = writeln!(s, r##"<rect x="0" y="0" width="{wd}" height="{ht}" fill="#808080"/>"##);
    for (cells, color) in [(&scene.inside, "#000000"), (&scene.outside, "#ffffff")] {
        for c in cells {
            fill(&mut s, &frame, &wcell, c, color);
        }
    }
    for c in &scene.outlines {
        outline(&mut s, &frame, &wcell, c);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn fill(s: &mut String, f: &Frame, window: &ConvexCell, cell: &ConvexCell, color: &str) {
    let Some(poly) = window.intersect(cell).ok().and_then(|c| cell_vertices_2d(&c).ok()) else {
        return;
    };
    let pts: Vec<String> = poly.vertices.iter().map(|v| f.pt(&v.point)).collect();
    match poly.shape {
        PolygonShape::Polygon => {
            let _ = writeln!(s, r#"<polygon points="{}" fill="{color}"/>"#, pts.join(" "));
        }
        PolygonShape::Segment => {
            let _ = writeln!(
                s,
                r#"<polyline points="{}" stroke="{color}" fill="none"/>"#,
                pts.join(" ")
            );
        }
        PolygonShape::Point => {}
    }
}

fn outline(s: &mut String, f: &Frame, window: &ConvexCell, cell: &ConvexCell) {
    let Some(poly) = window.intersect(cell).ok().and_then(|c| cell_vertices_2d(&c).ok()) else {
        return;
    };
    let on_boundary = |ps: &[&Point2]| {
        cell.constraints()
            .iter()
            .any(|c| ps.iter().all(|p| c.is_tight(p.as_slice())))
    };
    for (i, &contained) in poly.edges.iter().enumerate() {
        let (p, q) = poly.edge(i);
        if !on_boundary(&[p, q]) {
            continue;
        }
        let dash = if contained { "" } else { r#" stroke-dasharray="4,3""# };
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{OUTLINE}" stroke-width="1.5"{dash}/>"#,
            f.x(&p[0]),
            f.y(&p[1]),
            f.x(&q[0]),
            f.y(&q[1])
        );
    }
    for v in &poly.vertices {
        let tight = cell.constraints().iter().filter(|c| c.is_tight(&v.point)).count();
        if v.contained && (tight >= 2 || poly.shape == PolygonShape::Point) {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="3" fill="{OUTLINE}"/>"#,
                f.x(&v.point[0]),
                f.y(&v.point[1])
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use srs_core::rational::rat;

    fn half_open_square() -> ConvexCell {
        let c = |n: [i64; 2], b: i64, r| LinearConstraint::from_i64(&n, b, r);
        ConvexCell::from_normalized(
            2,
            [
                c([1, 0], 1, Relation::Ge),
                c([-1, 0], 0, Relation::Gt),
                c([0, 1], 0, Relation::Ge),
                c([0, -1], 1, Relation::Gt),
            ],
        )
    }

    fn window() -> Window {
        Window {
            x0: rat(-3, 2),
            y0: rat(-1, 2),
            x1: rat(1, 2),
            y1: rat(3, 2),
        }
    }

    #[test]
    fn one_cutout() {
        let mut scene = SvgScene::new(window());
        scene.outside.push(half_open_square());
        scene.outlines.push(half_open_square());
        let svg = render_svg(&scene).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<line").count(), 4);
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 1);
        // The dot sits at (-1, 0): 800/2 px per unit from (-3/2, 3/2).
        assert!(svg.contains(r#"<circle cx="200" cy="600""#), "{svg}");
        // Left edge x = -1 and bottom edge y = 0 are solid.
        for l in svg.lines().filter(|l| l.starts_with("<line")) {
            let vertical_left = l.contains(r#"x1="200""#) && l.contains(r#"x2="200""#);
            let bottom = l.contains(r#"y1="600""#) && l.contains(r#"y2="600""#);
            assert_eq!(vertical_left || bottom, !l.contains("dasharray"), "{l}");
        }
    }

    #[test]
    fn empty_scene_is_uniform() {
        let svg = render_svg(&SvgScene::new(window())).unwrap();
        assert_eq!(svg.matches("<rect").count(), 1);
        assert!(!svg.contains("<polygon"));
        let mut w = window();
        w.x1 = w.x0.clone();
        assert_eq!(render_svg(&SvgScene::new(w)).unwrap_err(), RenderError::EmptyWindow);
    }

    #[test]
    fn scene_from_region_lines() {
        let text = concat!(
            r#"{"hull":{"vertices":[["1/2","1/2"],["3/4","1/2"],["3/4","3/4"],["1/2","3/4"]]},"witness_count":5,"cycle_count":1}"#,
            "\n",
            r#"{"cycle":[[1,1]]}"#,
            "\n"
        );
        let scene = SvgScene::from_jsonl(text, None).unwrap();
        assert_eq!(
            scene.window,
            Window {
                x0: rat(1, 2),
                y0: rat(1, 2),
                x1: rat(3, 4),
                y1: rat(3, 4)
            }
        );
        assert_eq!(
            (scene.inside.len(), scene.outside.len(), scene.outlines.len()),
            (1, 1, 1)
        );
    }
}
