//! Arrangements of integer lines clipped to a convex polygon.
//!
//! The hull is cut into open faces, open edges and vertices. Pieces lying on
//! the same set of lines and touching each other are merged into classes; each
//! class is the set of hull points with one fixed sign vector.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::polygon::cross;
use super::{
    cell_vertices_2d, convex_combination, CanonicalGenerator, ConvexCell, GeometryError, Point2, PolygonShape, Relation,
};
use crate::rational::Rational;

pub type ClassId = usize;

/// Homogeneous point `(x / w, y / w)` with `w > 0` and `gcd(x, y, w) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct HPoint {
    x: i128,
    y: i128,
    w: i128,
}

/// Line `a·x + b·y + c = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Line {
    a: i128,
    b: i128,
    c: i128,
}

fn mul(a: i128, b: i128) -> Result<i128, GeometryError> {
    a.checked_mul(b).ok_or(GeometryError::Overflow)
}

fn sub(a: i128, b: i128) -> Result<i128, GeometryError> {
    a.checked_sub(b).ok_or(GeometryError::Overflow)
}

fn add(a: i128, b: i128) -> Result<i128, GeometryError> {
    a.checked_add(b).ok_or(GeometryError::Overflow)
}

fn to_i128(x: &BigInt) -> Result<i128, GeometryError> {
    x.to_i128().ok_or(GeometryError::Overflow)
}

impl HPoint {
    fn new(x: i128, y: i128, w: i128) -> Self {
        let (x, y, w) = if w < 0 { (-x, -y, -w) } else { (x, y, w) };
        let g = x.gcd(&y).gcd(&w);
        if g > 1 {
            Self {
                x: x / g,
                y: y / g,
                w: w / g,
            }
        } else {
            Self { x, y, w }
        }
    }

    fn from_rational(p: &Point2) -> Result<Self, GeometryError> {
        let w = p[0].denom().lcm(p[1].denom());
        let x = p[0].numer() * (&w / p[0].denom());
        let y = p[1].numer() * (&w / p[1].denom());
        Ok(Self::new(to_i128(&x)?, to_i128(&y)?, to_i128(&w)?))
    }

    fn to_rational(self) -> Point2 {
        [
            BigRational::new(self.x.into(), self.w.into()),
            BigRational::new(self.y.into(), self.w.into()),
        ]
    }
}

impl Line {
    fn new(a: i128, b: i128, c: i128) -> Self {
        let g = a.gcd(&b).gcd(&c);
        if g > 1 {
            Self {
                a: a / g,
                b: b / g,
                c: c / g,
            }
        } else {
            Self { a, b, c }
        }
    }

    fn through(p: HPoint, q: HPoint) -> Result<Self, GeometryError> {
        // Cross product of the homogeneous coordinates.
        let a = sub(mul(p.y, q.w)?, mul(p.w, q.y)?)?;
        let b = sub(mul(p.w, q.x)?, mul(p.x, q.w)?)?;
        let c = sub(mul(p.x, q.y)?, mul(p.y, q.x)?)?;
        Ok(Self::new(a, b, c))
    }

    fn sign_at(&self, p: HPoint) -> Result<i8, GeometryError> {
        let v = add(add(mul(self.a, p.x)?, mul(self.b, p.y)?)?, mul(self.c, p.w)?)?;
        Ok(v.signum() as i8)
    }

    fn meet(&self, o: &Line) -> Result<Option<HPoint>, GeometryError> {
        let w = sub(mul(self.a, o.b)?, mul(o.a, self.b)?)?;
        if w == 0 {
            return Ok(None);
        }
        let x = sub(mul(self.b, o.c)?, mul(o.b, self.c)?)?;
        let y = sub(mul(self.c, o.a)?, mul(o.c, self.a)?)?;
        Ok(Some(HPoint::new(x, y, w)))
    }

    /// Position along the direction `(b, −a)`, as a fraction `num / w`.
    fn param(&self, p: HPoint) -> Result<(i128, i128), GeometryError> {
        Ok((sub(mul(self.b, p.x)?, mul(self.a, p.y)?)?, p.w))
    }
}

fn cmp_frac(p: (i128, i128), q: (i128, i128)) -> Result<Ordering, GeometryError> {
    Ok(mul(p.0, q.1)?.cmp(&mul(q.0, p.1)?))
}

/// Whether direction `u` comes before `v` counterclockwise from the positive x-axis.
fn angle_cmp(u: (i128, i128), v: (i128, i128)) -> Ordering {
    let half = |d: (i128, i128)| if d.1 > 0 || (d.1 == 0 && d.0 > 0) { 0 } else { 1 };
    half(u).cmp(&half(v)).then_with(|| {
        // i128 products of carrier directions stay small; saturate as a guard.
        let c = u.0.saturating_mul(v.1).saturating_sub(u.1.saturating_mul(v.0));
        0.cmp(&c)
    })
}

struct Carrier {
    line: Line,
    from: HPoint,
    to: HPoint,
    /// Generator indices lying on this carrier.
    lines: Vec<u32>,
    on_hull: bool,
    vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Vertex {
    point: HPoint,
    lines: Vec<u32>,
    on_boundary: bool,
}

#[derive(Clone, Debug)]
struct Edge {
    ends: [usize; 2],
    carrier: usize,
}

/// One class of the arrangement inside the hull.
#[derive(Clone, Debug)]
pub struct ArrangementClass {
    pub dimension: u8,
    pub representative: Point2,
    pub cell: ConvexCell,
    pub touches_hull_boundary: bool,
    /// Indices (into [`Arrangement2D::lines`]) of the lines containing the class.
    pub lines: Vec<u32>,
    /// Arrangement vertices in the closure of the class.
    pub closure_vertices: Vec<usize>,
    /// Corners of the closure: counterclockwise polygon, segment endpoints, or the point.
    pub closure: Vec<Point2>,
}

impl ArrangementClass {
    /// Axis-aligned bounding box of the closure.
    pub fn bounds(&self) -> (Point2, Point2) {
        let mut lo = self.closure[0].clone();
        let mut hi = lo.clone();
        for p in &self.closure[1..] {
            for k in 0..2 {
                if p[k] < lo[k] {
                    lo[k] = p[k].clone();
                }
                if p[k] > hi[k] {
                    hi[k] = p[k].clone();
                }
            }
        }
        (lo, hi)
    }
}

pub fn class_representative(class: &ArrangementClass) -> &Point2 {
    &class.representative
}

/// A line arrangement clipped to a closed convex polygon.
#[derive(Clone, Debug)]
pub struct Arrangement2D {
    lines: Vec<CanonicalGenerator>,
    hull: ConvexCell,
    hull_corners: Vec<Point2>,
    vertices: Vec<Vertex>,
    classes: Vec<ArrangementClass>,
    adjacency: Vec<Vec<ClassId>>,
    vertex_classes: Vec<Vec<ClassId>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn drop_collinear(mut pts: Vec<Point2>) -> Vec<Point2> {
    let mut i = 0;
    while pts.len() > 3 && i < pts.len() {
        let n = pts.len();
        if cross(&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]).is_zero() {
            pts.remove(i);
        } else {
            i += 1;
        }
    }
    pts
}

impl Arrangement2D {
    /// Builds the arrangement of `generators` inside `hull`.
    ///
    /// The hull must be a bounded, full-dimensional polygon given by closed
    /// constraints. Duplicate generators are merged.
    pub fn build(
        generators: impl IntoIterator<Item = CanonicalGenerator>,
        hull: &ConvexCell,
    ) -> Result<Self, GeometryError> {
        if hull.dim() != 2 {
            return Err(GeometryError::NotPlanar(hull.dim()));
        }
        if hull.constraints().iter().any(|c| c.relation() == Relation::Gt) {
            return Err(GeometryError::DegenerateHull("hull has strict constraints".into()));
        }
        let poly = cell_vertices_2d(hull).map_err(|e| GeometryError::DegenerateHull(e.to_string()))?;
        if poly.shape != PolygonShape::Polygon {
            return Err(GeometryError::DegenerateHull("hull is not full-dimensional".into()));
        }
        let lines: Vec<CanonicalGenerator> = generators
            .into_iter()
            .inspect(|g| debug_assert_eq!(g.dim(), 2))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let corners: Vec<HPoint> = poly
            .vertices
            .iter()
            .map(|v| HPoint::from_rational(&v.point))
            .collect::<Result<_, _>>()?;
        let k = corners.len();

        let mut carriers: Vec<Carrier> = Vec::new();
        for i in 0..k {
            let (p, q) = (corners[i], corners[(i + 1) % k]);
            carriers.push(Carrier {
                line: Line::through(p, q)?,
                from: p,
                to: q,
                lines: Vec::new(),
                on_hull: true,
                vertices: Vec::new(),
            });
        }
        let mut corner_touch: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (gi, g) in lines.iter().enumerate() {
            let line = Line::new(g.normal[0].into(), g.normal[1].into(), g.offset.into());
            let signs: Vec<i8> = corners.iter().map(|&c| line.sign_at(c)).collect::<Result<_, _>>()?;
            let pos = signs.iter().any(|&s| s > 0);
            let neg = signs.iter().any(|&s| s < 0);
            if pos && neg {
                let mut ends: Vec<HPoint> = Vec::new();
                for i in 0..k {
                    let j = (i + 1) % k;
                    if signs[i] == 0 {
                        ends.push(corners[i]);
                    } else if signs[i] * signs[j] < 0 {
                        let x = line.meet(&carriers[i].line)?.expect("crossing edge is not parallel");
                        ends.push(x);
                    }
                }
                ends.dedup();
                debug_assert_eq!(ends.len(), 2);
                carriers.push(Carrier {
                    line,
                    from: ends[0],
                    to: ends[1],
                    lines: vec![gi as u32],
                    on_hull: false,
                    vertices: Vec::new(),
                });
            } else if pos || neg {
                let zeros: Vec<usize> = (0..k).filter(|&i| signs[i] == 0).collect();
                match zeros.as_slice() {
                    [] => {}
                    [i] => corner_touch[*i].push(gi as u32),
                    [i, j] => {
                        let e = if (i + 1) % k == *j { *i } else { *j };
                        carriers[e].lines.push(gi as u32);
                    }
                    _ => unreachable!("hull corners are in strictly convex position"),
                }
            }
        }

        // Vertices: pairwise carrier intersections inside both segments.
        let mut index: HashMap<HPoint, usize> = HashMap::new();
        let mut vertices: Vec<Vertex> = Vec::new();
        let within = |c: &Carrier, p: HPoint| -> Result<bool, GeometryError> {
            let t = c.line.param(p)?;
            let (t0, t1) = (c.line.param(c.from)?, c.line.param(c.to)?);
            let (lo, hi) = if cmp_frac(t0, t1)? == Ordering::Greater {
                (t1, t0)
            } else {
                (t0, t1)
            };
            Ok(cmp_frac(lo, t)? != Ordering::Greater && cmp_frac(t, hi)? != Ordering::Greater)
        };
        for i in 0..carriers.len() {
            for j in i + 1..carriers.len() {
                let Some(p) = carriers[i].line.meet(&carriers[j].line)? else {
                    continue;
                };
                if !within(&carriers[i], p)? || !within(&carriers[j], p)? {
                    continue;
                }
                let vid = *index.entry(p).or_insert_with(|| {
                    vertices.push(Vertex {
                        point: p,
                        lines: Vec::new(),
                        on_boundary: false,
                    });
                    vertices.len() - 1
                });
                carriers[i].vertices.push(vid);
                carriers[j].vertices.push(vid);
            }
        }
        for (i, c) in corners.iter().enumerate() {
            let vid = index[c];
            vertices[vid].lines.extend(corner_touch[i].iter().copied());
        }
        for c in &mut carriers {
            c.vertices.sort_unstable();
            c.vertices.dedup();
            for &v in &c.vertices {
                vertices[v].lines.extend(c.lines.iter().copied());
                vertices[v].on_boundary |= c.on_hull;
            }
        }
        for v in &mut vertices {
            v.lines.sort_unstable();
            v.lines.dedup();
        }

        // Edges between consecutive vertices along each carrier.
        let mut edges: Vec<Edge> = Vec::new();
        // Per vertex: (target vertex, direction, edge index).
        type Outgoing = (usize, (i128, i128), usize);
        let mut out: Vec<Vec<Outgoing>> = vec![Vec::new(); vertices.len()];
        for (ci, c) in carriers.iter_mut().enumerate() {
            let mut keyed: Vec<((i128, i128), usize)> = c
                .vertices
                .iter()
                .map(|&v| Ok((c.line.param(vertices[v].point)?, v)))
                .collect::<Result<_, GeometryError>>()?;
            let mut err = None;
            keyed.sort_by(|a, b| {
                cmp_frac(a.0, b.0).unwrap_or_else(|e| {
                    err = Some(e);
                    Ordering::Equal
                })
            });
            if let Some(e) = err {
                return Err(e);
            }
            c.vertices = keyed.iter().map(|&(_, v)| v).collect();
            let dir = (c.line.b, -c.line.a);
            for w in c.vertices.windows(2) {
                let eid = edges.len();
                edges.push(Edge {
                    ends: [w[0], w[1]],
                    carrier: ci,
                });
                out[w[0]].push((w[1], dir, eid));
                out[w[1]].push((w[0], (-dir.0, -dir.1), eid));
            }
        }
        for o in &mut out {
            o.sort_by(|a, b| angle_cmp(a.1, b.1));
        }

        // Faces by half-edge tracing; the next half-edge after u→v is the
        // outgoing edge at v immediately clockwise of v→u.
        let mut used: HashMap<(usize, usize), ()> = HashMap::new();
        let mut faces: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for u0 in 0..vertices.len() {
            for &(v0, _, _) in &out[u0] {
                if used.contains_key(&(u0, v0)) {
                    continue;
                }
                let mut cyc = Vec::new();
                let mut cyc_edges = Vec::new();
                let (mut u, mut v) = (u0, v0);
                loop {
                    used.insert((u, v), ());
                    cyc.push(u);
                    let pos = out[v].iter().position(|&(w, _, _)| w == u).expect("twin half-edge");
                    let back_edge = out[v][pos].2;
                    cyc_edges.push(back_edge);
                    let n = out[v].len();
                    let next = out[v][(pos + n - 1) % n].0;
                    u = v;
                    v = next;
                    if (u, v) == (u0, v0) {
                        break;
                    }
                }
                let pts: Vec<Point2> = cyc.iter().map(|&i| vertices[i].point.to_rational()).collect();
                let mut area = Rational::zero();
                for i in 0..pts.len() {
                    let (p, q) = (&pts[i], &pts[(i + 1) % pts.len()]);
                    area += &p[0] * &q[1] - &q[0] * &p[1];
                }
                if area.is_positive() {
                    faces.push((cyc, cyc_edges));
                }
            }
        }

        // Pieces: vertices, then edges, then faces.
        let nv = vertices.len();
        let ne = edges.len();
        let nf = faces.len();
        let mut uf = UnionFind((0..nv + ne + nf).collect());
        let edge_lines = |e: &Edge| &carriers[e.carrier].lines;
        for (ei, e) in edges.iter().enumerate() {
            for &v in &e.ends {
                if vertices[v].lines == *edge_lines(e) {
                    uf.union(nv + ei, v);
                }
            }
        }
        for (fi, (fv, fe)) in faces.iter().enumerate() {
            for &e in fe {
                if edge_lines(&edges[e]).is_empty() {
                    uf.union(nv + ne + fi, nv + e);
                }
            }
            for &v in fv {
                if vertices[v].lines.is_empty() {
                    uf.union(nv + ne + fi, v);
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for p in 0..nv + ne + nf {
            groups.entry(uf.find(p)).or_default().push(p);
        }

        let hull_corners: Vec<Point2> = poly.points();
        let mut classes: Vec<ArrangementClass> = Vec::with_capacity(groups.len());
        for (_, pieces) in groups {
            let top = *pieces.iter().max().expect("nonempty group");
            let mut closure_vertices: Vec<usize> = Vec::new();
            for &p in &pieces {
                if p < nv {
                    closure_vertices.push(p);
                } else if p < nv + ne {
                    closure_vertices.extend(edges[p - nv].ends);
                } else {
                    closure_vertices.extend(&faces[p - nv - ne].0);
                }
            }
            closure_vertices.sort_unstable();
            closure_vertices.dedup();
            let (dimension, class_lines, closure) = if top >= nv + ne {
                let f = &faces[top - nv - ne];
                let pts = f.0.iter().map(|&v| vertices[v].point.to_rational()).collect();
                (2u8, Vec::new(), drop_collinear(pts))
            } else if top >= nv {
                let e = &edges[top - nv];
                let pts = e.ends.iter().map(|&v| vertices[v].point.to_rational()).collect();
                (1u8, edge_lines(e).clone(), pts)
            } else {
                (
                    0u8,
                    vertices[top].lines.clone(),
                    vec![vertices[top].point.to_rational()],
                )
            };
            let representative = convex_combination(&closure, &vec![1; closure.len()]);
            let touches_hull_boundary = closure_vertices.iter().any(|&v| vertices[v].on_boundary);

            let mut cell = hull.clone();
            for &g in &class_lines {
                cell.push(super::Normalized::Constraint(
                    lines[g as usize].constraint(1, Relation::Eq),
                ));
            }
            let mut others: Vec<u32> = closure_vertices
                .iter()
                .flat_map(|&v| vertices[v].lines.iter().copied())
                .collect();
            others.sort_unstable();
            others.dedup();
            for g in others {
                if class_lines.binary_search(&g).is_ok() {
                    continue;
                }
                let line = &lines[g as usize];
                let s = line.sign_at(&representative);
                debug_assert!(s != 0);
                cell.push(super::Normalized::Constraint(line.constraint(s, Relation::Gt)));
            }
            classes.push(ArrangementClass {
                dimension,
                representative,
                cell,
                touches_hull_boundary,
                lines: class_lines,
                closure_vertices,
                closure,
            });
        }
        classes.sort_by(|a, b| {
            a.dimension
                .cmp(&b.dimension)
                .then_with(|| a.representative.cmp(&b.representative))
        });

        let mut vertex_classes: Vec<Vec<ClassId>> = vec![Vec::new(); nv];
        for (ci, c) in classes.iter().enumerate() {
            for &v in &c.closure_vertices {
                vertex_classes[v].push(ci);
            }
        }
        let mut adjacency: Vec<BTreeSet<ClassId>> = vec![BTreeSet::new(); classes.len()];
        for vc in &vertex_classes {
            for &a in vc {
                for &b in vc {
                    if a != b {
                        adjacency[a].insert(b);
                    }
                }
            }
        }
        Ok(Self {
            lines,
            hull: hull.clone(),
            hull_corners,
            vertices,
            classes,
            adjacency: adjacency.into_iter().map(|s| s.into_iter().collect()).collect(),
            vertex_classes,
        })
    }

    pub fn lines(&self) -> &[CanonicalGenerator] {
        &self.lines
    }

    pub fn hull(&self) -> &ConvexCell {
        &self.hull
    }

    pub fn hull_corners(&self) -> &[Point2] {
        &self.hull_corners
    }

    pub fn classes(&self) -> &[ArrangementClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &ArrangementClass {
        &self.classes[id]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn neighbors(&self, id: ClassId) -> &[ClassId] {
        &self.adjacency[id]
    }

    pub fn are_adjacent(&self, a: ClassId, b: ClassId) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_point(&self, v: usize) -> Point2 {
        self.vertices[v].point.to_rational()
    }

    /// Indices of the lines through arrangement vertex `v`.
    pub fn vertex_lines(&self, v: usize) -> &[u32] {
        &self.vertices[v].lines
    }

    /// Classes whose closure contains vertex `v`.
    pub fn vertex_classes(&self, v: usize) -> &[ClassId] {
        &self.vertex_classes[v]
    }

    /// Vertices shared by the closures of two classes.
    pub fn shared_vertices(&self, a: ClassId, b: ClassId) -> Vec<usize> {
        let cb = &self.classes[b].closure_vertices;
        self.classes[a]
            .closure_vertices
            .iter()
            .copied()
            .filter(|v| cb.binary_search(v).is_ok())
            .collect()
    }

    /// `sgn(g(x))` for every line `g`.
    pub fn sign_vector(&self, x: &Point2) -> Vec<i8> {
        self.lines.iter().map(|g| g.sign_at(x)).collect()
    }

    pub fn signature(&self, id: ClassId) -> Vec<i8> {
        self.sign_vector(&self.classes[id].representative)
    }

    /// The class containing `x`, if `x` lies in the hull.
    pub fn locate(&self, x: &Point2) -> Option<ClassId> {
        if !self.hull.contains(x).ok()? {
            return None;
        }
        self.classes.iter().position(|c| {
            let (lo, hi) = c.bounds();
            lo[0] <= x[0] && x[0] <= hi[0] && lo[1] <= x[1] && x[1] <= hi[1] && c.cell.contains(x).unwrap_or(false)
        })
    }
}
