use num_integer::Integer;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{CutoutReport, HullSpec, RegionError, RegionWitnesses};
use srs_core::dynamics::{Cycle, DynamicsError, LatticePoint};
use srs_core::geometry::{
    canonical_generator, cutout_polyhedron, Arrangement2D, CanonicalGenerator, ClassId, GeometryError, Point2, Relation,
};

/// Successor of every witness under `τ_r` for one fixed `r`, by index into
/// the sorted witness list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessorGraph {
    succ: Vec<u32>,
}

impl SuccessorGraph {
    /// Marks a successor outside the witness set.
    pub const LEAVES: u32 = u32::MAX;

    pub fn new(succ: Vec<u32>) -> Self {
        Self { succ }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successor(&self, i: usize) -> Option<usize> {
        match self.succ[i] {
            Self::LEAVES => None,
            j => Some(j as usize),
        }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.succ
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleSearch {
    /// Whether the zero cycle was reached.
    pub trivial: bool,
    /// Normalized, sorted and without duplicates.
    pub nontrivial: Vec<Cycle>,
}

/// All cycles reachable from `starts`.
pub fn graph_cycles(
    points: &[LatticePoint],
    graph: &SuccessorGraph,
    starts: impl IntoIterator<Item = usize>,
) -> CycleSearch {
    let mut run = vec![0u32; graph.len()];
    let mut out = CycleSearch::default();
    let mut path = Vec::new();
    for (k, s) in starts.into_iter().enumerate() {
        let id = k as u32 + 1;
        path.clear();
        let mut x = s as u32;
        while x != SuccessorGraph::LEAVES && run[x as usize] == 0 {
            run[x as usize] = id;
            path.push(x);
            x = graph.succ[x as usize];
        }
        if x == SuccessorGraph::LEAVES || run[x as usize] != id {
            continue;
        }
        let at = path.iter().position(|&p| p == x).expect("x lies on the current path");
        let cyc: Vec<LatticePoint> = path[at..].iter().map(|&i| points[i as usize].clone()).collect();
        if cyc.len() == 1 && cyc[0].is_zero() {
            out.trivial = true;
        } else {
            out.nontrivial.push(
                Cycle::new(cyc)
                    .expect("successor cycles are shift compatible")
                    .normalized(),
            );
        }
    }
    out.nontrivial.sort();
    out.nontrivial.dedup();
    out
}

/// The lines `a·r + b = 0` for `a ∈ V \ {0}` and every integer `b` from
/// `⌊min −a·r_i⌋` to `⌈max −a·r_i⌉` over the hull corners, deduplicated.
pub fn line_generators(hull: &HullSpec, witnesses: &RegionWitnesses) -> Result<Vec<CanonicalGenerator>, RegionError> {
    let corners = hull.vertex_parameters();
    let mut out = Vec::new();
    for a in witnesses.points() {
        if a.is_zero() {
            continue;
        }
        let a = a.entries();
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for r in &corners {
            let f = r.floor_dot(a)?;
            let c = if r.dot_is_integer(a) { f } else { f + 1 };
            lo = lo.min(f);
            hi = hi.max(c);
        }
        for m in lo..=hi {
            out.push(canonical_generator(a, -m)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Homogeneous form `(x, y, w)` of a rational point, `w > 0`.
type HRep = (i128, i128, i128);

fn homogeneous(p: &Point2) -> Result<HRep, GeometryError> {
    let w = p[0].denom().lcm(p[1].denom());
    let x = p[0].numer() * (&w / p[0].denom());
    let y = p[1].numer() * (&w / p[1].denom());
    match (x.to_i128(), y.to_i128(), w.to_i128()) {
        (Some(x), Some(y), Some(w)) => Ok((x, y, w)),
        _ => Err(GeometryError::Overflow),
    }
}

/// `a·p` as a fraction over `p.w`.
fn dot(a: [i64; 2], p: HRep) -> Option<i128> {
    (a[0] as i128)
        .checked_mul(p.0)?
        .checked_add((a[1] as i128).checked_mul(p.1)?)
}

fn primitive(a: [i64; 2]) -> [i64; 2] {
    let g = a[0].gcd(&a[1]);
    let (x, y) = (a[0] / g, a[1] / g);
    if x < 0 || (x == 0 && y < 0) {
        [-x, -y]
    } else {
        [x, y]
    }
}

fn is_multiple(a: [i64; 2], n: [i64; 2]) -> bool {
    let k = if n[0] != 0 { a[0] / n[0] } else { a[1] / n[1] };
    k.checked_mul(n[0]) == Some(a[0]) && k.checked_mul(n[1]) == Some(a[1])
}

/// Evaluates `τ_r` on a fixed planar witness set at arrangement class
/// representatives and moves between adjacent classes.
pub struct Walker<'a> {
    arr: &'a Arrangement2D,
    points: &'a [LatticePoint],
    coords: Vec<[i64; 2]>,
    index: FxHashMap<[i64; 2], u32>,
    reps: Vec<HRep>,
    by_direction: FxHashMap<[i64; 2], Vec<u32>>,
    zero: Option<u32>,
}

impl<'a> Walker<'a> {
    pub fn new(arr: &'a Arrangement2D, witnesses: &'a RegionWitnesses) -> Result<Self, RegionError> {
        let points = witnesses.points();
        if let Some(p) = points.iter().find(|p| p.dim() != 2) {
            return Err(RegionError::DimensionUnsupported(p.dim()));
        }
        let coords: Vec<[i64; 2]> = points.iter().map(|p| [p.entries()[0], p.entries()[1]]).collect();
        let index = coords.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let mut by_direction: FxHashMap<[i64; 2], Vec<u32>> = FxHashMap::default();
        let mut zero = None;
        for (i, &c) in coords.iter().enumerate() {
            if c == [0, 0] {
                zero = Some(i as u32);
            } else {
                by_direction.entry(primitive(c)).or_default().push(i as u32);
            }
        }
        let reps = arr
            .classes()
            .iter()
            .map(|c| homogeneous(&c.representative))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            arr,
            points,
            coords,
            index,
            reps,
            by_direction,
            zero,
        })
    }

    pub fn arrangement(&self) -> &Arrangement2D {
        self.arr
    }

    pub fn points(&self) -> &[LatticePoint] {
        self.points
    }

    fn successor(&self, i: usize, r: HRep) -> Result<u32, RegionError> {
        let a = self.coords[i];
        let f = dot(a, r).ok_or(DynamicsError::Overflow)?.div_euclid(r.2);
        let m = i64::try_from(f)
            .ok()
            .and_then(i64::checked_neg)
            .ok_or(DynamicsError::Overflow)?;
        Ok(self.index.get(&[a[1], m]).copied().unwrap_or(SuccessorGraph::LEAVES))
    }

    /// The full successor graph at the representative of `class`.
    pub fn graph_at(&self, class: ClassId) -> Result<SuccessorGraph, RegionError> {
        let r = self.reps[class];
        let succ = (0..self.coords.len())
            .map(|i| self.successor(i, r))
            .collect::<Result<_, _>>()?;
        Ok(SuccessorGraph::new(succ))
    }

    fn check_adjacent(&self, from: ClassId, to: ClassId) -> Result<(), RegionError> {
        if from == to || !self.arr.are_adjacent(from, to) {
            return Err(RegionError::NotAdjacent(from, to));
        }
        Ok(())
    }

    /// Witnesses whose successor may differ between two adjacent classes.
    ///
    /// For classes away from the hull boundary these are the multiples of the
    /// normals of one-dimensional classes next to both that contain the shared
    /// boundary. Otherwise [`Walker::update_set_exact`] is used.
    pub fn update_set(&self, from: ClassId, to: ClassId) -> Result<Vec<usize>, RegionError> {
        self.check_adjacent(from, to)?;
        let (c, d) = (self.arr.class(from), self.arr.class(to));
        if c.touches_hull_boundary || d.touches_hull_boundary {
            return self.update_set_exact(from, to);
        }
        let shared = self.arr.shared_vertices(from, to);
        let near = |x: ClassId, id: ClassId| x == id || self.arr.are_adjacent(x, id);
        let mut candidates: Vec<ClassId> = self.arr.neighbors(from).to_vec();
        candidates.push(from);
        let mut out: Vec<usize> = self.zero.map(|z| z as usize).into_iter().collect();
        let mut normals: Vec<[i64; 2]> = Vec::new();
        for t in candidates {
            let ct = self.arr.class(t);
            if ct.dimension != 1 || !near(to, t) {
                continue;
            }
            let line = ct.lines[0];
            if shared.iter().all(|&v| self.arr.vertex_lines(v).contains(&line)) {
                let n = &self.arr.lines()[line as usize].normal;
                normals.push([n[0], n[1]]);
            }
        }
        normals.sort_unstable();
        normals.dedup();
        for n in normals {
            if let Some(bucket) = self.by_direction.get(&primitive(n)) {
                out.extend(
                    bucket
                        .iter()
                        .filter(|&&i| is_multiple(self.coords[i as usize], n))
                        .map(|&i| i as usize),
                );
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `{a ∈ V | a·x takes one integer value on the common boundary}`.
    pub fn update_set_exact(&self, from: ClassId, to: ClassId) -> Result<Vec<usize>, RegionError> {
        self.check_adjacent(from, to)?;
        let shared: Vec<HRep> = self
            .arr
            .shared_vertices(from, to)
            .into_iter()
            .map(|v| homogeneous(&self.arr.vertex_point(v)))
            .collect::<Result<_, _>>()?;
        let mut out = Vec::new();
        'outer: for (i, &a) in self.coords.iter().enumerate() {
            let mut value = None;
            for &p in &shared {
                let v = dot(a, p).ok_or(DynamicsError::Overflow)?;
                if v % p.2 != 0 {
                    continue 'outer;
                }
                let q = v / p.2;
                if value.is_some_and(|w| w != q) {
                    continue 'outer;
                }
                value = Some(q);
            }
            out.push(i);
        }
        Ok(out)
    }

    /// Moves `graph` from class `from` to the adjacent class `to` and returns
    /// the tails of the edges that changed.
    pub fn update_edges(
        &self,
        graph: &mut SuccessorGraph,
        from: ClassId,
        to: ClassId,
    ) -> Result<Vec<usize>, RegionError> {
        let r = self.reps[to];
        let mut changed = Vec::new();
        for i in self.update_set(from, to)? {
            let s = self.successor(i, r)?;
            if graph.succ[i] != s {
                graph.succ[i] = s;
                changed.push(i);
            }
        }
        Ok(changed)
    }
}

/// Next class of a walk: an untreated neighbour of least dimension, then with
/// the most treated neighbours, then with the lexicographically smallest
/// representative.
pub fn select_next_class(arr: &Arrangement2D, current: ClassId, treated: &[bool]) -> Option<ClassId> {
    let key = |c: ClassId| {
        let done = arr.neighbors(c).iter().filter(|&&n| treated[n]).count();
        (arr.class(c).dimension, std::cmp::Reverse(done))
    };
    arr.neighbors(current)
        .iter()
        .copied()
        .filter(|&c| !treated[c])
        .min_by(|&a, &b| {
            key(a)
                .cmp(&key(b))
                .then_with(|| arr.class(a).representative.cmp(&arr.class(b).representative))
        })
}

/// How a class was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassFlag {
    Finite,
    /// Inside the cutout cell of the cycle with this index in the report.
    Cutout(usize),
}

pub struct Algorithm2Run {
    pub report: CutoutReport,
    pub arrangement: Arrangement2D,
    pub flags: Vec<ClassFlag>,
    /// Number of walks, each starting with a full graph rebuild.
    pub walks: usize,
    /// Incremental moves between adjacent classes.
    pub steps: usize,
}

/// Strict and non-strict rows of a cutout cell, for fast evaluation.
struct Rows(Vec<([i128; 2], i128, Relation)>);

impl Rows {
    fn new(pi: &Cycle) -> Result<Self, RegionError> {
        let cell = cutout_polyhedron(pi)?;
        let mut rows = Vec::new();
        for c in cell.constraints() {
            let n0 = c.normal()[0].to_i128().ok_or(GeometryError::Overflow)?;
            let n1 = c.normal()[1].to_i128().ok_or(GeometryError::Overflow)?;
            let b = c.offset().to_i128().ok_or(GeometryError::Overflow)?;
            rows.push(([n0, n1], b, c.relation()));
        }
        Ok(Self(rows))
    }

    fn contains(&self, p: HRep) -> Result<bool, RegionError> {
        for &(n, b, rel) in &self.0 {
            let v = n[0]
                .checked_mul(p.0)
                .and_then(|x| x.checked_add(n[1].checked_mul(p.1)?))
                .and_then(|x| x.checked_add(b.checked_mul(p.2)?))
                .ok_or(GeometryError::Overflow)?;
            let ok = match rel {
                Relation::Eq => v == 0,
                Relation::Ge => v >= 0,
                Relation::Gt => v > 0,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct State<'w, 'a> {
    walker: &'w Walker<'a>,
    flags: Vec<Option<ClassFlag>>,
    treated: Vec<bool>,
    cycles: Vec<Cycle>,
}

impl State<'_, '_> {
    fn settle(&mut self, class: ClassId, found: CycleSearch) -> Result<bool, RegionError> {
        let Some(pi) = found.nontrivial.into_iter().next() else {
            self.flags[class] = Some(ClassFlag::Finite);
            self.treated[class] = true;
            return Ok(false);
        };
        let k = self.cycles.len();
        let rows = Rows::new(&pi)?;
        for (s, &rep) in self.walker.reps.iter().enumerate() {
            if !self.treated[s] && rows.contains(rep)? {
                self.flags[s] = Some(ClassFlag::Cutout(k));
                self.treated[s] = true;
            }
        }
        if !self.treated[class] {
            return Err(RegionError::Dynamics(DynamicsError::InvalidCycle(format!(
                "cycle {pi:?} does not contain its own class"
            ))));
        }
        self.cycles.push(pi);
        Ok(true)
    }
}

/// Cycles whose cutout cells remove exactly the non-finite part of the hull.
pub fn algorithm2(hull: &HullSpec, witnesses: &RegionWitnesses) -> Result<CutoutReport, RegionError> {
    algorithm2_detailed(hull, witnesses).map(|run| run.report)
}

pub fn algorithm2_detailed(hull: &HullSpec, witnesses: &RegionWitnesses) -> Result<Algorithm2Run, RegionError> {
    if hull.dim() != 2 {
        return Err(RegionError::DimensionUnsupported(hull.dim()));
    }
    let cell = hull.cell().expect("planar hulls carry a cell");
    let arr = Arrangement2D::build(line_generators(hull, witnesses)?, cell)?;
    let walker = Walker::new(&arr, witnesses)?;
    let n = arr.len();
    let all = || 0..walker.points.len();
    let mut st = State {
        walker: &walker,
        flags: vec![None; n],
        treated: vec![false; n],
        cycles: Vec::new(),
    };

    for c in 0..n {
        if st.treated[c] || !arr.class(c).touches_hull_boundary {
            continue;
        }
        let g = walker.graph_at(c)?;
        st.settle(c, graph_cycles(walker.points, &g, all()))?;
    }

    let (mut walks, mut steps) = (0, 0);
    let mut next_start = 0;
    while let Some(start) = (next_start..n).find(|&c| !st.treated[c]) {
        next_start = start;
        walks += 1;
        let mut r = start;
        let mut g = walker.graph_at(r)?;
        let mut found = graph_cycles(walker.points, &g, all());
        while !st.settle(r, found)? {
            let Some(next) = select_next_class(&arr, r, &st.treated) else {
                break;
            };
            let changed = walker.update_edges(&mut g, r, next)?;
            steps += 1;
            found = graph_cycles(walker.points, &g, changed);
            r = next;
        }
    }

    // Report cycles sorted; remap the flag indices accordingly.
    let mut order: Vec<usize> = (0..st.cycles.len()).collect();
    order.sort_by(|&a, &b| st.cycles[a].cmp(&st.cycles[b]));
    let mut rank = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let flags = st
        .flags
        .into_iter()
        .map(|f| match f.expect("every class is settled") {
            ClassFlag::Cutout(k) => ClassFlag::Cutout(rank[k]),
            f => f,
        })
        .collect();
    let cycles = order.iter().map(|&k| st.cycles[k].clone()).collect();
    Ok(Algorithm2Run {
        report: CutoutReport::from_cycles(hull.clone(), witnesses.len(), cycles)?,
        arrangement: arr,
        flags,
        walks,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region_witnesses_default;
    use srs_core::dynamics::{decide_finiteness, ParameterVector};
    use srs_core::rational::rat;

    fn parameter(x: &[srs_core::rational::Rational]) -> Result<ParameterVector, RegionError> {
        Ok(ParameterVector::new(x.to_vec())?)
    }

    fn lp(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(&[x, y])
    }

    fn square(cx: (i64, i64), cy: (i64, i64), side: (i64, i64)) -> HullSpec {
        let h = rat(side.0, 2 * side.1);
        let (x, y) = (rat(cx.0, cx.1) - &h, rat(cy.0, cy.1) - &h);
        HullSpec::square(&x, &y, &rat(side.0, side.1)).unwrap()
    }

    #[test]
    fn cycles_of_small_graphs() {
        let pts = vec![lp(-1, 0), lp(0, 0), lp(0, 1), lp(1, 0)];
        // Everything runs into zero.
        let g = SuccessorGraph::new(vec![1, 1, 1, 1]);
        let s = graph_cycles(&pts, &g, 0..4);
        assert!(s.trivial && s.nontrivial.is_empty());
        // (1,0) -> (0,1) -> (1,0)
        let g = SuccessorGraph::new(vec![3, 1, 3, 2]);
        let s = graph_cycles(&pts, &g, 0..4);
        assert_eq!(s.nontrivial, vec![Cycle::new(vec![lp(0, 1), lp(1, 0)]).unwrap()]);
        assert_eq!(graph_cycles(&pts, &g, std::iter::empty()), CycleSearch::default());
        let g = SuccessorGraph::new(vec![SuccessorGraph::LEAVES, 1, 3, 2]);
        assert!(graph_cycles(&pts, &g, [0]).nontrivial.is_empty());
    }

    #[test]
    fn square_at_origin_has_no_cycles() {
        let h = square((1, 200), (1, 200), (1, 100));
        let w = region_witnesses_default(&h).unwrap();
        let run = algorithm2_detailed(&h, &w).unwrap();
        assert!(run.report.cycles().is_empty());
        assert!(run.flags.iter().all(|f| *f == ClassFlag::Finite));
    }

    #[test]
    fn square_near_minus_third_is_cut_out() {
        let h = square((-1, 3), (1, 3), (1, 100));
        let w = region_witnesses_default(&h).unwrap();
        let run = algorithm2_detailed(&h, &w).unwrap();
        let target = Cycle::new(vec![lp(0, 1), lp(1, 0)]).unwrap();
        assert!(run.report.cycles().contains(&target));
        for (c, f) in run.flags.iter().enumerate() {
            let ClassFlag::Cutout(k) = *f else {
                panic!("class {c} marked finite")
            };
            let cell = cutout_polyhedron(&run.report.cycles()[k]).unwrap();
            assert!(cell.contains(&run.arrangement.class(c).representative).unwrap());
        }
    }

    #[test]
    fn quadrangle_walk_matches_pointwise_decisions() {
        let h = HullSpec::new(vec![
            vec![rat(41, 50), rat(37, 100)],
            vec![rat(93, 100), rat(37, 100)],
            vec![rat(93, 100), rat(11, 25)],
            vec![rat(41, 50), rat(11, 25)],
        ])
        .unwrap();
        let w = region_witnesses_default(&h).unwrap();
        let run = algorithm2_detailed(&h, &w).unwrap();
        assert!(!run.report.cycles().is_empty());
        assert!(run.steps > 100);
        for (c, class) in run.arrangement.classes().iter().enumerate().step_by(97) {
            let r = parameter(&class.representative).unwrap();
            let finite = decide_finiteness(&r).unwrap().is_finite();
            assert_eq!(finite, run.flags[c] == ClassFlag::Finite, "class {c}");
            assert_eq!(finite, run.report.is_finite(&class.representative));
        }
    }

    #[test]
    fn clause_two_matches_the_definition_inside_the_hull() {
        let h = square((7, 8), (2, 5), (1, 20));
        let w = region_witnesses_default(&h).unwrap();
        let arr = Arrangement2D::build(line_generators(&h, &w).unwrap(), h.cell().unwrap()).unwrap();
        let walker = Walker::new(&arr, &w).unwrap();
        let mut interior_pairs = 0;
        for c in 0..arr.len() {
            for &d in arr.neighbors(c) {
                let fast = walker.update_set(c, d).unwrap();
                let exact = walker.update_set_exact(c, d).unwrap();
                if !arr.class(c).touches_hull_boundary && !arr.class(d).touches_hull_boundary {
                    interior_pairs += 1;
                    assert_eq!(fast, exact, "classes {c} and {d}");
                }
                let mut g = walker.graph_at(c).unwrap();
                walker.update_edges(&mut g, c, d).unwrap();
                assert_eq!(g, walker.graph_at(d).unwrap());
            }
        }
        assert!(interior_pairs > 0);
        assert!(matches!(walker.update_set(0, 0), Err(RegionError::NotAdjacent(0, 0))));
    }

    #[test]
    fn next_class_prefers_low_dimension_then_treated_neighbours() {
        let h = square((7, 8), (2, 5), (1, 20));
        let w = region_witnesses_default(&h).unwrap();
        let arr = Arrangement2D::build(line_generators(&h, &w).unwrap(), h.cell().unwrap()).unwrap();
        let face = (0..arr.len())
            .find(|&c| arr.class(c).dimension == 2 && !arr.class(c).touches_hull_boundary)
            .unwrap();
        let mut treated = vec![false; arr.len()];
        let pick = select_next_class(&arr, face, &treated).unwrap();
        assert!(arr.class(pick).dimension < 2);
        for &n in arr.neighbors(face) {
            treated[n] = true;
        }
        assert_eq!(select_next_class(&arr, face, &treated), None);
    }
}
