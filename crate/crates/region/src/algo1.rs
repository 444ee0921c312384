use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{CutoutReport, HullSpec, RegionError};
use srs_core::dynamics::{characteristic_cell_of, decide_on_graph, witness_set, Cycle, ParameterVector, Verdict};
use srs_core::geometry::{
    canonical_generator, Arrangement2D, CanonicalGenerator, ConvexCell, GeometryError, Normalized,
};
use srs_core::rational::{format_rational, Rational};

/// One cell `H ∩ P_r` of a decomposition, labelled by the verdict at `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCell {
    pub cell: ConvexCell,
    pub representative: Vec<Rational>,
    pub verdict: Verdict,
    /// A nontrivial cycle shared by every parameter of the cell.
    pub cycle: Option<Cycle>,
}

impl Serialize for DecompositionCell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rep: Vec<String> = self.representative.iter().map(format_rational).collect();
        let mut st = s.serialize_struct("DecompositionCell", 4)?;
        st.serialize_field("cell", &self.cell.to_record())?;
        st.serialize_field("representative", &rep)?;
        st.serialize_field("finite", &(self.verdict == Verdict::Finite))?;
        st.serialize_field("cycle", &self.cycle)?;
        st.end()
    }
}

fn generator_of(c: &srs_core::geometry::LinearConstraint) -> Result<CanonicalGenerator, RegionError> {
    let normal = c
        .normal()
        .iter()
        .map(|x| x.to_i64().ok_or(GeometryError::Overflow))
        .collect::<Result<Vec<i64>, _>>()?;
    let offset = c.offset().to_i64().ok_or(GeometryError::Overflow)?;
    Ok(canonical_generator(&normal, offset)?)
}

/// `H ∩ P_r`, keeping only constraints of `P_r` that cut the hull.
fn clipped_cell(hull: &HullSpec, full: &ConvexCell) -> ConvexCell {
    let corners = hull.vertices();
    let cutting = full
        .constraints()
        .iter()
        .filter(|c| !corners.iter().all(|v| c.holds(v)))
        .cloned()
        .map(Normalized::Constraint);
    let mut cell = hull.cell().expect("planar hull").clone();
    for c in cutting {
        cell.push(c);
    }
    cell.simplified_2d()
}

/// Decomposes the hull into disjoint cells `H ∩ P_r`, each labelled with the
/// verdict of its parameters.
///
/// Uncovered points are found by building the arrangement of all cell
/// boundaries collected so far and probing the representatives of its classes.
pub fn algorithm1(hull: &HullSpec) -> Result<CutoutReport, RegionError> {
    if hull.dim() != 2 {
        return Err(RegionError::DimensionUnsupported(hull.dim()));
    }
    let hull_cell = hull.cell().expect("planar hulls carry a cell");
    let mut lines: BTreeSet<CanonicalGenerator> = BTreeSet::new();
    let mut cells: Vec<DecompositionCell> = Vec::new();
    let mut witness_count = 0;
    loop {
        let arr = Arrangement2D::build(lines.iter().cloned(), hull_cell)?;
        let mut added = false;
        for class in arr.classes() {
            let rep = &class.representative;
            if cells.iter().any(|c| c.cell.contains(rep).unwrap_or(false)) {
                continue;
            }
            let r = ParameterVector::new(rep.to_vec())?;
            let g = witness_set(&r)?;
            witness_count = witness_count.max(g.len());
            let cell = clipped_cell(hull, &characteristic_cell_of(&r, &g)?);
            for c in cell.constraints() {
                lines.insert(generator_of(c)?);
            }
            let decision = decide_on_graph(&g);
            cells.push(DecompositionCell {
                cell,
                representative: rep.to_vec(),
                verdict: decision.verdict,
                cycle: decision.witness_cycle.map(|c| c.normalized()),
            });
            added = true;
        }
        if !added {
            break;
        }
    }
    let cycles = cells.iter().filter_map(|c| c.cycle.clone()).collect();
    Ok(CutoutReport::from_cycles(hull.clone(), witness_count, cycles)?.with_cells(cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use srs_core::geometry::cell_is_empty;
    use srs_core::rational::rat;

    fn square(cx: (i64, i64), cy: (i64, i64), side: (i64, i64)) -> HullSpec {
        let h = rat(side.0, 2 * side.1);
        let (x, y) = (rat(cx.0, cx.1) - &h, rat(cy.0, cy.1) - &h);
        HullSpec::square(&x, &y, &rat(side.0, side.1)).unwrap()
    }

    #[test]
    fn tiny_square_is_one_finite_cell() {
        let h = square((9, 14), (9, 22), (1, 1000));
        let rep = algorithm1(&h).unwrap();
        let cells = rep.cells().unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].verdict, Verdict::Finite);
        let g0 = witness_set(&h.vertex_parameters()[0]).unwrap();
        for r in h.vertex_parameters() {
            assert_eq!(witness_set(&r).unwrap(), g0);
        }
    }

    #[test]
    fn square_near_minus_third_is_non_finite() {
        let h = square((-1, 3), (1, 3), (1, 100));
        let rep = algorithm1(&h).unwrap();
        assert!(rep.cells().unwrap().iter().all(|c| c.verdict == Verdict::NonFinite));
    }

    #[test]
    fn cells_are_disjoint_and_cover() {
        let h = square((7, 10), (3, 10), (1, 40));
        let rep = algorithm1(&h).unwrap();
        let cells = rep.cells().unwrap();
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                assert!(cell_is_empty(&cells[i].cell.intersect(&cells[j].cell).unwrap()));
            }
        }
        for k in 0..=20 {
            for l in 0..=20 {
                let x = vec![rat(11, 16) + rat(k, 800), rat(23, 80) + rat(l, 800)];
                let hits = cells.iter().filter(|c| c.cell.contains(&x).unwrap()).count();
                assert_eq!(hits, 1);
                let fin = rep.cell_verdict(&x) == Some(Verdict::Finite);
                assert_eq!(fin, rep.is_finite(&x));
            }
        }
    }
}
