use std::io::{self, Write};

use serde::Serialize;

use super::{DecompositionCell, HullSpec, RegionError};
use srs_core::dynamics::{Cycle, Verdict};
use srs_core::geometry::{cutout_polyhedron, ConvexCell};
use srs_core::rational::Rational;

/// Result of a region run: cycles whose cutout cells remove the non-finite
/// part of the hull, and optionally the cells of a decomposition.
#[derive(Clone, Debug)]
pub struct CutoutReport {
    hull: HullSpec,
    witness_count: usize,
    cycles: Vec<Cycle>,
    cutouts: Vec<ConvexCell>,
    cells: Option<Vec<DecompositionCell>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportHeader<'a> {
    pub hull: &'a HullSpec,
    pub witness_count: usize,
    pub cycle_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell_count: Option<usize>,
}

#[derive(Serialize)]
struct CycleRecord<'a> {
    cycle: &'a Cycle,
}

impl CutoutReport {
    /// `cycles` are normalized, sorted and deduplicated.
    pub fn from_cycles(hull: HullSpec, witness_count: usize, cycles: Vec<Cycle>) -> Result<Self, RegionError> {
        let mut cycles: Vec<Cycle> = cycles.iter().map(Cycle::normalized).collect();
        cycles.sort();
        cycles.dedup();
        let cutouts = cycles.iter().map(cutout_polyhedron).collect::<Result<_, _>>()?;
        Ok(Self {
            hull,
            witness_count,
            cycles,
            cutouts,
            cells: None,
        })
    }

    pub fn with_cells(mut self, cells: Vec<DecompositionCell>) -> Self {
        self.cells = Some(cells);
        self
    }

    pub fn hull(&self) -> &HullSpec {
        &self.hull
    }

    pub fn witness_count(&self) -> usize {
        self.witness_count
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cutout_cells(&self) -> &[ConvexCell] {
        &self.cutouts
    }

    pub fn cells(&self) -> Option<&[DecompositionCell]> {
        self.cells.as_deref()
    }

    /// Whether `x` lies in the hull but in none of the cutout cells.
    pub fn is_finite(&self, x: &[Rational]) -> bool {
        self.hull.contains(x) && !self.cutouts.iter().any(|c| c.contains(x).unwrap_or(false))
    }

    /// Verdict of the decomposition cell containing `x`, if there is one.
    pub fn cell_verdict(&self, x: &[Rational]) -> Option<Verdict> {
        self.cells
            .as_ref()?
            .iter()
            .find(|c| c.cell.contains(x).unwrap_or(false))
            .map(|c| c.verdict)
    }

    pub fn header(&self) -> ReportHeader<'_> {
        ReportHeader {
            hull: &self.hull,
            witness_count: self.witness_count,
            cycle_count: self.cycles.len(),
            cell_count: self.cells.as_ref().map(Vec::len),
        }
    }

    /// A header line, one `{"cycle": …}` line per cycle, then one line per
    /// decomposition cell.
    pub fn write_jsonl(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "{}", serde_json::to_string(&self.header())?)?;
        for c in &self.cycles {
            writeln!(w, "{}", serde_json::to_string(&CycleRecord { cycle: c })?)?;
        }
        for c in self.cells.iter().flatten() {
            writeln!(w, "{}", serde_json::to_string(c)?)?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }
}
