use std::collections::BTreeMap;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::{CatalogDiagnostic, CatalogTuple};
use srs_core::dynamics::{tau, Cycle, LatticePoint, ParameterVector};
use srs_core::geometry::{cell_is_empty, cutout_polyhedron, ConvexCell};
use srs_core::par::{self, Exec};
use srs_core::rational::rat;

/// Default bound on the period searched for by [`decode_tuple`].
pub const DEFAULT_DECODE_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    Valid,
    MalformedRow,
    NotPeriodic,
    /// `a = 0`, whose cycle is the trivial one.
    TrivialCycle,
    EmptyCell,
    ParameterOutsideCell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationRecord {
    pub tuple: CatalogTuple,
    pub status: Status,
    pub period: Option<usize>,
    pub cycle: Option<Cycle>,
    #[serde(skip)]
    pub cell: Option<ConvexCell>,
    pub reason: Option<String>,
}

impl ValidationRecord {
    /// `(x/n, y/n)`.
    pub fn parameter(t: &CatalogTuple) -> ParameterVector {
        ParameterVector::new(vec![rat(t.x, t.n), rat(t.y, t.n)]).expect("two entries")
    }

    fn fail(tuple: &CatalogTuple, status: Status, reason: String) -> Self {
        Self {
            tuple: tuple.clone(),
            status,
            period: None,
            cycle: None,
            cell: None,
            reason: Some(reason),
        }
    }
}

/// Decodes a tuple: finds the least `m ≤ cap` with `τ_r^m(a) = a`, forms the
/// cycle `(τ_r(a), …, τ_r^m(a))` and its cutout cell, and classifies the result.
pub fn decode_tuple(t: &CatalogTuple, cap: usize) -> ValidationRecord {
    if t.n <= 0 {
        return ValidationRecord::fail(t, Status::MalformedRow, format!("denominator {} is not positive", t.n));
    }
    let r = ValidationRecord::parameter(t);
    let a = LatticePoint::new(&[t.a1, t.a2]);
    let mut points = Vec::new();
    let mut cur = a.clone();
    loop {
        if points.len() >= cap.max(1) {
            return ValidationRecord::fail(t, Status::NotPeriodic, format!("a does not return within {cap} steps"));
        }
        cur = match tau(&r, &cur) {
            Ok(p) => p,
            Err(e) => return ValidationRecord::fail(t, Status::NotPeriodic, e.to_string()),
        };
        points.push(cur.clone());
        if cur == a {
            break;
        }
    }
    let m = points.len();
    let cycle = Cycle::new(points).expect("orbit segments are shift compatible");
    if cycle.is_trivial() {
        return ValidationRecord {
            period: Some(m),
            cycle: Some(cycle),
            ..ValidationRecord::fail(t, Status::TrivialCycle, "a is zero".into())
        };
    }
    let cell = match cutout_polyhedron(&cycle) {
        Ok(c) => c,
        Err(e) => return ValidationRecord::fail(t, Status::EmptyCell, e.to_string()),
    };
    let (status, reason) = if cell_is_empty(&cell) {
        (Status::EmptyCell, Some("the cutout cell is empty".to_string()))
    } else if !cell.contains(r.entries()).unwrap_or(false) {
        (
            Status::ParameterOutsideCell,
            Some(format!("{r} is not in the cutout cell")),
        )
    } else {
        (Status::Valid, None)
    };
    ValidationRecord {
        tuple: t.clone(),
        status,
        period: Some(m),
        cycle: Some(cycle),
        cell: Some(cell),
        reason,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogSummary {
    /// Well-formed tuples plus malformed entries.
    pub total: usize,
    pub counts: BTreeMap<Status, usize>,
    /// Distinct cutout cells among the valid records.
    pub distinct_cells: usize,
    /// Groups (by record index) of tuples with identical fields.
    pub duplicate_tuples: Vec<Vec<usize>>,
    /// Pairs `(i, j)` where the parameter of record `i` lies in the cell of
    /// record `j ≠ i`; only filled when the redundancy check runs.
    pub redundant_pairs: Option<Vec<(usize, usize)>>,
    pub failures: Vec<String>,
    pub malformed: Vec<CatalogDiagnostic>,
    #[serde(skip)]
    pub records: Vec<ValidationRecord>,
}

impl CatalogSummary {
    pub fn count(&self, s: Status) -> usize {
        self.counts.get(&s).copied().unwrap_or(0)
    }

    /// Share of well-formed tuples that validate.
    pub fn valid_fraction(&self) -> f64 {
        let wf = self.records.len();
        if wf == 0 {
            return 1.0;
        }
        self.count(Status::Valid) as f64 / wf as f64
    }

    /// An empty cell or a parameter outside its own cell among well-formed rows.
    pub fn has_hard_failure(&self) -> bool {
        self.count(Status::EmptyCell) + self.count(Status::ParameterOutsideCell) > 0
    }
}

/// Decodes every tuple and summarizes. With `check_redundancy`, every valid
/// parameter is tested against every other valid cell.
pub fn verify_catalog(
    tuples: &[CatalogTuple],
    malformed: &[CatalogDiagnostic],
    cap: usize,
    check_redundancy: bool,
    exec: Exec,
) -> CatalogSummary {
    let records = par::map(exec, tuples, |t| decode_tuple(t, cap));
    let mut counts = BTreeMap::new();
    for r in &records {
        *counts.entry(r.status).or_insert(0) += 1;
    }
    if !malformed.is_empty() {
        counts.insert(
            Status::MalformedRow,
            malformed.len() + counts.get(&Status::MalformedRow).unwrap_or(&0),
        );
    }
    let failures = records
        .iter()
        .filter(|r| r.status != Status::Valid)
        .map(|r| {
            format!(
                "{} {:?}: {:?} ({})",
                r.tuple.source_line,
                r.tuple.fields(),
                r.status,
                r.reason.as_deref().unwrap_or("")
            )
        })
        .collect();

    let mut groups: FxHashMap<[i64; 5], Vec<usize>> = FxHashMap::default();
    for (i, r) in records.iter().enumerate() {
        groups.entry(r.tuple.fields()).or_default().push(i);
    }
    let mut duplicate_tuples: Vec<Vec<usize>> = groups.into_values().filter(|g| g.len() > 1).collect();
    duplicate_tuples.sort();

    let valid: Vec<usize> = (0..records.len())
        .filter(|&i| records[i].status == Status::Valid)
        .collect();
    let cells: Vec<ConvexCell> = par::map(exec, &valid, |&i| {
        records[i].cell.as_ref().expect("valid has a cell").simplified_2d()
    });
    let distinct: FxHashSet<&ConvexCell> = cells.iter().collect();

    let redundant_pairs = check_redundancy.then(|| {
        let params: Vec<ParameterVector> = valid
            .iter()
            .map(|&i| ValidationRecord::parameter(&records[i].tuple))
            .collect();
        let hits = par::map(exec, &(0..valid.len()).collect::<Vec<_>>(), |&a| {
            (0..valid.len())
                .filter(|&b| b != a && cells[b].contains(params[a].entries()).unwrap_or(false))
                .map(|b| (valid[a], valid[b]))
                .collect::<Vec<_>>()
        });
        hits.into_iter().flatten().collect()
    });

    CatalogSummary {
        total: records.len() + malformed.len(),
        counts,
        distinct_cells: distinct.len(),
        duplicate_tuples,
        redundant_pairs,
        failures,
        malformed: malformed.to_vec(),
        records,
    }
}
