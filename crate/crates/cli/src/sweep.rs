//! Grid sweeps: a window is tiled into rectangles, each tile is run through
//! the arrangement walk, and tiles whose region witness set does not
//! stabilize are quartered and retried.

use serde::Serialize;
use srs_core::par::{self, Exec};
use srs_core::rational::{format_rational, int, Rational};
use srs_region::{algorithm2, region_witnesses, CutoutReport, HullSpec, RegionError};

use crate::config::RunConfig;
use crate::svg::Window;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TileStatus {
    Settled,
    /// A corner is not an interior parameter.
    Skipped,
    /// Still not stationary at the deepest split.
    Unsettled,
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct TileOutcome {
    pub lo: [String; 2],
    pub hi: [String; 2],
    pub depth: u32,
    pub status: TileStatus,
    pub message: Option<String>,
    pub cycle_count: usize,
    #[serde(skip)]
    pub report: Option<CutoutReport>,
    /// `(y0, x0)`, the merge order.
    #[serde(skip)]
    key: (Rational, Rational),
}

#[derive(Clone, Debug)]
struct Tile {
    x0: Rational,
    y0: Rational,
    x1: Rational,
    y1: Rational,
    depth: u32,
}

impl Tile {
    fn outcome(&self, status: TileStatus, message: Option<String>, report: Option<CutoutReport>) -> TileOutcome {
        TileOutcome {
            lo: [format_rational(&self.x0), format_rational(&self.y0)],
            hi: [format_rational(&self.x1), format_rational(&self.y1)],
            depth: self.depth,
            status,
            message,
            cycle_count: report.as_ref().map_or(0, |r| r.cycles().len()),
            report,
            key: (self.y0.clone(), self.x0.clone()),
        }
    }

    fn quarters(&self) -> [Tile; 4] {
        let two = int(2);
        let xm = (&self.x0 + &self.x1) / &two;
        let ym = (&self.y0 + &self.y1) / &two;
        let d = self.depth + 1;
        let t = |x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational| Tile {
            x0: x0.clone(),
            y0: y0.clone(),
            x1: x1.clone(),
            y1: y1.clone(),
            depth: d,
        };
        [
            t(&self.x0, &self.y0, &xm, &ym),
            t(&xm, &self.y0, &self.x1, &ym),
            t(&self.x0, &ym, &xm, &self.y1),
            t(&xm, &ym, &self.x1, &self.y1),
        ]
    }
}

fn run_tile(tile: &Tile, cfg: &RunConfig, out: &mut Vec<TileOutcome>) {
    let corners = vec![
        vec![tile.x0.clone(), tile.y0.clone()],
        vec![tile.x1.clone(), tile.y0.clone()],
        vec![tile.x1.clone(), tile.y1.clone()],
        vec![tile.x0.clone(), tile.y1.clone()],
    ];
    let hull = match HullSpec::new(corners) {
        Ok(h) => h,
        Err(e) => return out.push(tile.outcome(TileStatus::Skipped, Some(e.to_string()), None)),
    };
    match region_witnesses(&hull, &cfg.blowup_factor, cfg.region_budget).and_then(|w| algorithm2(&hull, &w)) {
        Ok(report) => out.push(tile.outcome(TileStatus::Settled, None, Some(report))),
        Err(RegionError::NonStationary { .. }) if tile.depth < cfg.max_split_depth => {
            for q in tile.quarters() {
                run_tile(&q, cfg, out);
            }
        }
        Err(e @ RegionError::NonStationary { .. }) => {
            out.push(tile.outcome(TileStatus::Unsettled, Some(e.to_string()), None))
        }
        Err(e) => out.push(tile.outcome(TileStatus::Failed, Some(e.to_string()), None)),
    }
}

/// Splits `window` into `n × n` tiles and settles each one. Outcomes are
/// ordered by the lower-left corner of their tile, bottom row first.
pub fn sweep(window: &Window, n: usize, cfg: &RunConfig, exec: Exec) -> Vec<TileOutcome> {
    let n = n.max(1);
    let step_x = (&window.x1 - &window.x0) / int(n as i64);
    let step_y = (&window.y1 - &window.y0) / int(n as i64);
    let tiles: Vec<Tile> = (0..n)
        .flat_map(|j| (0..n).map(move |i| (i, j)))
        .map(|(i, j)| Tile {
            x0: &window.x0 + &step_x * int(i as i64),
            y0: &window.y0 + &step_y * int(j as i64),
            x1: &window.x0 + &step_x * int(i as i64 + 1),
            y1: &window.y0 + &step_y * int(j as i64 + 1),
            depth: 0,
        })
        .collect();
    let nested = par::map(exec, &tiles, |t| {
        let mut out = Vec::new();
        run_tile(t, cfg, &mut out);
        out
    });
    let mut all: Vec<TileOutcome> = nested.into_iter().flatten().collect();
    all.sort_by(|a, b| a.key.cmp(&b.key));
    all
}
