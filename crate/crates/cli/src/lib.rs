//! Command-line front end: single-parameter decisions, region runs and
//! sweeps, family and catalog verification, and SVG region maps.

pub mod config;
pub mod svg;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;
use srs_catalog::{parse_catalog, reference_report, verify_catalog, BUNDLED_CATALOG};
use srs_core::dynamics::{decide_on_graph, orbit, witness_set_with_budget, LatticePoint, ParameterVector};
use srs_core::par::{self, Exec};
use srs_core::rational::{format_rational, int, parse_integer_list, parse_rational_list, Rational};
use srs_families::{verify_family, FamilyId};
use srs_region::{algorithm1, algorithm2, region_witnesses, CutoutReport, HullSpec};

use crate::config::RunConfig;
use crate::svg::{render_svg, SvgScene, Window};

/// Exit code of a run that completed and whose checks all passed.
pub const EXIT_OK: i32 = 0;
/// Exit code of a run whose checks failed or that hit an error.
pub const EXIT_FAILED: i32 = 1;
/// Exit code of a malformed invocation.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "srs-atlas",
    version,
    about = "Exact finiteness decisions and region maps for shift radix systems"
)]
pub struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Force sequential execution.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether every orbit of τ_r ends in 0.
    Decide {
        /// Parameter, e.g. "1/2,1/2".
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Iterate τ_r from a until a point repeats.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Start point, e.g. "2,-1".
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Print the witness set of r.
    Witnesses {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Characterize the finite part of a convex hull of parameters.
    Region {
        /// Hull corners, e.g. "41/50,37/100; 93/100,37/100; 93/100,11/25".
        #[arg(long, allow_hyphen_values = true, required_unless_present = "grid")]
        hull: Option<String>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        algorithm: u8,
        /// JSONL output file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sweep mode: split --window into n × n tiles.
        #[arg(long, value_name = "N", requires = "window")]
        grid: Option<usize>,
        /// Sweep window "x0,y0,x1,y1".
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Compare the result with single-parameter decisions at sample points.
        #[arg(long)]
        verify: bool,
    },
    /// Verify the cutout polygon of a cycle family member.
    Family {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: u32,
    },
    /// Validate a catalog of (n, x, y, a1, a2) tuples.
    Catalog {
        /// Catalog file; the bundled catalog when omitted.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        check_redundancy: bool,
        /// Write one JSON record per tuple here.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Check the verdicts at the reference parameters of the component and hole lists.
    Reference,
    /// Draw a region map from region JSONL.
    Render {
        #[arg(long)]
        cutouts: PathBuf,
        /// "x0,y0,x1,y1"; the hull bounding box when omitted.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 800)]
        width: u32,
    },
}

/// Malformed user input, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

/// Parses the arguments and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match execute(&cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_FAILED
            }
        }
    }
}

fn parameter(s: &str) -> Result<ParameterVector> {
    match parse_rational_list(s).map(ParameterVector::new) {
        Ok(Ok(r)) => Ok(r),
        Ok(Err(e)) => usage(format!("parameter {s:?}: {e}")),
        Err(e) => usage(format!("parameter {s:?}: {e}")),
    }
}

/// Points separated by `;`, or written as `(x,y) (x,y)`.
fn hull_points(s: &str) -> Result<Vec<Vec<Rational>>> {
    let flat = s.replace(')', ";").replace('(', "");
    let mut pts = Vec::new();
    for part in flat.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        match parse_rational_list(part) {
            Ok(v) => pts.push(v),
            Err(e) => return usage(format!("hull point {part:?}: {e}")),
        }
    }
    Ok(pts)
}

fn emit(out: &mut dyn Write, json: bool, value: serde_json::Value, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string(&value)?)?;
    } else {
        writeln!(out, "{}", text())?;
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Radical inverse of `i` in base `b`.
fn radical_inverse(mut i: u64, b: u64) -> Rational {
    let mut out = int(0);
    let mut scale = Rational::new(1.into(), b.into());
    while i > 0 {
        out += &scale * Rational::from_integer((i % b).into());
        scale /= Rational::from_integer(b.into());
        i /= b;
    }
    out
}

/// Up to `count` points of the hull taken from a Halton sequence over its
/// bounding box.
pub fn sample_hull(hull: &HullSpec, count: usize) -> Vec<Vec<Rational>> {
    let (lo, hi) = hull.bounds();
    let mut out = Vec::with_capacity(count);
    let mut i = 1u64;
    while out.len() < count && i <= 1000 * count as u64 + 1000 {
        let p: Vec<Rational> = [2u64, 3]
            .iter()
            .enumerate()
            .map(|(k, &b)| &lo[k] + (&hi[k] - &lo[k]) * radical_inverse(i, b))
            .collect();
        if hull.contains(&p) {
            out.push(p);
        }
        i += 1;
    }
    out
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = match RunConfig::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return usage(format!("{e:#}")),
    };
    if let Some(t) = cfg.parallel_width {
        par::init_threads(t);
    }
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let json = cli.json;
    match &cli.command {
        Command::Decide { r } => {
            let r = parameter(r)?;
            let d = witness_set_with_budget(&r, cfg.witness_budget).map(|g| decide_on_graph(&g))?;
            emit(
                out,
                json,
                json!({ "r": r, "verdict": d.verdict, "cycle": d.witness_cycle }),
                || d.to_string(),
            )?;
            Ok(EXIT_OK)
        }
        Command::Orbit { r, a } => {
            let r = parameter(r)?;
            let a = match parse_integer_list(a) {
                Ok(v) => LatticePoint::from(v),
                Err(e) => return usage(format!("start point: {e}")),
            };
            let o = orbit(&r, &a, cfg.orbit_cap)?;
            emit(
                out,
                json,
                json!({ "r": r, "a": a, "preperiod": o.preperiod, "cycle": o.cycle }),
                || {
                    let pre: Vec<String> = o.preperiod.iter().map(|p| p.to_string()).collect();
                    format!("preperiod=[{}] cycle={}", pre.join(", "), o.cycle)
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Witnesses { r } => {
            let r = parameter(r)?;
            let g = witness_set_with_budget(&r, cfg.witness_budget)?;
            let pts: Vec<String> = g.vertices().iter().map(|p| p.to_string()).collect();
            emit(
                out,
                json,
                json!({ "r": r, "size": g.len(), "vertices": g.vertices() }),
                || format!("{} witnesses: {}", g.len(), pts.join(" ")),
            )?;
            Ok(EXIT_OK)
        }
        Command::Region {
            hull,
            algorithm,
            out: path,
            grid,
            window,
            verify,
        } => {
            if let Some(n) = grid {
                let w = Window::parse(window.as_deref().unwrap_or_default()).or_else(|e| usage(format!("{e:#}")))?;
                if w.is_empty() {
                    return usage("the window is empty");
                }
                let tiles = sweep::sweep(&w, *n, &cfg, exec);
                if let Some(p) = path {
                    let text: String = tiles
                        .iter()
                        .filter_map(|t| t.report.as_ref())
                        .map(CutoutReport::to_jsonl)
                        .collect();
                    write_file(p, &text)?;
                }
                let settled = tiles
                    .iter()
                    .filter(|t| matches!(t.status, sweep::TileStatus::Settled))
                    .count();
                emit(out, json, json!({ "tiles": tiles }), || {
                    let mut s = format!("{settled} of {} tiles settled", tiles.len());
                    for t in &tiles {
                        s.push_str(&format!(
                            "\n[{}, {}] x [{}, {}] depth {} {:?} cycles={}",
                            t.lo[0], t.hi[0], t.lo[1], t.hi[1], t.depth, t.status, t.cycle_count
                        ));
                    }
                    s
                })?;
                return Ok(if tiles.iter().any(|t| matches!(t.status, sweep::TileStatus::Failed)) {
                    EXIT_FAILED
                } else {
                    EXIT_OK
                });
            }
            let pts = hull_points(hull.as_deref().unwrap_or_default())?;
            let hull = match HullSpec::new(pts) {
                Ok(h) => h,
                Err(e) => return usage(format!("hull: {e}")),
            };
            let report = match algorithm {
                1 => algorithm1(&hull)?,
                _ => algorithm2(&hull, &region_witnesses(&hull, &cfg.blowup_factor, cfg.region_budget)?)?,
            };
            if let Some(p) = path {
                write_file(p, &report.to_jsonl())?;
            }
            let mismatches = if *verify {
                let samples = sample_hull(&hull, cfg.sample_count);
                let checks = par::map(exec, &samples, |x| {
                    let r = ParameterVector::new(x.clone()).expect("nonempty");
                    let exact =
                        witness_set_with_budget(&r, cfg.witness_budget).map(|g| decide_on_graph(&g).is_finite());
                    (x.clone(), exact.ok(), report.is_finite(x))
                });
                let bad: Vec<String> = checks
                    .iter()
                    .filter(|(_, e, m)| *e != Some(*m))
                    .map(|(x, ..)| format!("({})", x.iter().map(format_rational).collect::<Vec<_>>().join(", ")))
                    .collect();
                Some((samples.len(), bad))
            } else {
                None
            };
            let cycles: Vec<String> = report.cycles().iter().map(|c| c.to_string()).collect();
            let value = json!({
                "header": report.header(),
                "cycles": report.cycles(),
                "verify": mismatches.as_ref().map(|(n, bad)| json!({ "samples": n, "mismatches": bad })),
            });
            emit(out, json, value, || {
                let mut s = format!("witnesses={} cycles={}", report.witness_count(), cycles.len());
                if let Some(cells) = report.cells() {
                    s.push_str(&format!(" cells={}", cells.len()));
                }
                for c in &cycles {
                    s.push_str(&format!("\n{c}"));
                }
                if let Some((n, bad)) = &mismatches {
                    s.push_str(&format!("\nverify: {} of {n} samples agree", n - bad.len()));
                    for b in bad {
                        s.push_str(&format!("\nmismatch at {b}"));
                    }
                }
                s
            })?;
            Ok(if mismatches.is_some_and(|(_, bad)| !bad.is_empty()) {
                EXIT_FAILED
            } else {
                EXIT_OK
            })
        }
        Command::Family { id, n } => {
            let id: FamilyId = match id.parse() {
                Ok(i) => i,
                Err(e) => return usage(format!("{e}")),
            };
            if let Err(e) = id.check(*n) {
                return usage(e.to_string());
            }
            let r = verify_family(id, *n)?;
            emit(out, json, serde_json::to_value(&r)?, || {
                let mut s = format!(
                    "{}({}) {} polygon_match={} certificate={}{}",
                    r.family,
                    r.n,
                    if r.pass { "pass" } else { "FAIL" },
                    r.polygon_match,
                    r.certificate.pass,
                    if r.reordered { " reordered" } else { "" }
                );
                s.push_str(&format!("\ncycle {}", r.cycle));
                for v in &r.polygon.vertices {
                    s.push_str(&format!(
                        "\n  ({}, {}){}",
                        format_rational(&v.point[0]),
                        format_rational(&v.point[1]),
                        if v.contained { " *" } else { "" }
                    ));
                }
                for c in r.certificate.checks.iter().filter(|c| !c.pass) {
                    s.push_str(&format!("\n{}: {}", c.name, c.diagnostics.join("; ")));
                }
                s
            })?;
            Ok(if r.pass { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Catalog {
            file,
            check_redundancy,
            records,
        } => {
            let text = match file {
                Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
                None => BUNDLED_CATALOG.to_string(),
            };
            let parsed = parse_catalog(&text);
            let summary = verify_catalog(
                &parsed.tuples,
                &parsed.diagnostics,
                cfg.decode_cap,
                *check_redundancy,
                exec,
            );
            if let Some(p) = records {
                let mut s = String::new();
                for r in &summary.records {
                    s.push_str(&serde_json::to_string(r)?);
                    s.push('\n');
                }
                write_file(p, &s)?;
            }
            emit(out, json, serde_json::to_value(&summary)?, || {
                let mut s = format!(
                    "{} entries, {} well-formed, {:.2}% valid, {} distinct cells",
                    summary.total,
                    summary.records.len(),
                    100.0 * summary.valid_fraction(),
                    summary.distinct_cells
                );
                for (k, v) in &summary.counts {
                    s.push_str(&format!("\n{k:?}: {v}"));
                }
                for f in &summary.failures {
                    s.push_str(&format!("\n{f}"));
                }
                for d in &summary.malformed {
                    s.push_str(&format!("\n{} ({}): {}", d.source_line, d.text, d.reason));
                }
                if let Some(p) = &summary.redundant_pairs {
                    s.push_str(&format!("\n{} redundancy hits", p.len()));
                }
                s
            })?;
            Ok(if summary.has_hard_failure() {
                EXIT_FAILED
            } else {
                EXIT_OK
            })
        }
        Command::Reference => {
            let rep = reference_report(Some(cfg.witness_budget), exec);
            emit(out, json, serde_json::to_value(&rep)?, || {
                let mut s = String::new();
                for c in &rep.checks {
                    let v = c
                        .verdict
                        .map_or_else(|| c.error.clone().unwrap_or_default(), |v| v.to_string());
                    s.push_str(&format!(
                        "{} expected {} got {} {}\n",
                        c.r,
                        c.expected,
                        v,
                        if c.pass { "ok" } else { "FAIL" }
                    ));
                }
                s.push_str(if rep.pass {
                    "all verdicts as expected"
                } else {
                    "some verdicts differ"
                });
                s
            })?;
            Ok(if rep.pass { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Render {
            cutouts,
            window,
            out: path,
            width,
        } => {
            let text = std::fs::read_to_string(cutouts).with_context(|| format!("reading {}", cutouts.display()))?;
            let window = match window {
                Some(w) => Some(Window::parse(w).or_else(|e| usage(format!("{e:#}")))?),
                None => None,
            };
            let mut scene = SvgScene::from_jsonl(&text, window)?;
            scene.width_px = *width;
            let svg = match render_svg(&scene) {
                Ok(s) => s,
                Err(e) => return usage(e.to_string()),
            };
            write_file(path, &svg)?;
            emit(out, json, json!({ "out": path, "bytes": svg.len() }), || {
                format!("wrote {}", path.display())
            })?;
            Ok(EXIT_OK)
        }
    }
}
