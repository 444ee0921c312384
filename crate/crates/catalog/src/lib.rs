//! Cutout tuple catalogs: parsing, decoding and validation of 5-tuples
//! `(n, x, y, a_1, a_2)`, the region-C description and a list of reference
//! parameters with known verdicts.
//!
//! A tuple stands for the cutout cell of the cycle through `a` under
//! `τ_r` with `r = (x/n, y/n)`.

mod parse;
mod reference;
mod region_c;
mod validate;

pub use parse::{parse_catalog, CatalogDiagnostic, CatalogTuple, ParsedCatalog};
pub use reference::{reference_parameters, reference_report, ReferenceCheck, ReferenceReport};
pub use region_c::{region_c_cells, GridSquare, RegionC, RegionCDescription};
pub use validate::{decode_tuple, verify_catalog, CatalogSummary, Status, ValidationRecord, DEFAULT_DECODE_CAP};

/// The bundled catalog text.
pub const BUNDLED_CATALOG: &str = include_str!("../data/cutout_catalog.txt");
