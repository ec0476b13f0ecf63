//! End-to-end assembly: invariant records per knot, knot comparison,
//! batch catalogs with an on-disk cache, and JSON reports.

pub mod cache;
pub mod catalog;
pub mod compare;
pub mod config;
pub mod invariants;
pub mod report;

pub use cache::{Cache, CACHE_ENV};
pub use catalog::{parse_catalog, run_catalog, run_catalog_rows, CatalogReport, CatalogRow, RowError};
pub use compare::{compare_invariants, compare_knots, congruence_equivalent, multiset_deviation, ComparisonVerdict, Verdict};
pub use config::{Config, Precision};
pub use invariants::{compute_invariants, compute_record, Diagnostics, InvariantRecord, KnotInvariants, RecordFailure};
pub use report::{KnotReport, ReportRecord};
