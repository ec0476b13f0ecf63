//! Batch processing of CSV knot lists.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::Cache;
use super::compare::{compare_invariants, ComparisonVerdict, Verdict};
use super::config::Config;
use super::invariants::{compute_invariants, KnotInvariants};
use super::report::KnotReport;
use crate::error::{Error, Result};
use crate::presentation::{normalize_two_bridge, KnotId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    /// 1-based line number in the input.
    pub row: usize,
    pub p: i64,
    pub q: i64,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowError {
    pub row: usize,
    pub input: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub fingerprint: String,
    /// One entry per valid input row, in input order.
    pub entries: Vec<KnotReport>,
    pub equivalent_pairs: Vec<(KnotId, KnotId)>,
    pub row_errors: Vec<RowError>,
}

impl CatalogReport {
    pub fn has_errors(&self) -> bool {
        !self.row_errors.is_empty() || self.entries.iter().any(KnotReport::has_errors)
    }
}

/// Reads rows `p,q[,label]`; an optional header line and `#` comments are skipped.
pub fn parse_catalog<R: Read>(input: R) -> (Vec<CatalogRow>, Vec<RowError>) {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    let mut first = true;
    for rec in rdr.records() {
        let rec = match rec {
            Ok(r) => r,
            Err(e) => {
                let row = e.position().map(|p| p.line() as usize).unwrap_or(0);
                errors.push(RowError { row, input: String::new(), error: Error::Parse { row, message: e.to_string() }.to_string() });
                continue;
            }
        };
        let row = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let is_first = std::mem::replace(&mut first, false);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let text = rec.iter().collect::<Vec<_>>().join(",");
        let p = rec.get(0).and_then(|s| s.parse::<i64>().ok());
        let q = rec.get(1).and_then(|s| s.parse::<i64>().ok());
        match (p, q) {
            (Some(p), Some(q)) => {
                let label = rec.get(2).filter(|s| !s.is_empty()).map(str::to_string);
                rows.push(CatalogRow { row, p, q, label });
            }
            _ if is_first => log::debug!("skipping header {text:?}"),
            _ => errors.push(RowError {
                row,
                error: Error::Parse { row, message: format!("expected p,q[,label], got {text:?}") }.to_string(),
                input: text,
            }),
        }
    }
    (rows, errors)
}

/// Computes or loads invariants for every row and compares knots of equal determinant.
pub fn run_catalog_rows(rows: &[CatalogRow], mut row_errors: Vec<RowError>, cfg: &Config, cache: Option<&Cache>) -> CatalogReport {
    let fingerprint = cfg.fingerprint();
    let mut valid = Vec::new();
    for r in rows {
        match normalize_two_bridge(r.p, r.q) {
            Ok(k) => valid.push((r, k)),
            Err(e) => row_errors.push(RowError { row: r.row, input: format!("{},{}", r.p, r.q), error: e.to_string() }),
        }
    }
    let mut unique = BTreeMap::new();
    for (_, k) in &valid {
        unique.entry(k.id()).or_insert_with(|| k.clone());
    }
    let computed: BTreeMap<KnotId, Result<(KnotInvariants, bool)>> = unique
        .par_iter()
        .map(|(id, k)| {
            if let Some(hit) = cache.and_then(|c| c.load(*id, &fingerprint)) {
                return (*id, Ok((hit, true)));
            }
            let res = compute_invariants(k, cfg).map(|inv| {
                if let Some(c) = cache {
                    if let Err(e) = c.store(&inv) {
                        log::warn!("could not cache {id}: {e}");
                    }
                }
                (inv, false)
            });
            (*id, res)
        })
        .collect();

    let ok: Vec<&KnotInvariants> = computed.values().filter_map(|r| r.as_ref().ok()).map(|(i, _)| i).collect();
    let mut verdicts: Vec<ComparisonVerdict> = Vec::new();
    for (i, a) in ok.iter().enumerate() {
        for b in &ok[i + 1..] {
            if a.knot.p != b.knot.p {
                continue;
            }
            match compare_invariants(a, b, cfg.compare_tol) {
                Ok(v) => verdicts.push(v),
                Err(e) => log::warn!("skipping comparison {} vs {}: {e}", a.knot, b.knot),
            }
        }
    }
    let equivalent_pairs = verdicts
        .iter()
        .filter(|v| v.verdict == Verdict::EquivalentUpToMirror)
        .map(|v| v.knots)
        .collect();

    let mut entries = Vec::new();
    for (r, k) in valid {
        match &computed[&k.id()] {
            Ok((inv, cached)) => {
                let vs = verdicts.iter().filter(|v| v.knots.0 == inv.knot || v.knots.1 == inv.knot).cloned().collect();
                entries.push(KnotReport::from_invariants(inv, r.label.clone(), vs, *cached));
            }
            Err(e) => row_errors.push(RowError { row: r.row, input: format!("{},{}", r.p, r.q), error: e.to_string() }),
        }
    }
    row_errors.sort_by_key(|e| e.row);
    CatalogReport { fingerprint, entries, equivalent_pairs, row_errors }
}

pub fn run_catalog(input: &Path, cfg: &Config, cache: Option<&Cache>) -> Result<CatalogReport> {
    let file = std::fs::File::open(input)?;
    let (rows, errors) = parse_catalog(file);
    Ok(run_catalog_rows(&rows, errors, cfg, cache))
}
