use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::compare::ComparisonVerdict;
use super::invariants::{KnotInvariants, RecordFailure};
use crate::oracles::{lens_torsion_magnitude, LensSpace};
use crate::presentation::KnotId;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub k: i64,
    pub kprime: i64,
    pub p1_squared: [f64; 2],
    #[serde(rename = "F")]
    pub f_value: [f64; 2],
    pub tau: f64,
    /// Lens torsion value matched to this record by rank in the sorted multisets.
    pub oracle: f64,
    #[serde(rename = "absError")]
    pub abs_error: f64,
    /// Lens torsion value at the same index `k`, for information.
    pub oracle_same_index: f64,
    pub cross_check: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotReport {
    pub knot: KnotId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub determinant: i64,
    pub records: Vec<ReportRecord>,
    pub verdicts: Vec<ComparisonVerdict>,
    pub failures: Vec<RecordFailure>,
    /// Largest relative deviation between sorted tau and lens multisets.
    pub oracle_deviation: Option<f64>,
    pub per_index_matches: usize,
    pub cached: bool,
}

impl KnotReport {
    pub fn from_invariants(inv: &KnotInvariants, label: Option<String>, verdicts: Vec<ComparisonVerdict>, cached: bool) -> Self {
        let lens = LensSpace::new(inv.knot.p, inv.knot.q).expect("valid knot");
        let same = |k| lens_torsion_magnitude(&lens, k).expect("index in range");
        // rank of each record within the tau multiset
        let mut order: Vec<usize> = (0..inv.records.len()).collect();
        order.sort_by(|&a, &b| inv.records[a].tau.total_cmp(&inv.records[b].tau));
        let sorted_lens = inv.lens_multiset();
        let mut matched = vec![f64::NAN; inv.records.len()];
        if inv.is_complete() {
            for (rank, &i) in order.iter().enumerate() {
                matched[i] = sorted_lens[rank];
            }
        } else {
            for (i, r) in inv.records.iter().enumerate() {
                matched[i] = same(r.k);
            }
        }
        let records = inv
            .records
            .iter()
            .zip(matched)
            .map(|(r, oracle)| ReportRecord {
                k: r.k,
                kprime: r.kprime,
                p1_squared: r.p1_squared,
                f_value: r.f_value,
                tau: r.tau,
                oracle,
                abs_error: (r.tau - oracle).abs(),
                oracle_same_index: same(r.k),
                cross_check: r.cross_check,
            })
            .collect();
        Self {
            knot: inv.knot,
            label,
            determinant: inv.determinant,
            records,
            verdicts,
            failures: inv.failures.clone(),
            oracle_deviation: inv.oracle_deviation(),
            per_index_matches: inv.per_index_matches(1e-6),
            cached,
        }
    }

    pub fn has_errors(&self) -> bool {
        !self.failures.is_empty()
    }

    /// Plain-text table.
    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let label = self.label.as_deref().map(|l| format!(" [{l}]")).unwrap_or_default();
        let _ = writeln!(s, "b({}, {}){label}  determinant {}", self.knot.p, self.knot.q, self.determinant);
        let _ = writeln!(s, "{:>3} {:>3} {:>22} {:>22} {:>16} {:>16} {:>10}", "k", "k'", "P(1)^2", "F", "tau", "lens", "abs err");
        for r in &self.records {
            let _ = writeln!(
                s,
                "{:>3} {:>3} {:>22} {:>22} {:>16.10} {:>16.10} {:>10.2e}",
                r.k,
                r.kprime,
                fmt_c(r.p1_squared),
                fmt_c(r.f_value),
                r.tau,
                r.oracle,
                r.abs_error
            );
        }
        for f in &self.failures {
            let _ = writeln!(s, "{:>3}  error: {}", f.k, f.error);
        }
        if let Some(d) = self.oracle_deviation {
            let _ = writeln!(s, "multiset deviation from lens torsion: {d:.2e}; per-index matches: {}/{}", self.per_index_matches, self.records.len());
        }
        s
    }
}

fn fmt_c(z: [f64; 2]) -> String {
    if z[1].abs() < 1e-12 * z[0].abs().max(1.0) {
        format!("{:.10}", z[0])
    } else {
        format!("{:.6}{:+.2e}i", z[0], z[1])
    }
}
