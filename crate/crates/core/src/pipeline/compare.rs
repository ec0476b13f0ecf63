use serde::{Deserialize, Serialize};

use super::config::Config;
use super::invariants::{compute_invariants, KnotInvariants};
use crate::error::{Error, Result};
use crate::presentation::{mod_inverse, KnotId, TwoBridgeKnot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    EquivalentUpToMirror,
    Distinct,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonVerdict {
    pub knots: (KnotId, KnotId),
    pub verdict: Verdict,
    /// Largest relative deviation of the sorted tau multisets; absent when the sizes differ.
    pub max_multiset_deviation: Option<f64>,
    pub determinants_match: bool,
    /// `q' = ±q^{±1} (mod p)`, the classical criterion, computed independently.
    pub congruence_equivalent: bool,
}

/// Largest `|a_i - b_i| / max(|a_i|, |b_i|)` over sorted inputs; `None` on length mismatch.
pub fn multiset_deviation(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    Some(a.iter().zip(&b).map(|(x, y)| {
        let scale = x.abs().max(y.abs());
        if scale == 0.0 { 0.0 } else { (x - y).abs() / scale }
    }).fold(0.0, f64::max))
}

pub fn congruence_equivalent(a: KnotId, b: KnotId) -> bool {
    if a.p != b.p {
        return false;
    }
    let p = a.p;
    let q = a.q.rem_euclid(p);
    let qp = b.q.rem_euclid(p);
    let inv = mod_inverse(q, p).expect("coprime");
    [q, p - q, inv, p - inv].iter().any(|&c| c.rem_euclid(p) == qp)
}

/// Verdict from already computed invariants.
pub fn compare_invariants(a: &KnotInvariants, b: &KnotInvariants, tol: f64) -> Result<ComparisonVerdict> {
    for inv in [a, b] {
        if let Some(f) = inv.failures.first() {
            return Err(Error::IncompleteInvariants { knot: format!("b({})", inv.knot), k: f.k, message: f.error.clone() });
        }
    }
    let dev = multiset_deviation(&a.tau_multiset(), &b.tau_multiset());
    let determinants_match = a.determinant == b.determinant;
    let close = dev.is_some_and(|d| d <= tol);
    Ok(ComparisonVerdict {
        knots: (a.knot, b.knot),
        verdict: if close && determinants_match { Verdict::EquivalentUpToMirror } else { Verdict::Distinct },
        max_multiset_deviation: dev,
        determinants_match,
        congruence_equivalent: congruence_equivalent(a.knot, b.knot),
    })
}

pub fn compare_knots(a: &TwoBridgeKnot, b: &TwoBridgeKnot, cfg: &Config) -> Result<ComparisonVerdict> {
    let (ia, ib) = rayon::join(|| compute_invariants(a, cfg), || compute_invariants(b, cfg));
    compare_invariants(&ia?, &ib?, cfg.compare_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruences() {
        let id = |p, q| KnotId { p, q };
        assert!(congruence_equivalent(id(7, 3), id(7, 5)));
        assert!(!congruence_equivalent(id(11, 3), id(11, 5)));
        assert!(congruence_equivalent(id(11, 3), id(11, 7)));
        assert!(!congruence_equivalent(id(5, 3), id(7, 3)));
    }

    #[test]
    fn deviation() {
        assert_eq!(multiset_deviation(&[1.0, 2.0], &[2.0, 1.0]), Some(0.0));
        assert_eq!(multiset_deviation(&[1.0], &[1.0, 2.0]), None);
        assert!((multiset_deviation(&[1.0], &[1.1]).unwrap() - 0.1 / 1.1).abs() < 1e-15);
    }
}
