use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Config, Precision};
use crate::alexander::{knot_determinant, p1_squared, wada_twisted_alexander_by};
use crate::character::{evaluate_f, metabelian_pairing, riley_residual};
use crate::error::{Error, Result};
use crate::numeric::real::to_pair;
use crate::numeric::{ComplexExt, Cplx, DoubleDouble, Real};
use crate::oracles::{lens_torsion_magnitude, lens_torsion_multiset, torus_component_for_trace, torus_f, torus_p1_squared, LensSpace};
use crate::presentation::{Gen, KnotId, TwoBridgeKnot, Word};
use crate::representation::{metabelian_rep, metabelian_u};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `|phi(-1, u_k)|`.
    pub seed_residual: f64,
    /// Largest Newton residual along the continuation.
    pub newton_residual: f64,
    pub ratio_error: f64,
    pub direct_error: f64,
    /// Estimate (b) of `F`.
    pub f_direct: [f64; 2],
    pub estimate_gap: f64,
    pub h0_used: f64,
    /// Coefficient distance between the x- and y-based Wada polynomials after normalization.
    pub wada_gap: f64,
    /// `|Im(P(1)^2 F)| / tau`.
    pub imaginary_ratio: f64,
    /// Set when a double-precision limit diverged and the record was redone in extended precision.
    #[serde(default)]
    pub escalated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub k: i64,
    pub kprime: i64,
    pub p1_squared: [f64; 2],
    #[serde(rename = "F")]
    pub f_value: [f64; 2],
    /// `|P(1)^2 F|`.
    pub tau: f64,
    /// Closed-form torus value, for `b(q, 1)` only.
    pub cross_check: Option<f64>,
    /// Component `X_{1,b}` containing `chi_{rho_k}`, for `b(q, 1)` only.
    pub torus_component: Option<i64>,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordFailure {
    pub k: i64,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotInvariants {
    pub knot: KnotId,
    pub determinant: i64,
    pub is_torus: bool,
    pub precision: Precision,
    pub fingerprint: String,
    /// Sorted by `k`.
    pub records: Vec<InvariantRecord>,
    pub failures: Vec<RecordFailure>,
}

impl KnotInvariants {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tau_multiset(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.records.iter().map(|r| r.tau).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Sorted lens torsion magnitudes of the double branched cover.
    pub fn lens_multiset(&self) -> Vec<f64> {
        lens_torsion_multiset(&LensSpace::new(self.knot.p, self.knot.q).expect("valid knot"))
    }

    /// Largest relative deviation between the sorted tau and lens multisets.
    pub fn oracle_deviation(&self) -> Option<f64> {
        if !self.is_complete() {
            return None;
        }
        super::compare::multiset_deviation(&self.tau_multiset(), &self.lens_multiset())
    }

    /// Number of records with `tau_k` equal to the lens value at the same index.
    pub fn per_index_matches(&self, rel_tol: f64) -> usize {
        let l = LensSpace::new(self.knot.p, self.knot.q).expect("valid knot");
        self.records
            .iter()
            .filter(|r| {
                let want = lens_torsion_magnitude(&l, r.k).expect("index in range");
                (r.tau - want).abs() <= rel_tol * want
            })
            .count()
    }
}

/// All `(p-1)/2` invariant records of `k`. Per-index failures are collected, not fatal.
pub fn compute_invariants(k: &TwoBridgeKnot, cfg: &Config) -> Result<KnotInvariants> {
    let determinant = knot_determinant(k)?;
    let outcomes: Vec<(i64, Result<InvariantRecord>)> = (1..=k.metabelian_count())
        .into_par_iter()
        .map(|idx| {
            let rec = match cfg.precision {
                Precision::Double => match compute_record::<f64>(k, idx, cfg) {
                    Err(Error::DivergenceDetected(d)) => {
                        log::info!("{k}, k = {idx}: limit diverged in double precision ({d:e}), retrying extended");
                        compute_record::<DoubleDouble>(k, idx, cfg).map(|mut r| {
                            r.diagnostics.escalated = true;
                            r
                        })
                    }
                    other => other,
                },
                Precision::Extended => compute_record::<DoubleDouble>(k, idx, cfg),
            };
            (idx, rec)
        })
        .collect();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (idx, r) in outcomes {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => {
                log::warn!("{k}, k = {idx}: {e}");
                failures.push(RecordFailure { k: idx, error: e.to_string() });
            }
        }
    }
    Ok(KnotInvariants {
        knot: k.id(),
        determinant,
        is_torus: k.is_torus(),
        precision: cfg.precision,
        fingerprint: cfg.fingerprint(),
        records,
        failures,
    })
}

/// The record for metabelian index `idx`, computed in precision `R`.
pub fn compute_record<R: Real>(k: &TwoBridgeKnot, idx: i64, cfg: &Config) -> Result<InvariantRecord> {
    let p = k.p();
    let rep = metabelian_rep::<R>(p, idx)?;
    let seed = riley_residual(k, -Cplx::<R>::new(R::one(), R::zero()), metabelian_u::<R>(p, idx))?;

    let wx = wada_twisted_alexander_by(k, &rep, Gen::X)?;
    let wy = wada_twisted_alexander_by(k, &rep, Gen::Y)?;
    let dx = wx.reduced_or_err()?;
    let dy = wy.reduced_or_err()?;
    let wada_gap = dx.normalize_unit().max_abs_diff(&dy.normalize_unit()).to_f64_lossy();
    if wada_gap > cfg.wada_tol {
        log::warn!("{k}, k = {idx}: x/y Wada polynomials differ by {wada_gap:e}");
    }
    let p1 = p1_squared(dx)?;

    let kprime = metabelian_pairing(p, idx);
    let f = evaluate_f::<R>(k, kprime, &cfg.limit)?;
    let prod = p1 * f.value();
    let tau = prod.modulus().to_f64_lossy();
    let imaginary_ratio = prod.im.abs().to_f64_lossy() / tau;
    if imaginary_ratio > 1e-6 {
        log::warn!("{k}, k = {idx}: P(1)^2 F has relative imaginary part {imaginary_ratio:e}");
    }

    let (cross_check, torus_component) = if cfg.torus_cross_check && k.is_torus() {
        let xy: Word = "x y".parse().expect("literal word");
        let tr = rep.trace_of(&xy).re.to_f64_lossy();
        let b = torus_component_for_trace(p, tr)?;
        let j = (p - b) / 2;
        (Some(torus_p1_squared(p, j)? * torus_f(p)), Some(b))
    } else {
        (None, None)
    };

    Ok(InvariantRecord {
        k: idx,
        kprime,
        p1_squared: to_pair(p1),
        f_value: to_pair(f.value()),
        tau,
        cross_check,
        torus_component,
        diagnostics: Diagnostics {
            seed_residual: seed.value.modulus().to_f64_lossy(),
            newton_residual: f.max_residual,
            ratio_error: f.ratio.error_estimate.to_f64_lossy(),
            direct_error: f.direct.error_estimate.to_f64_lossy(),
            f_direct: to_pair(f.direct.value),
            estimate_gap: f.relative_gap,
            h0_used: f.h0_used,
            wada_gap,
            imaginary_ratio,
            escalated: false,
        },
    })
}
