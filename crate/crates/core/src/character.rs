//! The Riley polynomial, trace functions on the character variety, Newton
//! continuation of the Riley curve away from a metabelian point, and the
//! limit `F = (I_lambda^2 - 4)/(I_muhat^2 - 4) (dI_muhat/dI_lambda)^2` there.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::real::principal_sqrt;
use crate::numeric::richardson::geometric_steps;
use crate::numeric::{richardson_limit, ComplexExt, Cplx, Dual2, Extrapolation, Real, Ring};
use crate::presentation::TwoBridgeKnot;
use crate::representation::{metabelian_u, riley_images, riley_rep};

/// Tuning of the continuation and the two limit estimates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitConfig {
    /// Largest offset `h` in `s = -1 + h`.
    pub h0: f64,
    pub samples: usize,
    pub step_ratio: f64,
    pub newton_tol: f64,
    pub max_iter: usize,
    /// Lower bound on `|d phi / d u|` at the seed.
    pub singular_tol: f64,
    /// Relative agreement required between the ratio and direct estimates.
    pub cross_tol: f64,
    /// Give up halving `h0` below this.
    pub min_h0: f64,
    /// Relative half-width, in `I_muhat + 2`, of the centered differences.
    pub fd_fraction: f64,
}

impl Default for LimitConfig {
    fn default() -> Self {
        Self {
            h0: 1e-2,
            samples: 5,
            step_ratio: 2.0,
            newton_tol: 1e-12,
            max_iter: 50,
            singular_tol: 1e-8,
            cross_tol: 1e-5,
            min_h0: 1e-6,
            fd_fraction: 0.25,
        }
    }
}

/// `phi(s, u)` and its partial derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RileyResidual<R: Real = f64> {
    pub value: Cplx<R>,
    pub du: Cplx<R>,
    pub ds: Cplx<R>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RileyPoint<R: Real = f64> {
    pub s: Cplx<R>,
    pub u: Cplx<R>,
    /// `|phi(s, u)|` at the accepted point.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceSample<R: Real = f64> {
    /// `I_muhat = s + 1/s`.
    pub i_mu_hat: Cplx<R>,
    /// `I_lambda = tr rho(lambda)`.
    pub i_lambda: Cplx<R>,
}

/// `phi = W11 + (1 - s) W12` with `W = rho_{sqrt s, u}(w)`, differentiated by dual numbers.
pub fn riley_residual<R: Real>(k: &TwoBridgeKnot, s: Cplx<R>, u: Cplx<R>) -> Result<RileyResidual<R>> {
    if s.is_zero() {
        return Err(Error::ZeroParameter);
    }
    riley_residual_with_root(k, principal_sqrt(s), u)
}

/// As [`riley_residual`], with an explicit choice of `sqrt(s)`.
pub fn riley_residual_with_root<R: Real>(k: &TwoBridgeKnot, root: Cplx<R>, u: Cplx<R>) -> Result<RileyResidual<R>> {
    if root.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let s = root * root;
    let half = Complex::new(R::lit(0.5), R::zero());
    let root_inv = root.inv();
    // d sqrt(s)/ds = 1/(2 sqrt s), d s^(-1/2)/ds = -s^(-1/2)/(2 s)
    let r = Dual2::new(root, Complex::zero(), half * root_inv);
    let ri = Dual2::new(root_inv, Complex::zero(), -half * root_inv / s);
    let images = riley_images(r, ri, Dual2::var_u(u));
    let w = images.evaluate(k.word());
    let one = Cplx::<R>::one();
    let one_minus_s = Dual2::new(one - s, Complex::zero(), -one);
    let phi = w.get(0, 0).plus(&one_minus_s.times(w.get(0, 1)));
    Ok(RileyResidual { value: phi.value, du: phi.du, ds: phi.ds })
}

/// The unique `k'` in `1..=(p-1)/2` with `2k' = ±k (mod p)`.
pub fn metabelian_pairing(p: i64, k: i64) -> i64 {
    let half = (p - 1) / 2;
    let found: Vec<i64> = (1..=half)
        .filter(|&j| (2 * j - k).rem_euclid(p) == 0 || (2 * j + k).rem_euclid(p) == 0)
        .collect();
    assert_eq!(found.len(), 1, "pairing for p={p}, k={k} must be unique");
    found[0]
}

/// `I_lambda = tr rho_{sqrt s, u}(lambda)`.
pub fn trace_longitude<R: Real>(k: &TwoBridgeKnot, s: Cplx<R>, u: Cplx<R>) -> Result<Cplx<R>> {
    Ok(riley_rep(s, u)?.trace_of(&k.longitude()))
}

/// Newton iteration on `u -> phi(s, u)` starting from `seed`.
pub fn solve_riley_at<R: Real>(k: &TwoBridgeKnot, s: Cplx<R>, seed: Cplx<R>, cfg: &LimitConfig) -> Result<RileyPoint<R>> {
    let mut u = seed;
    let mut last = f64::INFINITY;
    for it in 1..=cfg.max_iter {
        let r = riley_residual(k, s, u)?;
        let d = r.du.modulus();
        if d.to_f64_lossy() < cfg.singular_tol {
            return Err(Error::SingularPoint(d.to_f64_lossy()));
        }
        let step = r.value / r.du;
        u -= step;
        if !crate::numeric::real::is_finite(u) {
            return Err(Error::NewtonDivergence(f64::INFINITY));
        }
        last = step.modulus().to_f64_lossy();
        if last <= cfg.newton_tol * (1.0 + u.modulus().to_f64_lossy()) {
            let residual = riley_residual(k, s, u)?.value.modulus().to_f64_lossy();
            return Ok(RileyPoint { s, u, residual, iterations: it });
        }
    }
    Err(Error::NewtonDivergence(last))
}

/// Point of the Riley curve through `(-1, u_{k'})` at `s = -1 + h`.
pub fn continue_riley_curve<R: Real>(k: &TwoBridgeKnot, kprime: i64, h: R, cfg: &LimitConfig) -> Result<RileyPoint<R>> {
    let s0 = -Cplx::<R>::one();
    let u0 = metabelian_u::<R>(k.p(), kprime);
    let seed = riley_residual(k, s0, u0)?;
    let d = seed.du.modulus().to_f64_lossy();
    if d < cfg.singular_tol {
        return Err(Error::SingularPoint(d));
    }
    if h.is_zero() {
        let residual = seed.value.modulus().to_f64_lossy();
        return Ok(RileyPoint { s: s0, u: u0, residual, iterations: 0 });
    }
    // tangent predictor du/ds = -phi_s / phi_u
    let h = Complex::new(h, R::zero());
    let predicted = u0 - seed.ds / seed.du * h;
    solve_riley_at(k, s0 + h, predicted, cfg)
}

/// Both limit estimates of `F` at the metabelian character `chi_{rho_{k'}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FEstimate<R: Real = f64> {
    /// Estimate (a): limit of `-(I_muhat + 2)/(I_lambda - 2)`.
    pub ratio: Extrapolation<R>,
    /// Estimate (b): limit of the defining expression with a numerical derivative.
    pub direct: Extrapolation<R>,
    /// Limit of `-(I_lambda - 2)/(I_muhat + 2)`, i.e. `H(-2)`.
    pub h_hat: Extrapolation<R>,
    pub relative_gap: f64,
    /// Step actually used after any collision-driven halving.
    pub h0_used: f64,
    pub max_residual: f64,
    pub samples: Vec<TraceSample<R>>,
}

impl<R: Real> FEstimate<R> {
    pub fn value(&self) -> Cplx<R> {
        self.ratio.value
    }
}

/// `s` with `s + 1/s + 2 = v`, choosing the root nearest `near`.
fn s_for_offset<R: Real>(v: Cplx<R>, near: Cplx<R>) -> Cplx<R> {
    let two = Complex::new(R::lit(2.0), R::zero());
    let four = Complex::new(R::lit(4.0), R::zero());
    let i = v - two;
    let disc = principal_sqrt(v * (v - four));
    let a = (i + disc) / two;
    let b = (i - disc) / two;
    if (a - near).modulus() <= (b - near).modulus() {
        a
    } else {
        b
    }
}

fn relative_gap<R: Real>(a: Cplx<R>, b: Cplx<R>) -> f64 {
    let scale = a.modulus().max(b.modulus()).to_f64_lossy();
    if scale == 0.0 {
        0.0
    } else {
        (a - b).modulus().to_f64_lossy() / scale
    }
}

struct CurveSample<R: Real> {
    offset: R,
    ratio: Cplx<R>,
    direct: Cplx<R>,
    h_hat: Cplx<R>,
    trace: TraceSample<R>,
    residual: f64,
}

fn sample_curve<R: Real>(
    k: &TwoBridgeKnot,
    kprime: i64,
    h: R,
    separation: f64,
    cfg: &LimitConfig,
) -> Result<CurveSample<R>> {
    let u0 = metabelian_u::<R>(k.p(), kprime);
    let pt = continue_riley_curve(k, kprime, h, cfg)?;
    if (pt.u - u0).modulus().to_f64_lossy() > separation / 3.0 {
        return Err(Error::RootCollision(h.to_f64_lossy()));
    }
    let one = Cplx::<R>::one();
    let two = one + one;
    let s = pt.s;
    // I_muhat + 2 = (s + 1)^2 / s without cancellation
    let v = (s + one) * (s + one) / s;
    let il = trace_longitude(k, s, pt.u)?;
    let ilm2 = il - two;
    let ratio = -v / ilm2;
    let h_hat = -ilm2 / v;

    // centered difference of I_lambda in I_muhat at v(1 ± eps)
    let eps = Complex::new(R::lit(cfg.fd_fraction), R::zero());
    let mut side = [Cplx::<R>::zero(); 2];
    let mut residual = pt.residual;
    for (slot, sign) in side.iter_mut().zip([one, -one]) {
        let vs = v * (one + sign * eps);
        let ss = s_for_offset(vs, s);
        let q = solve_riley_at(k, ss, pt.u, cfg)?;
        residual = residual.max(q.residual);
        *slot = trace_longitude(k, ss, q.u)?;
    }
    let dil = (side[0] - side[1]) / (two * eps * v);
    let four = two + two;
    let direct = ilm2 * (il + two) / (v * (v - four)) / (dil * dil);
    Ok(CurveSample {
        offset: v.modulus(),
        ratio,
        direct,
        h_hat,
        trace: TraceSample { i_mu_hat: s + s.inv(), i_lambda: il },
        residual,
    })
}

/// Smallest distance from `u_{k'}` to another metabelian parameter.
fn root_separation(p: i64, kprime: i64) -> f64 {
    let u0 = metabelian_u::<f64>(p, kprime);
    (1..=(p - 1) / 2)
        .filter(|&j| j != kprime)
        .map(|j| (metabelian_u::<f64>(p, j) - u0).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Evaluates `F` at `chi_{rho_{k'}}`, returning both estimates, or
/// `EstimateDisagreement` when they differ beyond `cfg.cross_tol`.
pub fn evaluate_f<R: Real>(k: &TwoBridgeKnot, kprime: i64, cfg: &LimitConfig) -> Result<FEstimate<R>> {
    let est = estimate_f::<R>(k, kprime, cfg)?;
    if !(est.relative_gap <= cfg.cross_tol) {
        return Err(Error::EstimateDisagreement {
            ratio: est.ratio.value.re.to_f64_lossy(),
            direct: est.direct.value.re.to_f64_lossy(),
            relative: est.relative_gap,
        });
    }
    Ok(est)
}

/// Both estimates without the agreement check.
pub fn estimate_f<R: Real>(k: &TwoBridgeKnot, kprime: i64, cfg: &LimitConfig) -> Result<FEstimate<R>> {
    let separation = root_separation(k.p(), kprime);
    let mut h0 = cfg.h0;
    loop {
        match estimate_with_step::<R>(k, kprime, h0, separation, cfg) {
            Err(Error::RootCollision(_)) => {
                h0 /= 2.0;
                log::debug!("{k}: root collision near u_{kprime}, retrying with h0 = {h0:e}");
                if h0 < cfg.min_h0 {
                    return Err(Error::RootCollision(h0));
                }
            }
            other => return other,
        }
    }
}

fn estimate_with_step<R: Real>(
    k: &TwoBridgeKnot,
    kprime: i64,
    h0: f64,
    separation: f64,
    cfg: &LimitConfig,
) -> Result<FEstimate<R>> {
    let hs = geometric_steps(R::lit(h0), R::lit(cfg.step_ratio), cfg.samples);
    let pts = hs
        .into_iter()
        .map(|h| sample_curve(k, kprime, h, separation, cfg))
        .collect::<Result<Vec<_>>>()?;
    let pick = |f: fn(&CurveSample<R>) -> Cplx<R>| pts.iter().map(|c| (c.offset, f(c))).collect::<Vec<_>>();
    let ratio = richardson_limit(&pick(|c| c.ratio))?;
    let direct = richardson_limit(&pick(|c| c.direct))?;
    let h_hat = richardson_limit(&pick(|c| c.h_hat))?;
    Ok(FEstimate {
        relative_gap: relative_gap(ratio.value, direct.value),
        ratio,
        direct,
        h_hat,
        h0_used: h0,
        max_residual: pts.iter().map(|c| c.residual).fold(0.0, f64::max),
        samples: pts.iter().map(|c| c.trace).collect(),
    })
}
