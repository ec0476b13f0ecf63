//! Closed-form reference values: lens-space torsion, torus-knot twisted
//! Alexander polynomials and limits, and Fox's formula for the determinant.
//!
//! Nothing here goes through Fox calculus, representations or the Riley
//! curve; values come straight from trigonometric expressions.

use std::f64::consts::PI;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::LaurentPoly;
use crate::presentation::{gcd, mod_inverse, TwoBridgeKnot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
    /// `q r = 1 (mod p)`.
    pub r: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 2 || gcd(p, q) != 1 {
            return Err(Error::InvalidFraction { p, q, reason: "lens space needs p >= 2 and gcd(p, q) = 1" });
        }
        let r = mod_inverse(q, p).expect("coprime");
        Ok(Self { p, q: q.rem_euclid(p), r })
    }

    /// The double branched cover of `b(p, q)`.
    pub fn double_cover_of(k: &TwoBridgeKnot) -> Self {
        Self::new(k.p(), k.q()).expect("normalized knots give valid lens spaces")
    }
}

fn four_sin_sq(num: i64, den: i64) -> f64 {
    let s = (PI * num as f64 / den as f64).sin();
    4.0 * s * s
}

fn check_index(k: i64, max: i64) -> Result<()> {
    if k < 1 || k > max {
        return Err(Error::IndexOutOfRange { index: k, max });
    }
    Ok(())
}

/// `1 / (4 sin^2(k pi/p) * 4 sin^2(k r pi/p))`.
pub fn lens_torsion_magnitude(l: &LensSpace, k: i64) -> Result<f64> {
    check_index(k, (l.p - 1) / 2)?;
    Ok(1.0 / (four_sin_sq(k, l.p) * four_sin_sq(k * l.r, l.p)))
}

/// Sorted torsion magnitudes over `k = 1..=(p-1)/2`.
pub fn lens_torsion_multiset(l: &LensSpace) -> Vec<f64> {
    let mut v: Vec<f64> = (1..=(l.p - 1) / 2)
        .map(|k| lens_torsion_magnitude(l, k).expect("index in range"))
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `(t^2+1) prod_{l != (q-b)/2} (t^2 + zeta^l)(t^2 + zeta^-l)` with `zeta = e^{2 pi i/q}`.
pub fn torus_twisted_alexander(q: i64, b: i64) -> Result<LaurentPoly<f64>> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::IndexOutOfRange { index: q, max: i64::MAX });
    }
    if b < 1 || b >= q || b % 2 == 0 {
        return Err(Error::IndexOutOfRange { index: b, max: q - 1 });
    }
    let skip = (q - b) / 2;
    let one = Complex::new(1.0, 0.0);
    let mut acc = LaurentPoly::from_terms_with_tol([(0, one), (2, one)], 1e-13);
    for l in (1..=(q - 1) / 2).filter(|&l| l != skip) {
        for sign in [1.0, -1.0] {
            let z = Complex::from_polar(1.0, sign * 2.0 * PI * l as f64 / q as f64);
            acc = &acc * &LaurentPoly::from_terms_with_tol([(0, z), (2, one)], 1e-13);
        }
    }
    Ok(acc)
}

/// `(q / (4 sin^2(j pi/q)))^2`.
pub fn torus_p1_squared(q: i64, j: i64) -> Result<f64> {
    check_index(j, (q - 1) / 2)?;
    let v = q as f64 / four_sin_sq(j, q);
    Ok(v * v)
}

/// `1/q^2`, constant on the irreducible characters of the `(2, q)` torus knot.
pub fn torus_f(q: i64) -> f64 {
    1.0 / (q * q) as f64
}

/// Odd `b` in `(0, q)` whose component `X_{1,b}` has `chi(y) = 2 cos(pi b/q)`
/// nearest to the given trace of the torus generator (the image of `xy`).
pub fn torus_component_for_trace(q: i64, trace: f64) -> Result<i64> {
    (1..q)
        .step_by(2)
        .map(|b| (b, (2.0 * (PI * b as f64 / q as f64).cos() - trace).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .filter(|&(_, d)| d < 1e-6)
        .map(|(b, _)| b)
        .ok_or(Error::IndexOutOfRange { index: q, max: q })
}

/// Alexander polynomial of `b(p, q)` from the sign sequence `e_i = (-1)^floor(iq/p)`:
/// `sum_{i=0}^{p-1} (-1)^i t^{e_1 + ... + e_i}`.
pub fn sign_sequence_alexander(p: i64, q: i64) -> LaurentPoly<f64> {
    let mut exp = 0;
    let mut terms = vec![(0, Complex::new(1.0, 0.0))];
    for i in 1..p {
        exp += if (i * q).div_euclid(p) % 2 == 0 { 1 } else { -1 };
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        terms.push((exp, Complex::new(sign, 0.0)));
    }
    LaurentPoly::from_terms(terms).normalize_unit()
}

/// `|Delta(1) Delta(-1)|`, the order of `H_1` of the double branched cover.
pub fn fox_formula_order(k: &TwoBridgeKnot) -> Result<i64> {
    let d = sign_sequence_alexander(k.p(), k.q());
    let v = (d.eval(Complex::new(1.0, 0.0))? * d.eval(Complex::new(-1.0, 0.0))?).norm();
    if (v - k.p() as f64).abs() > 1e-6 {
        return Err(Error::DeterminantMismatch { expected: k.p(), found: v });
    }
    Ok(v.round() as i64)
}
