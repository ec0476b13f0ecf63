//! Polynomial extrapolation of a sampled function to `h = 0`.

use super::real::{ComplexExt, Cplx, Real};
use crate::error::{Error, Result};

/// Default number of samples per extrapolation.
pub const DEFAULT_SAMPLES: usize = 5;
/// Default ratio between successive step sizes.
pub const DEFAULT_STEP_RATIO: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extrapolation<R: Real = f64> {
    pub value: Cplx<R>,
    /// Distance between the last two columns of the final tableau row.
    pub error_estimate: R,
}

/// Geometric step sequence `h0, h0/ratio, h0/ratio^2, ...`.
pub fn geometric_steps<R: Real>(h0: R, ratio: R, count: usize) -> Vec<R> {
    std::iter::successors(Some(h0), |h| Some(*h / ratio)).take(count).collect()
}

/// Neville extrapolation to `h = 0` of samples `(h, f(h))` with decreasing `h > 0`.
pub fn richardson_limit<R: Real>(samples: &[(R, Cplx<R>)]) -> Result<Extrapolation<R>> {
    let n = samples.len();
    if n < 3 {
        return Err(Error::InsufficientSamples { needed: 3, got: n });
    }
    if samples.iter().any(|(h, _)| !(*h > R::zero()))
        || samples.windows(2).any(|w| !(w[1].0 < w[0].0))
    {
        return Err(Error::BadSampleSpacing);
    }
    // tableau[i][j]: value at 0 of the interpolant through samples i-j..=i
    let mut tableau: Vec<Vec<Cplx<R>>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![samples[i].1];
        for j in 1..=i {
            let hi = samples[i].0;
            let hij = samples[i - j].0;
            let v = (row[j - 1] * hij - tableau[i - 1][j - 1] * hi) / (hij - hi);
            row.push(v);
        }
        tableau.push(row);
    }
    if tableau.iter().flatten().any(|v| !super::real::is_finite(*v)) {
        return Err(Error::NonFinite("richardson_limit"));
    }
    let last = &tableau[n - 1];
    let value = last[n - 1];
    let error_estimate = (last[n - 1] - last[n - 2]).modulus();

    let diag: Vec<Cplx<R>> = (0..n).map(|i| tableau[i][i]).collect();
    let steps: Vec<R> = diag.windows(2).map(|w| (w[1] - w[0]).modulus()).collect();
    let d_last = steps[steps.len() - 1];
    let d_prev = steps[steps.len() - 2];
    let floor = R::lit(1e-6) * value.modulus().max(R::lit(1e-300));
    if d_last > d_prev && d_last > floor {
        return Err(Error::DivergenceDetected(d_last.to_f64_lossy()));
    }
    Ok(Extrapolation { value, error_estimate })
}

/// Convenience wrapper: samples `f` on a geometric grid and extrapolates.
pub fn extrapolate_fn<R: Real, F>(f: F, h0: R, ratio: R, count: usize) -> Result<Extrapolation<R>>
where
    F: Fn(R) -> Result<Cplx<R>>,
{
    let samples = geometric_steps(h0, ratio, count)
        .into_iter()
        .map(|h| Ok((h, f(h)?)))
        .collect::<Result<Vec<_>>>()?;
    richardson_limit(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::real::cplx;
    use proptest::prelude::*;

    fn sample(f: impl Fn(f64) -> f64, hs: &[f64]) -> Vec<(f64, Cplx<f64>)> {
        hs.iter().map(|&h| (h, cplx(f(h), 0.0))).collect()
    }

    #[test]
    fn linear_is_exact() {
        let s = sample(|h| 5.0 + h, &[0.1, 0.05, 0.025]);
        let r = richardson_limit(&s).unwrap();
        assert!((r.value - cplx(5.0, 0.0)).modulus() < 1e-14);
    }

    #[test]
    fn quadratic_is_exact() {
        let s = sample(|h| 3.25 - 7.0 * h * h, &geometric_steps(0.1, 2.0, 5));
        let r = richardson_limit(&s).unwrap();
        assert!((r.value - cplx(3.25, 0.0)).modulus() < 1e-12);
    }

    #[test]
    fn analytic_converges() {
        let s = sample(|h| (h.exp() - 1.0) / h, &geometric_steps(0.05, 2.0, 5));
        let r = richardson_limit(&s).unwrap();
        assert!((r.value - cplx(1.0, 0.0)).modulus() < 1e-9);
        assert!(r.error_estimate < 1e-7);
    }

    #[test]
    fn precondition_errors() {
        let s = sample(|h| h, &[0.1, 0.05]);
        assert!(matches!(richardson_limit(&s), Err(Error::InsufficientSamples { .. })));
        let s = sample(|h| h, &[0.1, 0.2, 0.05]);
        assert_eq!(richardson_limit(&s), Err(Error::BadSampleSpacing));
        let s = sample(|h| h, &[0.1, 0.0, -0.1]);
        assert_eq!(richardson_limit(&s), Err(Error::BadSampleSpacing));
    }

    #[test]
    fn pole_is_reported_as_divergence() {
        let s = sample(|h| 1.0 / (h * h * h) + (1.0 / h).sin() * 1e3, &geometric_steps(0.1, 2.0, 5));
        assert!(matches!(richardson_limit(&s), Err(Error::DivergenceDetected(_))));
    }

    proptest! {
        #[test]
        fn exact_on_low_degree_polynomials(c in prop::collection::vec(-3.0f64..3.0, 1..5)) {
            let f = |h: f64| c.iter().rev().fold(0.0, |acc, &a| acc * h + a);
            let s = sample(f, &geometric_steps(0.1, 2.0, 5));
            let r = richardson_limit(&s).unwrap();
            prop_assert!((r.value - cplx(c[0], 0.0)).modulus() < 1e-12);
        }
    }
}
