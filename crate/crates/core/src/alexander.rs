//! Classical and twisted (Wada) Alexander polynomials of two-bridge knots,
//! and the even polynomial `P(t) = Delta(i t) / (t^2 - 1)`.

use num_complex::Complex;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numeric::real::imag_unit;
use crate::numeric::{ComplexExt, Cplx, LaurentPoly, Real};
use crate::presentation::{fox_derivative, Gen, TwoBridgeKnot};
use crate::representation::{phi_generator_minus_one, phi_map, Rep2};

/// Relative remainder accepted by the exact divisions in this module.
pub const DIVISION_TOL: f64 = 1e-8;

/// Coefficient zero tolerance suited to the working precision.
pub fn zero_tol_for<R: Real>() -> f64 {
    (R::EPSILON * 1e4).max(1e-28)
}

/// Alexander polynomial from the abelianized Fox derivative `d r / d x`,
/// normalized up to `±t^j`.
pub fn classical_alexander(k: &TwoBridgeKnot) -> LaurentPoly<f64> {
    let terms = k
        .integer_alexander()
        .into_iter()
        .map(|(e, c)| (e, Complex::new(c as f64, 0.0)));
    LaurentPoly::from_terms(terms).normalize_unit()
}

/// `|Delta(-1)|`, checked against `p`.
pub fn knot_determinant(k: &TwoBridgeKnot) -> Result<i64> {
    let v = classical_alexander(k).eval(Complex::new(-1.0, 0.0))?.norm();
    if (v - k.p() as f64).abs() > 1e-6 {
        return Err(Error::DeterminantMismatch { expected: k.p(), found: v });
    }
    Ok(v.round() as i64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedAlexResult<R: Real = f64> {
    pub numerator: LaurentPoly<R>,
    pub denominator: LaurentPoly<R>,
    /// `numerator / denominator` normalized up to unit, when the division is exact.
    pub reduced: Option<LaurentPoly<R>>,
}

impl<R: Real> TwistedAlexResult<R> {
    pub fn reduced_or_err(&self) -> Result<&LaurentPoly<R>> {
        self.reduced.as_ref().ok_or(Error::InexactDivision { residual: f64::NAN, tol: DIVISION_TOL })
    }
}

/// Wada's polynomial `det Phi(dr/dx) / det(t rho(y) - 1)`.
pub fn wada_twisted_alexander<R: Real>(k: &TwoBridgeKnot, r: &Rep2<R>) -> Result<TwistedAlexResult<R>> {
    wada_twisted_alexander_by(k, r, Gen::X)
}

/// Wada's polynomial using the Fox derivative in `g`; the denominator uses the other generator.
pub fn wada_twisted_alexander_by<R: Real>(k: &TwoBridgeKnot, r: &Rep2<R>, g: Gen) -> Result<TwistedAlexResult<R>> {
    let tol = zero_tol_for::<R>();
    let other = match g {
        Gen::X => Gen::Y,
        Gen::Y => Gen::X,
    };
    let numerator = phi_map(r, &fox_derivative(&k.relator(), g), tol).det()?;
    let denominator = phi_generator_minus_one(r, other, tol).det()?;
    if denominator.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let reduced = match numerator.divide_exact(&denominator, DIVISION_TOL) {
        Ok(q) => Some(q.normalize_unit()),
        Err(Error::InexactDivision { residual, .. }) => {
            log::warn!("twisted Alexander of {k} not exactly divisible (residual {residual:e})");
            None
        }
        Err(e) => return Err(e),
    };
    Ok(TwistedAlexResult { numerator, denominator, reduced })
}

/// `P(t) = Delta(i t) / (t^2 - 1)`.
pub fn p_polynomial<R: Real>(delta: &LaurentPoly<R>) -> Result<LaurentPoly<R>> {
    let rescaled = delta.rescale_variable(imag_unit())?;
    let one = Cplx::<R>::one();
    let den = LaurentPoly::from_terms_with_tol([(0, -one), (2, one)], delta.zero_tol());
    rescaled.divide_exact(&den, DIVISION_TOL)
}

pub fn p_at_one<R: Real>(p: &LaurentPoly<R>) -> Cplx<R> {
    p.eval(Cplx::<R>::one()).expect("evaluation at 1 is finite")
}

/// `P(1)^2` for a twisted Alexander polynomial of a metabelian representation.
pub fn p1_squared<R: Real>(delta: &LaurentPoly<R>) -> Result<Cplx<R>> {
    let v = p_at_one(&p_polynomial(delta)?);
    Ok(v * v)
}

/// `|Delta(1) Delta(-1)|` computed from a Laurent polynomial.
pub fn fox_product_magnitude<R: Real>(delta: &LaurentPoly<R>) -> Result<R> {
    let one = Cplx::<R>::one();
    Ok((delta.eval(one)? * delta.eval(-one)?).modulus())
}
