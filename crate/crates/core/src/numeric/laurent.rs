//! Laurent polynomials in one variable `t` with complex coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::real::{ComplexExt, Cplx, Real};
use crate::error::{Error, Result};

/// Default relative zero tolerance for coefficient canonicalization.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Element of `C[t, 1/t]`, stored sparsely by exponent.
///
/// Coefficients whose magnitude is below `zero_tol` times the scale of the
/// operands that produced them are dropped, so the zero polynomial always has
/// empty support.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<R: Real = f64> {
    coeffs: BTreeMap<i64, Cplx<R>>,
    zero_tol: f64,
}

impl<R: Real> LaurentPoly<R> {
    pub fn zero() -> Self {
        Self::zero_with_tol(DEFAULT_ZERO_TOL)
    }

    pub fn zero_with_tol(zero_tol: f64) -> Self {
        Self { coeffs: BTreeMap::new(), zero_tol }
    }

    pub fn one() -> Self {
        Self::monomial(Complex::one(), 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: Cplx<R>, e: i64) -> Self {
        Self::from_terms([(e, c)])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(Complex::one(), 1)
    }

    pub fn constant(c: Cplx<R>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, Cplx<R>)>>(terms: I) -> Self {
        Self::from_terms_with_tol(terms, DEFAULT_ZERO_TOL)
    }

    /// As [`from_terms`](Self::from_terms); cancellation is judged against the
    /// largest input term rather than the result.
    pub fn from_terms_with_tol<I: IntoIterator<Item = (i64, Cplx<R>)>>(terms: I, zero_tol: f64) -> Self {
        let mut coeffs: BTreeMap<i64, Cplx<R>> = BTreeMap::new();
        let mut scale = R::zero();
        for (e, c) in terms {
            scale = scale.max(c.modulus());
            *coeffs.entry(e).or_insert_with(Complex::zero) += c;
        }
        let mut p = Self { coeffs, zero_tol };
        p.canonicalize(scale);
        p
    }

    /// Real coefficients listed from exponent `low` upward.
    pub fn from_real_coeffs(low: i64, coeffs: &[f64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (low + i as i64, Complex::new(R::lit(c), R::zero()))),
        )
    }

    pub fn with_zero_tol(mut self, zero_tol: f64) -> Self {
        self.zero_tol = zero_tol;
        let scale = self.max_norm();
        self.canonicalize(scale);
        self
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Cplx<R> {
        self.coeffs.get(&e).copied().unwrap_or_else(Complex::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Cplx<R>)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, or `None` for the zero polynomial.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> R {
        self.coeffs.values().fold(R::zero(), |m, c| m.max(c.modulus()))
    }

    fn canonicalize(&mut self, scale: R) {
        let threshold = scale * R::lit(self.zero_tol);
        self.coeffs.retain(|_, c| c.modulus() > threshold && !(c.re.is_zero() && c.im.is_zero()));
    }

    fn combined_tol(&self, other: &Self) -> f64 {
        self.zero_tol.max(other.zero_tol)
    }

    pub fn scale(&self, c: Cplx<R>) -> Self {
        let mut out = Self {
            coeffs: self.coeffs.iter().map(|(&e, &v)| (e, v * c)).collect(),
            zero_tol: self.zero_tol,
        };
        let s = self.max_norm() * c.modulus();
        out.canonicalize(s);
        out
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
            zero_tol: self.zero_tol,
        }
    }

    /// Evaluates at `z`, Horner-style over the non-negative and negative parts.
    pub fn eval(&self, z: Cplx<R>) -> Result<Cplx<R>> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Ok(Complex::zero());
        };
        let z_is_zero = z.re.is_zero() && z.im.is_zero();
        if lo < 0 && z_is_zero {
            return Err(Error::ZeroAtNegativeExponent);
        }
        let mut pos: Cplx<R> = Complex::zero();
        if hi >= 0 {
            for e in (0..=hi).rev() {
                pos = pos * z + self.coeff(e);
            }
        }
        let mut neg: Cplx<R> = Complex::zero();
        if lo < 0 {
            let w = z.inv();
            for e in lo..=-1 {
                neg = (neg + self.coeff(e)) * w;
            }
        }
        let v = pos + neg;
        if !super::real::is_finite(v) {
            return Err(Error::NonFinite("laurent_eval"));
        }
        Ok(v)
    }

    /// Returns `q(t) = p(c t)`.
    pub fn rescale_variable(&self, c: Cplx<R>) -> Result<Self> {
        if c.re.is_zero() && c.im.is_zero() {
            return Err(Error::ZeroScale);
        }
        let coeffs = self.coeffs.iter().map(|(&e, &v)| (e, v * c.pow_int(e))).collect();
        let mut out = Self { coeffs, zero_tol: self.zero_tol };
        let s = out.max_norm();
        out.canonicalize(s);
        if out.coeffs.values().any(|v| !super::real::is_finite(*v)) {
            return Err(Error::NonFinite("laurent_rescale_variable"));
        }
        Ok(out)
    }

    /// Exact division, accepting a remainder up to `tol` relative to the numerator.
    pub fn divide_exact(&self, den: &Self, tol: f64) -> Result<Self> {
        let (Some(den_lo), Some(den_hi)) = (den.min_exp(), den.max_exp()) else {
            return Err(Error::DivisionByZero);
        };
        let (Some(num_lo), Some(num_hi)) = (self.min_exp(), self.max_exp()) else {
            return Ok(Self::zero_with_tol(self.combined_tol(den)));
        };
        let d: Vec<Cplx<R>> = (den_lo..=den_hi).map(|e| den.coeff(e)).collect();
        let mut r: Vec<Cplx<R>> = (num_lo..=num_hi).map(|e| self.coeff(e)).collect();
        let dn = d.len() - 1;
        let num_norm = self.max_norm();
        let lead = d[dn];
        let mut q = vec![Complex::zero(); r.len().saturating_sub(dn).max(1)];
        if r.len() > dn {
            for i in (0..r.len() - dn).rev() {
                let f = r[i + dn] / lead;
                q[i] = f;
                for (j, dj) in d.iter().enumerate() {
                    r[i + j] = r[i + j] - f * *dj;
                }
            }
        }
        let rem_norm = r.iter().take(dn).fold(R::zero(), |m, c| m.max(c.modulus()));
        let residual = (rem_norm / num_norm).to_f64_lossy();
        if !(residual <= tol) {
            return Err(Error::InexactDivision { residual, tol });
        }
        let shift = num_lo - den_lo;
        let mut out = Self {
            coeffs: q.into_iter().enumerate().map(|(i, c)| (shift + i as i64, c)).collect(),
            zero_tol: self.combined_tol(den),
        };
        out.canonicalize(num_norm / lead.modulus());
        Ok(out)
    }

    /// Normalizes the unit ambiguity `±t^j`: lowest exponent becomes 0 and the
    /// lowest coefficient gets positive real part (ties: positive imaginary part).
    pub fn normalize_unit(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return self.clone();
        };
        let shifted = self.shift(-lo);
        let c = shifted.coeff(0);
        let eps = R::lit(1e-12) * c.modulus();
        let negate = if c.re.abs() > eps { c.re < R::zero() } else { c.im < R::zero() };
        if negate {
            -&shifted
        } else {
            shifted
        }
    }

    /// Largest coefficientwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> R {
        let exps: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        exps.into_iter()
            .map(|e| (self.coeff(e) - other.coeff(e)).modulus())
            .fold(R::zero(), R::max)
    }

    /// Equality up to multiplication by `±t^j`, coefficientwise within `tol`.
    pub fn eq_up_to_unit(&self, other: &Self, tol: f64) -> bool {
        let a = self.normalize_unit();
        let b = other.normalize_unit();
        a.max_abs_diff(&b) <= R::lit(tol)
    }

    /// True when every stored exponent is even.
    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    pub fn map_real<S: Real>(&self) -> LaurentPoly<S> {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e, Complex::new(S::lit(c.re.to_f64_lossy()), S::lit(c.im.to_f64_lossy()))))
                .collect(),
            zero_tol: self.zero_tol,
        }
    }
}

impl<R: Real> Default for LaurentPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a, R: Real> Add<&'a LaurentPoly<R>> for &'a LaurentPoly<R> {
    type Output = LaurentPoly<R>;

    fn add(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut coeffs = self.coeffs.clone();
        for (&e, &c) in &rhs.coeffs {
            *coeffs.entry(e).or_insert_with(Complex::zero) += c;
        }
        let mut out = LaurentPoly { coeffs, zero_tol: self.combined_tol(rhs) };
        out.canonicalize(self.max_norm().max(rhs.max_norm()));
        out
    }
}

impl<'a, R: Real> Sub<&'a LaurentPoly<R>> for &'a LaurentPoly<R> {
    type Output = LaurentPoly<R>;

    fn sub(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut coeffs = self.coeffs.clone();
        for (&e, &c) in &rhs.coeffs {
            *coeffs.entry(e).or_insert_with(Complex::zero) -= c;
        }
        let mut out = LaurentPoly { coeffs, zero_tol: self.combined_tol(rhs) };
        out.canonicalize(self.max_norm().max(rhs.max_norm()));
        out
    }
}

impl<'a, R: Real> Mul<&'a LaurentPoly<R>> for &'a LaurentPoly<R> {
    type Output = LaurentPoly<R>;

    fn mul(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut coeffs: BTreeMap<i64, Cplx<R>> = BTreeMap::new();
        for (&ea, &ca) in &self.coeffs {
            for (&eb, &cb) in &rhs.coeffs {
                *coeffs.entry(ea + eb).or_insert_with(Complex::zero) += ca * cb;
            }
        }
        let mut out = LaurentPoly { coeffs, zero_tol: self.combined_tol(rhs) };
        out.canonicalize(self.max_norm() * rhs.max_norm());
        out
    }
}

impl<R: Real> Neg for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;

    fn neg(self) -> LaurentPoly<R> {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
            zero_tol: self.zero_tol,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Real> $tr<LaurentPoly<R>> for LaurentPoly<R> {
            type Output = LaurentPoly<R>;
            fn $m(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Real> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<R: Real> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let (re, im) = (c.re.to_f64_lossy(), c.im.to_f64_lossy());
            let coef = if im.abs() <= 1e-12 * re.abs().max(1e-300) {
                format!("{re}")
            } else if re.abs() <= 1e-12 * im.abs() {
                format!("{im}i")
            } else {
                format!("({re}{:+}i)", im)
            };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}*t")?,
                _ => write!(f, "{coef}*t^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::real::{cplx, imag_unit, root_of_unity};
    use proptest::prelude::*;

    type P = LaurentPoly<f64>;

    fn rp(low: i64, c: &[f64]) -> P {
        P::from_real_coeffs(low, c)
    }

    #[test]
    fn difference_of_squares() {
        let a = rp(0, &[1.0, 1.0]);
        let b = rp(0, &[-1.0, 1.0]);
        assert_eq!(&a * &b, rp(0, &[-1.0, 0.0, 1.0]));
    }

    #[test]
    fn additive_identity() {
        let p = rp(-2, &[3.0, 0.0, -1.5, 2.0]);
        assert_eq!(&P::zero() + &p, p);
    }

    #[test]
    fn cyclotomic_pair_product() {
        let z = root_of_unity::<f64>(2, 5);
        let a = P::from_terms([(2, cplx(1.0, 0.0)), (0, z)]);
        let b = P::from_terms([(2, cplx(1.0, 0.0)), (0, z.inv())]);
        let c = (2.0 * std::f64::consts::PI / 5.0).cos();
        let expected = P::from_terms([(4, cplx(1.0, 0.0)), (2, cplx(2.0 * c, 0.0)), (0, cplx(1.0, 0.0))]);
        assert!((&a * &b).max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn eval_examples() {
        let fig8 = rp(0, &[1.0, -3.0, 1.0]);
        assert!((fig8.eval(cplx(-1.0, 0.0)).unwrap() - cplx(5.0, 0.0)).modulus() < 1e-15);
        assert!((fig8.eval(cplx(1.0, 0.0)).unwrap() - cplx(-1.0, 0.0)).modulus() < 1e-15);
        let p = rp(0, &[1.0, 0.0, 1.0]);
        assert!((p.eval(cplx(1.0, 0.0)).unwrap() - cplx(2.0, 0.0)).modulus() < 1e-15);
    }

    #[test]
    fn eval_negative_exponents() {
        let p = rp(-2, &[1.0, 2.0, 3.0]);
        let v = p.eval(cplx(2.0, 0.0)).unwrap();
        assert!((v - cplx(0.25 + 1.0 + 3.0, 0.0)).modulus() < 1e-15);
        assert_eq!(p.eval(cplx(0.0, 0.0)), Err(Error::ZeroAtNegativeExponent));
        assert_eq!(rp(0, &[7.0, 1.0]).eval(cplx(0.0, 0.0)).unwrap(), cplx(7.0, 0.0));
    }

    #[test]
    fn rescale_examples() {
        let p = rp(0, &[1.0, 0.0, 1.0]);
        let q = p.rescale_variable(imag_unit()).unwrap();
        assert!(q.max_abs_diff(&rp(0, &[1.0, 0.0, -1.0])) < 1e-15);
        assert_eq!(p.rescale_variable(cplx(1.0, 0.0)).unwrap(), p);
        let t4 = P::monomial(cplx(1.0, 0.0), 4);
        assert!(t4.rescale_variable(imag_unit()).unwrap().max_abs_diff(&t4) < 1e-15);
        assert_eq!(p.rescale_variable(cplx(0.0, 0.0)), Err(Error::ZeroScale));
    }

    #[test]
    fn divide_examples() {
        let num = rp(0, &[1.0, 0.0, 0.0, 0.0, -1.0]);
        let den = rp(0, &[-1.0, 0.0, 1.0]);
        let q = num.divide_exact(&den, 1e-9).unwrap();
        assert!(q.max_abs_diff(&rp(0, &[-1.0, 0.0, -1.0])) < 1e-15);
        assert!((&q * &den).max_abs_diff(&num) < 1e-15);
        assert_eq!(den.divide_exact(&den, 1e-9).unwrap(), P::one());
        let bad = rp(0, &[1.0, 0.0, 1.0]).divide_exact(&den, 1e-9);
        assert!(matches!(bad, Err(Error::InexactDivision { .. })));
        assert_eq!(den.divide_exact(&P::zero(), 1e-9), Err(Error::DivisionByZero));
    }

    #[test]
    fn divide_laurent_shifted() {
        let den = rp(-1, &[2.0, 1.0]);
        let q = rp(-3, &[1.0, -1.0, 4.0]);
        let num = &q * &den;
        assert!(num.divide_exact(&den, 1e-12).unwrap().max_abs_diff(&q) < 1e-13);
    }

    #[test]
    fn cancellation_leaves_empty_support() {
        let a = rp(0, &[0.1, 0.2, 0.3]);
        let b = &(&a * &rp(0, &[3.0])) - &(&(&a * &rp(0, &[1.0])) + &(&a + &a));
        assert!(b.is_zero(), "{b}");
    }

    #[test]
    fn unit_normalization() {
        let p = rp(3, &[-1.0, 3.0, -1.0]);
        let n = p.normalize_unit();
        assert_eq!(n.min_exp(), Some(0));
        assert!(n.coeff(0).re > 0.0);
        assert!(p.eq_up_to_unit(&rp(0, &[1.0, -3.0, 1.0]), 1e-12));
        let q = P::from_terms([(1, cplx(0.0, -2.0))]);
        assert_eq!(q.normalize_unit(), P::from_terms([(0, cplx(0.0, 2.0))]));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        (-3i64..3, prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..6)).prop_map(|(lo, cs)| {
            P::from_terms(cs.into_iter().enumerate().map(|(i, (a, b))| (lo + i as i64, cplx(a, b))))
        })
    }

    fn arb_cplx() -> impl Strategy<Value = Cplx<f64>> {
        (0.3f64..1.8, -3.2f64..3.2).prop_map(|(r, th)| Complex::from_polar(r, th))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let lhs = &(&a * &b) * &c;
            let rhs = &a * &(&b * &c);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9);
            let lhs = &a * &(&b + &c);
            let rhs = &(&a * &b) + &(&a * &c);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9);
        }

        #[test]
        fn rescale_commutes_with_eval(p in arb_poly(), c in arb_cplx(), z in arb_cplx()) {
            let lhs = p.rescale_variable(c).unwrap().eval(z).unwrap();
            let rhs = p.eval(c * z).unwrap();
            prop_assert!((lhs - rhs).modulus() < 1e-9 * (1.0 + rhs.modulus()));
        }

        #[test]
        fn divide_recovers_quotient(q in arb_poly(), den in arb_poly()) {
            prop_assume!(!den.is_zero());
            let lead = den.coeff(den.max_exp().unwrap()).modulus();
            prop_assume!(lead > 0.2 * den.max_norm());
            let num = &q * &den;
            let got = num.divide_exact(&den, 1e-9).unwrap();
            prop_assert!(got.max_abs_diff(&q) < 1e-7 * (1.0 + q.max_norm()));
        }
    }
}
