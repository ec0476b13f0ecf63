//! Small square matrices over a commutative ring.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::real::{ComplexExt, Cplx, Real};
use crate::error::{Error, Result};

/// Commutative ring operations needed by [`RingMatrix`].
///
/// `zero_like`/`one_like` take a sample element so rings carrying
/// parameters (such as a zero tolerance) can propagate them.
pub trait Ring: Clone + Send + Sync + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;

    fn negated(&self) -> Self {
        self.zero_like().minus(self)
    }
}

impl<R: Real> Ring for Cplx<R> {
    fn zero_like(&self) -> Self {
        Complex::zero()
    }
    fn one_like(&self) -> Self {
        Complex::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl<R: Real> Ring for LaurentPoly<R> {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero_with_tol(self.zero_tol())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one().with_zero_tol(self.zero_tol())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Dense `n x n` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Ring> RingMatrix<E> {
    pub fn new(n: usize, entries: Vec<E>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows2(rows: [[E; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = rows;
        Self { n: 2, entries: vec![a, b, c, d] }
    }

    pub fn identity_like(n: usize, sample: &E) -> Self {
        let entries = (0..n * n)
            .map(|i| if i / n == i % n { sample.one_like() } else { sample.zero_like() })
            .collect();
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{}x{0} vs {}x{1}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.get(i, 0).times(other.get(0, j));
                for k in 1..n {
                    acc = acc.plus(&self.get(i, k).times(other.get(k, j)));
                }
                entries.push(acc);
            }
        }
        Ok(Self { n, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.plus(b)).collect();
        Ok(Self { n: self.n, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.minus(b)).collect();
        Ok(Self { n: self.n, entries })
    }

    pub fn scale(&self, c: &E) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| c.times(a)).collect() }
    }

    pub fn map<F, G: Ring>(&self, f: F) -> RingMatrix<G>
    where
        F: Fn(&E) -> G,
    {
        RingMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn trace(&self) -> E {
        (1..self.n).fold(self.get(0, 0).clone(), |acc, i| acc.plus(self.get(i, i)))
    }

    /// Determinant by direct expansion; only `n <= 3` is supported.
    pub fn det(&self) -> Result<E> {
        let m = |i, j| self.get(i, j);
        match self.n {
            1 => Ok(m(0, 0).clone()),
            2 => Ok(m(0, 0).times(m(1, 1)).minus(&m(0, 1).times(m(1, 0)))),
            3 => {
                let minor = |a: usize, b: usize, c: usize, d: usize| {
                    m(1, a).times(m(2, b)).minus(&m(1, c).times(m(2, d)))
                };
                let t0 = m(0, 0).times(&minor(1, 2, 2, 1));
                let t1 = m(0, 1).times(&minor(0, 2, 2, 0));
                let t2 = m(0, 2).times(&minor(0, 1, 1, 0));
                Ok(t0.minus(&t1).plus(&t2))
            }
            n => Err(Error::DimensionMismatch(format!("determinant of {n}x{n} not supported"))),
        }
    }

    /// Adjugate of a 2x2 matrix; for `det = 1` this is the inverse.
    pub fn adjugate2(&self) -> Result<Self> {
        if self.n != 2 {
            return Err(Error::DimensionMismatch(format!("adjugate of {0}x{0}", self.n)));
        }
        let m = |i, j| self.get(i, j).clone();
        Ok(Self::from_rows2([[m(1, 1), m(0, 1).negated()], [m(1, 0).negated(), m(0, 0)]]))
    }
}

impl<R: Real> RingMatrix<Cplx<R>> {
    /// Largest entrywise distance.
    pub fn max_abs_diff(&self, other: &Self) -> R {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).modulus())
            .fold(R::zero(), R::max)
    }

    pub fn inverse2(&self) -> Result<Self> {
        let det = self.det()?;
        if det.modulus().is_zero() {
            return Err(Error::NonFinite("inverse of singular matrix"));
        }
        let inv = det.inv();
        Ok(self.adjugate2()?.map(|a| a * inv))
    }

    /// Promotes complex entries to constant Laurent polynomials.
    pub fn to_laurent(&self, zero_tol: f64) -> RingMatrix<LaurentPoly<R>> {
        self.map(|&c| LaurentPoly::constant(c).with_zero_tol(zero_tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::real::cplx;
    use proptest::prelude::*;

    type M = RingMatrix<Cplx<f64>>;

    fn m2(a: [[f64; 2]; 2]) -> M {
        RingMatrix::from_rows2([[cplx(a[0][0], 0.0), cplx(a[0][1], 0.0)], [cplx(a[1][0], 0.0), cplx(a[1][1], 0.0)]])
    }

    #[test]
    fn identity_is_neutral() {
        let a = m2([[1.0, 2.0], [3.0, 4.0]]);
        let id = M::identity_like(2, &cplx(0.0, 0.0));
        assert_eq!(id.mul(&a).unwrap(), a);
        assert_eq!(id.det().unwrap(), cplx(1.0, 0.0));
    }

    #[test]
    fn dimension_mismatch() {
        let a = m2([[1.0, 2.0], [3.0, 4.0]]);
        let b = M::identity_like(3, &cplx(0.0, 0.0));
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch(_))));
        assert!(M::new(2, vec![cplx(1.0, 0.0); 3]).is_err());
        let big = M::identity_like(4, &cplx(0.0, 0.0));
        assert!(matches!(big.det(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn det3_expansion() {
        let e = [2.0, -1.0, 0.0, 1.0, 3.0, 4.0, 0.5, 2.0, 1.0];
        let a = M::new(3, e.iter().map(|&x| cplx(x, 0.0)).collect()).unwrap();
        // brute-force Leibniz over the six permutations
        let perms = [([0, 1, 2], 1.0), ([1, 2, 0], 1.0), ([2, 0, 1], 1.0), ([0, 2, 1], -1.0), ([2, 1, 0], -1.0), ([1, 0, 2], -1.0)];
        let want: f64 = perms.iter().map(|(p, s)| s * e[p[0]] * e[3 + p[1]] * e[6 + p[2]]).sum();
        assert!((a.det().unwrap() - cplx(want, 0.0)).modulus() < 1e-12);
    }

    #[test]
    fn laurent_det() {
        // det(t*Y - 1) with Y = [[i, 0], [-i u, -i]] is t^2 + 1
        let u = cplx::<f64>(-1.3, 0.0);
        let i = cplx::<f64>(0.0, 1.0);
        let y = RingMatrix::from_rows2([[i, cplx(0.0, 0.0)], [-i * u, -i]]);
        let t = LaurentPoly::<f64>::t();
        let ty = y.to_laurent(1e-9).scale(&t);
        let one = RingMatrix::identity_like(2, &LaurentPoly::<f64>::zero());
        let d = ty.sub(&one).unwrap().det().unwrap();
        assert!(d.max_abs_diff(&LaurentPoly::from_real_coeffs(0, &[1.0, 0.0, 1.0])) < 1e-14);
    }

    fn arb_m2() -> impl Strategy<Value = M> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 4).prop_map(|v| {
            M::new(2, v.into_iter().map(|(a, b)| cplx(a, b)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in arb_m2(), b in arb_m2()) {
            let lhs = a.mul(&b).unwrap().det().unwrap();
            let rhs = a.det().unwrap() * b.det().unwrap();
            prop_assert!((lhs - rhs).modulus() < 1e-10);
        }
    }
}
