//! Forward-mode dual numbers with two independent infinitesimals.
//!
//! Used to carry `d/du` and `d/ds` through products of Riley matrices.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::Ring;
use super::real::{Cplx, Real};

/// `value + du * eps_u + ds * eps_s` with `eps_u^2 = eps_s^2 = eps_u eps_s = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual2<R: Real = f64> {
    pub value: Cplx<R>,
    pub du: Cplx<R>,
    pub ds: Cplx<R>,
}

impl<R: Real> Dual2<R> {
    pub fn constant(value: Cplx<R>) -> Self {
        Self { value, du: Complex::zero(), ds: Complex::zero() }
    }

    pub fn new(value: Cplx<R>, du: Cplx<R>, ds: Cplx<R>) -> Self {
        Self { value, du, ds }
    }

    /// The independent variable `u`.
    pub fn var_u(value: Cplx<R>) -> Self {
        Self { value, du: Complex::one(), ds: Complex::zero() }
    }

    /// The independent variable `s`.
    pub fn var_s(value: Cplx<R>) -> Self {
        Self { value, du: Complex::zero(), ds: Complex::one() }
    }

    pub fn scale(&self, c: Cplx<R>) -> Self {
        Self { value: self.value * c, du: self.du * c, ds: self.ds * c }
    }
}

impl<R: Real> Ring for Dual2<R> {
    fn zero_like(&self) -> Self {
        Self::constant(Complex::zero())
    }
    fn one_like(&self) -> Self {
        Self::constant(Complex::one())
    }
    fn plus(&self, rhs: &Self) -> Self {
        Self { value: self.value + rhs.value, du: self.du + rhs.du, ds: self.ds + rhs.ds }
    }
    fn minus(&self, rhs: &Self) -> Self {
        Self { value: self.value - rhs.value, du: self.du - rhs.du, ds: self.ds - rhs.ds }
    }
    fn times(&self, rhs: &Self) -> Self {
        Self {
            value: self.value * rhs.value,
            du: self.du * rhs.value + self.value * rhs.du,
            ds: self.ds * rhs.value + self.value * rhs.ds,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::real::cplx;

    #[test]
    fn product_rule_against_finite_differences() {
        // f(u, s) = (u s + 2)(u - s^2)
        let f = |u: Cplx<f64>, s: Cplx<f64>| (u * s + 2.0) * (u - s * s);
        let (u0, s0) = (cplx(0.7, -0.2), cplx(-1.1, 0.4));
        let u = Dual2::var_u(u0);
        let s = Dual2::var_s(s0);
        let two = Dual2::constant(cplx(2.0, 0.0));
        let d = u.times(&s).plus(&two).times(&u.minus(&s.times(&s)));
        let h = 1e-6;
        let fu = (f(u0 + h, s0) - f(u0 - h, s0)) / (2.0 * h);
        let fs = (f(u0, s0 + h) - f(u0, s0 - h)) / (2.0 * h);
        assert!((d.value - f(u0, s0)).norm() < 1e-14);
        assert!((d.du - fu).norm() < 1e-8);
        assert!((d.ds - fs).norm() < 1e-8);
    }
}
