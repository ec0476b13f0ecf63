//! Scalar field abstraction.
//!
//! Every numerical routine in the crate is generic over [`Real`], which is
//! implemented for `f64` (the default) and for [`DoubleDouble`]. Complex
//! values are `num_complex::Complex<R>`.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{Num, NumAssign, One};

use super::ddouble::DoubleDouble;

/// Complex scalar over a real field `R`.
pub type Cplx<R = f64> = Complex<R>;

pub trait Real:
    Copy + Num + NumAssign + Neg<Output = Self> + PartialOrd + Default + Debug + Display + Send + Sync + 'static
{
    /// Short name used in config fingerprints and reports.
    const NAME: &'static str;

    /// Unit roundoff of the type.
    const EPSILON: f64;

    fn lit(x: f64) -> Self;

    fn to_f64_lossy(self) -> f64;

    fn sqrt(self) -> Self;

    fn abs(self) -> Self;

    fn is_finite(self) -> bool;

    /// `(sin(pi * num / den), cos(pi * num / den))` at full precision of the type.
    fn sin_cos_pi_frac(num: i64, den: i64) -> (Self, Self);

    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return big;
        }
        let r = small / big;
        big * (Self::one() + r * r).sqrt()
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    const NAME: &'static str = "double";
    const EPSILON: f64 = f64::EPSILON;

    #[inline]
    fn lit(x: f64) -> Self {
        x
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self
    }

    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }

    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn hypot(self, other: Self) -> Self {
        f64::hypot(self, other)
    }

    fn sin_cos_pi_frac(num: i64, den: i64) -> (Self, Self) {
        let (n, sign_s, sign_c) = reduce_pi_frac(num, den);
        let x = std::f64::consts::PI * n as f64 / den as f64;
        let (s, c) = x.sin_cos();
        (sign_s * s, sign_c * c)
    }
}

impl Real for DoubleDouble {
    const NAME: &'static str = "extended";
    const EPSILON: f64 = 4.93e-32;

    #[inline]
    fn lit(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64()
    }

    fn sqrt(self) -> Self {
        DoubleDouble::sqrt(self)
    }

    fn abs(self) -> Self {
        DoubleDouble::abs(self)
    }

    fn is_finite(self) -> bool {
        DoubleDouble::is_finite(self)
    }

    fn sin_cos_pi_frac(num: i64, den: i64) -> (Self, Self) {
        let (n, sign_s, sign_c) = reduce_pi_frac(num, den);
        let x = DoubleDouble::PI * DoubleDouble::from_f64(n as f64) / DoubleDouble::from_f64(den as f64);
        let (s, c) = taylor_sin_cos(x);
        (s * Self::lit(sign_s), c * Self::lit(sign_c))
    }
}

/// Modulus and integer powers for complex values over any [`Real`].
pub trait ComplexExt<R: Real> {
    fn modulus(&self) -> R;
    fn pow_int(&self, n: i64) -> Self;
}

impl<R: Real> ComplexExt<R> for Cplx<R> {
    fn modulus(&self) -> R {
        self.re.hypot(self.im)
    }

    fn pow_int(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inv() } else { *self };
        let mut k = n.unsigned_abs();
        let mut acc = Complex::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }
}

/// Maps `num/den` into `[0, 1/2]` and returns the sign corrections for sin and cos.
fn reduce_pi_frac(num: i64, den: i64) -> (i64, f64, f64) {
    assert!(den > 0, "denominator must be positive");
    let period = 2 * den;
    let mut n = num.rem_euclid(period);
    let mut sign_s = 1.0;
    let mut sign_c = 1.0;
    // sin(pi + a) = -sin a, cos(pi + a) = -cos a
    if n >= den {
        n -= den;
        sign_s = -sign_s;
        sign_c = -sign_c;
    }
    // sin(pi - a) = sin a, cos(pi - a) = -cos a
    if 2 * n > den {
        n = den - n;
        sign_c = -sign_c;
    }
    (n, sign_s, sign_c)
}

fn taylor_sin_cos<R: Real>(x: R) -> (R, R) {
    let x2 = x * x;
    let mut s = R::zero();
    let mut c = R::zero();
    let mut term_s = x;
    let mut term_c = R::one();
    let mut k = 0.0;
    for _ in 0..40 {
        s = s + term_s;
        c = c + term_c;
        term_s = -term_s * x2 / R::lit((k + 2.0) * (k + 3.0));
        term_c = -term_c * x2 / R::lit((k + 1.0) * (k + 2.0));
        k += 2.0;
    }
    (s, c)
}

#[inline]
pub fn cplx<R: Real>(re: f64, im: f64) -> Cplx<R> {
    Complex::new(R::lit(re), R::lit(im))
}

#[inline]
pub fn real<R: Real>(re: R) -> Cplx<R> {
    Complex::new(re, R::zero())
}

#[inline]
pub fn imag_unit<R: Real>() -> Cplx<R> {
    Complex::new(R::zero(), R::one())
}

/// `exp(pi * i * num / den)`.
pub fn root_of_unity<R: Real>(num: i64, den: i64) -> Cplx<R> {
    let (s, c) = R::sin_cos_pi_frac(num, den);
    Complex::new(c, s)
}

/// Principal square root computed algebraically (no trigonometry).
pub fn principal_sqrt<R: Real>(z: Cplx<R>) -> Cplx<R> {
    if z.re.is_zero() && z.im.is_zero() {
        return z;
    }
    let half = R::lit(0.5);
    let modulus = z.re.hypot(z.im);
    if z.re >= R::zero() {
        let a = ((modulus + z.re) * half).sqrt();
        Complex::new(a, z.im / (a + a))
    } else {
        let b = ((modulus - z.re) * half).sqrt();
        let b = if z.im < R::zero() { -b } else { b };
        Complex::new(z.im / (b + b), b)
    }
}

#[inline]
pub fn is_finite<R: Real>(z: Cplx<R>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `[re, im]` as plain doubles.
pub fn to_pair<R: Real>(z: Cplx<R>) -> [f64; 2] {
    [z.re.to_f64_lossy(), z.im.to_f64_lossy()]
}

pub fn to_f64_cplx<R: Real>(z: Cplx<R>) -> Cplx<f64> {
    Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_cos_reduction_matches_std() {
        for den in 1..12 {
            for num in -30..30 {
                let (s, c) = f64::sin_cos_pi_frac(num, den);
                let x = std::f64::consts::PI * num as f64 / den as f64;
                assert!((s - x.sin()).abs() < 1e-13, "sin {num}/{den}");
                assert!((c - x.cos()).abs() < 1e-13, "cos {num}/{den}");
            }
        }
    }

    #[test]
    fn extended_trig_beats_double() {
        // 4 sin^2(pi/5) * 4 sin^2(2 pi/5) = 5 exactly
        let (s1, _) = DoubleDouble::sin_cos_pi_frac(1, 5);
        let (s2, _) = DoubleDouble::sin_cos_pi_frac(2, 5);
        let four = DoubleDouble::lit(4.0);
        let v = four * s1 * s1 * four * s2 * s2 - DoubleDouble::lit(5.0);
        assert!(Real::abs(v).to_f64() < 1e-28, "{v}");
        let (s, c) = DoubleDouble::sin_cos_pi_frac(1, 3);
        let e = s * s + c * c - DoubleDouble::lit(1.0);
        assert!(Real::abs(e).to_f64() < 1e-30);
        assert!(Real::abs(c - DoubleDouble::lit(0.5)).to_f64() < 1e-31);
    }

    #[test]
    fn pow_int_and_modulus() {
        let z = cplx::<f64>(0.6, 0.8);
        assert!((z.pow_int(5) - z.powi(5)).norm() < 1e-15);
        assert!((z.pow_int(-3) - z.powi(-3)).norm() < 1e-14);
        assert_eq!(z.pow_int(0), Complex::new(1.0, 0.0));
        assert!((cplx::<f64>(3.0, -4.0).modulus() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn principal_sqrt_branch() {
        let dd = principal_sqrt(cplx::<DoubleDouble>(-3.0, 4.0));
        let err = dd * dd - cplx::<DoubleDouble>(-3.0, 4.0);
        assert!(err.modulus().to_f64() < 1e-30);
        let r = principal_sqrt(cplx::<f64>(-1.0, 0.0));
        assert!((r - Complex::new(0.0, 1.0)).norm() < 1e-15);
        let z = cplx::<f64>(-3.0, -4.0);
        let r = principal_sqrt(z);
        assert!((r * r - z).norm() < 1e-14);
        assert!(r.re >= 0.0);
        let std = z.sqrt();
        assert!((r - std).norm() < 1e-14);
    }
}
