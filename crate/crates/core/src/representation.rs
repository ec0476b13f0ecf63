//! SL2(C) representations of two-bridge knot groups: the metabelian family
//! `rho_k`, the Riley family `rho_{sqrt s, u}`, and the map `alpha (x) rho`
//! from the group ring to matrices over Laurent polynomials.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::real::{imag_unit, principal_sqrt};
use crate::numeric::{Cplx, LaurentPoly, Real, Ring, RingMatrix};
use crate::presentation::{Gen, GroupRingElement, Word};

/// Images of `x`, `y` and their inverses over any ring.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorImages<E> {
    pub x: RingMatrix<E>,
    pub x_inv: RingMatrix<E>,
    pub y: RingMatrix<E>,
    pub y_inv: RingMatrix<E>,
}

impl<E: Ring> GeneratorImages<E> {
    /// Product of the generator images along `w`; the empty word gives the identity.
    pub fn evaluate(&self, w: &Word) -> RingMatrix<E> {
        let mut acc = RingMatrix::identity_like(2, self.x.get(0, 0));
        for l in w.letters() {
            let m = match (l.gen, l.exp > 0) {
                (Gen::X, true) => &self.x,
                (Gen::X, false) => &self.x_inv,
                (Gen::Y, true) => &self.y,
                (Gen::Y, false) => &self.y_inv,
            };
            for _ in 0..l.exp.unsigned_abs() {
                acc = acc.mul(m).expect("generator images are 2x2");
            }
        }
        acc
    }
}

/// Riley matrices built from a chosen square root `root` of `s` and its inverse.
pub fn riley_images<E: Ring>(root: E, root_inv: E, u: E) -> GeneratorImages<E> {
    let zero = root.zero_like();
    let ur = u.times(&root);
    GeneratorImages {
        x: RingMatrix::from_rows2([[root.clone(), root_inv.clone()], [zero.clone(), root_inv.clone()]]),
        x_inv: RingMatrix::from_rows2([[root_inv.clone(), root_inv.negated()], [zero.clone(), root.clone()]]),
        y: RingMatrix::from_rows2([[root.clone(), zero.clone()], [ur.negated(), root_inv.clone()]]),
        y_inv: RingMatrix::from_rows2([[root_inv, zero], [ur, root]]),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RepKind<R: Real = f64> {
    Metabelian { k: i64, p: i64 },
    Riley { s: Cplx<R>, u: Cplx<R> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rep2<R: Real = f64> {
    images: GeneratorImages<Cplx<R>>,
    kind: RepKind<R>,
}

impl<R: Real> Rep2<R> {
    pub fn img_x(&self) -> &RingMatrix<Cplx<R>> {
        &self.images.x
    }

    pub fn img_y(&self) -> &RingMatrix<Cplx<R>> {
        &self.images.y
    }

    pub fn images(&self) -> &GeneratorImages<Cplx<R>> {
        &self.images
    }

    pub fn kind(&self) -> RepKind<R> {
        self.kind
    }

    pub fn evaluate_word(&self, w: &Word) -> RingMatrix<Cplx<R>> {
        self.images.evaluate(w)
    }

    pub fn trace_of(&self, w: &Word) -> Cplx<R> {
        self.evaluate_word(w).trace()
    }
}

/// Index `k` of a metabelian representation together with its parameter `u_k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetabelianIndex<R: Real = f64> {
    pub k: i64,
    pub p: i64,
    pub u_k: Cplx<R>,
}

impl<R: Real> MetabelianIndex<R> {
    pub fn new(p: i64, k: i64) -> Result<Self> {
        let max = (p - 1) / 2;
        if k < 1 || k > max {
            return Err(Error::IndexOutOfRange { index: k, max });
        }
        Ok(Self { k, p, u_k: metabelian_u(p, k) })
    }

    /// All indices `1..=(p-1)/2`.
    pub fn all(p: i64) -> Vec<Self> {
        (1..=(p - 1) / 2).map(|k| Self { k, p, u_k: metabelian_u(p, k) }).collect()
    }
}

/// `u_k = (e^{k pi i/p} - e^{-k pi i/p})^2 = -4 sin^2(k pi / p)`.
pub fn metabelian_u<R: Real>(p: i64, k: i64) -> Cplx<R> {
    let (s, _) = R::sin_cos_pi_frac(k, p);
    Complex::new(-R::lit(4.0) * s * s, R::zero())
}

pub fn metabelian_rep<R: Real>(p: i64, k: i64) -> Result<Rep2<R>> {
    let idx = MetabelianIndex::<R>::new(p, k)?;
    let i = imag_unit::<R>();
    let z = Cplx::<R>::zero();
    let x = RingMatrix::from_rows2([[i, -i], [z, -i]]);
    let y = RingMatrix::from_rows2([[i, z], [-i * idx.u_k, -i]]);
    let images = GeneratorImages { x_inv: x.adjugate2()?, y_inv: y.adjugate2()?, x, y };
    Ok(Rep2 { images, kind: RepKind::Metabelian { k, p } })
}

/// Riley representation on the principal branch of `sqrt(s)`.
pub fn riley_rep<R: Real>(s: Cplx<R>, u: Cplx<R>) -> Result<Rep2<R>> {
    if s.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let mut rep = riley_rep_from_root(principal_sqrt(s), u)?;
    rep.kind = RepKind::Riley { s, u };
    Ok(rep)
}

/// Riley representation with an explicit square root `root` of `s`.
pub fn riley_rep_from_root<R: Real>(root: Cplx<R>, u: Cplx<R>) -> Result<Rep2<R>> {
    if root.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let images = riley_images(root, root.inv(), u);
    Ok(Rep2 { images, kind: RepKind::Riley { s: root * root, u } })
}

pub fn evaluate_word<R: Real>(r: &Rep2<R>, w: &Word) -> RingMatrix<Cplx<R>> {
    r.evaluate_word(w)
}

/// Exponent of `t` under `alpha`, which sends both meridians to `t`.
pub fn abelianization(w: &Word) -> i64 {
    w.exponent_sum()
}

/// `sum c * t^alpha(g) * rho(g)` over the terms of `e`.
pub fn phi_map<R: Real>(r: &Rep2<R>, e: &GroupRingElement, zero_tol: f64) -> RingMatrix<LaurentPoly<R>> {
    let mut entries: [Vec<(i64, Cplx<R>)>; 4] = Default::default();
    for (c, w) in e.terms() {
        let a = abelianization(w);
        let m = r.evaluate_word(w);
        let c = Complex::new(R::lit(c as f64), R::zero());
        for (slot, v) in entries.iter_mut().zip(m.entries()) {
            slot.push((a, c * v));
        }
    }
    let polys: Vec<LaurentPoly<R>> = entries
        .into_iter()
        .map(|terms| LaurentPoly::from_terms_with_tol(terms, zero_tol))
        .collect();
    RingMatrix::new(2, polys).expect("four entries")
}

/// `t^a * rho(g) - 1` for a single generator, as used in Wada denominators.
pub fn phi_generator_minus_one<R: Real>(r: &Rep2<R>, g: Gen, zero_tol: f64) -> RingMatrix<LaurentPoly<R>> {
    let e = GroupRingElement::from_word(Word::gen(g)).sub(&GroupRingElement::one());
    phi_map(r, &e, zero_tol)
}

/// Identity matrix of Laurent polynomials with the given tolerance.
pub fn laurent_identity<R: Real>(zero_tol: f64) -> RingMatrix<LaurentPoly<R>> {
    RingMatrix::identity_like(2, &LaurentPoly::<R>::one().with_zero_tol(zero_tol))
}

/// Checks `det = 1` on both generator images.
pub fn is_sl2<R: Real>(r: &Rep2<R>, tol: f64) -> bool {
    let one = Cplx::<R>::one();
    [r.img_x(), r.img_y()]
        .iter()
        .all(|m| m.det().map(|d| crate::numeric::ComplexExt::modulus(&(d - one)) <= R::lit(tol)).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::real::cplx;
    use crate::numeric::ComplexExt;
    use crate::presentation::normalize_two_bridge;
    use proptest::prelude::*;

    fn census() -> Vec<(i64, i64)> {
        let mut v = Vec::new();
        for p in (3..=15).step_by(2) {
            for q in (1..p).step_by(2) {
                if crate::presentation::gcd(p, q) == 1 {
                    v.push((p, q));
                }
            }
        }
        v
    }

    fn identity() -> RingMatrix<Cplx<f64>> {
        RingMatrix::identity_like(2, &cplx(0.0, 0.0))
    }

    #[test]
    fn metabelian_parameters() {
        let u = metabelian_u::<f64>(5, 1);
        assert!((u.re + 1.381_966_011_250_105).abs() < 1e-12);
        assert!((metabelian_u::<f64>(3, 1).re + 3.0).abs() < 1e-12);
        assert_eq!(MetabelianIndex::<f64>::all(11).len(), 5);
        assert!(matches!(metabelian_rep::<f64>(5, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(metabelian_rep::<f64>(5, 0), Err(Error::IndexOutOfRange { .. })));
        let r = metabelian_rep::<f64>(7, 2).unwrap();
        assert!(r.img_x().trace().modulus() < 1e-15);
        assert!(r.img_y().trace().modulus() < 1e-15);
        assert!(is_sl2(&r, 1e-14));
    }

    #[test]
    fn relator_and_longitude_are_trivial() {
        for (p, q) in census() {
            let k = normalize_two_bridge(p, q).unwrap();
            for idx in 1..=k.metabelian_count() {
                let r = metabelian_rep::<f64>(p, idx).unwrap();
                let rel = r.evaluate_word(&k.relator());
                assert!(rel.max_abs_diff(&identity()) < 1e-8, "relator b({p},{q}) k={idx}");
                let lam = r.evaluate_word(&k.longitude());
                assert!(lam.max_abs_diff(&identity()) < 1e-8, "longitude b({p},{q}) k={idx}");
            }
        }
    }

    #[test]
    fn metabelian_reps_are_irreducible() {
        for p in (3..=21).step_by(2) {
            for idx in MetabelianIndex::<f64>::all(p) {
                let r = metabelian_rep::<f64>(p, idx.k).unwrap();
                // x is upper triangular with eigenvector e1; y fixes e1 only if its (2,1) entry vanishes
                assert!(r.img_y().get(1, 0).modulus() > 1e-3);
            }
            let mut us: Vec<f64> = MetabelianIndex::<f64>::all(p).iter().map(|m| m.u_k.re).collect();
            us.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
            assert_eq!(us.len() as i64, (p - 1) / 2);
        }
    }

    #[test]
    fn riley_at_minus_one_matches_metabelian() {
        let words: Vec<Word> = ["x", "y", "x y", "x y^-1", "x^2 y^-1 x y"].iter().map(|s| s.parse().unwrap()).collect();
        for p in [5, 7, 13] {
            for idx in MetabelianIndex::<f64>::all(p) {
                let a = metabelian_rep::<f64>(p, idx.k).unwrap();
                let b = riley_rep(cplx(-1.0, 0.0), idx.u_k).unwrap();
                for w in &words {
                    assert!((a.trace_of(w) - b.trace_of(w)).modulus() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn riley_corner_cases() {
        let r = riley_rep(cplx::<f64>(1.0, 0.0), cplx(0.0, 0.0)).unwrap();
        assert!((r.img_x().trace() - cplx(2.0, 0.0)).modulus() < 1e-15);
        assert!((r.img_y().trace() - cplx(2.0, 0.0)).modulus() < 1e-15);
        assert!(r.img_x().get(1, 0).modulus() == 0.0);
        assert!(r.img_y().get(0, 1).modulus() == 0.0);
        assert!(matches!(riley_rep(cplx::<f64>(0.0, 0.0), cplx(1.0, 0.0)), Err(Error::ZeroParameter)));
    }

    #[test]
    fn relator_vanishes_on_riley_solution() {
        // figure-eight: phi(s, u) = W11 + (1 - s) W12 is quadratic in u; solve at s = 2
        let k = normalize_two_bridge(5, 3).unwrap();
        let s = cplx::<f64>(2.0, 0.0);
        let phi = |u: Cplx<f64>| {
            let w = riley_rep(s, u).unwrap().evaluate_word(k.word());
            *w.get(0, 0) + (cplx::<f64>(1.0, 0.0) - s) * *w.get(0, 1)
        };
        let mut u = cplx(-1.0, 0.5);
        for _ in 0..60 {
            let d = (phi(u + 1e-7) - phi(u - 1e-7)) / 2e-7;
            u -= phi(u) / d;
        }
        assert!(phi(u).modulus() < 1e-12);
        let r = riley_rep(s, u).unwrap();
        assert!(r.evaluate_word(&k.relator()).max_abs_diff(&identity()) < 1e-8);
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianization(&"x".parse().unwrap()), 1);
        for (p, q) in census() {
            let k = normalize_two_bridge(p, q).unwrap();
            assert_eq!(abelianization(&k.relator()), 0);
            assert_eq!(abelianization(&k.longitude()), 0);
        }
    }

    #[test]
    fn phi_map_examples() {
        let r = metabelian_rep::<f64>(5, 1).unwrap();
        let m = phi_generator_minus_one(&r, Gen::Y, 1e-12);
        let d = m.det().unwrap();
        assert!(d.max_abs_diff(&LaurentPoly::from_real_coeffs(0, &[1.0, 0.0, 1.0])) < 1e-14);
        let one = phi_map(&r, &GroupRingElement::one(), 1e-12);
        assert_eq!(one, laurent_identity(1e-12));
        let e = GroupRingElement::from_terms([(1, Word::gen(Gen::X)), (1, Word::power(Gen::X, -1))]);
        let got = phi_map(&r, &e, 1e-12);
        let t = LaurentPoly::<f64>::t();
        let tinv = LaurentPoly::<f64>::monomial(cplx(1.0, 0.0), -1);
        let want = r
            .img_x()
            .to_laurent(1e-12)
            .scale(&t)
            .add(&r.img_x().adjugate2().unwrap().to_laurent(1e-12).scale(&tinv))
            .unwrap();
        for (a, b) in got.entries().iter().zip(want.entries()) {
            assert!(a.max_abs_diff(b) < 1e-14);
        }
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((prop::bool::ANY, -3i64..=3), 0..8)
            .prop_map(|v| Word::from_letters(v.into_iter().map(|(b, e)| (if b { Gen::X } else { Gen::Y }, e))))
    }

    fn arb_element() -> impl Strategy<Value = GroupRingElement> {
        prop::collection::vec((-3i64..=3, arb_word()), 0..4).prop_map(GroupRingElement::from_terms)
    }

    proptest! {
        #[test]
        fn evaluation_is_a_homomorphism(a in arb_word(), b in arb_word(), sr in -2.0f64..2.0, si in 0.1f64..2.0, ur in -2.0f64..2.0) {
            let r = riley_rep(cplx::<f64>(sr, si), cplx(ur, 0.3)).unwrap();
            let lhs = r.evaluate_word(&a.concat(&b));
            let rhs = r.evaluate_word(&a).mul(&r.evaluate_word(&b)).unwrap();
            let scale = 1.0 + lhs.entries().iter().map(|c| c.modulus()).fold(0.0, f64::max);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10 * scale);
        }

        #[test]
        fn riley_images_are_sl2(sr in -2.0f64..2.0, si in -2.0f64..2.0, ur in -3.0f64..3.0, ui in -3.0f64..3.0) {
            prop_assume!(sr.abs() + si.abs() > 1e-3);
            let r = riley_rep(cplx::<f64>(sr, si), cplx(ur, ui)).unwrap();
            prop_assert!(is_sl2(&r, 1e-12));
        }

        #[test]
        fn phi_map_is_a_ring_map(a in arb_element(), b in arb_element()) {
            let r = metabelian_rep::<f64>(7, 2).unwrap();
            let tol = 1e-13;
            let sum = phi_map(&r, &a.add(&b), tol);
            let sum2 = phi_map(&r, &a, tol).add(&phi_map(&r, &b, tol)).unwrap();
            let prod = phi_map(&r, &a.mul(&b), tol);
            let prod2 = phi_map(&r, &a, tol).mul(&phi_map(&r, &b, tol)).unwrap();
            for (x, y) in sum.entries().iter().zip(sum2.entries()) {
                prop_assert!(x.max_abs_diff(y) < 1e-9);
            }
            for (x, y) in prod.entries().iter().zip(prod2.entries()) {
                prop_assert!(x.max_abs_diff(y) < 1e-8);
            }
        }
    }
}
