//! Integral group ring of `F(x, y)` and Fox free differential calculus.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::word::{Gen, Word};

/// Integer Laurent polynomial, exponent to coefficient, zero coefficients absent.
pub type IntLaurent = BTreeMap<i64, i64>;

/// Element of `Z[F(x, y)]`: a finite integer combination of reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::new())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_terms([(1, w)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Word)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (c, w) in terms {
            out.add_term(c, w);
        }
        out
    }

    pub fn add_term(&mut self, c: i64, w: Word) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Word)> {
        self.terms.iter().map(|(w, &c)| (c, w))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, w) in other.terms() {
            out.add_term(c, w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(c, w)| (k * c, w.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, u) in self.terms() {
            for (b, v) in other.terms() {
                out.add_term(a * b, u.concat(v));
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, u: &Word) -> Self {
        Self::from_terms(self.terms().map(|(c, w)| (c, u.concat(w))))
    }

    /// Image under the abelianization `x, y -> t`.
    pub fn abelianize(&self) -> IntLaurent {
        let mut out = IntLaurent::new();
        for (c, w) in self.terms() {
            *out.entry(w.exponent_sum()).or_insert(0) += c;
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, w)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                f.write_str(" ")?;
            }
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}[{w}]")?;
            } else {
                write!(f, "{sign}{mag}[{w}]")?;
            }
        }
        Ok(())
    }
}

/// Fox derivative `d w / d g`.
///
/// For a syllable `g^n`: `1 + g + ... + g^(n-1)` when `n > 0` and
/// `-(g^-1 + ... + g^n)` when `n < 0`; syllables combine by
/// `d(uv) = du + u dv`.
pub fn fox_derivative(w: &Word, g: Gen) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::new();
    for l in w.letters() {
        if l.gen == g {
            if l.exp > 0 {
                for j in 0..l.exp {
                    out.add_term(1, prefix.concat(&Word::power(g, j)));
                }
            } else {
                for j in 1..=-l.exp {
                    out.add_term(-1, prefix.concat(&Word::power(g, -j)));
                }
            }
        }
        prefix.push(l.gen, l.exp);
    }
    out
}

/// Evaluates an integer Laurent polynomial at an integer point (nonzero when negative exponents occur).
pub fn eval_int_laurent(p: &IntLaurent, t: i64) -> i64 {
    p.iter()
        .map(|(&e, &c)| {
            if e >= 0 {
                c * t.pow(e as u32)
            } else {
                assert!(t == 1 || t == -1, "negative exponent at non-unit integer point");
                c * t.pow((-e) as u32)
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn gre(terms: &[(i64, &str)]) -> GroupRingElement {
        GroupRingElement::from_terms(terms.iter().map(|&(c, s)| (c, w(s))))
    }

    #[test]
    fn axioms() {
        assert_eq!(fox_derivative(&w("x"), Gen::X), GroupRingElement::one());
        assert_eq!(fox_derivative(&w("x^-1"), Gen::X), gre(&[(-1, "x^-1")]));
        assert_eq!(fox_derivative(&w("y"), Gen::X), GroupRingElement::zero());
        assert_eq!(fox_derivative(&w("x y"), Gen::X), GroupRingElement::one());
        assert_eq!(fox_derivative(&w("x y"), Gen::Y), gre(&[(1, "x")]));
        assert_eq!(fox_derivative(&w("x^3"), Gen::X), gre(&[(1, "1"), (1, "x"), (1, "x^2")]));
        assert_eq!(fox_derivative(&w("x^-2"), Gen::X), gre(&[(-1, "x^-1"), (-1, "x^-2")]));
    }

    #[test]
    fn relator_derivative_expansion() {
        // d(w x w^-1 y^-1)/dx = w + (1 - w x w^-1) dw/dx
        for ws in ["x y^-1 x^-1 y", "x y", "x y x^-1 y^-1 x y"] {
            let ww = w(ws);
            let r = ww.concat(&Word::gen(Gen::X)).concat(&ww.inverse()).concat(&w("y^-1"));
            let lhs = fox_derivative(&r, Gen::X);
            let conj = ww.concat(&Word::gen(Gen::X)).concat(&ww.inverse());
            let one_minus = GroupRingElement::one().sub(&GroupRingElement::from_word(conj));
            let rhs = GroupRingElement::from_word(ww.clone()).add(&one_minus.mul(&fox_derivative(&ww, Gen::X)));
            assert_eq!(lhs, rhs, "w = {ws}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(gre(&[(1, "1"), (-2, "x y")]).to_string(), "[1] -2[x y]");
        assert_eq!(GroupRingElement::zero().to_string(), "0");
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((prop::bool::ANY, -3i64..=3), 0..8).prop_map(|v| {
            Word::from_letters(v.into_iter().map(|(b, e)| (if b { Gen::X } else { Gen::Y }, e)))
        })
    }

    proptest! {
        #[test]
        fn product_rule(u in arb_word(), v in arb_word()) {
            for g in [Gen::X, Gen::Y] {
                let lhs = fox_derivative(&u.concat(&v), g);
                let rhs = fox_derivative(&u, g).add(&fox_derivative(&v, g).left_mul_word(&u));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn fundamental_formula(u in arb_word()) {
            // sum_g (du/dg)(g - 1) = u - 1 in Z[F]
            let mut acc = GroupRingElement::zero();
            for g in [Gen::X, Gen::Y] {
                let gm1 = GroupRingElement::from_word(Word::gen(g)).sub(&GroupRingElement::one());
                acc = acc.add(&fox_derivative(&u, g).mul(&gm1));
            }
            let expected = GroupRingElement::from_word(u.clone()).sub(&GroupRingElement::one());
            prop_assert_eq!(acc, expected);
        }
    }
}
