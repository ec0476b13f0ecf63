use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Generator of the free group `F(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    X,
    Y,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::X => "x",
            Gen::Y => "y",
        })
    }
}

/// A syllable `gen^exp` with `exp != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i64,
}

/// Freely reduced word stored as run-length syllables.
///
/// Adjacent syllables always have distinct generators and no exponent is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gen(g: Gen) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: Gen, exp: i64) -> Self {
        let mut w = Self::new();
        w.push(g, exp);
        w
    }

    pub fn from_letters<I: IntoIterator<Item = (Gen, i64)>>(letters: I) -> Self {
        let mut w = Self::new();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^exp`, merging and cancelling against the tail.
    pub fn push(&mut self, g: Gen, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.gen == g => {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(Letter { gen: g, exp }),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    /// Word length, `sum |exp|`.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.gen, l.exp);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().map(|l| (l.gen, -l.exp)))
    }

    /// Letters in reverse order with the same exponents.
    pub fn reversed(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().map(|l| (l.gen, l.exp)))
    }

    /// Total exponent: the image under `x, y -> t`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exp).sum()
    }

    pub fn exponent_sum_of(&self, g: Gen) -> i64 {
        self.letters.iter().filter(|l| l.gen == g).map(|l| l.exp).sum()
    }
}

/// Sum of all exponents in `w`.
pub fn word_exponent_sum(w: &Word) -> i64 {
    w.exponent_sum()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.exp == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, l.exp)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse word token {0:?}")]
pub struct ParseWordError(pub String);

impl FromStr for Word {
    type Err = ParseWordError;

    /// Parses whitespace-separated tokens `x`, `y^-2`, or `X`/`Y` for inverses; `1` is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = Word::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| ParseWordError(tok.into()))?),
                None => (tok, 1),
            };
            let (g, sign) = match base {
                "x" => (Gen::X, 1),
                "y" => (Gen::Y, 1),
                "X" => (Gen::X, -1),
                "Y" => (Gen::Y, -1),
                _ => return Err(ParseWordError(tok.into())),
            };
            w.push(g, sign * exp);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn free_reduction() {
        assert_eq!(w("x y Y x"), w("x^2"));
        assert_eq!(w("x y y^-1 x^-1"), Word::new());
        assert_eq!(w("x^0 y"), w("y"));
        assert_eq!(w("x y^2 y^-2 x^-1 y"), w("y"));
    }

    #[test]
    fn display_roundtrip() {
        let v = w("x y^-1 x^-1 y x^-4");
        assert_eq!(v.to_string(), "x y^-1 x^-1 y x^-4");
        assert_eq!(w(&v.to_string()), v);
        assert_eq!(Word::new().to_string(), "1");
        assert!("z".parse::<Word>().is_err());
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(word_exponent_sum(&w("x y^-1 x^-1 y")), 0);
        assert_eq!(word_exponent_sum(&w("x y")), 2);
        assert_eq!(w("x^3 y^-1").exponent_sum_of(Gen::X), 3);
    }

    #[test]
    fn inverse_and_reverse() {
        let v = w("x y^-1 x^2");
        assert_eq!(v.concat(&v.inverse()), Word::new());
        assert_eq!(v.reversed(), w("x^2 y^-1 x"));
        assert_eq!(v.reversed().reversed(), v);
    }

    fn arb_word() -> impl Strategy<Value = Vec<(Gen, i64)>> {
        prop::collection::vec((prop::bool::ANY, -3i64..=3), 0..12)
            .prop_map(|v| v.into_iter().map(|(b, e)| (if b { Gen::X } else { Gen::Y }, e)).collect())
    }

    proptest! {
        #[test]
        fn reduction_is_associative(a in arb_word(), b in arb_word(), c in arb_word()) {
            let (a, b, c) = (Word::from_letters(a), Word::from_letters(b), Word::from_letters(c));
            prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
        }

        #[test]
        fn reduction_is_idempotent_and_canonical(a in arb_word()) {
            let flat: Vec<(Gen, i64)> = a.iter()
                .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
                .collect();
            let w1 = Word::from_letters(a);
            let w2 = Word::from_letters(flat);
            prop_assert_eq!(&w1, &w2);
            let again = Word::from_letters(w1.letters().iter().map(|l| (l.gen, l.exp)));
            prop_assert_eq!(&again, &w1);
            for pair in w1.letters().windows(2) {
                prop_assert_ne!(pair[0].gen, pair[1].gen);
            }
            prop_assert!(w1.letters().iter().all(|l| l.exp != 0));
        }
    }
}
