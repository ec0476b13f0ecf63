//! Two-bridge knots `b(p, q)` and their group presentation `<x, y | w x = y w>`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::fox::{eval_int_laurent, fox_derivative, IntLaurent};
use super::word::{Gen, Word};
use crate::error::{Error, Result};

/// Normalized Schubert pair, serialized in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KnotId {
    pub p: i64,
    pub q: i64,
}

impl fmt::Display for KnotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoBridgeKnot {
    p: i64,
    q: i64,
    /// The input fraction denoted the mirror image of `b(p, q)`.
    mirrored: bool,
    word: Word,
    sigma: i64,
}

impl TwoBridgeKnot {
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn id(&self) -> KnotId {
        KnotId { p: self.p, q: self.q }
    }

    pub fn mirrored(&self) -> bool {
        self.mirrored
    }

    /// The word `w` of the relation `w x = y w`.
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Exponent sum of `w`.
    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    /// Number of irreducible metabelian classes, `(p - 1) / 2`.
    pub fn metabelian_count(&self) -> i64 {
        (self.p - 1) / 2
    }

    /// `r = w x w^-1 y^-1`.
    pub fn relator(&self) -> Word {
        self.word
            .concat(&Word::gen(Gen::X))
            .concat(&self.word.inverse())
            .concat(&Word::power(Gen::Y, -1))
    }

    pub fn longitude(&self) -> Word {
        longitude_word(self)
    }

    /// `b(p, q)` is the `(2, p)` torus knot exactly when `q = ±1 mod p`.
    pub fn is_torus(&self) -> bool {
        let r = self.q.rem_euclid(self.p);
        r == 1 || r == self.p - 1
    }

    /// Normalized fraction of the mirror image, `b(p, -q)`.
    pub fn mirror_id(&self) -> KnotId {
        let (q, _) = canonical_q(self.p, -self.q);
        KnotId { p: self.p, q }
    }

    /// Normalized fraction `b(p, q^-1)`, isotopic to this knot.
    pub fn inverse_id(&self) -> KnotId {
        let inv = mod_inverse(self.q, self.p).expect("q is a unit mod p");
        let (q, _) = canonical_q(self.p, inv);
        KnotId { p: self.p, q }
    }

    /// Classical Alexander polynomial with integer coefficients, up to `±t^k`.
    pub fn integer_alexander(&self) -> IntLaurent {
        fox_derivative(&self.relator(), Gen::X).abelianize()
    }
}

impl fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b({}, {})", self.p, self.q)
    }
}

impl FromStr for TwoBridgeKnot {
    type Err = Error;

    /// Parses `"p/q"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { row: 0, message: format!("expected p/q, got {s:?}") };
        let (a, b) = s.trim().split_once('/').ok_or_else(bad)?;
        let p = a.trim().parse::<i64>().map_err(|_| bad())?;
        let q = b.trim().parse::<i64>().map_err(|_| bad())?;
        normalize_two_bridge(p, q)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

/// Odd representative in `(0, p)` of the class of `q`, and whether it denotes the mirror.
fn canonical_q(p: i64, q: i64) -> (i64, bool) {
    let r = q.rem_euclid(p);
    if r % 2 == 1 {
        (r, false)
    } else {
        // r - p is the odd representative in (-p, 0): the mirror of b(p, p - r)
        (p - r, true)
    }
}

/// Normalizes `(p, q)` to Schubert form with `q` odd, `0 < q < p`, and builds the relator word.
pub fn normalize_two_bridge(p: i64, q: i64) -> Result<TwoBridgeKnot> {
    if p < 3 {
        return Err(Error::InvalidFraction { p, q, reason: "p must be at least 3" });
    }
    if p % 2 == 0 {
        return Err(Error::InvalidFraction { p, q, reason: "even p gives a two-component link" });
    }
    if gcd(p, q) != 1 {
        return Err(Error::InvalidFraction { p, q, reason: "p and q must be coprime" });
    }
    let (qn, mirrored) = canonical_q(p, q);
    let word = build_relator_word(p, qn);
    let sigma = word.exponent_sum();
    let knot = TwoBridgeKnot { p, q: qn, mirrored, word, sigma };
    let det = eval_int_laurent(&knot.integer_alexander(), -1).abs();
    if det != p {
        return Err(Error::DeterminantMismatch { expected: p, found: det as f64 });
    }
    Ok(knot)
}

/// `w = x^e1 y^e2 x^e3 ... y^e(p-1)` with `e_i = (-1)^floor(i q / p)`.
pub fn build_relator_word(p: i64, q: i64) -> Word {
    Word::from_letters((1..p).map(|i| {
        let g = if i % 2 == 1 { Gen::X } else { Gen::Y };
        let e = if (i * q).div_euclid(p) % 2 == 0 { 1 } else { -1 };
        (g, e)
    }))
}

/// Preferred longitude commuting with `x`: reverse of `w`, then `w`, then `x^(-2 sigma)`.
pub fn longitude_word(k: &TwoBridgeKnot) -> Word {
    k.word
        .reversed()
        .concat(&k.word)
        .concat(&Word::power(Gen::X, -2 * k.sigma))
}
