//! Free-group words, Fox calculus and two-bridge knot presentations.

pub mod fox;
pub mod knot;
pub mod word;

pub use fox::{fox_derivative, GroupRingElement, IntLaurent};
pub use knot::{build_relator_word, gcd, longitude_word, mod_inverse, normalize_two_bridge, KnotId, TwoBridgeKnot};
pub use word::{word_exponent_sum, Gen, Letter, Word};
