#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::assign_op_pattern)]

//! Reidemeister torsion of double branched covers of two-bridge knots,
//! computed from the knot group through twisted Alexander polynomials of
//! metabelian representations and a rational function on the SL2(C)
//! character variety, together with closed-form lens-space and torus-knot
//! oracles.

pub mod acceptance;
pub mod alexander;
pub mod character;
pub mod error;
pub mod oracles;
pub mod pipeline;
pub mod numeric;
pub mod presentation;
pub mod representation;

pub use error::{Error, Result};
