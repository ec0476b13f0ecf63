//! Numerical substrate: scalars, Laurent polynomials, small ring matrices,
//! dual numbers and Richardson extrapolation.

pub mod ddouble;
pub mod dual;
pub mod laurent;
pub mod matrix;
pub mod real;
pub mod richardson;

pub use ddouble::DoubleDouble;
pub use dual::Dual2;
pub use laurent::{LaurentPoly, DEFAULT_ZERO_TOL};
pub use matrix::{Ring, RingMatrix};
pub use real::{ComplexExt, Cplx, Real};
pub use richardson::{richardson_limit, Extrapolation};
