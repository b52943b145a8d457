//! Exact scalars, multivariate polynomials and the coefficient abstraction
//! shared by the simulators.

mod poly;
mod scalar;

pub use poly::{MultiPoly, PolyJson, TermJson};
pub use scalar::{parse_rational, rational_list, rational_to_string, ComplexFloat, Rational, Scalar};
