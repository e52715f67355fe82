//! Exact arithmetic: arbitrary-precision integers and rationals, dense
//! univariate polynomials over the rationals, and square matrices over any
//! commutative ring that admits exact halving (the Jordan and ternary
//! products divide by two).

mod matrix;
mod scalar;

pub use matrix::{MatrixError, Ring, SquareMatrix};
pub use scalar::{int, pow2, rat, Integer, Rational, Scalar};
