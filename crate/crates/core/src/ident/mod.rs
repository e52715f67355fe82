//! A small text DSL for scalar sequence identities: grammar, recursive
//! descent parser, canonical printer, exact evaluator, and grid verifier.
//!
//! An `.idn` file declares parameters and sequence bindings in header lines,
//! then states one identity per line:
//!
//! ```text
//! params n m;
//! bind F = F;
//! F(m)*F(n)+F(m+1)*F(n+1) == F(m+n+1)
//! ```
//!
//! Verification is exact: both sides evaluate to polynomials over the
//! rationals and must be equal coefficient-wise at every grid point.

mod ast;
mod eval;
mod index;
mod parse;
mod print;
mod verify;

pub use ast::{Bindings, IdentityStatement, IdnFile, IdnStatement, ScalarExpr};
pub use eval::{eval_side, EvalContext, EvalError};
pub use index::IndexPoly;
pub use parse::{parse_file, parse_single, ParseError};
pub use print::{print_canonical, print_expr};
pub use verify::{
    default_grid, verify, Counterexample, Grid, SkippedPoint, VerdictKind, VerifyError,
    VerifyOutcome,
};
