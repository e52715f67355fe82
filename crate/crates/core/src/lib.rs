//! Exact-arithmetic engine for recurrence-sequence identities.
//!
//! The crate derives and verifies identities among linear recurrence
//! sequences (Fibonacci, Lucas, Pell, Jacobsthal, tribonacci, binomial
//! transforms, Fibonacci polynomials) by instantiating special-Jordan-algebra
//! identity templates with a catalog of sequence matrices. Everything is
//! computed over exact rationals and polynomials; no floating point is used
//! anywhere, so a verified identity is an equality, not an approximation.
//!
//! The crate is `no_std` (it requires `alloc`); file IO and the command-line
//! front end live in the companion `seqident-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod catalog;
pub mod ident;
pub mod jordan;
pub mod mclaughlin;
pub mod report;
pub mod suites;
