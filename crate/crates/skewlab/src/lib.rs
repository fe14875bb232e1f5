//! Exact arithmetic in skew polynomial rings K[t; sigma, delta], in two
//! concrete instantiations:
//!
//! * twisted: K = F_{q^n} with sigma the Frobenius a -> a^q and delta = 0;
//! * differential: K = F_p(u) with sigma = id and delta = d/du.
//!
//! On top of the ring arithmetic the crate computes minimal central left
//! multiples, materializes eigenrings E(f) as explicit F-algebras with
//! structure constants, and decides and classifies generalised
//! A-polynomials (the f whose eigenring is central simple over F), always
//! with an independent brute-force oracle available to cross-check the
//! theorem-route decisions.
//!
//! The `skewlab` binary exposes `analyze`, `construct`, and `sweep`
//! subcommands emitting JSON reports; see the crate README.

pub mod algebra;
pub mod apoly;
pub mod central;
pub mod context;
pub mod error;
pub mod fp;
pub mod linalg;
pub mod parse;
pub mod ratfun;
pub mod report;
pub mod skew;
pub mod sweep;

pub use central::Trilean;
pub use context::{Context, KElement};
pub use error::{Error, Result};
pub use skew::SkewPolynomial;
