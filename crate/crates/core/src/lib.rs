//! Exact real algebra without sign tests on the reals: virtual roots of real
//! polynomials, sup-inf normal forms of lattice-ordered ring terms, proofs in
//! lattice-ordered groups, collapse certificates and lazy power series.

pub mod error;
pub mod numerics;
pub mod prover;
pub mod semipoly;
pub mod series;
pub mod vroots;

pub use error::{Error, ParseError, Result};
pub use numerics::{RealAlgebraic, Rational, UniPoly};
