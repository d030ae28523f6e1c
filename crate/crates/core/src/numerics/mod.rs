//! Exact arithmetic substrate: rationals, dense univariate polynomials and
//! real algebraic numbers.

pub mod algebraic;
pub mod extension;
pub mod mean_value;
pub mod poly;
pub mod rational;

pub use algebraic::{
    algebraic_compare, algebraic_sign, isolate_real_roots, polynomial_value, real_roots,
    IsolatedRoot, RealAlgebraic,
};
pub use extension::{ExtElem, Extension};
pub use mean_value::{check_mean_value, quartic_rule};
pub use poly::{Sturm, UniPoly};
pub use rational::{format_rational, parse_rational, Rational};
