//! Terms of the lattice-ordered ring signature, their sup-inf normal forms
//! and exact decisions about univariate semipolynomial functions.

mod compare;
mod mpoly;
mod nf;
mod term;
mod tri;

pub use compare::{univar_semipoly_compare, SemiEq};
pub use mpoly::MPoly;
pub use nf::{polynomial_of, to_sup_inf_nf, to_sup_inf_nf_in, SupInfNF};
pub use term::{constant, eval_term, var, LatticeTerm};
pub use tri::{subsets, tri_dual_term, tri_sort, tri_term};

pub(crate) use term::{Tok, TermParser};
