//! Proofs for lattice-ordered groups and collapse certificates for ordered
//! ring presentations.

mod collapse;
mod corpus;
mod lgroup;
mod linear;

pub use collapse::{check_collapse_certificate, CollapseCertificate, CollapseVerdict, RingPresentation};
pub use corpus::{lgroup_axioms, lgroup_identities, NamedRule};
pub use lgroup::{prove_lgroup_rule, rule_linear_forms, Atom, AtomRel, Leaf, Proof, ProofTree, Rule};
pub use linear::{linear_entailment, Certificate, Entailment, LinConstraint, LinForm, Rel};
