//! Jet rings `O(J_m(V))` for copies of the adjoint representation of sl₂:
//! the `g[t]` action, Weyl's invariants and their relations, Jacobian ranks,
//! the localization determinants `Δ`, `Δ′`, and slice-by-slice comparison of
//! jet invariants with the ring generated by derivatives of classical ones.

pub mod appendix;
pub mod generation;
pub mod poly;
pub mod ring;
pub mod weyl;

use thiserror::Error;

pub use appendix::{
    appendix_cases, change_of_vars_det, invariant_factor_audit, jacobian_rank, verify_appendix, DeltaCase, FactorAudit, JacobianRank,
};
pub use generation::{generated_component, invariant_component, verify_action_brackets, verify_generation, GeneratedSlice, InvariantSlice};
pub use poly::{determinant, divides, JetPoly, Monomial, Var};
pub use ring::JetRing;
pub use weyl::{c_poly, q_poly, verify_weyl_relations, weyl_generators, WeylGeneratorSet};

#[derive(Debug, Error, PartialEq)]
pub enum JetError {
    #[error("not a representation: {0}")]
    Representation(String),
    #[error("expected {rows} targets and {rows} sources, got {cols} sources")]
    NotSquare { rows: usize, cols: usize },
    #[error("substitution is not linear in the source variables: {0}")]
    NotLinear(String),
    #[error("expected a homogeneous polynomial in level-0 variables, got {0}")]
    NotBase(String),
    #[error("slice has {size} monomials, above the limit {limit}")]
    SliceTooLarge { size: u128, limit: u128 },
    #[error("rank certification failed: {0}")]
    Certification(String),
}
