//! Exact computer algebra for the free-field vertex algebra W(g) = E(g) ⊗ S(g)
//! (the bcβγ system), the semi-infinite Weil complex of sl₂ and its chiral
//! equivariant cohomology classes.

#![allow(clippy::needless_range_loop)]

pub mod cohomology;
pub mod engine;
pub mod expr;
pub mod fock;
pub mod lie;
pub mod linalg;
pub mod properties;
pub mod rational;
pub mod report;
pub mod sample;
pub mod text;
pub mod weil;

pub use engine::{circle, classical_product, derivative, derivative_n, ope_singular, wick, wick_chain, Engine};
pub use expr::{Expr, Letter, Monomial, Species};
pub use lie::LieAlgebra;
pub use rational::Q;
