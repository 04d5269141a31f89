//! Multigraphs, free operads, finite operads and the key operads `T_α`.

pub mod envelope;
pub mod finite;
pub mod key;
pub mod multigraph;
pub mod term;
pub mod vector;

pub use envelope::{EnvMorphism, Envelope};
pub use finite::{FiniteOperad, Operation};
pub use key::{build_t_alpha, chain_term, hom_operads, key_multigraph, lambda_theta, KeyOperad, OperadMorphism};
pub use multigraph::{Arrow, Edge, Multigraph};
pub use term::{all_terms, free_compose, PlanarTerm};
pub use vector::{
    concat, ou_equivalent, pack, split, term_to_vector, vector_to_term, OpVector, OperationMatrix, Rewrite,
};

#[cfg(test)]
mod tests;
