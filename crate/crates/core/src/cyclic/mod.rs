//! Cyclic and paracyclic modules of algebras, twisted sectors and their
//! coinvariants, mixed complexes and mapping cones.

mod family;
mod mixed;
mod module;
mod twisted;

pub use family::{Block, Coinvariants, EquivariantComplexFamily};
pub use mixed::{check_mixed_map, mapping_cone, mixed_from_cyclic, TruncatedMixedComplex};
pub use module::{
    apply_b, apply_big_b, apply_t, check_cyclic_identity, check_mixed_identities, check_paracyclic_identities,
    check_simplicial_identities, check_torsor_identity, compose, op_matrix, operator_matrix, CyclicModule, Op,
};
pub use twisted::{TwistedCyclicModule, MAX_TENSOR_LENGTH};
