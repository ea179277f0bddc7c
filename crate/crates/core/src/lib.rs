//! Exact chain-level cyclic homology for finite group actions.
//!
//! The crate builds Hochschild and cyclic complexes of finite-dimensional
//! algebras and their crossed products by finite groups, twisted cyclic
//! modules and their coinvariants, the comparison maps between them, and
//! linear Koszul complexes. All arithmetic is exact, over the rationals or a
//! prime field, and every algebraic identity is checked on matrices.

pub mod algebra;
pub mod coefficients;
pub mod cyclic;
pub mod error;
pub mod field;
pub mod koszul;
pub mod linalg;
pub mod orbifold;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
