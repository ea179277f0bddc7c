//! Finite groups, finite-dimensional algebras with group actions, crossed
//! products, fixed-point ideals and quotients.

mod action;
mod builders;
mod fdalg;
mod group;
mod gset;
mod ideal;

pub use action::GroupAction;
pub use builders::{
    build_crossed_product, build_function_algebra, build_group_algebra, build_matrix_algebra,
    build_truncated_polynomial, conjugation_matrix, CrossedProduct,
};
pub use fdalg::FinDimAlgebra;
pub use group::{symmetric_permutations, FiniteGroup};
pub use gset::GSet;
pub use ideal::{fixed_ideal, quotient_algebra, saturate, Quotient};
