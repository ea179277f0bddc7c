//! Exact sparse linear algebra over the rationals and prime fields.

mod complex;
mod echelon;
mod homology;
mod sparse;

pub use complex::{ChainComplex, ChainMap};
pub use echelon::{Echelon, Insertion, Rref};
pub use homology::{
    homology_dim, induced_between, induced_map_on_homology, DegreeWindow, HomologySpace, InducedMap,
};
pub use sparse::{SparseMatrix, SparseVec};

pub(crate) use sparse::offsets;

use crate::field::Field;

/// A subspace of `F^ambient_dim` given by a linearly independent basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<E> {
    pub ambient_dim: usize,
    pub basis: Vec<SparseVec<E>>,
}

impl<E: Clone> Subspace<E> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: (0..ambient_dim).map(|i| SparseVec::unit(field, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.basis.len()
    }

    /// Spans arbitrary vectors, keeping an independent subset (echelon rows).
    pub fn span<F: Field<Elem = E>>(field: &F, ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec<E>>) -> Self {
        let mut e = Echelon::new(field, ambient_dim);
        for v in vectors {
            e.insert(v);
        }
        Self { ambient_dim, basis: e.into_rows() }
    }

    pub fn echelon<F: Field<Elem = E>>(&self, field: &F) -> Echelon<F> {
        let mut e = Echelon::new(field, self.ambient_dim);
        for v in &self.basis {
            e.insert(v.clone());
        }
        e
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> bool {
        self.echelon(field).contains(v)
    }

    /// Equality as subspaces.
    pub fn same_as<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        if self.ambient_dim != other.ambient_dim || self.dim() != other.dim() {
            return false;
        }
        let e = self.echelon(field);
        other.basis.iter().all(|v| e.contains(v))
    }

    /// Image under a linear map.
    pub fn map<F: Field<Elem = E>>(&self, field: &F, m: &SparseMatrix<E>) -> Self {
        Self::span(field, m.rows(), self.basis.iter().map(|v| m.apply(field, v)))
    }
}

/// Exact rank by sparse elimination (fraction-free over the rationals).
pub fn rank<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    let mut e = Echelon::new(field, m.rows());
    for c in m.columns() {
        if !c.is_zero() {
            e.insert(c.clone());
        }
    }
    e.rank()
}

/// Basis of `{v : M v = 0}`; its dimension is `cols - rank(M)`.
pub fn kernel_basis<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F::Elem> {
    let mut e = Echelon::new(field, m.rows());
    let mut basis = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        match e.insert_tracked(c.clone(), SparseVec::unit(field, j)) {
            Insertion::Pivot { .. } => {}
            Insertion::Dependent { mut track } => {
                if let Some(s) = field.pivot_scale(track.entries()) {
                    track.scale(field, &s);
                }
                basis.push(track);
            }
        }
    }
    Subspace { ambient_dim: m.cols(), basis }
}

/// Echelon basis of the column space.
pub fn image_basis<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F::Elem> {
    Subspace::span(field, m.rows(), m.columns().iter().filter(|c| !c.is_zero()).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        let q = Rationals;
        assert_eq!(rank(&q, &SparseMatrix::zero(0, 0)), 0);
        assert_eq!(rank(&q, &SparseMatrix::identity(&q, 2)), 2);
        assert_eq!(rank(&q, &SparseMatrix::from_i64(&q, &[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        assert_eq!(kernel_basis(&q, &SparseMatrix::identity(&q, 3)).dim(), 0);
        assert_eq!(kernel_basis(&q, &SparseMatrix::zero(3, 3)).dim(), 3);
        let k = kernel_basis(&q, &SparseMatrix::from_i64(&q, &[vec![1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis[0], SparseVec::from_dense(&q, &[q.one(), q.from_i64(-1)]));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -3i64..4], c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(rows in small_matrix()) {
            let q = Rationals;
            let m = SparseMatrix::from_i64(&q, &rows);
            prop_assert_eq!(rank(&q, &m), rank(&q, &m.transpose()));
        }

        #[test]
        fn rank_nullity(rows in small_matrix()) {
            let q = Rationals;
            let m = SparseMatrix::from_i64(&q, &rows);
            let k = kernel_basis(&q, &m);
            prop_assert_eq!(k.dim() + rank(&q, &m), m.cols());
            for v in &k.basis {
                prop_assert!(m.apply(&q, v).is_zero());
            }
        }

        #[test]
        fn prime_field_agrees_on_small_integers(rows in small_matrix()) {
            let q = Rationals;
            let f = PrimeField::new(1_000_000_007).unwrap();
            prop_assert_eq!(
                rank(&q, &SparseMatrix::from_i64(&q, &rows)),
                rank(&f, &SparseMatrix::from_i64(&f, &rows))
            );
        }
    }
}
