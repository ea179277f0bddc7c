use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{SparseMatrix, SparseVec};

use super::fdalg::FinDimAlgebra;
use super::group::FiniteGroup;

/// A finite group acting on a finite-dimensional algebra by unital
/// automorphisms, `rho[g]` the matrix of `a -> g(a)`.
#[derive(Clone, Debug)]
pub struct GroupAction<F: Field> {
    group: FiniteGroup,
    rho: Vec<SparseMatrix<F::Elem>>,
}

impl<F: Field> GroupAction<F> {
    /// Checks shapes, `rho(e) = 1`, `rho(gh) = rho(g) rho(h)` and that every
    /// `rho(g)` is multiplicative and fixes the unit.
    pub fn new(group: FiniteGroup, algebra: &FinDimAlgebra<F>, rho: Vec<SparseMatrix<F::Elem>>) -> Result<Self> {
        let f = algebra.field();
        let d = algebra.dim();
        if rho.len() != group.order() {
            return Err(Error::BadAction(format!("{} matrices for {} elements", rho.len(), group.order())));
        }
        if let Some(g) = rho.iter().position(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::BadAction(format!("matrix of element {g} is not {d}x{d}")));
        }
        if rho[group.identity()] != SparseMatrix::identity(f, d) {
            return Err(Error::BadAction("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if rho[group.mul(g, h)] != rho[g].mul(f, &rho[h])? {
                    return Err(Error::BadAction(format!("rho({g}*{h}) != rho({g}) rho({h})")));
                }
            }
        }
        for (g, m) in rho.iter().enumerate() {
            if let Some((i, j)) = algebra.endomorphism_witness(m) {
                return Err(Error::BadAction(if i == usize::MAX {
                    format!("element {g} moves the unit")
                } else {
                    format!("element {g} is not multiplicative on basis pair ({i},{j})")
                }));
            }
        }
        Ok(Self { group, rho })
    }

    pub fn trivial(group: FiniteGroup, algebra: &FinDimAlgebra<F>) -> Self {
        let id = SparseMatrix::identity(algebra.field(), algebra.dim());
        Self { rho: vec![id; group.order()], group }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn matrix(&self, g: usize) -> &SparseMatrix<F::Elem> {
        &self.rho[g]
    }

    pub fn matrices(&self) -> &[SparseMatrix<F::Elem>] {
        &self.rho
    }

    pub fn apply(&self, field: &F, g: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.rho[g].apply(field, v)
    }
}
