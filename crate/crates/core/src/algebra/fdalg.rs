use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, SparseMatrix, SparseVec};

/// A finite-dimensional associative unital algebra given by structure
/// constants: `products[i * dim + j] = e_i e_j`.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra<F: Field> {
    field: F,
    dim: usize,
    products: Vec<SparseVec<F::Elem>>,
    unit: SparseVec<F::Elem>,
}

impl<F: Field> FinDimAlgebra<F> {
    /// Checks associativity on all basis triples and that `unit` is a two-sided
    /// identity. The zero algebra (`dim = 0`) is allowed.
    pub fn new(
        field: &F,
        dim: usize,
        products: Vec<SparseVec<F::Elem>>,
        unit: SparseVec<F::Elem>,
    ) -> Result<Self> {
        if products.len() != dim * dim {
            return Err(Error::ShapeMismatch(format!(
                "{} basis products for an algebra of dimension {dim}",
                products.len()
            )));
        }
        let in_range = |v: &SparseVec<F::Elem>| v.max_index().is_none_or(|m| m < dim);
        if !products.iter().all(in_range) || !in_range(&unit) {
            return Err(Error::ShapeMismatch("structure constant index out of range".into()));
        }
        let alg = Self { field: field.clone(), dim, products, unit };
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    /// From sparse structure constants `(i, j, k, c)`: `e_i e_j += c e_k`.
    pub fn from_structure_constants(
        field: &F,
        dim: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
        unit: SparseVec<F::Elem>,
    ) -> Result<Self> {
        let mut pairs: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::ShapeMismatch(format!("constant ({i},{j},{k}) out of range")));
            }
            pairs[i * dim + j].push((k, c));
        }
        let products = pairs.into_iter().map(|p| SparseVec::from_pairs(field, p)).collect();
        Self::new(field, dim, products, unit)
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul_by_basis_right(ij, k);
                    let right = self.mul_by_basis_left(i, self.basis_product(j, k));
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = SparseVec::unit(&self.field, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::NotUnital(i));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.dim == 0
    }

    pub fn unit(&self) -> &SparseVec<F::Elem> {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.products[i * self.dim + j]
    }

    fn mul_by_basis_right(&self, a: &SparseVec<F::Elem>, j: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Vec::new();
        for (i, x) in a.iter() {
            acc.extend(self.basis_product(*i, j).iter().map(|(k, c)| (*k, f.mul(x, c))));
        }
        SparseVec::from_pairs(f, acc)
    }

    fn mul_by_basis_left(&self, i: usize, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Vec::new();
        for (j, y) in b.iter() {
            acc.extend(self.basis_product(i, *j).iter().map(|(k, c)| (*k, f.mul(y, c))));
        }
        SparseVec::from_pairs(f, acc)
    }

    pub fn mul(&self, a: &SparseVec<F::Elem>, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Vec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let xy = f.mul(x, y);
                acc.extend(self.basis_product(*i, *j).iter().map(|(k, c)| (*k, f.mul(&xy, c))));
            }
        }
        SparseVec::from_pairs(f, acc)
    }

    /// First basis pair `(i, j)` with `e_i e_j != e_j e_i`.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .find(|&(i, j)| self.basis_product(i, j) != self.basis_product(j, i))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    pub fn check_commutative(&self) -> Result<()> {
        match self.commutativity_witness() {
            Some((i, j)) => Err(Error::NotCommutative(i, j)),
            None => Ok(()),
        }
    }

    /// Matrix of `x -> a x`.
    pub fn left_multiplication(&self, a: &SparseVec<F::Elem>) -> SparseMatrix<F::Elem> {
        let cols = (0..self.dim).map(|j| self.mul(a, &SparseVec::unit(&self.field, j))).collect();
        SparseMatrix::from_columns(self.dim, cols)
    }

    /// Gram matrix of the trace form `(a, b) -> Tr(L_{ab})`.
    pub fn trace_form(&self) -> SparseMatrix<F::Elem> {
        let f = &self.field;
        let traces: Vec<F::Elem> = (0..self.dim)
            .map(|k| {
                (0..self.dim).fold(f.zero(), |acc, l| match self.basis_product(k, l).get(l) {
                    Some(c) => f.add(&acc, c),
                    None => acc,
                })
            })
            .collect();
        let cols = (0..self.dim)
            .map(|j| {
                let entries = (0..self.dim)
                    .map(|i| {
                        let t = self
                            .basis_product(i, j)
                            .iter()
                            .fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &traces[*k])));
                        (i, t)
                    })
                    .collect();
                SparseVec::from_pairs(f, entries)
            })
            .collect();
        SparseMatrix::from_columns(self.dim, cols)
    }

    /// Whether the trace form is nondegenerate. For a commutative algebra
    /// this says it is a product of separable field extensions, i.e. the
    /// coordinate ring of a smooth zero-dimensional scheme.
    pub fn is_separable(&self) -> bool {
        rank(&self.field, &self.trace_form()) == self.dim
    }

    /// Checks that `m` is an algebra endomorphism: unit to unit and
    /// multiplicative on basis pairs. Returns the first failing pair.
    pub fn endomorphism_witness(&self, m: &SparseMatrix<F::Elem>) -> Option<(usize, usize)> {
        let f = &self.field;
        if m.apply(f, &self.unit) != self.unit {
            return Some((usize::MAX, usize::MAX));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = m.apply(f, self.basis_product(i, j));
                let rhs = self.mul(m.column(i), m.column(j));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Checks that `m: self -> target` is a unital algebra map.
    pub fn is_homomorphism_to(&self, target: &Self, m: &SparseMatrix<F::Elem>) -> bool {
        let f = &self.field;
        if m.cols() != self.dim || m.rows() != target.dim || m.apply(f, &self.unit) != target.unit {
            return false;
        }
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                m.apply(f, self.basis_product(i, j)) == target.mul(m.column(i), m.column(j))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn rejects_non_associative() {
        let q = Rationals;
        // e0 unit, e1 e1 = e2, e2 e1 = e2, e1 e2 = 0: (e1 e1) e1 != e1 (e1 e1)
        let mut consts = vec![(1, 1, 2, q.one()), (2, 1, 2, q.one())];
        for i in 0..3 {
            consts.push((0, i, i, q.one()));
            if i > 0 {
                consts.push((i, 0, i, q.one()));
            }
        }
        let a = FinDimAlgebra::from_structure_constants(&q, 3, consts, SparseVec::unit(&q, 0));
        assert!(matches!(a, Err(Error::NotAssociative(1, 1, 1))));
        // k x k with the wrong unit
        let consts = vec![(0, 0, 0, q.one()), (1, 1, 1, q.one())];
        let a = FinDimAlgebra::from_structure_constants(&q, 2, consts, SparseVec::unit(&q, 0));
        assert!(matches!(a, Err(Error::NotUnital(1))));
    }

    #[test]
    fn zero_algebra() {
        let q = Rationals;
        let a = FinDimAlgebra::new(&q, 0, vec![], SparseVec::new()).unwrap();
        assert!(a.is_zero_algebra());
        assert!(a.is_separable());
    }
}
