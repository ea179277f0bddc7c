use crate::algebra::{FinDimAlgebra, GroupAction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{SparseMatrix, SparseVec};

use super::module::{CyclicModule, Op};

/// Largest supported tensor length `n + 1`.
pub const MAX_TENSOR_LENGTH: usize = 16;

type Terms<E> = Vec<(usize, E)>;

/// The paracyclic module `B♮_θ` on `B^{⊗(n+1)}`: interior faces multiply
/// neighbours left to right, the last face is `(θ(b_n) b_0, b_1, ..., b_{n-1})`,
/// degeneracies insert the unit and `τ(b_0, ..., b_n) = (θ(b_n), b_0, ..., b_{n-1})`.
/// With `θ = 1` this is the cyclic module of `B`.
///
/// Tensor `b_0 ⊗ ... ⊗ b_n` of basis elements has index `Σ b_i d^{n-i}`.
/// Operators are evaluated on basis tensors; nothing is stored per degree.
#[derive(Clone, Debug)]
pub struct TwistedCyclicModule<F: Field> {
    field: F,
    algebra: FinDimAlgebra<F>,
    twist: SparseMatrix<F::Elem>,
    twist_is_identity: bool,
    top: usize,
    d: usize,
    products: Vec<Terms<F::Elem>>,
    wrap_products: Vec<Terms<F::Elem>>,
    twist_cols: Vec<Terms<F::Elem>>,
    unit: Terms<F::Elem>,
}

impl<F: Field> TwistedCyclicModule<F> {
    /// `twist` must be a unital algebra automorphism of `algebra`.
    pub fn new(algebra: &FinDimAlgebra<F>, twist: SparseMatrix<F::Elem>, top: usize) -> Result<Self> {
        let f = algebra.field();
        let d = algebra.dim();
        if twist.rows() != d || twist.cols() != d {
            return Err(Error::ShapeMismatch(format!("twist must be {d}x{d}")));
        }
        if algebra.endomorphism_witness(&twist).is_some() {
            return Err(Error::BadAction("twist is not an algebra endomorphism".into()));
        }
        if top + 1 > MAX_TENSOR_LENGTH {
            return Err(Error::ResourceLimit { required: top + 1, limit: MAX_TENSOR_LENGTH });
        }
        let twist_is_identity = twist == SparseMatrix::identity(f, d);
        let mut products = Vec::with_capacity(d * d);
        let mut wrap_products = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                products.push(algebra.basis_product(i, j).entries().to_vec());
                let wrapped = algebra.mul(twist.column(i), &SparseVec::unit(f, j));
                wrap_products.push(wrapped.into_entries());
            }
        }
        let twist_cols = twist.columns().iter().map(|c| c.entries().to_vec()).collect();
        Ok(Self {
            field: f.clone(),
            algebra: algebra.clone(),
            unit: algebra.unit().entries().to_vec(),
            twist,
            twist_is_identity,
            top,
            d,
            products,
            wrap_products,
            twist_cols,
        })
    }

    /// The cyclic module of `algebra`.
    pub fn untwisted(algebra: &FinDimAlgebra<F>, top: usize) -> Result<Self> {
        Self::new(algebra, SparseMatrix::identity(algebra.field(), algebra.dim()), top)
    }

    /// `A♮_g`: the twist is the action of `g^{-1}`.
    pub fn from_action(algebra: &FinDimAlgebra<F>, action: &GroupAction<F>, g: usize, top: usize) -> Result<Self> {
        let g_inv = action.group().inv(g);
        Self::new(algebra, action.matrix(g_inv).clone(), top)
    }

    pub fn algebra(&self) -> &FinDimAlgebra<F> {
        &self.algebra
    }

    pub fn twist(&self) -> &SparseMatrix<F::Elem> {
        &self.twist
    }

    pub fn base_dim(&self) -> usize {
        self.d
    }

    fn pow(&self, k: usize) -> usize {
        self.d.pow(k as u32)
    }

    /// `Σ` of `op` on the basis tensor `x` of degree `n`, scaled by `coef`,
    /// pushed onto `out`.
    fn push_basis(&self, op: Op, n: usize, x: usize, coef: &F::Elem, out: &mut Terms<F::Elem>) {
        let f = &self.field;
        let d = self.d;
        let scale = |c: &F::Elem| if f.is_one(c) { coef.clone() } else { f.mul(coef, c) };
        match op {
            Op::Face(i) if i < n => {
                let hi = self.pow(n - i + 1);
                let mid = self.pow(n - i - 1);
                let prefix = x / hi;
                let a = (x / (mid * d)) % d;
                let b = (x / mid) % d;
                let suffix = x % mid;
                for (k, c) in &self.products[a * d + b] {
                    out.push(((prefix * d + k) * mid + suffix, scale(c)));
                }
            }
            Op::Face(_) => {
                // i == n: wrap around through the twist
                let last = x % d;
                let first = x / self.pow(n);
                let middle = (x / d) % self.pow(n - 1);
                let shift = self.pow(n - 1);
                for (k, c) in &self.wrap_products[last * d + first] {
                    out.push((k * shift + middle, scale(c)));
                }
            }
            Op::Degeneracy(i) => {
                let low_size = self.pow(n - i);
                let high = x / low_size;
                let low = x % low_size;
                for (k, c) in &self.unit {
                    out.push(((high * d + k) * low_size + low, scale(c)));
                }
            }
            Op::Extra => {
                let shift = self.pow(n + 1);
                for (k, c) in &self.unit {
                    out.push((k * shift + x, scale(c)));
                }
            }
            Op::Cycle => {
                let last = x % d;
                let rest = x / d;
                let shift = self.pow(n);
                for (l, c) in &self.twist_cols[last] {
                    out.push((l * shift + rest, scale(c)));
                }
            }
            Op::Twist => {
                if self.twist_is_identity {
                    out.push((x, coef.clone()));
                    return;
                }
                let mut terms: Terms<F::Elem> = vec![(0, coef.clone())];
                for pos in (0..=n).rev() {
                    let digit = (x / self.pow(pos)) % d;
                    let mut next = Vec::new();
                    for (idx, c) in &terms {
                        for (l, e) in &self.twist_cols[digit] {
                            next.push((idx * d + l, f.mul(c, e)));
                        }
                    }
                    terms = next;
                }
                out.extend(terms);
            }
        }
    }
}

impl<F: Field> CyclicModule<F> for TwistedCyclicModule<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn top(&self) -> usize {
        self.top
    }

    fn dim(&self, n: usize) -> usize {
        self.pow(n + 1)
    }

    fn apply(&self, op: Op, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut out = Vec::new();
        for (x, c) in v.iter() {
            self.push_basis(op, n, *x, c, &mut out);
        }
        SparseVec::from_pairs(&self.field, out)
    }

    fn twist_is_identity(&self) -> bool {
        self.twist_is_identity
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_function_algebra, GSet};
    use crate::cyclic::module::{check_paracyclic_identities, check_simplicial_identities, check_torsor_identity};
    use crate::field::Rationals;

    #[test]
    fn ground_field_operators() {
        let q = Rationals;
        let (k, _) = build_function_algebra(&q, &GSet::trivial(crate::algebra::FiniteGroup::trivial(), 1)).unwrap();
        let m = TwistedCyclicModule::untwisted(&k, 3).unwrap();
        let e = SparseVec::unit(&q, 0);
        for n in 1..=3 {
            assert_eq!(m.dim(n), 1);
            for i in 0..=n {
                assert_eq!(m.apply(Op::Face(i), n, &e), e);
            }
            assert_eq!(m.apply(Op::Cycle, n, &e), e);
        }
    }

    #[test]
    fn degree_zero_rotation_is_the_inverse_action() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::rotation(2)).unwrap();
        let m = TwistedCyclicModule::from_action(&a, &act, 1, 2).unwrap();
        assert_eq!(m.apply(Op::Cycle, 0, &SparseVec::unit(&q, 0)), SparseVec::unit(&q, 1));
        // τ_1^2 = g^{-1} ⊗ g^{-1}: e_0 ⊗ e_1 -> e_1 ⊗ e_0
        let x = SparseVec::unit(&q, 1);
        let twice = m.apply(Op::Cycle, 1, &m.apply(Op::Cycle, 1, &x));
        assert_eq!(twice, SparseVec::unit(&q, 2));
        assert_eq!(m.apply(Op::Twist, 1, &x), twice);
        check_simplicial_identities(&m).unwrap();
        check_paracyclic_identities(&m).unwrap();
        check_torsor_identity(&m).unwrap();
    }

    #[test]
    fn face_index_arithmetic() {
        let q = Rationals;
        let (a, _) = build_function_algebra(&q, &GSet::trivial(crate::algebra::FiniteGroup::trivial(), 3)).unwrap();
        let m = TwistedCyclicModule::untwisted(&a, 3).unwrap();
        // e_2 ⊗ e_1 ⊗ e_1: d_0 kills it, d_1 gives e_2 ⊗ e_1, d_2 kills it
        let x = SparseVec::unit(&q, 2 * 9 + 3 + 1);
        assert!(m.apply(Op::Face(0), 2, &x).is_zero());
        assert_eq!(m.apply(Op::Face(1), 2, &x), SparseVec::unit(&q, 2 * 3 + 1));
        assert!(m.apply(Op::Face(2), 2, &x).is_zero());
        let y = SparseVec::unit(&q, 9 + 3 * 2 + 1);
        assert_eq!(m.apply(Op::Face(2), 2, &y), SparseVec::unit(&q, 3 + 2));
    }
}
