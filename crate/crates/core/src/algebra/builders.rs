use crate::error::Result;
use crate::field::Field;
use crate::linalg::{SparseMatrix, SparseVec};

use super::action::GroupAction;
use super::fdalg::FinDimAlgebra;
use super::group::FiniteGroup;
use super::gset::GSet;

fn all_ones<F: Field>(field: &F, n: usize) -> SparseVec<F::Elem> {
    SparseVec::from_sorted((0..n).map(|i| (i, field.one())).collect())
}

/// Functions on a finite `G`-set with pointwise product; `g` acts by
/// `(g·f)(x) = f(g^{-1} x)`, so `rho(g) e_y = e_{g y}`.
pub fn build_function_algebra<F: Field>(
    field: &F,
    set: &GSet,
) -> Result<(FinDimAlgebra<F>, GroupAction<F>)> {
    let group = set.group();
    field.spec().check_group_order(group.order())?;
    let n = set.size();
    let constants = (0..n).map(|i| (i, i, i, field.one()));
    let algebra = FinDimAlgebra::from_structure_constants(field, n, constants, all_ones(field, n))?;
    let rho = group
        .elements()
        .map(|g| {
            let cols = (0..n).map(|y| SparseVec::unit(field, set.act(g, y))).collect();
            SparseMatrix::from_columns(n, cols)
        })
        .collect();
    let action = GroupAction::new(group.clone(), &algebra, rho)?;
    Ok((algebra, action))
}

/// The group algebra `k[G]` with basis the group elements.
pub fn build_group_algebra<F: Field>(field: &F, group: &FiniteGroup) -> FinDimAlgebra<F> {
    let n = group.order();
    let constants = group
        .elements()
        .flat_map(|g| group.elements().map(move |h| (g, h, group.mul(g, h), field.one())));
    FinDimAlgebra::from_structure_constants(field, n, constants, SparseVec::unit(field, group.identity()))
        .expect("group algebras are associative and unital")
}

/// `M_n(k)` with basis `e_{ij}` at index `i * n + j`.
pub fn build_matrix_algebra<F: Field>(field: &F, n: usize) -> FinDimAlgebra<F> {
    assert!(n >= 1, "matrix algebra of size 0");
    let mut constants = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                constants.push((i * n + j, j * n + l, i * n + l, field.one()));
            }
        }
    }
    let unit = SparseVec::from_sorted((0..n).map(|i| (i * n + i, field.one())).collect());
    FinDimAlgebra::from_structure_constants(field, n * n, constants, unit)
        .expect("matrix algebras are associative and unital")
}

/// `k[x]/(x^m)` with basis `1, x, ..., x^{m-1}`.
pub fn build_truncated_polynomial<F: Field>(field: &F, m: usize) -> FinDimAlgebra<F> {
    assert!(m >= 1, "k[x]/(x^0) is the zero ring; build it as a quotient");
    let constants = (0..m).flat_map(|i| (0..m - i).map(move |j| (i, j, i + j, field.one())));
    FinDimAlgebra::from_structure_constants(field, m, constants, SparseVec::unit(field, 0))
        .expect("truncated polynomial rings are associative and unital")
}

/// `A ⋊ G` on the basis `e_i·g` at index `g * dim(A) + i`, with
/// `(a·g)(b·h) = (a g(b))·gh`.
#[derive(Clone, Debug)]
pub struct CrossedProduct<F: Field> {
    pub algebra: FinDimAlgebra<F>,
    /// `A -> A ⋊ G`, `a -> a·e`.
    pub embed_algebra: SparseMatrix<F::Elem>,
    /// `k[G] -> A ⋊ G`, `g -> 1·g`.
    pub embed_group: SparseMatrix<F::Elem>,
    base_dim: usize,
}

impl<F: Field> CrossedProduct<F> {
    pub fn index(&self, i: usize, g: usize) -> usize {
        g * self.base_dim + i
    }

    /// `(i, g)` for a basis index.
    pub fn decode(&self, idx: usize) -> (usize, usize) {
        (idx % self.base_dim, idx / self.base_dim)
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }
}

pub fn build_crossed_product<F: Field>(
    algebra: &FinDimAlgebra<F>,
    action: &GroupAction<F>,
) -> Result<CrossedProduct<F>> {
    let f = algebra.field();
    let group = action.group();
    f.spec().check_group_order(group.order())?;
    let d = algebra.dim();
    let n = group.order();
    let dim = d * n;
    let mut products = Vec::with_capacity(dim * dim);
    for g in 0..n {
        for i in 0..d {
            let ei = SparseVec::unit(f, i);
            for h in 0..n {
                let gh = group.mul(g, h);
                for j in 0..d {
                    let moved = action.matrix(g).column(j);
                    let prod = algebra.mul(&ei, moved);
                    products.push(prod.reindexed(|k| gh * d + k));
                }
            }
        }
    }
    let unit = algebra.unit().reindexed(|k| group.identity() * d + k);
    let cross = FinDimAlgebra::new(f, dim, products, unit)?;
    let embed_algebra = SparseMatrix::from_columns(
        dim,
        (0..d).map(|i| SparseVec::unit(f, group.identity() * d + i)).collect(),
    );
    let embed_group = SparseMatrix::from_columns(
        dim,
        (0..n).map(|g| algebra.unit().reindexed(|k| g * d + k)).collect(),
    );
    Ok(CrossedProduct { algebra: cross, embed_algebra, embed_group, base_dim: d })
}

/// Conjugation by an invertible matrix `p` on `M_n(k)`, as a matrix on the
/// `e_{ij}` basis: `X -> p X p^{-1}`.
pub fn conjugation_matrix<F: Field>(
    field: &F,
    p: &[Vec<F::Elem>],
    p_inv: &[Vec<F::Elem>],
) -> SparseMatrix<F::Elem> {
    let n = p.len();
    let mut triplets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // p e_{ij} p^{-1} = sum_{a,b} p[a][i] p_inv[j][b] e_{ab}
            for a in 0..n {
                for b in 0..n {
                    let c = field.mul(&p[a][i], &p_inv[j][b]);
                    if !field.is_zero(&c) {
                        triplets.push((a * n + b, i * n + j, c));
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(field, n * n, n * n, triplets).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn function_algebra_examples() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::trivial(FiniteGroup::cyclic(2), 1)).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(act.matrix(1), &SparseMatrix::identity(&q, 1));
        let (a, act) = build_function_algebra(&q, &GSet::rotation(2)).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(act.matrix(1), &SparseMatrix::from_i64(&q, &[vec![0, 1], vec![1, 0]]));
        let (a, _) = build_function_algebra(&q, &GSet::left_regular(FiniteGroup::symmetric(3))).unwrap();
        assert_eq!(a.dim(), 6);
        assert!(a.is_commutative() && a.is_separable());
    }

    #[test]
    fn function_algebra_needs_invertible_order() {
        let f2 = PrimeField::new(2).unwrap();
        assert!(build_function_algebra(&f2, &GSet::rotation(2)).is_err());
        let f3 = PrimeField::new(3).unwrap();
        assert!(build_function_algebra(&f3, &GSet::rotation(2)).is_ok());
    }

    #[test]
    fn group_algebra_of_z2_splits() {
        let q = Rationals;
        let a = build_group_algebra(&q, &FiniteGroup::cyclic(2));
        assert_eq!(a.dim(), 2);
        let g = SparseVec::unit(&q, 1);
        assert_eq!(a.mul(&g, &g), SparseVec::unit(&q, 0));
        let half = q.parse("1/2").unwrap();
        let minus_half = q.neg(&half);
        let plus = SparseVec::from_sorted(vec![(0, half.clone()), (1, half.clone())]);
        let minus = SparseVec::from_sorted(vec![(0, half.clone()), (1, minus_half)]);
        assert_eq!(a.mul(&plus, &plus), plus);
        assert_eq!(a.mul(&minus, &minus), minus);
        assert!(a.mul(&plus, &minus).is_zero());
        assert_eq!(plus.add(&q, &minus), a.unit().clone());
        assert_eq!(build_group_algebra(&q, &FiniteGroup::trivial()).dim(), 1);
    }

    #[test]
    fn matrix_units() {
        let q = Rationals;
        let m = build_matrix_algebra(&q, 2);
        assert_eq!(m.dim(), 4);
        // e12 e21 = e11
        assert_eq!(m.basis_product(1, 2), &SparseVec::unit(&q, 0));
        assert!(m.basis_product(2, 2).is_zero());
        assert!(!m.is_commutative());
        assert_eq!(build_matrix_algebra(&q, 1).dim(), 1);
    }

    #[test]
    fn crossed_products() {
        let q = Rationals;
        let (a, _) = build_function_algebra(&q, &GSet::trivial(FiniteGroup::trivial(), 3)).unwrap();
        let act = GroupAction::trivial(FiniteGroup::trivial(), &a);
        let c = build_crossed_product(&a, &act).unwrap();
        assert_eq!(c.algebra.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.algebra.basis_product(i, j), a.basis_product(i, j));
            }
        }
        let (a, act) = build_function_algebra(&q, &GSet::rotation(2)).unwrap();
        let c = build_crossed_product(&a, &act).unwrap();
        assert_eq!(c.algebra.dim(), 4);
        assert!(a.is_homomorphism_to(&c.algebra, &c.embed_algebra));
        let kg = build_group_algebra(&q, act.group());
        assert!(kg.is_homomorphism_to(&c.algebra, &c.embed_group));
        // (e_0 g)(e_0 g) = e_0 g(e_0) = e_0 e_1 = 0
        let e0g = c.index(0, 1);
        assert!(c.algebra.basis_product(e0g, e0g).is_zero());
        assert_eq!(c.decode(e0g), (0, 1));
    }

    #[test]
    fn trivial_action_gives_tensor_product() {
        let q = Rationals;
        let a = build_truncated_polynomial(&q, 2);
        let g = FiniteGroup::cyclic(3);
        let c = build_crossed_product(&a, &GroupAction::trivial(g.clone(), &a)).unwrap();
        for (x, gx) in [(0, 1), (1, 2)] {
            for (y, hy) in [(1, 1), (1, 0)] {
                let expected = a.basis_product(x, y).reindexed(|k| g.mul(gx, hy) * 2 + k);
                assert_eq!(c.algebra.basis_product(c.index(x, gx), c.index(y, hy)), &expected);
            }
        }
    }

    #[test]
    fn conjugation_is_an_automorphism() {
        let q = Rationals;
        let m = build_matrix_algebra(&q, 2);
        let d = vec![vec![q.one(), q.zero()], vec![q.zero(), q.from_i64(-1)]];
        let c = conjugation_matrix(&q, &d, &d);
        let act = GroupAction::new(FiniteGroup::cyclic(2), &m, vec![SparseMatrix::identity(&q, 4), c]);
        assert!(act.is_ok());
        let bad = SparseMatrix::from_i64(&q, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
        // transpose is an anti-automorphism
        let act = GroupAction::new(FiniteGroup::cyclic(2), &m, vec![SparseMatrix::identity(&q, 4), bad]);
        assert!(act.is_err());
    }
}
