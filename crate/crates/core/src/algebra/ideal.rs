use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, SparseMatrix, SparseVec, Subspace};

use super::action::GroupAction;
use super::fdalg::FinDimAlgebra;

/// Closes a subspace under left and right multiplication by basis elements.
pub fn saturate<F: Field>(algebra: &FinDimAlgebra<F>, generators: Vec<SparseVec<F::Elem>>) -> Subspace<F::Elem> {
    let f = algebra.field();
    let d = algebra.dim();
    let mut ech = Echelon::new(f, d);
    let mut queue: Vec<SparseVec<F::Elem>> = Vec::new();
    for v in generators {
        if ech.insert(v.clone()) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for i in 0..d {
            let e = SparseVec::unit(f, i);
            for w in [algebra.mul(&e, &v), algebra.mul(&v, &e)] {
                if !w.is_zero() && ech.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
    }
    Subspace { ambient_dim: d, basis: ech.into_rows() }
}

/// The ideal generated by `a - g(a)`: span of `(e_a - g(e_a)) e_b`, saturated.
pub fn fixed_ideal<F: Field>(
    algebra: &FinDimAlgebra<F>,
    action: &GroupAction<F>,
    g: usize,
) -> Result<Subspace<F::Elem>> {
    algebra.check_commutative()?;
    let f = algebra.field();
    let d = algebra.dim();
    let rho = action.matrix(g);
    let mut gens = Vec::new();
    for a in 0..d {
        let diff = SparseVec::unit(f, a).sub(f, rho.column(a));
        if diff.is_zero() {
            continue;
        }
        for b in 0..d {
            gens.push(algebra.mul(&diff, &SparseVec::unit(f, b)));
        }
    }
    Ok(saturate(algebra, gens))
}

/// `A/J` presented on the complement of the pivot positions of `J`.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub algebra: FinDimAlgebra<F>,
    /// `A -> A/J`.
    pub projection: SparseMatrix<F::Elem>,
    /// Linear section `A/J -> A` sending the `k`-th basis vector to `e_{complement[k]}`.
    pub section: SparseMatrix<F::Elem>,
    pub ideal: Subspace<F::Elem>,
}

/// Quotient by a two-sided ideal. Fails with `NotAnIdeal(i)` if multiplying
/// the ideal by `e_i` on either side leaves it.
pub fn quotient_algebra<F: Field>(algebra: &FinDimAlgebra<F>, ideal: &Subspace<F::Elem>) -> Result<Quotient<F>> {
    let f = algebra.field();
    let d = algebra.dim();
    if ideal.ambient_dim != d {
        return Err(Error::ShapeMismatch("ideal lives in a different space".into()));
    }
    let ech = ideal.echelon(f);
    for v in &ideal.basis {
        for i in 0..d {
            let e = SparseVec::unit(f, i);
            if !ech.contains(&algebra.mul(&e, v)) || !ech.contains(&algebra.mul(v, &e)) {
                return Err(Error::NotAnIdeal(i));
            }
        }
    }
    let pivots: std::collections::BTreeSet<usize> = ech.pivot_positions().into_iter().collect();
    let complement: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
    let mut slot = vec![usize::MAX; d];
    for (k, &c) in complement.iter().enumerate() {
        slot[c] = k;
    }
    let q = complement.len();
    let project = |v: &SparseVec<F::Elem>| ech.residue(v).reindexed(|i| slot[i]);
    let projection =
        SparseMatrix::from_columns(q, (0..d).map(|i| project(&SparseVec::unit(f, i))).collect());
    let section = SparseMatrix::from_columns(d, complement.iter().map(|&c| SparseVec::unit(f, c)).collect());
    let mut products = Vec::with_capacity(q * q);
    for &a in &complement {
        for &b in &complement {
            products.push(project(algebra.basis_product(a, b)));
        }
    }
    let quotient = FinDimAlgebra::new(f, q, products, project(algebra.unit()))?;
    Ok(Quotient { algebra: quotient, projection, section, ideal: ideal.clone() })
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The map `A/J -> A/J'` induced by `m: A -> A`; requires `m(J) ⊂ J'`.
    pub fn induced_map(&self, m: &SparseMatrix<F::Elem>, target: &Self) -> Result<SparseMatrix<F::Elem>> {
        let f = self.algebra.field();
        let ech = target.ideal.echelon(f);
        if let Some(k) = self.ideal.basis.iter().position(|v| !ech.contains(&m.apply(f, v))) {
            return Err(Error::BadAction(format!("map does not carry ideal basis vector {k} into the target ideal")));
        }
        target.projection.mul(f, &m.mul(f, &self.section)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_function_algebra, build_matrix_algebra, FiniteGroup, GSet};
    use crate::field::Rationals;

    #[test]
    fn identity_gives_zero_ideal() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::natural(3)).unwrap();
        assert_eq!(fixed_ideal(&a, &act, 0).unwrap().dim(), 0);
    }

    #[test]
    fn free_swap_kills_everything() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::rotation(2)).unwrap();
        let j = fixed_ideal(&a, &act, 1).unwrap();
        assert_eq!(j.dim(), 2);
        let quot = quotient_algebra(&a, &j).unwrap();
        assert!(quot.algebra.is_zero_algebra());
    }

    #[test]
    fn transposition_fixes_one_point() {
        let q = Rationals;
        let set = GSet::natural(3);
        let (a, act) = build_function_algebra(&q, &set).unwrap();
        let g = (0..6).find(|&g| set.permutation(g) == [1, 0, 2]).unwrap();
        let j = fixed_ideal(&a, &act, g).unwrap();
        assert_eq!(j.codim(), 1);
        let quot = quotient_algebra(&a, &j).unwrap();
        assert_eq!(quot.dim(), 1);
        assert!(a.is_homomorphism_to(&quot.algebra, &quot.projection));
        assert_eq!(quot.projection.apply(&q, &SparseVec::unit(&q, 2)), SparseVec::unit(&q, 0));
        assert!(quot.projection.apply(&q, &SparseVec::unit(&q, 0)).is_zero());
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let q = Rationals;
        let a = build_matrix_algebra(&q, 2);
        let quot = quotient_algebra(&a, &Subspace::zero(4)).unwrap();
        assert_eq!(quot.projection, SparseMatrix::identity(&q, 4));
    }

    #[test]
    fn rejects_one_sided_ideals() {
        let q = Rationals;
        let a = build_matrix_algebra(&q, 2);
        // first column span{e11, e21} is a left ideal only
        let left = Subspace::span(&q, 4, vec![SparseVec::unit(&q, 0), SparseVec::unit(&q, 2)]);
        assert!(matches!(quotient_algebra(&a, &left), Err(Error::NotAnIdeal(_))));
        assert!(matches!(
            fixed_ideal(&a, &GroupAction::trivial(FiniteGroup::cyclic(2), &a), 1),
            Err(Error::NotCommutative(..))
        ));
    }
}
