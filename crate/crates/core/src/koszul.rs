//! Graded Koszul complexes `Λ^p(V*) ⊗ Sym^q(V*)` of a linear section
//! `s'(v) = v − Mv`, with differential given by contraction with `s'`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, ChainComplex, SparseMatrix, SparseVec};

/// Default bound on the multiplicative order of `M`.
pub const DEFAULT_ORDER_BOUND: usize = 24;

/// Smallest `k <= bound` with `M^k = 1`.
pub fn multiplicative_order<F: Field>(field: &F, m: &SparseMatrix<F::Elem>, bound: usize) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("matrix is not square".into()));
    }
    let id = SparseMatrix::identity(field, m.rows());
    let mut power = m.clone();
    for k in 1..=bound {
        if power == id {
            return Ok(k);
        }
        power = power.mul(field, m)?;
    }
    Err(Error::NotFiniteOrder { bound })
}

/// `M ⊕ M'` on `V ⊕ V'`.
pub fn block_sum<E: Clone>(a: &SparseMatrix<E>, b: &SparseMatrix<E>) -> Result<SparseMatrix<E>> {
    SparseMatrix::from_blocks(&[a.rows(), b.rows()], &[a.cols(), b.cols()], vec![(0, 0, a), (1, 1, b)])
}

/// Exponent vectors of degree `q` in `m` variables, lexicographically
/// decreasing.
fn monomials(m: usize, q: usize) -> Vec<Vec<u32>> {
    fn go(m: usize, q: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == m {
            prefix.push(q as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=q).rev() {
            prefix.push(e as u32);
            go(m, q - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if q == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(m, q, &mut Vec::new(), &mut out);
    out
}

/// Increasing `p`-subsets of `0..m` in lexicographic order.
fn subsets(m: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, p: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == p {
            out.push(prefix.clone());
            return;
        }
        for i in start..m {
            prefix.push(i);
            go(i + 1, m, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, p, &mut Vec::new(), &mut out);
    out
}

fn index_of<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> HashMap<K, usize> {
    keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
}

/// `V = k^m` with an endomorphism `M` of finite order; the section is
/// `s'(v) = v − Mv`, so contraction of `x_i` gives `ℓ_i = Σ_j (1 − M)_{ij} x_j`.
#[derive(Clone, Debug)]
pub struct LinearKoszulData<F: Field> {
    field: F,
    dim: usize,
    matrix: SparseMatrix<F::Elem>,
    order: usize,
    /// `forms[i]` = coefficients of `ℓ_i` on `x_0..x_{m-1}`.
    forms: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> LinearKoszulData<F> {
    pub fn new(field: &F, matrix: SparseMatrix<F::Elem>) -> Result<Self> {
        Self::with_order_bound(field, matrix, DEFAULT_ORDER_BOUND)
    }

    pub fn with_order_bound(field: &F, matrix: SparseMatrix<F::Elem>, bound: usize) -> Result<Self> {
        let order = multiplicative_order(field, &matrix, bound)?;
        let dim = matrix.rows();
        let section = SparseMatrix::identity(field, dim).sub(field, &matrix)?;
        let rows = section.transpose();
        let forms = (0..dim).map(|i| rows.column(i).clone()).collect();
        Ok(Self { field: field.clone(), dim, matrix, order, forms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &SparseMatrix<F::Elem> {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `V^H = 0` for `H = <M>`, i.e. `1 − M` invertible.
    pub fn fixed_space_is_zero(&self) -> bool {
        let section = SparseMatrix::identity(&self.field, self.dim).sub(&self.field, &self.matrix).unwrap();
        rank(&self.field, &section) == self.dim
    }

    /// Total degree `d` piece: chain degree `p` is `Λ^p ⊗ Sym^{d−p}` for
    /// `0 <= p <= min(d, m)`.
    pub fn degree_piece(&self, d: usize) -> ChainComplex<F> {
        let f = &self.field;
        let m = self.dim;
        let top = d.min(m);
        let exts: Vec<Vec<Vec<usize>>> = (0..=top).map(|p| subsets(m, p)).collect();
        let mons: Vec<Vec<Vec<u32>>> = (0..=top).map(|p| monomials(m, d - p)).collect();
        let dims: Vec<usize> = (0..=top).map(|p| exts[p].len() * mons[p].len()).collect();
        let mut diffs = Vec::with_capacity(top);
        for p in 1..=top {
            let ext_index = index_of(&exts[p - 1]);
            let mon_index = index_of(&mons[p - 1]);
            let width = mons[p - 1].len();
            let mut cols = Vec::with_capacity(dims[p]);
            for s in &exts[p] {
                for mono in &mons[p] {
                    let mut entries = Vec::new();
                    for (k, &i) in s.iter().enumerate() {
                        let mut rest = s.clone();
                        rest.remove(k);
                        let row = ext_index[&rest] * width;
                        let sign = if k % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                        for (j, c) in self.forms[i].iter() {
                            let mut raised = mono.clone();
                            raised[*j] += 1;
                            entries.push((row + mon_index[&raised], f.mul(&sign, c)));
                        }
                    }
                    cols.push(SparseVec::from_pairs(f, entries));
                }
            }
            diffs.push(SparseMatrix::from_columns(dims[p - 1], cols));
        }
        ChainComplex::new(f, dims, diffs).expect("contraction squares to zero")
    }
}

/// Builds the total degree `d` piece for `M` on `k^m`.
pub fn build_koszul_degree<F: Field>(field: &F, matrix: &SparseMatrix<F::Elem>, d: usize) -> Result<ChainComplex<F>> {
    Ok(LinearKoszulData::new(field, matrix.clone())?.degree_piece(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub dim: usize,
    pub order: usize,
    pub max_degree: usize,
    /// `homology[d][p]` for total degree `d` and exterior degree `p`.
    pub homology: Vec<Vec<usize>>,
    /// First positive total degree with nonzero homology.
    pub first_failure: Option<usize>,
}

impl KoszulReport {
    /// All positive total degrees are exact, so the complex is
    /// quasi-isomorphic to `k` in degree 0.
    pub fn quasi_iso_to_k(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn total(&self, d: usize) -> usize {
        self.homology[d].iter().sum()
    }
}

pub fn koszul_exactness_report<F: Field>(data: &LinearKoszulData<F>, max_degree: usize) -> KoszulReport {
    let homology: Vec<Vec<usize>> = (0..=max_degree).map(|d| data.degree_piece(d).homology_dims()).collect();
    let first_failure = (1..=max_degree).find(|&d| homology[d].iter().any(|&h| h > 0));
    KoszulReport { dim: data.dim, order: data.order, max_degree, homology, first_failure }
}

/// Graded convolution of two homology tables `[d][p]`, truncated at the
/// smaller maximal degree.
pub fn convolve(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let top = a.len().min(b.len());
    (0..top)
        .map(|d| {
            let width = (0..=d).map(|d1| a[d1].len() + b[d - d1].len() - 1).max().unwrap_or(1);
            let mut out = vec![0; width];
            for d1 in 0..=d {
                for (p1, x) in a[d1].iter().enumerate() {
                    for (p2, y) in b[d - d1].iter().enumerate() {
                        out[p1 + p2] += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn q(rows: &[Vec<i64>]) -> SparseMatrix<num_rational::BigRational> {
        SparseMatrix::from_i64(&Rationals, rows)
    }

    #[test]
    fn enumerations() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn degree_zero_is_k() {
        let c = build_koszul_degree(&Rationals, &q(&[vec![-1]]), 0).unwrap();
        assert_eq!(c.dims(), &[1]);
        assert_eq!(c.homology_dims(), vec![1]);
    }

    #[test]
    fn sign_flip_in_degree_one() {
        let c = build_koszul_degree(&Rationals, &q(&[vec![-1]]), 1).unwrap();
        assert_eq!(c.differential(1), q(&[vec![2]]));
        assert_eq!(c.homology_dims(), vec![0, 0]);
    }

    #[test]
    fn identity_has_zero_differential() {
        let data = LinearKoszulData::new(&Rationals, q(&[vec![1, 0], vec![0, 1]])).unwrap();
        let c = data.degree_piece(1);
        assert!(c.differential(1).is_zero());
        let r = koszul_exactness_report(&data, 3);
        assert_eq!(r.first_failure, Some(1));
        assert_eq!(r.total(1), 4);
    }

    #[test]
    fn rotations() {
        let three = LinearKoszulData::new(&Rationals, q(&[vec![0, -1], vec![1, -1]])).unwrap();
        assert_eq!(three.order(), 3);
        assert!(koszul_exactness_report(&three, 4).quasi_iso_to_k());
        let four = LinearKoszulData::new(&Rationals, q(&[vec![0, -1], vec![1, 0]])).unwrap();
        assert_eq!(four.order(), 4);
        assert!(four.fixed_space_is_zero());
    }

    #[test]
    fn infinite_order_is_rejected() {
        let shear = q(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(
            LinearKoszulData::new(&Rationals, shear).unwrap_err(),
            Error::NotFiniteOrder { bound: DEFAULT_ORDER_BOUND }
        );
    }

    #[test]
    fn convolution_of_points() {
        // H of k in degree 0 only is the unit for convolution
        let unit = vec![vec![1], vec![0, 0], vec![0, 0, 0]];
        let x = vec![vec![1], vec![1, 1], vec![1, 2, 1]];
        assert_eq!(convolve(&unit, &x), x);
    }
}
