use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{ChainComplex, ChainMap, SparseMatrix};

use super::module::{apply_b, apply_big_b, check_cyclic_identity, operator_matrix, CyclicModule};

/// A mixed complex known in degrees `0..=top`: `b_n: C_n -> C_{n-1}` for
/// `1 <= n <= top` and `B_n: C_n -> C_{n+1}` for `n < top`.
///
/// b-homology is exact for the untruncated complex in degrees `<= top - 1`.
#[derive(Clone, Debug)]
pub struct TruncatedMixedComplex<F: Field> {
    field: F,
    dims: Vec<usize>,
    b: Vec<SparseMatrix<F::Elem>>,
    big_b: Vec<SparseMatrix<F::Elem>>,
}

fn identity_error(identity: &str, degree: usize, witness: usize) -> Error {
    Error::IdentityFails { identity: identity.into(), degree, witness }
}

impl<F: Field> TruncatedMixedComplex<F> {
    /// `b[k]` is `b_{k+1}`; `big_b[k]` is `B_k`. Checks shapes and
    /// `b^2 = B^2 = bB + Bb = 0` in every degree where both sides exist.
    pub fn new(
        field: &F,
        dims: Vec<usize>,
        b: Vec<SparseMatrix<F::Elem>>,
        big_b: Vec<SparseMatrix<F::Elem>>,
    ) -> Result<Self> {
        if dims.is_empty() || b.len() + 1 != dims.len() || big_b.len() + 1 != dims.len() {
            return Err(Error::ShapeMismatch("mixed complex needs top differentials of each kind".into()));
        }
        let top = dims.len() - 1;
        let mut all_b = vec![SparseMatrix::zero(0, dims[0])];
        all_b.extend(b);
        for n in 1..=top {
            if all_b[n].rows() != dims[n - 1] || all_b[n].cols() != dims[n] {
                return Err(Error::ShapeMismatch(format!("b out of degree {n}")));
            }
        }
        for (n, m) in big_b.iter().enumerate() {
            if m.rows() != dims[n + 1] || m.cols() != dims[n] {
                return Err(Error::ShapeMismatch(format!("B out of degree {n}")));
            }
        }
        for n in 2..=top {
            if let Some(w) = all_b[n - 1].mul(field, &all_b[n])?.first_nonzero_column() {
                return Err(identity_error("b^2 = 0", n, w));
            }
        }
        for n in 0..top.saturating_sub(1) {
            if let Some(w) = big_b[n + 1].mul(field, &big_b[n])?.first_nonzero_column() {
                return Err(identity_error("B^2 = 0", n, w));
            }
        }
        for n in 0..top {
            let mut sum = all_b[n + 1].mul(field, &big_b[n])?;
            if n >= 1 {
                sum = sum.add(field, &big_b[n - 1].mul(field, &all_b[n])?)?;
            }
            if let Some(w) = sum.first_nonzero_column() {
                return Err(identity_error("bB + Bb = 0", n, w));
            }
        }
        Ok(Self { field: field.clone(), dims, b: all_b, big_b })
    }

    /// The zero complex in degrees `0..=top`.
    pub fn zero(field: &F, top: usize) -> Self {
        Self {
            field: field.clone(),
            dims: vec![0; top + 1],
            b: vec![SparseMatrix::zero(0, 0); top + 1],
            big_b: vec![SparseMatrix::zero(0, 0); top],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// Largest degree whose b-homology equals that of the untruncated complex.
    pub fn valid_degree(&self) -> usize {
        self.top().saturating_sub(1)
    }

    /// Whether degree-`n` b-homology is unaffected by the truncation.
    pub fn restrict_valid_window(&self, n: usize) -> bool {
        self.top() >= 1 && n <= self.valid_degree()
    }

    /// `b_n`; zero for `n = 0`.
    pub fn b(&self, n: usize) -> &SparseMatrix<F::Elem> {
        &self.b[n]
    }

    /// `B_n` for `n < top`.
    pub fn big_b(&self, n: usize) -> &SparseMatrix<F::Elem> {
        &self.big_b[n]
    }

    /// The underlying b-complex.
    pub fn hochschild(&self) -> ChainComplex<F> {
        ChainComplex::new(&self.field, self.dims.clone(), self.b[1..].to_vec())
            .expect("b^2 = 0 is checked on construction")
    }

    /// Truncates to degrees `0..=top`.
    pub fn truncate(&self, top: usize) -> Self {
        let top = top.min(self.top());
        Self {
            field: self.field.clone(),
            dims: self.dims[..=top].to_vec(),
            b: self.b[..=top].to_vec(),
            big_b: self.big_b[..top].to_vec(),
        }
    }
}

/// Builds `(C, b, B)` from a module satisfying `t^{n+1} = 1`, with
/// `b = Σ (-1)^i d_i` and `B = (1 - t) s N`.
pub fn mixed_from_cyclic<F: Field, M: CyclicModule<F> + ?Sized>(m: &M) -> Result<TruncatedMixedComplex<F>> {
    check_cyclic_identity(m)?;
    let top = m.top();
    let dims: Vec<usize> = (0..=top).map(|n| m.dim(n)).collect();
    let b = (1..=top).map(|n| operator_matrix(m, n, dims[n - 1], |e| apply_b(m, n, e))).collect();
    let big_b = (0..top).map(|n| operator_matrix(m, n, dims[n + 1], |e| apply_big_b(m, n, e))).collect();
    TruncatedMixedComplex::new(m.field(), dims, b, big_b)
}

/// Checks `f b = b f` and `f B = B f` wherever both sides are defined.
pub fn check_mixed_map<F: Field>(
    f: &ChainMap<F>,
    source: &TruncatedMixedComplex<F>,
    target: &TruncatedMixedComplex<F>,
) -> Result<()> {
    let field = source.field();
    let top = f.top().min(source.top()).min(target.top());
    for n in 0..=top {
        let m = f.component(n);
        if m.cols() != source.dim(n) || m.rows() != target.dim(n) {
            return Err(Error::ShapeMismatch(format!("chain map component {n}")));
        }
    }
    for n in 1..=top {
        let left = target.b(n).mul(field, f.component(n))?;
        let right = f.component(n - 1).mul(field, source.b(n))?;
        if let Some(witness) = left.first_difference(&right) {
            return Err(Error::NotAMixedMap { operator: "b", degree: n, witness });
        }
    }
    for n in 0..top {
        let left = target.big_b(n).mul(field, f.component(n))?;
        let right = f.component(n + 1).mul(field, source.big_b(n))?;
        if let Some(witness) = left.first_difference(&right) {
            return Err(Error::NotAMixedMap { operator: "B", degree: n, witness });
        }
    }
    Ok(())
}

/// Cone of `f: C -> C'`: degree `n` is `C'_n ⊕ C_{n-1}` with
/// `b = [[b', f], [0, -b]]` and `B = [[B', 0], [0, -B]]`.
pub fn mapping_cone<F: Field>(
    f: &ChainMap<F>,
    source: &TruncatedMixedComplex<F>,
    target: &TruncatedMixedComplex<F>,
) -> Result<TruncatedMixedComplex<F>> {
    check_mixed_map(f, source, target)?;
    let field = source.field();
    let top = target.top().min(source.top() + 1).min(f.top() + 1);
    let sdim = |n: usize| if n == 0 { 0 } else { source.dim(n - 1) };
    let dims: Vec<usize> = (0..=top).map(|n| target.dim(n) + sdim(n)).collect();
    let mut b = Vec::new();
    for n in 1..=top {
        let rows = [target.dim(n - 1), sdim(n - 1)];
        let cols = [target.dim(n), sdim(n)];
        let neg = source.b(n - 1).neg(field);
        let blocks = vec![(0, 0, target.b(n)), (0, 1, f.component(n - 1)), (1, 1, &neg)];
        b.push(SparseMatrix::from_blocks(&rows, &cols, blocks)?);
    }
    let mut big_b = Vec::new();
    for n in 0..top {
        let rows = [target.dim(n + 1), sdim(n + 1)];
        let cols = [target.dim(n), sdim(n)];
        let neg;
        let mut blocks = vec![(0, 0, target.big_b(n))];
        if n >= 1 {
            neg = source.big_b(n - 1).neg(field);
            blocks.push((1, 1, &neg));
        }
        big_b.push(SparseMatrix::from_blocks(&rows, &cols, blocks)?);
    }
    TruncatedMixedComplex::new(field, dims, b, big_b)
}
