use crate::error::{Error, Result};
use crate::field::Field;

use super::homology::{induced_between, HomologySpace, InducedMap};
use super::sparse::SparseMatrix;
use super::{homology_dim, rank};

/// A bounded chain complex `C_top -> ... -> C_1 -> C_0`.
///
/// `differential(n)` maps `C_n -> C_{n-1}`; `differential(0)` is the zero
/// map to the zero space. Homology in the top degree is that of the
/// truncated complex (no incoming differential), so only degrees
/// `< top` are truncation-exact.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    field: F,
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix<F::Elem>>,
}

impl<F: Field> ChainComplex<F> {
    /// `diffs[k]` is the differential out of degree `k + 1`. Checks shapes and
    /// `d^2 = 0`.
    pub fn new(field: &F, dims: Vec<usize>, diffs: Vec<SparseMatrix<F::Elem>>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::ShapeMismatch("need one differential per positive degree".into()));
        }
        let mut all = vec![SparseMatrix::zero(0, dims[0])];
        all.extend(diffs);
        for (n, d) in all.iter().enumerate().skip(1) {
            if d.cols() != dims[n] || d.rows() != dims[n - 1] {
                return Err(Error::ShapeMismatch(format!("differential out of degree {n}")));
            }
        }
        for n in 2..all.len() {
            if let Some(witness) = all[n - 1].mul(field, &all[n])?.first_nonzero_column() {
                return Err(Error::IdentityFails { identity: "d^2 = 0".into(), degree: n, witness });
            }
        }
        Ok(Self { field: field.clone(), dims, diffs: all })
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

    pub fn differential(&self, n: usize) -> SparseMatrix<F::Elem> {
        match self.diffs.get(n) {
            Some(d) => d.clone(),
            None => SparseMatrix::zero(self.dim(n - 1), self.dim(n)),
        }
    }

    fn diff_ref(&self, n: usize) -> Option<&SparseMatrix<F::Elem>> {
        self.diffs.get(n)
    }

    /// Homology dimension in degree `n <= top`.
    pub fn homology_dim(&self, n: usize) -> usize {
        let d_out = self.differential(n);
        let d_in = self.differential(n + 1);
        homology_dim(&self.field, &d_in, &d_out).expect("d^2 = 0 is checked on construction")
    }

    pub fn homology_space(&self, n: usize) -> HomologySpace<F> {
        HomologySpace::new(&self.field, &self.differential(n + 1), &self.differential(n))
            .expect("d^2 = 0 is checked on construction")
    }

    /// Ranks of the differentials out of every degree (index 0 is 0).
    pub fn ranks(&self) -> Vec<usize> {
        self.diffs.iter().map(|d| rank(&self.field, d)).collect()
    }

    /// Homology dimensions in degrees `0..=top`, computed from one rank per
    /// differential.
    pub fn homology_dims(&self) -> Vec<usize> {
        let mut ranks = self.ranks();
        ranks.push(0);
        (0..=self.top()).map(|n| self.dims[n] - ranks[n] - ranks[n + 1]).collect()
    }

    pub fn differentials(&self) -> impl Iterator<Item = (usize, &SparseMatrix<F::Elem>)> {
        self.diffs.iter().enumerate().skip(1)
    }

    pub(crate) fn has_differential(&self, n: usize) -> bool {
        self.diff_ref(n).is_some()
    }
}

/// Degreewise linear map between complexes: `maps[n]: C_n -> D_n`.
#[derive(Clone, Debug)]
pub struct ChainMap<F: Field> {
    pub maps: Vec<SparseMatrix<F::Elem>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(maps: Vec<SparseMatrix<F::Elem>>) -> Self {
        Self { maps }
    }

    pub fn identity(field: &F, dims: &[usize]) -> Self {
        Self { maps: dims.iter().map(|&d| SparseMatrix::identity(field, d)).collect() }
    }

    pub fn top(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn component(&self, n: usize) -> &SparseMatrix<F::Elem> {
        &self.maps[n]
    }

    /// Checks `d_D f_n = f_{n-1} d_C` in every degree both sides define.
    pub fn check(&self, field: &F, source: &ChainComplex<F>, target: &ChainComplex<F>) -> Result<()> {
        for n in 1..self.maps.len() {
            if !(source.has_differential(n) && target.has_differential(n)) {
                continue;
            }
            let left = target.differential(n).mul(field, &self.maps[n])?;
            let right = self.maps[n - 1].mul(field, &source.differential(n))?;
            if let Some(witness) = left.first_difference(&right) {
                return Err(Error::NotAChainMap { degree: n, witness });
            }
        }
        Ok(())
    }

    /// Induced map on degree-`n` homology; requires the chain-map property.
    pub fn induced(
        &self,
        field: &F,
        n: usize,
        source: &ChainComplex<F>,
        target: &ChainComplex<F>,
    ) -> Result<InducedMap<F::Elem>> {
        let src = source.homology_space(n);
        let tgt = target.homology_space(n);
        induced_between(field, n, &src, &tgt, &self.maps[n])
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, field: &F, other: &Self) -> Result<Self> {
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(f, g)| g.mul(field, f))
            .collect::<Result<_>>()?;
        Ok(Self { maps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn rejects_nonzero_square() {
        let q = Rationals;
        let one = SparseMatrix::identity(&q, 1);
        let err = ChainComplex::new(&q, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, Error::IdentityFails { degree: 2, .. }));
    }

    #[test]
    fn homology_of_a_short_complex() {
        let q = Rationals;
        // C_1 = k^2 --(1 1)--> C_0 = k
        let d1 = SparseMatrix::from_i64(&q, &[vec![1, 1]]);
        let c = ChainComplex::new(&q, vec![1, 2], vec![d1]).unwrap();
        assert_eq!(c.homology_dims(), vec![0, 1]);
        assert_eq!(c.homology_dim(1), 1);
    }
}
