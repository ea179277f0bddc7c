use crate::error::{Error, Result};
use crate::field::Field;

use super::echelon::{Echelon, Insertion};
use super::sparse::{SparseMatrix, SparseVec};
use super::{kernel_basis, rank};

fn check_composes<F: Field>(field: &F, d_in: &SparseMatrix<F::Elem>, d_out: &SparseMatrix<F::Elem>) -> Result<()> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::ShapeMismatch(format!(
            "incoming differential lands in dimension {}, outgoing starts from {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let composite = d_out.mul(field, d_in)?;
    match composite.first_nonzero_column() {
        Some(witness) => Err(Error::CompositionNotZero { witness }),
        None => Ok(()),
    }
}

/// `dim ker(d_out) - rank(d_in)` for `C_{n+1} --d_in--> C_n --d_out--> C_{n-1}`.
pub fn homology_dim<F: Field>(
    field: &F,
    d_in: &SparseMatrix<F::Elem>,
    d_out: &SparseMatrix<F::Elem>,
) -> Result<usize> {
    check_composes(field, d_in, d_out)?;
    Ok(d_out.cols() - rank(field, d_out) - rank(field, d_in))
}

/// Homology at the middle of `C_{n+1} -> C_n -> C_{n-1}` with an explicit basis.
///
/// Representatives are kernel-basis vectors of `d_out` that are independent
/// modulo the image of `d_in`, taken in kernel-basis order, so the basis is
/// canonical for given matrices.
#[derive(Clone, Debug)]
pub struct HomologySpace<F: Field> {
    field: F,
    echelon: Echelon<F>,
    reps: Vec<SparseVec<F::Elem>>,
    boundary_rank: usize,
    cycle_dim: usize,
}

impl<F: Field> HomologySpace<F> {
    pub fn new(field: &F, d_in: &SparseMatrix<F::Elem>, d_out: &SparseMatrix<F::Elem>) -> Result<Self> {
        check_composes(field, d_in, d_out)?;
        let mut echelon = Echelon::new(field, d_out.cols());
        for c in d_in.columns() {
            if !c.is_zero() {
                echelon.insert(c.clone());
            }
        }
        let boundary_rank = echelon.rank();
        let cycles = kernel_basis(field, d_out);
        let mut reps = Vec::new();
        for z in cycles.basis.iter() {
            let track = SparseVec::unit(field, reps.len());
            if let Insertion::Pivot { .. } = echelon.insert_tracked(z.clone(), track) {
                reps.push(z.clone());
            }
        }
        Ok(Self { field: field.clone(), echelon, reps, boundary_rank, cycle_dim: cycles.dim() })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundary_rank
    }

    pub fn cycle_dim(&self) -> usize {
        self.cycle_dim
    }

    pub fn representatives(&self) -> &[SparseVec<F::Elem>] {
        &self.reps
    }

    /// Coordinates of the class of the cycle `w` in the representative basis,
    /// or `None` if `w` is not a cycle.
    pub fn class_of(&self, w: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let f = &self.field;
        let h = self.reps.len();
        let (residual, track) = self.echelon.reduce_tracked(w.clone(), SparseVec::unit(f, h));
        if !residual.is_zero() {
            return None;
        }
        let own = track.get(h).expect("coefficient of w never vanishes").clone();
        let scale = f.neg(&f.inv(&own).unwrap());
        let coords: Vec<_> = track.iter().filter(|(i, _)| *i < h).cloned().collect();
        let mut coords = SparseVec::from_sorted(coords);
        coords.scale(f, &scale);
        Some(coords)
    }
}

/// Matrix of an induced map on homology together with its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMap<E> {
    pub matrix: SparseMatrix<E>,
    pub rank: usize,
    pub is_isomorphism: bool,
}

/// Differentials around degree `n` of one complex: `d_out: C_n -> C_{n-1}`
/// and `d_in: C_{n+1} -> C_n`.
#[derive(Debug)]
pub struct DegreeWindow<'a, E> {
    pub d_out: &'a SparseMatrix<E>,
    pub d_in: &'a SparseMatrix<E>,
}

impl<E> Clone for DegreeWindow<'_, E> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<E> Copy for DegreeWindow<'_, E> {}

fn check_square<E: Clone + PartialEq>(
    degree: usize,
    left: Result<SparseMatrix<E>>,
    right: Result<SparseMatrix<E>>,
) -> Result<()> {
    match left?.first_difference(&right?) {
        Some(witness) => Err(Error::NotAChainMap { degree, witness }),
        None => Ok(()),
    }
}

/// Induced map on degree-`n` homology of a chain map `f` given by its
/// components `f_prev: C_{n-1} -> D_{n-1}`, `f_n`, `f_next: C_{n+1} -> D_{n+1}`.
///
/// Commutation with the differentials is checked exactly on both squares.
pub fn induced_map_on_homology<F: Field>(
    field: &F,
    degree: usize,
    f_prev: &SparseMatrix<F::Elem>,
    f_n: &SparseMatrix<F::Elem>,
    f_next: &SparseMatrix<F::Elem>,
    source: DegreeWindow<'_, F::Elem>,
    target: DegreeWindow<'_, F::Elem>,
) -> Result<InducedMap<F::Elem>> {
    check_square(degree, target.d_out.mul(field, f_n), f_prev.mul(field, source.d_out))?;
    check_square(degree + 1, target.d_in.mul(field, f_next), f_n.mul(field, source.d_in))?;
    let src = HomologySpace::new(field, source.d_in, source.d_out)?;
    let tgt = HomologySpace::new(field, target.d_in, target.d_out)?;
    induced_between(field, degree, &src, &tgt, f_n)
}

/// Induced map between already computed homology spaces. `f_n` must send
/// cycles to cycles and boundaries to boundaries.
pub fn induced_between<F: Field>(
    field: &F,
    degree: usize,
    src: &HomologySpace<F>,
    tgt: &HomologySpace<F>,
    f_n: &SparseMatrix<F::Elem>,
) -> Result<InducedMap<F::Elem>> {
    let mut columns = Vec::with_capacity(src.dim());
    for (k, z) in src.representatives().iter().enumerate() {
        let image = f_n.apply(field, z);
        let class = tgt
            .class_of(&image)
            .ok_or(Error::NotAChainMap { degree, witness: k })?;
        columns.push(class);
    }
    let matrix = SparseMatrix::from_columns(tgt.dim(), columns);
    let r = rank(field, &matrix);
    let is_isomorphism = src.dim() == tgt.dim() && r == src.dim();
    Ok(InducedMap { matrix, rank: r, is_isomorphism })
}
