use crate::field::Field;

use super::sparse::SparseVec;

const NO_PIVOT: usize = usize::MAX;

/// Result of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insertion<E> {
    /// The vector was independent and became pivot row `row`.
    Pivot { row: usize, position: usize },
    /// The vector was dependent; carries the reduced tracking vector.
    Dependent { track: SparseVec<E> },
}

/// Incrementally built echelon basis of a subspace of `F^dim`.
///
/// Each stored row has its leading entry at a distinct pivot position; the
/// pivot of a vector is its first nonzero coordinate. Rows may carry a
/// tracking vector that is transformed alongside them, which is how kernels
/// and coordinates are recovered.
///
/// Over the rationals rows are kept as primitive integer vectors and every
/// reduction step is fraction-free (cross-multiplication followed by content
/// removal). Over a prime field rows are normalized to leading coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    pivot_row: Vec<usize>,
    rows: Vec<SparseVec<F::Elem>>,
    tracks: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        Self {
            field: field.clone(),
            dim,
            pivot_row: vec![NO_PIVOT; dim],
            rows: Vec::new(),
            tracks: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec<F::Elem>> {
        self.rows
    }

    pub fn pivot_positions(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().unwrap().0).collect()
    }

    fn scale_pair(&self, v: &mut SparseVec<F::Elem>, t: &mut SparseVec<F::Elem>, s: &F::Elem) {
        v.scale(&self.field, s);
        t.scale(&self.field, s);
    }

    /// Reduces leading entries of `v` against stored rows until `v` is zero
    /// or its leading position is free. `track` undergoes the same row
    /// operations.
    pub fn reduce_tracked(
        &self,
        mut v: SparseVec<F::Elem>,
        mut track: SparseVec<F::Elem>,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        if let Some(s) = (!v.is_zero()).then(|| f.pivot_scale(v.entries())).flatten() {
            self.scale_pair(&mut v, &mut track, &s);
        }
        while let Some((pos, lead)) = v.leading() {
            let r = self.pivot_row[*pos];
            if r == NO_PIVOT {
                break;
            }
            let row = &self.rows[r];
            let (alpha, beta) = f.cancel(lead, &row.leading().unwrap().1);
            let minus_beta = f.neg(&beta);
            v = v.combine(f, &alpha, row, &minus_beta);
            let row_track = &self.tracks[r];
            if !(track.is_zero() && row_track.is_zero()) {
                track = track.combine(f, &alpha, row_track, &minus_beta);
            }
            if !v.is_zero() {
                if let Some(s) = f.content_scale(v.entries()) {
                    self.scale_pair(&mut v, &mut track, &s);
                }
            }
        }
        (v, track)
    }

    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_tracked(v, SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        matches!(self.insert_tracked(v, SparseVec::new()), Insertion::Pivot { .. })
    }

    pub fn insert_tracked(
        &mut self,
        v: SparseVec<F::Elem>,
        track: SparseVec<F::Elem>,
    ) -> Insertion<F::Elem> {
        let (mut v, mut track) = self.reduce_tracked(v, track);
        if v.is_zero() {
            return Insertion::Dependent { track };
        }
        if let Some(s) = self.field.pivot_scale(v.entries()) {
            self.scale_pair(&mut v, &mut track, &s);
        }
        let position = v.leading().unwrap().0;
        let row = self.rows.len();
        self.pivot_row[position] = row;
        self.rows.push(v);
        self.tracks.push(track);
        Insertion::Pivot { row, position }
    }

    /// Exact residue of `v` modulo the span: every coordinate at a pivot
    /// position is eliminated (using field division, not fraction-free).
    pub fn residue(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut v = v.clone();
        let mut cursor = 0;
        loop {
            let next = v.entries().iter().find(|(i, _)| *i >= cursor && self.pivot_row[*i] != NO_PIVOT);
            let Some((pos, x)) = next else { break };
            let (pos, x) = (*pos, x.clone());
            let row = &self.rows[self.pivot_row[pos]];
            let c = f.div(&x, &row.leading().unwrap().1).expect("pivot is nonzero");
            v = v.combine(f, &f.one(), row, &f.neg(&c));
            cursor = pos + 1;
        }
        v
    }

    /// Converts to reduced row echelon form.
    pub fn into_rref(self) -> Rref<F> {
        let f = self.field.clone();
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].leading().unwrap().0));
        let mut reduced: Vec<Option<SparseVec<F::Elem>>> = vec![None; self.rows.len()];
        for &r in &order {
            let mut v = self.rows[r].clone();
            let inv = f.inv(&v.leading().unwrap().1).unwrap();
            v.scale(&f, &inv);
            loop {
                let hit = v.entries().iter().skip(1).find_map(|(i, x)| {
                    let pr = self.pivot_row[*i];
                    (pr != NO_PIVOT).then(|| (pr, x.clone()))
                });
                let Some((pr, x)) = hit else { break };
                let other = reduced[pr].as_ref().expect("higher pivots are reduced first");
                v = v.combine(&f, &f.one(), other, &f.neg(&x));
            }
            reduced[r] = Some(v);
        }
        let mut rows: Vec<SparseVec<F::Elem>> = reduced.into_iter().map(Option::unwrap).collect();
        rows.sort_by_key(|r| r.leading().unwrap().0);
        let pivots = rows.iter().map(|r| r.leading().unwrap().0).collect();
        Rref { field: f, dim: self.dim, rows, pivots }
    }
}

/// Reduced row echelon basis: each row has leading coefficient 1 at its pivot
/// and zeros at every other pivot. Rows are sorted by pivot.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn from_vectors(field: &F, dim: usize, vectors: impl IntoIterator<Item = SparseVec<F::Elem>>) -> Self {
        let mut e = Echelon::new(field, dim);
        for v in vectors {
            e.insert(v);
        }
        e.into_rref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `w` in the row basis, or `None` if `w` is not in the span.
    pub fn coordinates(&self, w: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let f = &self.field;
        let coords: Vec<(usize, F::Elem)> = self
            .pivots
            .iter()
            .enumerate()
            .filter_map(|(k, p)| w.get(*p).map(|x| (k, x.clone())))
            .collect();
        let mut residual = w.clone();
        for (k, c) in &coords {
            residual = residual.combine(f, &f.one(), &self.rows[*k], &f.neg(c));
        }
        residual.is_zero().then(|| SparseVec::from_sorted(coords))
    }

    /// The vector with the given coordinates.
    pub fn combination(&self, coords: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut out = SparseVec::new();
        for (k, c) in coords.iter() {
            out = out.combine(f, &f.one(), &self.rows[*k], c);
        }
        out
    }
}
