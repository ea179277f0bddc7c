use crate::error::{Error, Result};
use crate::field::Field;

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E: Clone> SparseVec<E> {
    pub fn new() -> Self {
        Self { entries: Vec::new() }
    }

    /// Wraps entries that are already sorted, distinct and nonzero.
    pub fn from_sorted(entries: Vec<(usize, E)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Self { entries }
    }

    /// Builds a canonical vector from arbitrary `(index, value)` pairs,
    /// summing repeated indices and dropping zeros.
    pub fn from_pairs<F: Field<Elem = E>>(field: &F, mut pairs: Vec<(usize, E)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, E)> = Vec::with_capacity(pairs.len());
        for (i, x) in pairs {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y = field.add(y, &x),
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !field.is_zero(x));
        Self { entries }
    }

    pub fn unit<F: Field<Elem = E>>(field: &F, i: usize) -> Self {
        Self { entries: vec![(i, field.one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, E)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, E)> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<&(usize, E)> {
        self.entries.first()
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale<F: Field<Elem = E>>(&mut self, field: &F, s: &E) {
        if field.is_one(s) {
            return;
        }
        for (_, x) in &mut self.entries {
            *x = field.mul(x, s);
        }
        self.entries.retain(|(_, x)| !field.is_zero(x));
    }

    pub fn scaled<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        let mut v = self.clone();
        v.scale(field, s);
        v
    }

    /// `alpha * self + beta * other`.
    pub fn combine<F: Field<Elem = E>>(&self, field: &F, alpha: &E, other: &Self, beta: &E) -> Self {
        let (a_one, b_one) = (field.is_one(alpha), field.is_one(beta));
        let scale_a = |x: &E| if a_one { x.clone() } else { field.mul(alpha, x) };
        let scale_b = |x: &E| if b_one { x.clone() } else { field.mul(beta, x) };
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push((a[i].0, scale_a(&a[i].1)));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, scale_b(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = field.add(&scale_a(&a[i].1), &scale_b(&b[j].1));
                    if !field.is_zero(&s) {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().map(|(k, x)| (*k, scale_a(x))));
        out.extend(b[j..].iter().map(|(k, x)| (*k, scale_b(x))));
        out.retain(|(_, x)| !field.is_zero(x));
        Self { entries: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.combine(field, &field.one(), other, &field.one())
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.combine(field, &field.one(), other, &field.from_i64(-1))
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F, dim: usize) -> Vec<E> {
        let mut out = vec![field.zero(); dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, dense: &[E]) -> Self {
        Self {
            entries: dense
                .iter()
                .enumerate()
                .filter(|(_, x)| !field.is_zero(x))
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Applies `f` to indices; `f` must be strictly increasing on the support.
    pub fn reindexed(&self, f: impl Fn(usize) -> usize) -> Self {
        Self { entries: self.entries.iter().map(|(i, x)| (f(*i), x.clone())).collect() }
    }

    /// Kronecker product `self ⊗ other` with `self` as the major index.
    pub fn tensor<F: Field<Elem = E>>(&self, field: &F, other: &Self, other_dim: usize) -> Self {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * other_dim + j, field.mul(x, y)));
            }
        }
        Self { entries }
    }
}

/// Column-major sparse matrix over an exact field.
///
/// Columns are canonical [`SparseVec`]s, so structural equality is equality
/// of linear maps and iteration order is deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Self { rows: n, cols: n, columns: (0..n).map(|i| SparseVec::unit(field, i)).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec<E>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        Self { rows, cols: columns.len(), columns }
    }

    /// Builds a canonical matrix from triplets, summing duplicates.
    pub fn from_triplets<F: Field<Elem = E>>(
        field: &F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Result<Self> {
        let mut per_col: Vec<Vec<(usize, E)>> = vec![Vec::new(); cols];
        for (i, j, x) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({i},{j}) outside a {rows}x{cols} matrix"
                )));
            }
            per_col[j].push((i, x));
        }
        let columns = per_col.into_iter().map(|c| SparseVec::from_pairs(field, c)).collect();
        Ok(Self { rows, cols, columns })
    }

    /// Row-major dense input.
    pub fn from_dense<F: Field<Elem = E>>(field: &F, rows: &[Vec<E>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged dense matrix".into()));
        }
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| (i, j, x.clone())));
        Self::from_triplets(field, rows.len(), cols, triplets)
    }

    pub fn from_i64<F: Field<Elem = E>>(field: &F, rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<E>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_dense(field, &dense).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec<E> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVec<E>> {
        self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        self.columns[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut terms = Vec::new();
        for (k, x) in v.iter() {
            for (i, y) in self.columns[*k].iter() {
                terms.push((*i, field.mul(y, x)));
            }
        }
        SparseVec::from_pairs(field, terms)
    }

    /// The product `self * rhs`.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let columns = rhs.columns.iter().map(|c| self.apply(field, c)).collect();
        Ok(Self { rows: self.rows, cols: rhs.cols, columns })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let columns =
            self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(field, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, columns })
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let columns =
            self.columns.iter().zip(&other.columns).map(|(a, b)| a.sub(field, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, columns })
    }

    pub fn scaled<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        let columns = self.columns.iter().map(|c| c.scaled(field, s)).collect();
        Self { rows: self.rows, cols: self.cols, columns }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        self.scaled(field, &field.from_i64(-1))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.iter() {
                cols[*i].push((j, x.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            columns: cols.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(field, self.rows);
        for _ in 0..k {
            acc = self.mul(field, &acc)?;
        }
        Ok(acc)
    }

    /// First column on which `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize>
    where
        E: PartialEq,
    {
        if self.rows != other.rows || self.cols != other.cols {
            return Some(0);
        }
        self.columns.iter().zip(&other.columns).position(|(a, b)| a != b)
    }

    /// First nonzero column.
    pub fn first_nonzero_column(&self) -> Option<usize> {
        self.columns.iter().position(|c| !c.is_zero())
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.iter() {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    /// Assembles a block matrix. `blocks` lists `(block_row, block_col, matrix)`;
    /// missing blocks are zero. Block shapes must match `row_sizes`/`col_sizes`.
    pub fn from_blocks(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: Vec<(usize, usize, &Self)>,
    ) -> Result<Self> {
        let row_off: Vec<usize> = offsets(row_sizes);
        let col_off: Vec<usize> = offsets(col_sizes);
        let rows = *row_off.last().unwrap();
        let cols = *col_off.last().unwrap();
        let mut per_col: Vec<Vec<(usize, E)>> = vec![Vec::new(); cols];
        for (bi, bj, m) in blocks {
            if m.rows != row_sizes[bi] || m.cols != col_sizes[bj] {
                return Err(Error::ShapeMismatch(format!(
                    "block ({bi},{bj}) is {}x{}, expected {}x{}",
                    m.rows, m.cols, row_sizes[bi], col_sizes[bj]
                )));
            }
            for (j, c) in m.columns.iter().enumerate() {
                per_col[col_off[bj] + j]
                    .extend(c.iter().map(|(i, x)| (row_off[bi] + i, x.clone())));
            }
        }
        let columns = per_col
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                debug_assert!(c.windows(2).all(|w| w[0].0 < w[1].0), "overlapping blocks");
                SparseVec::from_sorted(c)
            })
            .collect();
        Ok(Self { rows, cols, columns })
    }

    /// Submatrix on the given (sorted) column indices.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self {
            rows: self.rows,
            cols: cols.len(),
            columns: cols.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }
}

pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    out.push(0);
    for s in sizes {
        acc += s;
        out.push(acc);
    }
    out
}
