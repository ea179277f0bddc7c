//! Homology with coefficients `W`: Hochschild, cyclic, periodic and negative
//! theories of a truncated mixed complex, and the `S`-`B`-`I` sequence.

use std::fmt;

use crate::cyclic::TruncatedMixedComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{induced_between, rank, ChainComplex, HomologySpace, InducedMap, SparseMatrix, SparseVec};

/// Default `u`-adic depth for the negative and periodic theories.
pub const DEFAULT_DEPTH: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WKind {
    Hochschild,
    Cyclic,
    Periodic,
    Negative,
}

impl WKind {
    pub const ALL: [WKind; 4] = [WKind::Hochschild, WKind::Cyclic, WKind::Periodic, WKind::Negative];

    pub fn label(self) -> &'static str {
        match self {
            WKind::Hochschild => "HH",
            WKind::Cyclic => "HC",
            WKind::Periodic => "HP",
            WKind::Negative => "HN",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.label() == s)
    }
}

impl fmt::Display for WKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A coefficient module `W`. For the negative and periodic theories the
/// power series in `u` are cut at `u^depth`: `k[u]/u^depth` and
/// `k[u, u^{-1}]/u^depth k[u]`. Column `j` of the total complex carries
/// `u^j`; the columns used are
///
/// | kind       | columns        |
/// |------------|----------------|
/// | Hochschild | `{0}`          |
/// | Cyclic     | `j <= 0`       |
/// | Negative   | `0 <= j < depth` |
/// | Periodic   | `j < depth`    |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WCoefficient {
    pub kind: WKind,
    pub depth: usize,
}

impl WCoefficient {
    pub fn new(kind: WKind) -> Self {
        Self { kind, depth: DEFAULT_DEPTH }
    }

    pub fn with_depth(kind: WKind, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::ShapeMismatch("u-adic depth must be positive".into()));
        }
        Ok(Self { kind, depth })
    }

    fn max_column(&self) -> i64 {
        match self.kind {
            WKind::Hochschild | WKind::Cyclic => 0,
            WKind::Negative | WKind::Periodic => self.depth as i64 - 1,
        }
    }

    fn has_column(&self, j: i64) -> bool {
        match self.kind {
            WKind::Hochschild => j == 0,
            WKind::Cyclic => j <= 0,
            WKind::Negative => (0..self.depth as i64).contains(&j),
            WKind::Periodic => j < self.depth as i64,
        }
    }
}

/// `T_m = ⊕_j C_{m+2j}` over the columns of `W`, with differential `b + uB`.
#[derive(Clone, Debug)]
pub struct TotalComplex<F: Field> {
    coefficient: WCoefficient,
    min_degree: i64,
    max_degree: i64,
    components: Vec<Vec<(i64, usize)>>,
    complex: ChainComplex<F>,
}

/// Builds the total complex in every degree whose components all exist in
/// the truncation; `(b + uB)^2 = 0` is checked.
pub fn total_complex<F: Field>(c: &TruncatedMixedComplex<F>, w: WCoefficient) -> Result<TotalComplex<F>> {
    let f = c.field();
    let top = c.top() as i64;
    let jmax = w.max_column();
    let max_degree = top - 2 * jmax;
    let min_degree = -2 * jmax;
    let components: Vec<Vec<(i64, usize)>> = (min_degree..=max_degree)
        .map(|m| {
            let lo = (-m).div_euclid(2) + if (-m).rem_euclid(2) == 0 { 0 } else { 1 };
            (lo..=jmax).rev().filter(|&j| w.has_column(j)).map(|j| (j, (m + 2 * j) as usize)).collect()
        })
        .collect();
    let dims: Vec<usize> = components.iter().map(|cs| cs.iter().map(|&(_, n)| c.dim(n)).sum()).collect();
    let mut diffs = Vec::new();
    for idx in 1..components.len() {
        let src = &components[idx];
        let tgt = &components[idx - 1];
        let rows: Vec<usize> = tgt.iter().map(|&(_, n)| c.dim(n)).collect();
        let cols: Vec<usize> = src.iter().map(|&(_, n)| c.dim(n)).collect();
        let mut blocks = Vec::new();
        for (bj, &(j, n)) in src.iter().enumerate() {
            if n >= 1 {
                if let Some(bi) = tgt.iter().position(|&t| t == (j, n - 1)) {
                    blocks.push((bi, bj, c.b(n)));
                }
            }
            if let Some(bi) = tgt.iter().position(|&t| t == (j + 1, n + 1)) {
                blocks.push((bi, bj, c.big_b(n)));
            }
        }
        diffs.push(SparseMatrix::from_blocks(&rows, &cols, blocks)?);
    }
    let complex = ChainComplex::new(f, dims, diffs).map_err(|e| match e {
        Error::IdentityFails { degree, witness, .. } => Error::IdentityFails {
            identity: "(b + uB)^2 = 0".into(),
            degree,
            witness,
        },
        other => other,
    })?;
    Ok(TotalComplex { coefficient: w, min_degree, max_degree, components, complex })
}

impl<F: Field> TotalComplex<F> {
    pub fn coefficient(&self) -> WCoefficient {
        self.coefficient
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    /// Largest degree whose homology is unaffected by the truncation.
    pub fn valid_max(&self) -> i64 {
        self.max_degree - 1
    }

    pub fn is_valid(&self, m: i64) -> bool {
        m >= self.min_degree && m <= self.valid_max()
    }

    fn index(&self, m: i64) -> Option<usize> {
        (m >= self.min_degree && m <= self.max_degree).then(|| (m - self.min_degree) as usize)
    }

    /// `(column, chain degree)` of each summand of `T_m`, in order.
    pub fn components(&self, m: i64) -> &[(i64, usize)] {
        self.index(m).map_or(&[], |i| &self.components[i])
    }

    pub fn dim(&self, m: i64) -> usize {
        self.index(m).map_or(0, |i| self.complex.dim(i))
    }

    pub fn chain_complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    /// Homology dimension in degree `m` and whether it is truncation-exact.
    /// Degrees below the complex are zero and valid.
    pub fn hc_dim(&self, m: i64) -> (usize, bool) {
        match self.index(m) {
            Some(i) => (self.complex.homology_dim(i), self.is_valid(m)),
            None => (0, m < self.min_degree),
        }
    }

    /// `(degree, dim, valid)` for every built degree.
    pub fn homology_dims(&self) -> Vec<(i64, usize, bool)> {
        let dims = self.complex.homology_dims();
        (self.min_degree..=self.max_degree)
            .zip(dims)
            .map(|(m, d)| (m, d, self.is_valid(m)))
            .collect()
    }

    pub fn homology_space(&self, m: i64) -> Option<HomologySpace<F>> {
        self.index(m).map(|i| self.complex.homology_space(i))
    }

    /// Offset of the summand `(column, chain degree)` inside `T_m`.
    fn component_offset<E>(&self, m: i64, c: &TruncatedMixedComplex<impl Field<Elem = E>>, key: (i64, usize)) -> Option<usize> {
        let mut off = 0;
        for &(j, n) in self.components(m) {
            if (j, n) == key {
                return Some(off);
            }
            off += c.dim(n);
        }
        None
    }
}

/// The map `T_m -> T'_m` induced by a mixed map with components `f_n`, block
/// diagonal over the columns.
pub fn total_map<F: Field>(
    f: &[SparseMatrix<F::Elem>],
    source: &TotalComplex<F>,
    target: &TotalComplex<F>,
    m: i64,
) -> Result<SparseMatrix<F::Elem>> {
    let src = source.components(m);
    let tgt = target.components(m);
    if src != tgt {
        return Err(Error::ShapeMismatch(format!("total complexes differ in shape in degree {m}")));
    }
    let rows: Vec<usize> = tgt.iter().map(|&(_, n)| f[n].rows()).collect();
    let cols: Vec<usize> = src.iter().map(|&(_, n)| f[n].cols()).collect();
    let blocks = src.iter().enumerate().map(|(k, &(_, n))| (k, k, &f[n])).collect();
    SparseMatrix::from_blocks(&rows, &cols, blocks)
}

/// Induced map on `HC_m(−, W)` of a mixed map; both complexes must be built
/// with the same coefficient and truncation.
pub fn induced_on_total<F: Field>(
    f: &[SparseMatrix<F::Elem>],
    source: &TotalComplex<F>,
    target: &TotalComplex<F>,
    m: i64,
) -> Result<InducedMap<F::Elem>> {
    let field = source.complex.field();
    let map = total_map(f, source, target, m)?;
    for (mm, degree) in [(m - 1, m), (m + 1, m + 1)] {
        if source.index(mm).is_none() || target.index(mm).is_none() || source.index(m).is_none() {
            continue;
        }
        let (lo, hi) = if mm < m { (mm, m) } else { (m, mm) };
        let f_hi = total_map(f, source, target, hi)?;
        let f_lo = total_map(f, source, target, lo)?;
        let i_hi = source.index(hi).unwrap();
        let left = target.complex.differential(i_hi).mul(field, &f_hi)?;
        let right = f_lo.mul(field, &source.complex.differential(i_hi))?;
        if let Some(witness) = left.first_difference(&right) {
            return Err(Error::NotAChainMap { degree: degree.max(0) as usize, witness });
        }
    }
    let src = source.homology_space(m).unwrap_or_else(|| empty_space(field));
    let tgt = target.homology_space(m).unwrap_or_else(|| empty_space(field));
    induced_between(field, m.max(0) as usize, &src, &tgt, &map)
}

fn empty_space<F: Field>(field: &F) -> HomologySpace<F> {
    HomologySpace::new(field, &SparseMatrix::zero(0, 0), &SparseMatrix::zero(0, 0)).unwrap()
}

/// `dim HC_n(C, W)` with its validity flag.
pub fn hc_dims<F: Field>(c: &TruncatedMixedComplex<F>, w: WCoefficient, n: i64) -> Result<(usize, bool)> {
    Ok(total_complex(c, w)?.hc_dim(n))
}

/// Ranks and dimensions around `HH_n -> HC_n -> HC_{n-2} -> HH_{n-1}`, plus
/// the incoming `HC_{n-1} -> HH_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SbiReport {
    pub degree: usize,
    pub hh_n: usize,
    pub hc_n: usize,
    pub hc_n_minus_2: usize,
    pub hh_n_minus_1: usize,
    pub hc_n_minus_1: usize,
    pub rank_i: usize,
    pub rank_s: usize,
    pub rank_boundary: usize,
    pub rank_incoming_boundary: usize,
    /// `im I = ker S` at `HC_n`.
    pub exact_at_hc_n: bool,
    /// `im S = ker ∂` at `HC_{n-2}`.
    pub exact_at_hc_n_minus_2: bool,
    /// `im ∂ = ker I` at `HH_n`.
    pub exact_at_hh_n: bool,
}

impl SbiReport {
    pub fn is_exact(&self) -> bool {
        self.exact_at_hc_n && self.exact_at_hc_n_minus_2 && self.exact_at_hh_n
    }
}

struct Sbi<'a, F: Field> {
    field: &'a F,
    c: &'a TruncatedMixedComplex<F>,
    hh: ChainComplex<F>,
    hc: TotalComplex<F>,
}

impl<'a, F: Field> Sbi<'a, F> {
    fn hh_space(&self, n: i64) -> HomologySpace<F> {
        if n < 0 {
            return empty_space(self.field);
        }
        self.hh.homology_space(n as usize)
    }

    fn hc_space(&self, n: i64) -> HomologySpace<F> {
        self.hc.homology_space(n).unwrap_or_else(|| empty_space(self.field))
    }

    /// `I: HH_n -> HC_n`.
    fn inclusion(&self, n: i64) -> Result<SparseMatrix<F::Elem>> {
        let hh = self.hh_space(n);
        let hc = self.hc_space(n);
        if n < 0 {
            return Ok(SparseMatrix::zero(hc.dim(), hh.dim()));
        }
        let off = self.hc.component_offset(n, self.c, (0, n as usize)).unwrap();
        let embed = SparseMatrix::from_columns(
            self.hc.dim(n),
            (0..self.c.dim(n as usize)).map(|x| SparseVec::unit(self.field, off + x)).collect(),
        );
        Ok(induced_between(self.field, n as usize, &hh, &hc, &embed)?.matrix)
    }

    /// `S: HC_n -> HC_{n-2}`, dropping column 0.
    fn periodicity(&self, n: i64) -> Result<SparseMatrix<F::Elem>> {
        let src = self.hc_space(n);
        let tgt = self.hc_space(n - 2);
        let mut cols = Vec::new();
        for z in src.representatives() {
            let mut entries = Vec::new();
            let mut off = 0;
            for &(j, k) in self.hc.components(n) {
                let d = self.c.dim(k);
                if j < 0 {
                    let base = self.hc.component_offset(n - 2, self.c, (j + 1, k)).unwrap();
                    entries.extend(z.iter().filter(|(i, _)| (off..off + d).contains(i)).map(|(i, x)| (base + i - off, x.clone())));
                }
                off += d;
            }
            let image = SparseVec::from_pairs(self.field, entries);
            cols.push(tgt.class_of(&image).ok_or(Error::NotAChainMap { degree: n.max(0) as usize, witness: cols.len() })?);
        }
        Ok(SparseMatrix::from_columns(tgt.dim(), cols))
    }

    /// Connecting map `HC_{n} -> HH_{n+1}`, `[z] -> [B z_0]`.
    fn boundary(&self, n: i64) -> Result<SparseMatrix<F::Elem>> {
        let src = self.hc_space(n);
        let tgt = self.hh_space(n + 1);
        if n < 0 {
            return Ok(SparseMatrix::zero(tgt.dim(), src.dim()));
        }
        let off = self.hc.component_offset(n, self.c, (0, n as usize)).unwrap();
        let d = self.c.dim(n as usize);
        let mut cols = Vec::new();
        for z in src.representatives() {
            let z0 = SparseVec::from_sorted(
                z.iter().filter(|(i, _)| (off..off + d).contains(i)).map(|(i, x)| (i - off, x.clone())).collect(),
            );
            let image = self.c.big_b(n as usize).apply(self.field, &z0);
            cols.push(tgt.class_of(&image).ok_or(Error::NotAChainMap { degree: n as usize + 1, witness: cols.len() })?);
        }
        Ok(SparseMatrix::from_columns(tgt.dim(), cols))
    }
}

/// Exactness of `HH_n -> HC_n -> HC_{n-2} -> HH_{n-1}` at its middle terms and
/// at `HH_n`, by rank arithmetic on the induced matrices.
pub fn connes_sbi_check<F: Field>(c: &TruncatedMixedComplex<F>, n: usize) -> Result<SbiReport> {
    if c.top() == 0 || n > c.valid_degree() {
        return Err(Error::WindowTooSmall { requested: n, valid: (c.top() > 0).then(|| c.valid_degree()) });
    }
    let field = c.field();
    let sbi = Sbi { field, c, hh: c.hochschild(), hc: total_complex(c, WCoefficient::new(WKind::Cyclic))? };
    let n = n as i64;
    let i_n = sbi.inclusion(n)?;
    let s_n = sbi.periodicity(n)?;
    let bd = sbi.boundary(n - 2)?;
    let bd_in = sbi.boundary(n - 1)?;
    let zero_composite = |a: &SparseMatrix<F::Elem>, b: &SparseMatrix<F::Elem>| -> Result<bool> { Ok(a.mul(field, b)?.is_zero()) };
    let (hh_n, hc_n) = (sbi.hh_space(n).dim(), sbi.hc_space(n).dim());
    let hc_n_minus_2 = sbi.hc_space(n - 2).dim();
    let hh_n_minus_1 = sbi.hh_space(n - 1).dim();
    let hc_n_minus_1 = sbi.hc_space(n - 1).dim();
    let (rank_i, rank_s) = (rank(field, &i_n), rank(field, &s_n));
    let (rank_boundary, rank_incoming_boundary) = (rank(field, &bd), rank(field, &bd_in));
    Ok(SbiReport {
        degree: n as usize,
        hh_n,
        hc_n,
        hc_n_minus_2,
        hh_n_minus_1,
        hc_n_minus_1,
        rank_i,
        rank_s,
        rank_boundary,
        rank_incoming_boundary,
        exact_at_hc_n: zero_composite(&s_n, &i_n)? && rank_i + rank_s == hc_n,
        exact_at_hc_n_minus_2: zero_composite(&bd, &s_n)? && rank_s + rank_boundary == hc_n_minus_2,
        exact_at_hh_n: zero_composite(&i_n, &bd_in)? && rank_incoming_boundary + rank_i == hh_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_function_algebra, FiniteGroup, GSet};
    use crate::cyclic::{mixed_from_cyclic, TwistedCyclicModule};
    use crate::field::Rationals;

    fn ground(top: usize) -> TruncatedMixedComplex<Rationals> {
        let (k, _) = build_function_algebra(&Rationals, &GSet::trivial(FiniteGroup::trivial(), 1)).unwrap();
        mixed_from_cyclic(&TwistedCyclicModule::untwisted(&k, top).unwrap()).unwrap()
    }

    #[test]
    fn column_layout() {
        let c = ground(4);
        let hc = total_complex(&c, WCoefficient::new(WKind::Cyclic)).unwrap();
        assert_eq!(hc.components(2), &[(0, 2), (-1, 0)]);
        let hh = total_complex(&c, WCoefficient::new(WKind::Hochschild)).unwrap();
        assert_eq!(hh.components(3), &[(0, 3)]);
        let hn = total_complex(&c, WCoefficient::new(WKind::Negative)).unwrap();
        assert_eq!(hn.min_degree(), -2);
        assert_eq!(hn.max_degree(), 2);
        assert_eq!(hn.components(-1), &[(1, 1)]);
        let hp = total_complex(&c, WCoefficient::new(WKind::Periodic)).unwrap();
        assert_eq!(hp.components(1), &[(1, 3), (0, 1)]);
    }

    #[test]
    fn ground_field_values() {
        let c = ground(5);
        let hc = total_complex(&c, WCoefficient::new(WKind::Cyclic)).unwrap();
        let dims: Vec<usize> = (0..=4).map(|n| hc.hc_dim(n).0).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1]);
        assert!(hc.hc_dim(4).1 && !hc.hc_dim(5).1);
        let hh = total_complex(&c, WCoefficient::new(WKind::Hochschild)).unwrap();
        assert_eq!((0..=4).map(|n| hh.hc_dim(n).0).collect::<Vec<_>>(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn sbi_for_ground_field() {
        let c = ground(5);
        for n in 0..=4 {
            let r = connes_sbi_check(&c, n).unwrap();
            assert!(r.is_exact(), "{r:?}");
        }
        let r = connes_sbi_check(&c, 2).unwrap();
        assert_eq!((r.hc_n, r.hc_n_minus_2, r.hh_n, r.rank_s), (1, 1, 0, 1));
        assert!(matches!(connes_sbi_check(&c, 5), Err(Error::WindowTooSmall { requested: 5, valid: Some(4) })));
    }

    #[test]
    fn zero_complex_is_exact() {
        let z = TruncatedMixedComplex::zero(&Rationals, 3);
        assert!(connes_sbi_check(&z, 2).unwrap().is_exact());
        let hp = total_complex(&z, WCoefficient::new(WKind::Periodic)).unwrap();
        assert!(hp.homology_dims().iter().all(|&(_, d, _)| d == 0));
    }
}
