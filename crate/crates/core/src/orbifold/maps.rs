use rayon::prelude::*;

use crate::algebra::{build_crossed_product, CrossedProduct, FinDimAlgebra, GroupAction, Quotient};
use crate::cyclic::{
    apply_b, mixed_from_cyclic, check_mixed_map, Coinvariants, CyclicModule, EquivariantComplexFamily, Op,
    TruncatedMixedComplex, TwistedCyclicModule,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{ChainMap, SparseMatrix, SparseVec};

/// `C(A ⋊ G)` together with the two coinvariant targets
/// `C(⊕_g A♮_g)_G` and `(⊕_g C(A/J_g))_G`, all truncated at `top`.
#[derive(Clone, Debug)]
pub struct OrbifoldComplexes<F: Field> {
    algebra: FinDimAlgebra<F>,
    action: GroupAction<F>,
    crossed: CrossedProduct<F>,
    source: TwistedCyclicModule<F>,
    sectors: Coinvariants<F>,
    loci: Coinvariants<F>,
    quotients: Vec<Quotient<F>>,
    /// `locus_factor[g][p] = π_g ρ(p)`.
    locus_factor: Vec<Vec<SparseMatrix<F::Elem>>>,
    top: usize,
}

/// A comparison map on coinvariant coordinates with its source and target
/// mixed complexes; commutation with `b` and `B` has been checked.
#[derive(Clone, Debug)]
pub struct ComparisonMap<F: Field> {
    pub map: ChainMap<F>,
    pub source: TruncatedMixedComplex<F>,
    pub target: TruncatedMixedComplex<F>,
}

fn linear_extension<F: Field>(
    field: &F,
    v: &SparseVec<F::Elem>,
    image: impl Fn(usize) -> SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut acc = SparseVec::new();
    for (x, c) in v.iter() {
        acc = acc.combine(field, &field.one(), &image(*x), c);
    }
    acc
}

/// `v_0 ⊗ ... ⊗ v_n` for column vectors of spaces of dimension `dim`.
fn tensor_of<'a, F: Field>(
    field: &F,
    dim: usize,
    factors: impl IntoIterator<Item = &'a SparseVec<F::Elem>>,
) -> SparseVec<F::Elem> {
    let mut acc = SparseVec::unit(field, 0);
    for v in factors {
        acc = acc.tensor(field, v, dim);
    }
    acc
}

fn matrix_from<F: Field>(rows: usize, cols: usize, column: impl Fn(usize) -> SparseVec<F::Elem> + Sync + Send) -> SparseMatrix<F::Elem> {
    let columns: Vec<_> = (0..cols).into_par_iter().map(&column).collect();
    SparseMatrix::from_columns(rows, columns)
}

impl<F: Field> OrbifoldComplexes<F> {
    pub fn new(algebra: &FinDimAlgebra<F>, action: &GroupAction<F>, top: usize) -> Result<Self> {
        let crossed = build_crossed_product(algebra, action)?;
        let source = TwistedCyclicModule::untwisted(&crossed.algebra, top)?;
        let sectors = EquivariantComplexFamily::twisted_sectors(algebra, action, top)?.coinvariants();
        let (loci, quotients) = EquivariantComplexFamily::fixed_loci(algebra, action, top)?;
        let f = algebra.field();
        let group = action.group();
        let locus_factor = group
            .elements()
            .map(|g| {
                group
                    .elements()
                    .map(|p| quotients[g].projection.mul(f, action.matrix(p)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            algebra: algebra.clone(),
            action: action.clone(),
            crossed,
            source,
            sectors,
            loci: loci.coinvariants(),
            quotients,
            locus_factor,
            top,
        })
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn algebra(&self) -> &FinDimAlgebra<F> {
        &self.algebra
    }

    pub fn action(&self) -> &GroupAction<F> {
        &self.action
    }

    pub fn crossed(&self) -> &CrossedProduct<F> {
        &self.crossed
    }

    /// `C(A ⋊ G)` as a cyclic module.
    pub fn source(&self) -> &TwistedCyclicModule<F> {
        &self.source
    }

    /// `C(⊕_g A♮_g)_G`.
    pub fn sectors(&self) -> &Coinvariants<F> {
        &self.sectors
    }

    /// `(⊕_g C(A/J_g))_G`.
    pub fn loci(&self) -> &Coinvariants<F> {
        &self.loci
    }

    pub fn quotients(&self) -> &[Quotient<F>] {
        &self.quotients
    }

    /// `(a_k, g_k)` of the basis tensor `x` in degree `n`, leftmost factor first.
    fn factors(&self, n: usize, x: usize) -> Vec<(usize, usize)> {
        let dim = self.crossed.algebra.dim();
        let mut out = vec![(0, 0); n + 1];
        let mut rest = x;
        for slot in out.iter_mut().rev() {
            *slot = self.crossed.decode(rest % dim);
            rest /= dim;
        }
        out
    }

    /// Prefix products `g_0 ... g_{k-1}` for `k = 0..=n+1`.
    fn prefixes(&self, factors: &[(usize, usize)]) -> Vec<usize> {
        let group = self.action.group();
        let mut out = vec![group.identity()];
        for &(_, g) in factors {
            out.push(group.mul(*out.last().unwrap(), g));
        }
        out
    }

    /// `(a_0, g_0(a_1), ..., (g_0 ... g_{n-1})(a_n))` in the block over
    /// `g_0 ... g_n` of `⊕_g A♮_g`.
    pub fn raw_sector_image(&self, n: usize, x: usize) -> SparseVec<F::Elem> {
        let f = self.field();
        let fam = self.sectors.family();
        let factors = self.factors(n, x);
        let prefix = self.prefixes(&factors);
        let columns = factors.iter().zip(&prefix).map(|(&(i, _), &p)| self.action.matrix(p).column(i));
        let v = tensor_of(f, self.algebra.dim(), columns);
        fam.embed(n, fam.block_index(prefix[n + 1]).unwrap(), &v)
    }

    /// The same tensor pushed to `(A/J_g)^{⊗ n+1}`, computed factorwise with
    /// `π_g ρ(g_0 ... g_{k-1})`.
    pub fn raw_locus_image(&self, n: usize, x: usize) -> SparseVec<F::Elem> {
        let f = self.field();
        let fam = self.loci.family();
        let factors = self.factors(n, x);
        let prefix = self.prefixes(&factors);
        let g = prefix[n + 1];
        let columns = factors.iter().zip(&prefix).map(|(&(i, _), &p)| self.locus_factor[g][p].column(i));
        let v = tensor_of(f, self.quotients[g].dim(), columns);
        fam.embed(n, fam.block_index(g).unwrap(), &v)
    }

    /// `φ` on coinvariant coordinates, degrees `0..=top`.
    pub fn phi(&self) -> ChainMap<F> {
        let maps = (0..=self.top)
            .map(|n| {
                matrix_from::<F>(self.sectors.dim(n), self.source.dim(n), |x| {
                    self.sectors.project(n, &self.raw_sector_image(n, x))
                })
            })
            .collect();
        ChainMap::new(maps)
    }

    /// `ψ` on coinvariant coordinates, degrees `0..=top`.
    pub fn psi(&self) -> ChainMap<F> {
        let maps = (0..=self.top)
            .map(|n| {
                matrix_from::<F>(self.loci.dim(n), self.source.dim(n), |x| {
                    self.loci.project(n, &self.raw_locus_image(n, x))
                })
            })
            .collect();
        ChainMap::new(maps)
    }

    /// `⊕_g π_g^{⊗•}` from `C(⊕_g A♮_g)_G` to `(⊕_g C(A/J_g))_G`.
    pub fn projection(&self) -> ChainMap<F> {
        let f = self.field();
        let src = self.sectors.family();
        let tgt = self.loci.family();
        let maps = (0..=self.top)
            .map(|n| {
                matrix_from::<F>(self.loci.dim(n), self.sectors.dim(n), |c| {
                    let lifted = self.sectors.lift(n, &SparseVec::unit(f, c));
                    let image = block_tensor_map(f, src, tgt, n, &lifted, |k| &self.quotients[src.blocks()[k].element].projection);
                    self.loci.coordinates(n, &image).expect("projection is equivariant")
                })
            })
            .collect();
        ChainMap::new(maps)
    }

    pub fn source_mixed(&self) -> Result<TruncatedMixedComplex<F>> {
        mixed_from_cyclic(&self.source)
    }

    pub fn sector_mixed(&self) -> Result<TruncatedMixedComplex<F>> {
        mixed_from_cyclic(&self.sectors)
    }

    pub fn locus_mixed(&self) -> Result<TruncatedMixedComplex<F>> {
        mixed_from_cyclic(&self.loci)
    }

    /// First `(degree, basis tensor)` where the uncoinvariated map to
    /// `⊕_g A♮_g` fails to commute with the last face `d_n`.
    pub fn raw_sector_face_failure(&self) -> Option<(usize, usize)> {
        let f = self.field();
        let fam = self.sectors.family();
        for n in 1..=self.top {
            for x in 0..self.source.dim(n) {
                let e = SparseVec::unit(f, x);
                let lhs = fam.apply(Op::Face(n), n, &self.raw_sector_image(n, x));
                let rhs = linear_extension(f, &self.source.apply(Op::Face(n), n, &e), |y| self.raw_sector_image(n - 1, y));
                if lhs != rhs {
                    return Some((n, x));
                }
            }
        }
        None
    }

    /// First `(degree, basis tensor)` where the uncoinvariated map fails to
    /// commute with `b`.
    pub fn raw_sector_b_failure(&self) -> Option<(usize, usize)> {
        let f = self.field();
        let fam = self.sectors.family();
        for n in 1..=self.top {
            for x in 0..self.source.dim(n) {
                let e = SparseVec::unit(f, x);
                let lhs = apply_b(fam, n, &self.raw_sector_image(n, x));
                let rhs = linear_extension(f, &apply_b(&self.source, n, &e), |y| self.raw_sector_image(n - 1, y));
                if lhs != rhs {
                    return Some((n, x));
                }
            }
        }
        None
    }
}

/// Applies the algebra maps `factor(k)` tensorwise on every block `k` of
/// `src`, landing in the block over the same group element of `tgt`.
fn block_tensor_map<'a, F: Field>(
    field: &F,
    src: &EquivariantComplexFamily<F>,
    tgt: &EquivariantComplexFamily<F>,
    n: usize,
    v: &SparseVec<F::Elem>,
    factor: impl Fn(usize) -> &'a SparseMatrix<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = SparseVec::new();
    for (x, c) in v.iter() {
        let k = (0..src.blocks().len()).rev().find(|&k| src.offset(n, k) <= *x).unwrap();
        let block = &src.blocks()[k];
        let d = block.module.base_dim();
        let m = factor(k);
        let mut local = x - src.offset(n, k);
        let mut digits = vec![0; n + 1];
        for slot in digits.iter_mut().rev() {
            *slot = local % d;
            local /= d;
        }
        let image = tensor_of(field, m.rows(), digits.iter().map(|&i| m.column(i)));
        let target = tgt.block_index(block.element).expect("same block set");
        out = out.combine(field, &field.one(), &tgt.embed(n, target, &image), c);
    }
    out
}

fn comparison<F: Field>(map: ChainMap<F>, source: TruncatedMixedComplex<F>, target: TruncatedMixedComplex<F>) -> Result<ComparisonMap<F>> {
    check_mixed_map(&map, &source, &target)?;
    Ok(ComparisonMap { map, source, target })
}

/// `φ: C(A ⋊ G) -> C(⊕_g A♮_g)_G`, checked to commute with `b` and `B`.
pub fn phi_chain_map<F: Field>(algebra: &FinDimAlgebra<F>, action: &GroupAction<F>, top: usize) -> Result<ComparisonMap<F>> {
    let c = OrbifoldComplexes::new(algebra, action, top)?;
    comparison(c.phi(), c.source_mixed()?, c.sector_mixed()?)
}

/// `ψ: C(A ⋊ G) -> (⊕_g C(A/J_g))_G`, checked to commute with `b` and `B`.
pub fn psi_chain_map<F: Field>(algebra: &FinDimAlgebra<F>, action: &GroupAction<F>, top: usize) -> Result<ComparisonMap<F>> {
    let c = OrbifoldComplexes::new(algebra, action, top)?;
    comparison(c.psi(), c.source_mixed()?, c.locus_mixed()?)
}

/// Checks `ψ = (⊕_g π_g^{⊗•}) ∘ φ` degreewise; returns the first degree
/// where the matrices differ.
pub fn factorization_failure<F: Field>(c: &OrbifoldComplexes<F>, phi: &ChainMap<F>, psi: &ChainMap<F>) -> Result<Option<usize>> {
    let composite = phi.then(c.field(), &c.projection())?;
    Ok((0..=c.top()).find(|&n| composite.component(n) != psi.component(n)))
}

/// Chain maps induced on both sides of `ψ` by an equivariant algebra map
/// `m: A' -> A`, and whether the square commutes in each degree.
#[derive(Clone, Debug)]
pub struct PullbackSquare<F: Field> {
    pub crossed_map: ChainMap<F>,
    pub locus_map: ChainMap<F>,
    pub commutes: Vec<bool>,
}

impl<F: Field> PullbackSquare<F> {
    pub fn all_commute(&self) -> bool {
        self.commutes.iter().all(|&c| c)
    }
}

/// Builds `C(m ⋊ G)` and `(⊕_g C(m_g))_G` for `m` from `source`'s algebra to
/// `target`'s algebra, where `m_g: A'/J'_g -> A/J_g`, and compares
/// `ψ_A ∘ C(m ⋊ G)` with `(⊕ C(m_g))_G ∘ ψ_{A'}`.
pub fn pullback_square<F: Field>(
    source: &OrbifoldComplexes<F>,
    target: &OrbifoldComplexes<F>,
    m: &SparseMatrix<F::Elem>,
) -> Result<PullbackSquare<F>> {
    let f = source.field();
    let group = source.action.group();
    if group.table() != target.action.group().table() || source.top != target.top {
        return Err(Error::ShapeMismatch("pullback square needs the same group and truncation".into()));
    }
    if !source.algebra.is_homomorphism_to(&target.algebra, m) {
        return Err(Error::BadAction("map is not a unital algebra map".into()));
    }
    for g in group.elements() {
        if m.mul(f, source.action.matrix(g))? != target.action.matrix(g).mul(f, m)? {
            return Err(Error::BadAction(format!("map does not intertwine the action of {g}")));
        }
    }
    let d_src = source.algebra.dim();
    let d_tgt = target.algebra.dim();
    let crossed_cols: Vec<SparseVec<F::Elem>> = (0..d_src * group.order())
        .map(|idx| {
            let (i, g) = source.crossed.decode(idx);
            m.column(i).reindexed(|j| target.crossed.index(j, g))
        })
        .collect();
    let crossed = SparseMatrix::from_columns(d_tgt * group.order(), crossed_cols);
    let crossed_map = ChainMap::new(
        (0..=source.top)
            .map(|n| {
                matrix_from::<F>(target.source.dim(n), source.source.dim(n), |x| {
                    let mut digits = vec![0; n + 1];
                    let mut rest = x;
                    for slot in digits.iter_mut().rev() {
                        *slot = rest % crossed.cols();
                        rest /= crossed.cols();
                    }
                    tensor_of(f, crossed.rows(), digits.iter().map(|&i| crossed.column(i)))
                })
            })
            .collect(),
    );
    let block_maps = group
        .elements()
        .map(|g| source.quotients[g].induced_map(m, &target.quotients[g]))
        .collect::<Result<Vec<_>>>()?;
    let src_fam = source.loci.family();
    let tgt_fam = target.loci.family();
    let mut locus_maps = Vec::new();
    for n in 0..=source.top {
        let mut cols = Vec::new();
        for c in 0..source.loci.dim(n) {
            let lifted = source.loci.lift(n, &SparseVec::unit(f, c));
            let image = block_tensor_map(f, src_fam, tgt_fam, n, &lifted, |k| &block_maps[src_fam.blocks()[k].element]);
            let coords = target
                .loci
                .coordinates(n, &image)
                .ok_or_else(|| Error::BadAction("induced map does not preserve invariants".into()))?;
            cols.push(coords);
        }
        locus_maps.push(SparseMatrix::from_columns(target.loci.dim(n), cols));
    }
    let locus_map = ChainMap::new(locus_maps);
    let psi_src = source.psi();
    let psi_tgt = target.psi();
    let commutes = (0..=source.top)
        .map(|n| {
            let left = psi_tgt.component(n).mul(f, crossed_map.component(n))?;
            let right = locus_map.component(n).mul(f, psi_src.component(n))?;
            Ok(left == right)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PullbackSquare { crossed_map, locus_map, commutes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_function_algebra, FiniteGroup, GSet};
    use crate::field::Rationals;

    #[test]
    fn trivial_group_gives_identity() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::trivial(FiniteGroup::trivial(), 2)).unwrap();
        let phi = phi_chain_map(&a, &act, 3).unwrap();
        let psi = psi_chain_map(&a, &act, 3).unwrap();
        for n in 0..=3 {
            let id = SparseMatrix::identity(&q, phi.source.dim(n));
            assert_eq!(phi.map.component(n), &id);
            assert_eq!(psi.map.component(n), &id);
        }
    }

    #[test]
    fn swap_degree_zero() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::rotation(2)).unwrap();
        let c = OrbifoldComplexes::new(&a, &act, 2).unwrap();
        // e_1·g lies in the block over g, where J_g = A
        let x = c.crossed().index(0, 1);
        assert!(c.raw_locus_image(0, x).is_zero());
        assert!(!c.raw_sector_image(0, x).is_zero());
        assert!(c.psi().component(0).column(x).is_zero());
    }

    #[test]
    fn degree_one_sector_formula() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::trivial(FiniteGroup::cyclic(2), 1)).unwrap();
        let c = OrbifoldComplexes::new(&a, &act, 2).unwrap();
        // (1·g, 1·g) lands in the block over g^2 = e
        let g = c.crossed().index(0, 1);
        let x = g * c.crossed().algebra.dim() + g;
        let image = c.raw_sector_image(1, x);
        let fam = c.sectors().family();
        let e_block = fam.block_index(0).unwrap();
        assert_eq!(image, SparseVec::unit(&q, fam.offset(1, e_block)));
    }

    #[test]
    fn raw_map_fails_only_before_averaging() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::rotation(2)).unwrap();
        let c = OrbifoldComplexes::new(&a, &act, 2).unwrap();
        assert_eq!(c.raw_sector_face_failure().map(|(n, _)| n), Some(1));
        assert!(c.raw_sector_b_failure().is_some());
        check_mixed_map(&c.phi(), &c.source_mixed().unwrap(), &c.sector_mixed().unwrap()).unwrap();
    }

    #[test]
    fn factorization_on_s3() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::natural(3)).unwrap();
        let c = OrbifoldComplexes::new(&a, &act, 2).unwrap();
        assert_eq!(factorization_failure(&c, &c.phi(), &c.psi()).unwrap(), None);
    }

    #[test]
    fn pullback_to_a_point() {
        let q = Rationals;
        let two = GSet::rotation(2);
        let one = GSet::trivial(FiniteGroup::cyclic(2), 1);
        let (a, act) = build_function_algebra(&q, &two).unwrap();
        let (b, bct) = build_function_algebra(&q, &one).unwrap();
        let big = OrbifoldComplexes::new(&a, &act, 2).unwrap();
        let small = OrbifoldComplexes::new(&b, &bct, 2).unwrap();
        let m = SparseMatrix::from_i64(&q, &[vec![1], vec![1]]);
        let square = pullback_square(&small, &big, &m).unwrap();
        assert!(square.all_commute());
        let not_unital = SparseMatrix::from_i64(&q, &[vec![1], vec![0]]);
        assert!(pullback_square(&small, &big, &not_unital).is_err());
    }
}
