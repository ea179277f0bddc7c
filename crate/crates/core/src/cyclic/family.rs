use crate::algebra::{fixed_ideal, quotient_algebra, FinDimAlgebra, FiniteGroup, GroupAction, Quotient};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{offsets, Rref, SparseMatrix, SparseVec};

use super::module::{CyclicModule, Op};
use super::twisted::TwistedCyclicModule;

/// One summand of a family: the module `B_g♮` sitting over the group element `g`.
#[derive(Clone, Debug)]
pub struct Block<F: Field> {
    pub element: usize,
    pub module: TwistedCyclicModule<F>,
}

/// A direct sum `⊕_{g ∈ S} B_g♮` over a conjugation-stable set `S ⊂ G`,
/// with a subgroup `H` acting: `h` carries the block over `g` to the block
/// over `hgh^{-1}` through the algebra map `σ_{h,g}` applied factorwise.
#[derive(Clone, Debug)]
pub struct EquivariantComplexFamily<F: Field> {
    field: F,
    group: FiniteGroup,
    acting: Vec<usize>,
    blocks: Vec<Block<F>>,
    block_of: Vec<usize>,
    /// `sigma[h][b]` for `h` in `acting` (same order) and block index `b`.
    sigma: Vec<Vec<SparseMatrix<F::Elem>>>,
    top: usize,
    offsets: Vec<Vec<usize>>,
}

impl<F: Field> EquivariantComplexFamily<F> {
    /// Validates the block structure, the algebra maps `σ`, and that the
    /// action commutes with every structure map in degrees `0..=top`.
    pub fn new(
        group: FiniteGroup,
        acting: Vec<usize>,
        blocks: Vec<Block<F>>,
        sigma: Vec<Vec<SparseMatrix<F::Elem>>>,
    ) -> Result<Self> {
        let field = blocks
            .first()
            .map(|b| b.module.field().clone())
            .ok_or_else(|| Error::ShapeMismatch("family without blocks".into()))?;
        field.spec().check_group_order(acting.len())?;
        let top = blocks.iter().map(|b| b.module.top()).min().unwrap_or(0);
        let mut block_of = vec![usize::MAX; group.order()];
        for (k, b) in blocks.iter().enumerate() {
            if block_of[b.element] != usize::MAX {
                return Err(Error::BadAction(format!("two blocks over element {}", b.element)));
            }
            block_of[b.element] = k;
        }
        let is_subgroup = acting.contains(&group.identity())
            && acting.iter().all(|&a| acting.iter().all(|&b| acting.contains(&group.mul(a, b))));
        if !is_subgroup || sigma.len() != acting.len() || sigma.iter().any(|s| s.len() != blocks.len()) {
            return Err(Error::BadAction("acting set is not a subgroup or maps are missing".into()));
        }
        let offsets = (0..=top)
            .map(|n| offsets(&blocks.iter().map(|b| b.module.dim(n)).collect::<Vec<_>>()))
            .collect();
        let family = Self { field, group, acting, blocks, block_of, sigma, top, offsets };
        family.validate()?;
        Ok(family)
    }

    fn validate(&self) -> Result<()> {
        let f = &self.field;
        let grp = &self.group;
        for (hi, &h) in self.acting.iter().enumerate() {
            for (k, b) in self.blocks.iter().enumerate() {
                let moved = grp.conjugate(h, b.element);
                let target = self.block_of[moved];
                if target == usize::MAX {
                    return Err(Error::BadAction(format!("block set is not stable under conjugation by {h}")));
                }
                let s = &self.sigma[hi][k];
                let src = b.module.algebra();
                let tgt = self.blocks[target].module.algebra();
                if !src.is_homomorphism_to(tgt, s) {
                    return Err(Error::BadAction(format!("σ({h}) on block {} is not an algebra map", b.element)));
                }
                let lhs = s.mul(f, b.module.twist())?;
                let rhs = self.blocks[target].module.twist().mul(f, s)?;
                if lhs != rhs {
                    return Err(Error::BadAction(format!("σ({h}) does not intertwine the twists of block {}", b.element)));
                }
            }
        }
        let e = self.acting.iter().position(|&h| h == grp.identity()).unwrap();
        for (k, b) in self.blocks.iter().enumerate() {
            if self.sigma[e][k] != SparseMatrix::identity(f, b.module.base_dim()) {
                return Err(Error::BadAction("identity acts nontrivially".into()));
            }
        }
        for (hi, &h) in self.acting.iter().enumerate() {
            for (ki, &k) in self.acting.iter().enumerate() {
                let hk = self.acting.iter().position(|&x| x == grp.mul(h, k)).unwrap();
                for (bi, b) in self.blocks.iter().enumerate() {
                    let mid = self.block_of[grp.conjugate(k, b.element)];
                    if self.sigma[hi][mid].mul(f, &self.sigma[ki][bi])? != self.sigma[hk][bi] {
                        return Err(Error::BadAction(format!("σ({h}) σ({k}) != σ({h}{k})")));
                    }
                }
            }
        }
        self.check_equivariance()
    }

    /// `h O = O h` for every structure map `O` and `h` in the acting group,
    /// on every basis vector.
    pub fn check_equivariance(&self) -> Result<()> {
        let f = &self.field;
        for n in 0..=self.top {
            let mut ops: Vec<Op> = vec![Op::Cycle, Op::Twist];
            if n < self.top {
                ops.push(Op::Extra);
                ops.extend((0..=n).map(Op::Degeneracy));
            }
            if n >= 1 {
                ops.extend((0..=n).map(Op::Face));
            }
            for hi in 0..self.acting.len() {
                for x in 0..self.dim(n) {
                    let e = SparseVec::unit(f, x);
                    let he = self.act(hi, n, &e);
                    for &op in &ops {
                        let lhs = self.act(hi, op.target(n), &self.apply(op, n, &e));
                        if lhs != self.apply(op, n, &he) {
                            return Err(Error::IdentityFails {
                                identity: format!("h {op:?} = {op:?} h for h = {}", self.acting[hi]),
                                degree: n,
                                witness: x,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `⊕_{g ∈ G} A♮_g` with `θ_g = ρ(g^{-1})` and `σ_{h,g} = ρ(h)`.
    pub fn twisted_sectors(algebra: &FinDimAlgebra<F>, action: &GroupAction<F>, top: usize) -> Result<Self> {
        let group = action.group().clone();
        let blocks = group
            .elements()
            .map(|g| Ok(Block { element: g, module: TwistedCyclicModule::from_action(algebra, action, g, top)? }))
            .collect::<Result<Vec<_>>>()?;
        let sigma = group.elements().map(|h| vec![action.matrix(h).clone(); group.order()]).collect();
        Self::new(group.clone(), group.elements().collect(), blocks, sigma)
    }

    /// `⊕_{g ∈ G} C(A/J_g)` with the maps induced by the action, together with
    /// the quotients `A -> A/J_g`.
    pub fn fixed_loci(
        algebra: &FinDimAlgebra<F>,
        action: &GroupAction<F>,
        top: usize,
    ) -> Result<(Self, Vec<Quotient<F>>)> {
        let group = action.group().clone();
        let quotients = group
            .elements()
            .map(|g| quotient_algebra(algebra, &fixed_ideal(algebra, action, g)?))
            .collect::<Result<Vec<_>>>()?;
        let blocks = group
            .elements()
            .map(|g| Ok(Block { element: g, module: TwistedCyclicModule::untwisted(&quotients[g].algebra, top)? }))
            .collect::<Result<Vec<_>>>()?;
        let sigma = group
            .elements()
            .map(|h| {
                group
                    .elements()
                    .map(|g| quotients[g].induced_map(action.matrix(h), &quotients[group.conjugate(h, g)]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let family = Self::new(group.clone(), group.elements().collect(), blocks, sigma)?;
        Ok((family, quotients))
    }

    /// The sub-family over `elements` with `subgroup` acting.
    pub fn restrict(&self, elements: &[usize], subgroup: &[usize]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        let mut subgroup = subgroup.to_vec();
        subgroup.sort_unstable();
        let mut blocks = Vec::new();
        let mut kept = Vec::new();
        for &g in &elements {
            let k = self.block_of.get(g).copied().unwrap_or(usize::MAX);
            if k == usize::MAX {
                return Err(Error::BadAction(format!("no block over element {g}")));
            }
            blocks.push(self.blocks[k].clone());
            kept.push(k);
        }
        let sigma = subgroup
            .iter()
            .map(|h| {
                let hi = self
                    .acting
                    .iter()
                    .position(|x| x == h)
                    .ok_or_else(|| Error::BadAction(format!("{h} does not act")))?;
                Ok(kept.iter().map(|&k| self.sigma[hi][k].clone()).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.group.clone(), subgroup, blocks, sigma)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn acting(&self) -> &[usize] {
        &self.acting
    }

    pub fn blocks(&self) -> &[Block<F>] {
        &self.blocks
    }

    /// Index of the block over `g`, if any.
    pub fn block_index(&self, g: usize) -> Option<usize> {
        self.block_of.get(g).copied().filter(|&k| k != usize::MAX)
    }

    /// Offset of block `k` inside degree `n`.
    pub fn offset(&self, n: usize, k: usize) -> usize {
        self.offsets[n][k]
    }

    fn locate(&self, n: usize, x: usize) -> (usize, usize) {
        let offs = &self.offsets[n];
        let k = offs.partition_point(|&o| o <= x) - 1;
        (k, x - offs[k])
    }

    /// Action of `acting[hi]` in degree `n`.
    pub fn act(&self, hi: usize, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let h = self.acting[hi];
        let mut out = Vec::new();
        for (x, c) in v.iter() {
            let (k, local) = self.locate(n, *x);
            let target = self.block_of[self.group.conjugate(h, self.blocks[k].element)];
            let s = &self.sigma[hi][k];
            let d = self.blocks[k].module.base_dim();
            let d_out = self.blocks[target].module.base_dim();
            let mut terms = vec![(0usize, c.clone())];
            for pos in (0..=n).rev() {
                let digit = (local / d.pow(pos as u32)) % d;
                let mut next = Vec::new();
                for (idx, coef) in &terms {
                    for (l, e) in s.column(digit).iter() {
                        next.push((idx * d_out + l, f.mul(coef, e)));
                    }
                }
                terms = next;
            }
            let base = self.offsets[n][target];
            out.extend(terms.into_iter().map(|(i, e)| (base + i, e)));
        }
        SparseVec::from_pairs(f, out)
    }

    /// `(1/|H|) Σ_h h·v`.
    pub fn average(&self, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = SparseVec::new();
        for hi in 0..self.acting.len() {
            acc = acc.add(f, &self.act(hi, n, v));
        }
        let inv = f.inv_usize(self.acting.len()).expect("order is invertible");
        acc.scaled(f, &inv)
    }

    /// Embeds a vector of block `k` into degree `n` of the sum.
    pub fn embed(&self, n: usize, k: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let base = self.offsets[n][k];
        v.reindexed(|i| base + i)
    }

    /// Matrix of the action of `acting[hi]` in degree `n`.
    pub fn action_matrix(&self, hi: usize, n: usize) -> SparseMatrix<F::Elem> {
        let f = &self.field;
        let cols = (0..self.dim(n)).map(|x| self.act(hi, n, &SparseVec::unit(f, x))).collect();
        SparseMatrix::from_columns(self.dim(n), cols)
    }

    /// Coinvariants realized as invariants: the image of the averaging projector.
    pub fn coinvariants(&self) -> Coinvariants<F> {
        let f = &self.field;
        let images = (0..=self.top)
            .map(|n| {
                let vectors = (0..self.dim(n)).map(|x| self.average(n, &SparseVec::unit(f, x)));
                Rref::from_vectors(f, self.dim(n), vectors)
            })
            .collect();
        Coinvariants { family: self.clone(), images }
    }
}

impl<F: Field> CyclicModule<F> for EquivariantComplexFamily<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn top(&self) -> usize {
        self.top
    }

    fn dim(&self, n: usize) -> usize {
        self.blocks.iter().map(|b| b.module.dim(n)).sum()
    }

    fn apply(&self, op: Op, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let m = op.target(n);
        let mut out = Vec::new();
        let mut start = 0;
        let entries = v.entries();
        while start < entries.len() {
            let (k, _) = self.locate(n, entries[start].0);
            let base = self.offsets[n][k];
            let end = self.offsets[n][k + 1];
            let stop = start + entries[start..].partition_point(|(i, _)| *i < end);
            let local = SparseVec::from_sorted(entries[start..stop].iter().map(|(i, c)| (i - base, c.clone())).collect());
            let image = self.blocks[k].module.apply(op, n, &local);
            let out_base = self.offsets[m][k];
            out.extend(image.into_entries().into_iter().map(|(i, c)| (out_base + i, c)));
            start = stop;
        }
        SparseVec::from_sorted(out)
    }

    fn twist_is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.module.twist_is_identity())
    }
}

/// Invariants of a family, in coordinates of a reduced echelon basis per
/// degree. The structure maps are read off through the pivot coordinates.
#[derive(Clone, Debug)]
pub struct Coinvariants<F: Field> {
    family: EquivariantComplexFamily<F>,
    images: Vec<Rref<F>>,
}

impl<F: Field> Coinvariants<F> {
    pub fn family(&self) -> &EquivariantComplexFamily<F> {
        &self.family
    }

    pub fn basis(&self, n: usize) -> &Rref<F> {
        &self.images[n]
    }

    /// The invariant vector with the given coordinates.
    pub fn lift(&self, n: usize, coords: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.images[n].combination(coords)
    }

    /// Coordinates of an invariant vector; `None` if `v` is not invariant.
    pub fn coordinates(&self, n: usize, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        self.images[n].coordinates(v)
    }

    /// Coordinates of the average of an arbitrary vector of the sum.
    pub fn project(&self, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.coordinates(n, &self.family.average(n, v)).expect("averages are invariant")
    }
}

impl<F: Field> CyclicModule<F> for Coinvariants<F> {
    fn field(&self) -> &F {
        self.family.field()
    }

    fn top(&self) -> usize {
        self.family.top()
    }

    fn dim(&self, n: usize) -> usize {
        self.images[n].rank()
    }

    fn apply(&self, op: Op, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let image = self.family.apply(op, n, &self.lift(n, v));
        self.coordinates(op.target(n), &image).expect("structure maps preserve invariants")
    }

    fn twist_is_identity(&self) -> bool {
        self.family.twist_is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_function_algebra, GSet};
    use crate::cyclic::mixed::mixed_from_cyclic;
    use crate::cyclic::module::check_cyclic_identity;
    use crate::field::Rationals;

    #[test]
    fn trivial_action_on_a_point() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::trivial(FiniteGroup::cyclic(2), 1)).unwrap();
        let fam = EquivariantComplexFamily::twisted_sectors(&a, &act, 3).unwrap();
        let cov = fam.coinvariants();
        assert_eq!(cov.dim(0), 2);
        check_cyclic_identity(&cov).unwrap();
        mixed_from_cyclic(&cov).unwrap();
    }

    #[test]
    fn swap_sectors() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::rotation(2)).unwrap();
        let fam = EquivariantComplexFamily::twisted_sectors(&a, &act, 3).unwrap();
        assert!(mixed_from_cyclic(&fam).is_err());
        let cov = fam.coinvariants();
        // (A ⊕ A)^{Z/2} in degree 0 is 2-dimensional
        assert_eq!(cov.dim(0), 2);
        let c = mixed_from_cyclic(&cov).unwrap();
        assert_eq!(c.top(), 3);
        let (loci, quotients) = EquivariantComplexFamily::fixed_loci(&a, &act, 3).unwrap();
        assert_eq!(quotients[1].dim(), 0);
        assert_eq!(loci.blocks()[1].module.dim(0), 0);
        assert_eq!(loci.coinvariants().dim(0), 1);
    }

    #[test]
    fn restriction_to_a_class() {
        let q = Rationals;
        let set = GSet::natural(3);
        let (a, act) = build_function_algebra(&q, &set).unwrap();
        let fam = EquivariantComplexFamily::twisted_sectors(&a, &act, 2).unwrap();
        let g = set.group();
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let class = g.conjugacy_class(t);
        let whole = fam.restrict(&class, &g.elements().collect::<Vec<_>>()).unwrap();
        let single = fam.restrict(&[t], &g.centralizer(t)).unwrap();
        for n in 0..=2 {
            assert_eq!(whole.coinvariants().dim(n), single.coinvariants().dim(n));
        }
        assert!(fam.restrict(&[t], &g.elements().collect::<Vec<_>>()).is_err());
    }
}
