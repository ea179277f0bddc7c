use std::collections::BTreeSet;

use crate::algebra::{fixed_ideal, quotient_algebra, FinDimAlgebra, FiniteGroup, GSet, GroupAction, Quotient};
use crate::cyclic::{check_mixed_map, mixed_from_cyclic, CyclicModule, EquivariantComplexFamily};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, ChainMap, SparseMatrix, SparseVec};

/// One conjugacy class `O` with its representative `g`, the centralizer
/// `C_g` and the fixed quotient `A/J_g`.
#[derive(Clone, Debug)]
pub struct Sector<F: Field> {
    pub class: Vec<usize>,
    pub representative: usize,
    pub centralizer: Vec<usize>,
    pub quotient: Quotient<F>,
    /// `dim HH_0((C(A/J_g))_{C_g})`.
    pub contribution: usize,
}

#[derive(Clone, Debug)]
pub struct SectorDecomposition<F: Field> {
    pub group: FiniteGroup,
    pub sectors: Vec<Sector<F>>,
}

impl<F: Field> SectorDecomposition<F> {
    pub fn total_contribution(&self) -> usize {
        self.sectors.iter().map(|s| s.contribution).sum()
    }

    /// `|O| · |C_g| = |G|` for every class and the classes partition `G`.
    pub fn is_consistent(&self) -> bool {
        let order = self.group.order();
        let mut seen = BTreeSet::new();
        for s in &self.sectors {
            if s.class.len() * s.centralizer.len() != order || !s.class.contains(&s.representative) {
                return false;
            }
            for &g in &s.class {
                if !seen.insert(g) {
                    return false;
                }
            }
        }
        seen.len() == order
    }
}

/// Conjugacy classes, centralizers and fixed quotients; representatives are
/// the smallest element of each class.
pub fn sector_decomposition<F: Field>(algebra: &FinDimAlgebra<F>, action: &GroupAction<F>) -> Result<SectorDecomposition<F>> {
    let group = action.group().clone();
    let (loci, _) = EquivariantComplexFamily::fixed_loci(algebra, action, 1)?;
    let mut sectors = Vec::new();
    for class in group.conjugacy_classes() {
        let g = class[0];
        let centralizer = group.centralizer(g);
        let quotient = quotient_algebra(algebra, &fixed_ideal(algebra, action, g)?)?;
        let restricted = loci.restrict(&[g], &centralizer)?;
        let c = mixed_from_cyclic(&restricted.coinvariants())?;
        let contribution = c.hochschild().homology_dim(0);
        sectors.push(Sector { class, representative: g, centralizer, quotient, contribution });
    }
    Ok(SectorDecomposition { group, sectors })
}

/// Number of `G`-orbits on `{(g, x) : gx = x}` under `h·(g, x) = (hgh^{-1}, hx)`,
/// by direct enumeration.
pub fn sector_count_oracle(set: &GSet) -> usize {
    let group = set.group();
    let n = set.size();
    let mut seen = vec![false; group.order() * n];
    let mut orbits = 0;
    for g in group.elements() {
        for x in 0..n {
            if set.act(g, x) != x || seen[g * n + x] {
                continue;
            }
            orbits += 1;
            for h in group.elements() {
                seen[group.conjugate(h, g) * n + set.act(h, x)] = true;
            }
        }
    }
    orbits
}

/// Per-degree comparison of `(A♮_g)_{C_g}` with `(⊕_{g' ∈ O} A♮_{g'})_G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapiroDegree {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapiroReport {
    pub class: Vec<usize>,
    pub representative: usize,
    pub centralizer_order: usize,
    pub degrees: Vec<ShapiroDegree>,
    /// The include-then-average map commutes with `b` and `B`.
    pub commutes: bool,
    /// b-homology dims of both sides in the valid window.
    pub source_homology: Vec<usize>,
    pub target_homology: Vec<usize>,
}

impl ShapiroReport {
    pub fn passes(&self) -> bool {
        self.commutes
            && self.degrees.iter().all(|d| d.source_dim == d.target_dim && d.rank == d.source_dim)
            && self.source_homology == self.target_homology
    }
}

/// Include the block over `g` and average over `G`. `family` must have the
/// whole group acting and contain the class of `g`.
pub fn shapiro_check<F: Field>(family: &EquivariantComplexFamily<F>, class: &[usize], g: usize) -> Result<ShapiroReport> {
    let group = family.group();
    if !class.contains(&g) {
        return Err(Error::BadAction(format!("{g} is not in the given class")));
    }
    let mut class = class.to_vec();
    class.sort_unstable();
    if class != group.conjugacy_class(g) {
        return Err(Error::BadAction("not a full conjugacy class".into()));
    }
    let everything: Vec<usize> = group.elements().collect();
    let centralizer = group.centralizer(g);
    let single = family.restrict(&[g], &centralizer)?.coinvariants();
    let whole_family = family.restrict(&class, &everything)?;
    let whole = whole_family.coinvariants();
    let f = family.field();
    let k = whole_family.block_index(g).unwrap();
    let top = single.top();
    let mut maps = Vec::new();
    let mut degrees = Vec::new();
    for n in 0..=top {
        let cols = (0..single.dim(n))
            .map(|c| {
                let v = single.lift(n, &SparseVec::unit(f, c));
                whole.project(n, &whole_family.embed(n, k, &v))
            })
            .collect();
        let m = SparseMatrix::from_columns(whole.dim(n), cols);
        degrees.push(ShapiroDegree { degree: n, source_dim: single.dim(n), target_dim: whole.dim(n), rank: rank(f, &m) });
        maps.push(m);
    }
    let src = mixed_from_cyclic(&single)?;
    let tgt = mixed_from_cyclic(&whole)?;
    let commutes = match check_mixed_map(&ChainMap::new(maps), &src, &tgt) {
        Ok(()) => true,
        Err(Error::NotAMixedMap { .. }) => false,
        Err(e) => return Err(e),
    };
    let valid = src.valid_degree();
    let source_homology = src.hochschild().homology_dims()[..=valid].to_vec();
    let target_homology = tgt.hochschild().homology_dims()[..=valid].to_vec();
    Ok(ShapiroReport {
        class,
        representative: g,
        centralizer_order: centralizer.len(),
        degrees,
        commutes,
        source_homology,
        target_homology,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_function_algebra;
    use crate::field::Rationals;

    #[test]
    fn oracle_examples() {
        assert_eq!(sector_count_oracle(&GSet::trivial(FiniteGroup::trivial(), 4)), 4);
        assert_eq!(sector_count_oracle(&GSet::rotation(2)), 1);
        assert_eq!(sector_count_oracle(&GSet::natural(3)), 2);
        // Z/2 on a point: (e, *) and (g, *) are separate orbits
        assert_eq!(sector_count_oracle(&GSet::trivial(FiniteGroup::cyclic(2), 1)), 2);
    }

    #[test]
    fn s3_classes() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::natural(3)).unwrap();
        let dec = sector_decomposition(&a, &act).unwrap();
        assert!(dec.is_consistent());
        let mut orders: Vec<usize> = dec.sectors.iter().map(|s| s.centralizer.len()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3, 6]);
        let contributions: Vec<(usize, usize)> =
            dec.sectors.iter().map(|s| (s.class.len(), s.contribution)).collect();
        assert!(contributions.contains(&(1, 1)) && contributions.contains(&(3, 1)) && contributions.contains(&(2, 0)));
        assert_eq!(dec.total_contribution(), 2);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::rotation(4)).unwrap();
        let dec = sector_decomposition(&a, &act).unwrap();
        assert!(dec.sectors.iter().all(|s| s.class.len() == 1 && s.centralizer.len() == 4));
    }

    #[test]
    fn shapiro_on_transpositions() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::natural(3)).unwrap();
        let fam = EquivariantComplexFamily::twisted_sectors(&a, &act, 3).unwrap();
        let group = act.group();
        for class in group.conjugacy_classes() {
            let r = shapiro_check(&fam, &class, class[0]).unwrap();
            assert!(r.passes(), "{r:?}");
        }
    }

    #[test]
    fn free_twisted_block_is_acyclic() {
        let q = Rationals;
        let (a, act) = build_function_algebra(&q, &GSet::rotation(3)).unwrap();
        let fam = EquivariantComplexFamily::twisted_sectors(&a, &act, 3).unwrap();
        let r = shapiro_check(&fam, &[1], 1).unwrap();
        assert!(r.passes());
        assert!(r.source_homology.iter().all(|&d| d == 0));
    }
}
