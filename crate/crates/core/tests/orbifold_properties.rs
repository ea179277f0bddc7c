use orbihom::algebra::{build_function_algebra, FiniteGroup, GSet};
use orbihom::cyclic::EquivariantComplexFamily;
use orbihom::orbifold::{factorization_failure, sector_count_oracle, sector_decomposition, shapiro_check, OrbifoldComplexes};
use orbihom::Rationals;
use proptest::prelude::*;

fn group(which: usize) -> GSet {
    match which {
        0 => GSet::rotation(2),
        1 => GSet::rotation(3),
        2 => GSet::rotation(4),
        3 => GSet::natural(3),
        4 => GSet::permutation_group(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap(),
        _ => GSet::permutation_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap(),
    }
}

/// Coset spaces `G/<g>` and fixed points, up to 5 points in total.
fn random_gset(which: usize, generators: &[usize]) -> GSet {
    let g = group(which).group().clone();
    let mut set = GSet::trivial(g.clone(), 0);
    for &x in generators {
        let x = x % (g.order() + 1);
        let sub: Vec<usize> = if x == g.order() { g.elements().collect() } else { g.cyclic_subgroup(x) };
        let piece = GSet::cosets(g.clone(), &sub).unwrap();
        if set.size() + piece.size() <= 5 {
            set = set.disjoint_union(&piece).unwrap();
        }
    }
    if set.size() == 0 {
        set = GSet::trivial(g, 1);
    }
    set
}

fn gset_strategy() -> impl Strategy<Value = GSet> {
    (0usize..6, prop::collection::vec(0usize..9, 1..4)).prop_map(|(w, gens)| random_gset(w, &gens))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degree_zero_triple_agreement(set in gset_strategy()) {
        let (a, act) = build_function_algebra(&Rationals, &set).unwrap();
        let c = OrbifoldComplexes::new(&a, &act, 1).unwrap();
        let source = c.source_mixed().unwrap().hochschild().homology_dim(0);
        let sectors = c.sector_mixed().unwrap().hochschild().homology_dim(0);
        let loci = c.locus_mixed().unwrap().hochschild().homology_dim(0);
        let oracle = sector_count_oracle(&set);
        prop_assert_eq!(source, oracle);
        prop_assert_eq!(sectors, oracle);
        prop_assert_eq!(loci, oracle);
        prop_assert_eq!(sector_decomposition(&a, &act).unwrap().total_contribution(), oracle);
    }

    #[test]
    fn sector_decomposition_is_consistent(set in gset_strategy()) {
        let (a, act) = build_function_algebra(&Rationals, &set).unwrap();
        let dec = sector_decomposition(&a, &act).unwrap();
        prop_assert!(dec.is_consistent());
        for s in &dec.sectors {
            prop_assert_eq!(s.quotient.dim(), set.fixed_points(s.representative).len());
        }
    }

    #[test]
    fn psi_factors_through_phi(set in gset_strategy()) {
        let (a, act) = build_function_algebra(&Rationals, &set).unwrap();
        let c = OrbifoldComplexes::new(&a, &act, 2).unwrap();
        prop_assert_eq!(factorization_failure(&c, &c.phi(), &c.psi()).unwrap(), None);
    }
}

#[test]
fn free_action_collapses_to_the_quotient() {
    for n in [2, 3] {
        let set = GSet::left_regular(FiniteGroup::cyclic(n));
        let (a, act) = build_function_algebra(&Rationals, &set).unwrap();
        let c = OrbifoldComplexes::new(&a, &act, 3).unwrap();
        let h = c.source_mixed().unwrap().hochschild().homology_dims();
        assert_eq!(h[..3], [1, 0, 0]);
        // only the identity sector survives
        let fam = EquivariantComplexFamily::twisted_sectors(&a, &act, 3).unwrap();
        for g in 1..n {
            let r = shapiro_check(&fam, &[g], g).unwrap();
            assert!(r.passes());
            assert!(r.source_homology.iter().all(|&d| d == 0));
        }
        // J_g = A off the identity, so the loci target is C(Fun(S))_G = C(Fun(S/G))
        assert!(c.quotients().iter().skip(1).all(|q| q.dim() == 0));
        assert_eq!(c.locus_mixed().unwrap().hochschild().homology_dims()[..3], [1, 0, 0]);
    }
}
