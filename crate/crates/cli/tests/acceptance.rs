//! The ten acceptance criteria, run in order. Each prints one PASS/FAIL line.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use orbihom::algebra::{
    build_crossed_product, build_function_algebra, build_matrix_algebra, build_truncated_polynomial, conjugation_matrix,
    FinDimAlgebra, FiniteGroup, GSet, GroupAction,
};
use orbihom::coefficients::{connes_sbi_check, total_complex, WCoefficient, WKind};
use orbihom::cyclic::{
    apply_b, check_cyclic_identity, check_mixed_identities, check_paracyclic_identities, check_simplicial_identities,
    check_torsor_identity, mixed_from_cyclic, CyclicModule, EquivariantComplexFamily, TwistedCyclicModule,
};
use orbihom::koszul::{block_sum, convolve, koszul_exactness_report, LinearKoszulData};
use orbihom::linalg::{ChainComplex, SparseMatrix, SparseVec};
use orbihom::orbifold::{factorization_failure, pullback_square, sector_count_oracle, shapiro_check, OrbifoldComplexes};
use orbihom::{Field, Rationals};
use orbihom_cli::ProblemFile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

const Q: Rationals = Rationals;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

const DESK_FIXTURES: [&str; 6] =
    ["z2_point.json", "z2_swap.json", "z2_three_points.json", "z3_free.json", "s3_natural.json", "z4_rotation.json"];

fn desk_gsets() -> Vec<(&'static str, GSet)> {
    DESK_FIXTURES
        .iter()
        .map(|name| {
            let p = ProblemFile::load(std::path::Path::new(&fixture(name))).unwrap();
            (*name, p.gset().unwrap().unwrap())
        })
        .collect()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// The algebras of criteria 1 and 2 with their group actions.
fn operator_fixtures() -> Vec<(&'static str, FinDimAlgebra<Rationals>, GroupAction<Rationals>)> {
    let mut out = Vec::new();
    for (name, set) in [
        ("k", GSet::trivial(FiniteGroup::cyclic(2), 1)),
        ("k x k, swap", GSet::rotation(2)),
        ("Fun(3), S3", GSet::natural(3)),
    ] {
        let (a, act) = build_function_algebra(&Q, &set).unwrap();
        out.push((name, a, act));
    }
    let m2 = build_matrix_algebra(&Q, 2);
    let p = vec![vec![Q.one(), Q.zero()], vec![Q.zero(), Q.from_i64(-1)]];
    let conj = conjugation_matrix(&Q, &p, &p);
    let act = GroupAction::new(FiniteGroup::cyclic(2), &m2, vec![SparseMatrix::identity(&Q, 4), conj]).unwrap();
    out.push(("M2, conjugation by diag(1,-1)", m2, act));
    let dual = build_truncated_polynomial(&Q, 2);
    let minus = SparseMatrix::from_i64(&Q, &[vec![1, 0], vec![0, -1]]);
    let act = GroupAction::new(FiniteGroup::cyclic(2), &dual, vec![SparseMatrix::identity(&Q, 2), minus]).unwrap();
    out.push(("k[x]/x^2, x -> -x", dual, act));
    out
}

fn all_cyclic_identities(m: &TwistedCyclicModule<Rationals>) -> Result<(), orbihom::Error> {
    check_simplicial_identities(m)?;
    check_paracyclic_identities(m)?;
    check_cyclic_identity(m)?;
    check_mixed_identities(m)
}

fn criterion_1() -> Check {
    for (name, a, act) in operator_fixtures() {
        let m = TwistedCyclicModule::untwisted(&a, 4).unwrap();
        all_cyclic_identities(&m).map_err(|e| format!("{name}: {e}"))?;
        let cross = build_crossed_product(&a, &act).unwrap();
        let m = TwistedCyclicModule::untwisted(&cross.algebra, 4).unwrap();
        all_cyclic_identities(&m).map_err(|e| format!("{name}, crossed product: {e}"))?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    for (name, a, act) in operator_fixtures() {
        for g in act.group().elements() {
            let m = TwistedCyclicModule::from_action(&a, &act, g, 4).unwrap();
            check_torsor_identity(&m).map_err(|e| format!("{name}, g = {g}: {e}"))?;
            check_paracyclic_identities(&m).map_err(|e| format!("{name}, g = {g}: {e}"))?;
        }
    }
    Ok(())
}

fn valid_dims(side: &Value) -> Vec<u64> {
    side.as_array().unwrap().iter().filter(|d| d["valid"] == true).map(|d| d["dim"].as_u64().unwrap()).collect()
}

fn criterion_3() -> Check {
    for (name, set) in desk_gsets() {
        let o = orbihom_cli::run(["orbihom", "verify", "--no-timing", &fixture(name)]);
        ensure(o.code == 0, || format!("{name}: exit {} {}", o.code, o.stderr))?;
        let r: Value = serde_json::from_str(&o.stdout).unwrap();
        ensure(r["verdict"] == "PASS", || format!("{name}: verdict {}", r["verdict"]))?;
        let theories: Vec<&str> = r["theories"].as_array().unwrap().iter().map(|t| t["theory"].as_str().unwrap()).collect();
        ensure(theories == ["HH", "HC", "HP", "HN"], || format!("{name}: theories {theories:?}"))?;
        let hh = &r["hochschild"];
        let checked: Vec<i64> = hh["psi"]["checks"].as_array().unwrap().iter().map(|c| c["degree"].as_i64().unwrap()).collect();
        ensure(checked == [0, 1, 2], || format!("{name}: b-homology degrees {checked:?}"))?;
        let source = valid_dims(&hh["homology"]["source"]);
        let oracle = sector_count_oracle(&set) as u64;
        ensure(source[0] == oracle, || format!("{name}: HH_0 = {} but the oracle gives {oracle}", source[0]))?;
        ensure(r["sectors"]["total_contribution"] == oracle, || format!("{name}: sector total"))?;
    }
    Ok(())
}

fn random_group(rng: &mut ChaCha8Rng) -> FiniteGroup {
    match rng.gen_range(0..11) {
        n @ 0..=6 => FiniteGroup::cyclic(n + 2),
        7 => FiniteGroup::symmetric(3),
        8 => GSet::permutation_group(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap().group().clone(),
        9 => GSet::permutation_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap().group().clone(),
        // Z/2 x Z/4
        _ => GSet::permutation_group(6, &[vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 4, 5, 2]]).unwrap().group().clone(),
    }
}

/// A union of coset spaces `G/<g>` and `G/G`, with 1 to 5 points.
fn random_gset(rng: &mut ChaCha8Rng) -> GSet {
    let g = random_group(rng);
    let mut set = GSet::trivial(g.clone(), 0);
    for _ in 0..rng.gen_range(1..4) {
        let x = rng.gen_range(0..=g.order());
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

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..20 {
        let set = random_gset(&mut rng);
        assert!(set.group().order() <= 8 && (1..=5).contains(&set.size()));
        let (a, act) = build_function_algebra(&Q, &set).unwrap();
        let c = OrbifoldComplexes::new(&a, &act, 1).unwrap();
        let source = c.source_mixed().unwrap().hochschild().homology_dim(0);
        let target = c.locus_mixed().unwrap().hochschild().homology_dim(0);
        let oracle = sector_count_oracle(&set);
        ensure(source == oracle && target == oracle, || {
            format!(
                "set {i} (|G| = {}, |S| = {}): HH_0 = {source}, oracle = {oracle}, target = {target}",
                set.group().order(),
                set.size()
            )
        })?;
    }
    Ok(())
}

fn hochschild_dims(a: &FinDimAlgebra<Rationals>, top: usize) -> Vec<usize> {
    let c = mixed_from_cyclic(&TwistedCyclicModule::untwisted(a, top).unwrap()).unwrap();
    c.hochschild().homology_dims()[..top].to_vec()
}

fn criterion_5() -> Check {
    let point = build_function_algebra(&Q, &GSet::trivial(FiniteGroup::trivial(), 1)).unwrap().0;
    let oracle = hochschild_dims(&point, 3);
    ensure(oracle == [1, 0, 0], || format!("HH(k) = {oracle:?}"))?;
    for n in [2, 3] {
        let (a, act) = build_function_algebra(&Q, &GSet::left_regular(FiniteGroup::cyclic(n))).unwrap();
        let cross = build_crossed_product(&a, &act).unwrap();
        let dims = hochschild_dims(&cross.algebra, 3);
        ensure(dims == oracle, || format!("Fun(Z/{n}) # Z/{n}: HH = {dims:?}"))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let k = build_function_algebra(&Q, &GSet::trivial(FiniteGroup::trivial(), 1)).unwrap().0;
    let c = mixed_from_cyclic(&TwistedCyclicModule::untwisted(&k, 5).unwrap()).unwrap();
    let hc = total_complex(&c, WCoefficient::new(WKind::Cyclic)).unwrap();
    let dims: Vec<(usize, bool)> = (0..=4).map(|n| hc.hc_dim(n)).collect();
    ensure(dims == [(1, true), (0, true), (1, true), (0, true), (1, true)], || format!("HC(k) = {dims:?}"))?;
    for n in 2..=4 {
        let r = connes_sbi_check(&c, n).map_err(|e| e.to_string())?;
        ensure(r.is_exact(), || format!("SBI not exact at n = {n}: {r:?}"))?;
    }
    Ok(())
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * determinant(&minor)
        })
        .sum()
}

fn to_rows(m: &SparseMatrix<num_rational::BigRational>) -> Vec<Vec<i64>> {
    use num_traits::ToPrimitive;
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).map_or(0, |x| x.to_integer().to_i64().unwrap())).collect())
        .collect()
}

fn criterion_7() -> Check {
    let mat = |rows: &[Vec<i64>]| SparseMatrix::from_i64(&Q, rows);
    let minus = mat(&[vec![-1]]);
    let one = mat(&[vec![1]]);
    let id2 = mat(&[vec![1, 0], vec![0, 1]]);
    let rot3 = mat(&[vec![0, -1], vec![1, -1]]);
    let rot4 = mat(&[vec![0, -1], vec![1, 0]]);
    let base = [
        ("[-1]", minus.clone()),
        ("identity", id2.clone()),
        ("order-3 rotation", rot3.clone()),
        ("order-4 rotation", rot4.clone()),
    ];
    let sums = [
        ("[-1] + order-3 rotation", minus.clone(), rot3.clone()),
        ("order-4 + order-3 rotation", rot4.clone(), rot3.clone()),
        ("order-3 rotation + [1]", rot3.clone(), one.clone()),
        ("[-1] + [-1]", minus.clone(), minus.clone()),
    ];
    let mut cases: Vec<(String, SparseMatrix<_>)> = base.iter().map(|(n, m)| (n.to_string(), m.clone())).collect();
    for (n, a, b) in &sums {
        cases.push((n.to_string(), block_sum(a, b).unwrap()));
    }
    for (name, m) in &cases {
        let rows = to_rows(m);
        let i_minus_m: Vec<Vec<i64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, &x)| i64::from(i == j) - x).collect())
            .collect();
        let data = LinearKoszulData::new(&Q, m.clone()).map_err(|e| format!("{name}: {e}"))?;
        let report = koszul_exactness_report(&data, 5);
        ensure(report.quasi_iso_to_k() == (determinant(&i_minus_m) != 0), || format!("{name}: verdict {report:?}"))?;
    }
    for (name, a, b) in &sums {
        let ra = koszul_exactness_report(&LinearKoszulData::new(&Q, a.clone()).unwrap(), 5);
        let rb = koszul_exactness_report(&LinearKoszulData::new(&Q, b.clone()).unwrap(), 5);
        let rs = koszul_exactness_report(&LinearKoszulData::new(&Q, block_sum(a, b).unwrap()).unwrap(), 5);
        ensure(rs.homology == convolve(&ra.homology, &rb.homology), || format!("{name}: convolution"))?;
    }
    Ok(())
}

/// b-homology of `A♮_g` in degrees `0..top`.
fn twisted_hochschild(a: &FinDimAlgebra<Rationals>, act: &GroupAction<Rationals>, g: usize, top: usize) -> Vec<usize> {
    let m = TwistedCyclicModule::from_action(a, act, g, top).unwrap();
    let dims: Vec<usize> = (0..=top).map(|n| m.dim(n)).collect();
    let diffs = (1..=top)
        .map(|n| SparseMatrix::from_columns(dims[n - 1], (0..dims[n]).map(|x| apply_b(&m, n, &SparseVec::unit(&Q, x))).collect()))
        .collect();
    ChainComplex::new(&Q, dims, diffs).unwrap().homology_dims()[..top].to_vec()
}

fn criterion_8() -> Check {
    let mut free_blocks = 0;
    for (name, set) in desk_gsets() {
        let (a, act) = build_function_algebra(&Q, &set).unwrap();
        let family = EquivariantComplexFamily::twisted_sectors(&a, &act, 3).unwrap();
        for class in set.group().conjugacy_classes() {
            let r = shapiro_check(&family, &class, class[0]).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.passes(), || format!("{name}, class {class:?}: {r:?}"))?;
        }
        for g in set.group().elements().filter(|&g| g != set.group().identity() && set.fixed_points(g).is_empty()) {
            let h = twisted_hochschild(&a, &act, g, 3);
            ensure(h.iter().all(|&d| d == 0), || format!("{name}, g = {g}: HH = {h:?}"))?;
            free_blocks += 1;
        }
    }
    ensure(free_blocks > 0, || "no free blocks among the fixtures".into())
}

fn criterion_9() -> Check {
    for (name, set) in desk_gsets() {
        let (a, act) = build_function_algebra(&Q, &set).unwrap();
        let c = OrbifoldComplexes::new(&a, &act, 3).unwrap();
        let failure = factorization_failure(&c, &c.phi(), &c.psi()).map_err(|e| e.to_string())?;
        ensure(failure.is_none(), || format!("{name}: factorization fails in degree {failure:?}"))?;
    }
    let (a, act) = build_function_algebra(&Q, &GSet::rotation(2)).unwrap();
    let (b, bct) = build_function_algebra(&Q, &GSet::trivial(FiniteGroup::cyclic(2), 1)).unwrap();
    let two = OrbifoldComplexes::new(&a, &act, 3).unwrap();
    let one = OrbifoldComplexes::new(&b, &bct, 3).unwrap();
    // pulling back functions along the map from 2 points to 1
    let m = SparseMatrix::from_i64(&Q, &[vec![1], vec![1]]);
    let square = pullback_square(&one, &two, &m).map_err(|e| e.to_string())?;
    ensure(square.all_commute(), || format!("pullback square per degree: {:?}", square.commutes))
}

fn criterion_10() -> Check {
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_orbihom"))
            .args(["verify", "--no-timing", &fixture("s3_natural.json")])
            .output()
            .unwrap()
    };
    let (first, second) = (run(), run());
    ensure(first.status.success(), || String::from_utf8_lossy(&first.stderr).into_owned())?;
    ensure(!first.stdout.is_empty() && first.stdout == second.stdout, || "reports differ".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("operator identities up to N = 4", criterion_1, Duration::from_secs(60)),
        ("twisted torsor identity", criterion_2, Duration::from_secs(30)),
        ("verify at desk scale", criterion_3, Duration::from_secs(600)),
        ("triple agreement in degree 0", criterion_4, Duration::from_secs(120)),
        ("free-action collapse", criterion_5, Duration::from_secs(60)),
        ("classical cyclic values and SBI", criterion_6, Duration::from_secs(10)),
        ("Koszul exactness", criterion_7, Duration::from_secs(30)),
        ("Shapiro reduction", criterion_8, Duration::from_secs(120)),
        ("factorization and pullback square", criterion_9, Duration::from_secs(60)),
        ("deterministic reports", criterion_10, Duration::from_secs(600)),
    ];
    let mut failures = Vec::new();
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if result.is_ok() && elapsed > budget {
            result = Err(format!("took {elapsed:.1?}, budget {budget:?}"));
        }
        match &result {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({elapsed:.1?})", i + 1),
            Err(e) => {
                println!("criterion {:>2}: FAIL  {name} ({elapsed:.1?}): {e}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
