use crate::algebra::{build_function_algebra, FinDimAlgebra, GSet, GroupAction};
use crate::coefficients::{induced_on_total, total_complex, WCoefficient, WKind};
use crate::cyclic::{check_mixed_map, TruncatedMixedComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::ChainMap;

use super::maps::{factorization_failure, OrbifoldComplexes};
use super::sectors::{sector_decomposition, SectorDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Verify,
    /// Computes everything but asserts nothing; for algebras outside the
    /// smooth commutative setting.
    ReportOnly,
}

#[derive(Clone, Debug)]
pub struct OrbifoldProblem<F: Field> {
    pub algebra: FinDimAlgebra<F>,
    pub action: GroupAction<F>,
    pub truncation: usize,
    pub coefficients: Vec<WCoefficient>,
    pub mode: Mode,
}

impl<F: Field> OrbifoldProblem<F> {
    pub fn new(algebra: FinDimAlgebra<F>, action: GroupAction<F>, truncation: usize) -> Self {
        Self {
            algebra,
            action,
            truncation,
            coefficients: WKind::ALL.into_iter().map(WCoefficient::new).collect(),
            mode: Mode::Verify,
        }
    }

    /// Functions on a finite `G`-set.
    pub fn from_gset(field: &F, set: &GSet, truncation: usize) -> Result<Self> {
        let (algebra, action) = build_function_algebra(field, set)?;
        Ok(Self::new(algebra, action, truncation))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeDim {
    pub degree: i64,
    pub dim: usize,
    pub valid: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapCheck {
    pub degree: i64,
    pub rank: usize,
    pub is_isomorphism: bool,
}

/// Dimensions of one theory on the source and both targets, with the
/// induced maps in every valid degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryReport {
    pub theory: String,
    pub source: Vec<DegreeDim>,
    pub phi_target: Vec<DegreeDim>,
    pub psi_target: Vec<DegreeDim>,
    pub phi: Vec<MapCheck>,
    pub psi: Vec<MapCheck>,
}

impl TheoryReport {
    pub fn all_isomorphisms(&self) -> bool {
        self.phi.iter().chain(&self.psi).all(|m| m.is_isomorphism)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    ReportOnly,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::ReportOnly => "REPORT-ONLY",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HomologyReport<F: Field> {
    pub truncation: usize,
    pub valid_degree: usize,
    /// b-homology.
    pub hochschild: TheoryReport,
    /// `HC_•(−, W)` for each requested `W`.
    pub theories: Vec<TheoryReport>,
    /// `ψ = (⊕ π_g^{⊗•}) ∘ φ`; `Some(n)` is the first degree where it fails.
    pub factorization_failure: Option<usize>,
    pub sectors: SectorDecomposition<F>,
    pub verdict: Verdict,
}

fn b_theory<F: Field>(
    field: &F,
    source: &TruncatedMixedComplex<F>,
    targets: [(&TruncatedMixedComplex<F>, &ChainMap<F>); 2],
) -> Result<TheoryReport> {
    let src = source.hochschild();
    let dims = |c: &TruncatedMixedComplex<F>| {
        let h = c.hochschild().homology_dims();
        (0..=c.top()).map(|n| DegreeDim { degree: n as i64, dim: h[n], valid: c.restrict_valid_window(n) }).collect()
    };
    let mut checks = Vec::new();
    for (target, map) in targets {
        let tgt = target.hochschild();
        let valid = source.valid_degree().min(target.valid_degree());
        let mut out = Vec::new();
        for n in 0..=valid {
            let ind = map.induced(field, n, &src, &tgt)?;
            out.push(MapCheck { degree: n as i64, rank: ind.rank, is_isomorphism: ind.is_isomorphism });
        }
        checks.push(out);
    }
    let psi = checks.pop().unwrap();
    let phi = checks.pop().unwrap();
    Ok(TheoryReport {
        theory: "b".into(),
        source: dims(source),
        phi_target: dims(targets[0].0),
        psi_target: dims(targets[1].0),
        phi,
        psi,
    })
}

fn w_theory<F: Field>(
    w: WCoefficient,
    source: &TruncatedMixedComplex<F>,
    targets: [(&TruncatedMixedComplex<F>, &ChainMap<F>); 2],
) -> Result<TheoryReport> {
    let src = total_complex(source, w)?;
    let dims = |t: &crate::coefficients::TotalComplex<F>| {
        t.homology_dims().into_iter().map(|(degree, dim, valid)| DegreeDim { degree, dim, valid }).collect::<Vec<_>>()
    };
    let mut target_dims = Vec::new();
    let mut checks = Vec::new();
    for (target, map) in targets {
        let tgt = total_complex(target, w)?;
        let mut out = Vec::new();
        for m in src.min_degree()..=src.valid_max().min(tgt.valid_max()) {
            let ind = induced_on_total(&map.maps, &src, &tgt, m)?;
            out.push(MapCheck { degree: m, rank: ind.rank, is_isomorphism: ind.is_isomorphism });
        }
        target_dims.push(dims(&tgt));
        checks.push(out);
    }
    let psi = checks.pop().unwrap();
    let phi = checks.pop().unwrap();
    let psi_target = target_dims.pop().unwrap();
    let phi_target = target_dims.pop().unwrap();
    Ok(TheoryReport { theory: w.kind.label().into(), source: dims(&src), phi_target, psi_target, phi, psi })
}

/// Builds both comparison maps, checks that they are maps of mixed
/// complexes and that `ψ` factors through `φ`, and compares homology.
/// PASS iff every induced map in every valid degree is an isomorphism.
pub fn verify_theorem<F: Field>(problem: &OrbifoldProblem<F>) -> Result<HomologyReport<F>> {
    let n = problem.truncation;
    if n < 2 {
        return Err(Error::TruncationTooSmall(n));
    }
    let alg = &problem.algebra;
    let field = alg.field();
    field.spec().check_group_order(problem.action.group().order())?;
    if problem.mode == Mode::Verify {
        alg.check_commutative()?;
        if !alg.is_separable() {
            return Err(Error::NotSmooth);
        }
    }
    let c = OrbifoldComplexes::new(alg, &problem.action, n)?;
    let phi = c.phi();
    let psi = c.psi();
    let source = c.source_mixed()?;
    let sector = c.sector_mixed()?;
    let locus = c.locus_mixed()?;
    check_mixed_map(&phi, &source, &sector)?;
    check_mixed_map(&psi, &source, &locus)?;
    let factorization_failure = factorization_failure(&c, &phi, &psi)?;
    let targets = [(&sector, &phi), (&locus, &psi)];
    let hochschild = b_theory(field, &source, targets)?;
    let theories = problem
        .coefficients
        .iter()
        .map(|&w| w_theory(w, &source, targets))
        .collect::<Result<Vec<_>>>()?;
    let sectors = sector_decomposition(alg, &problem.action)?;
    let holds = factorization_failure.is_none()
        && hochschild.all_isomorphisms()
        && theories.iter().all(TheoryReport::all_isomorphisms);
    let verdict = match (problem.mode, holds) {
        (Mode::ReportOnly, _) => Verdict::ReportOnly,
        (Mode::Verify, true) => Verdict::Pass,
        (Mode::Verify, false) => Verdict::Fail,
    };
    Ok(HomologyReport {
        truncation: n,
        valid_degree: source.valid_degree(),
        hochschild,
        theories,
        factorization_failure,
        sectors,
        verdict,
    })
}
