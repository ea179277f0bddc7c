//! JSON reports. Objects are `serde_json::Map`s (B-tree backed), so keys come
//! out sorted and the output is byte-deterministic.

use orbihom::algebra::GSet;
use orbihom::coefficients::TotalComplex;
use orbihom::koszul::KoszulReport;
use orbihom::orbifold::{DegreeDim, HomologyReport, MapCheck, SectorDecomposition, TheoryReport};
use orbihom::{Field, FieldSpec};
use serde_json::{json, Value};

use crate::problem::{ModeDesc, ProblemFile};

pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn field_label(spec: FieldSpec) -> String {
    match spec {
        FieldSpec::Rationals => "Q".into(),
        FieldSpec::PrimeField(p) => format!("F_{p}"),
    }
}

pub fn input_summary(problem: &ProblemFile, algebra_dim: usize, group_order: usize) -> Value {
    json!({
        "algebra_dim": algebra_dim,
        "coefficients": problem.coefficients,
        "field": field_label(problem.field.spec()),
        "group_order": group_order,
        "mode": match problem.mode {
            ModeDesc::Verify => "verify",
            ModeDesc::ReportOnly => "report-only",
        },
        "truncation": problem.truncation,
    })
}

fn degree_dims(dims: &[DegreeDim]) -> Value {
    dims.iter().map(|d| json!({"degree": d.degree, "dim": d.dim, "valid": d.valid})).collect()
}

fn map_checks(checks: &[MapCheck]) -> Value {
    let witness = checks.iter().find(|c| !c.is_isomorphism).map(|c| c.degree);
    json!({
        "checks": checks
            .iter()
            .map(|c| json!({"degree": c.degree, "isomorphism": c.is_isomorphism, "rank": c.rank}))
            .collect::<Vec<_>>(),
        "isomorphism": witness.is_none(),
        "witness_degree": witness,
    })
}

fn theory(t: &TheoryReport) -> Value {
    json!({
        "homology": {
            "loci": degree_dims(&t.psi_target),
            "sectors": degree_dims(&t.phi_target),
            "source": degree_dims(&t.source),
        },
        "phi": map_checks(&t.phi),
        "psi": map_checks(&t.psi),
        "theory": t.theory,
    })
}

pub fn sector_table<F: Field>(dec: &SectorDecomposition<F>, set: Option<&GSet>) -> Value {
    let classes: Vec<Value> = dec
        .sectors
        .iter()
        .map(|s| {
            let mut row = json!({
                "class": s.class,
                "centralizer_order": s.centralizer.len(),
                "contribution": s.contribution,
                "quotient_dim": s.quotient.dim(),
                "representative": s.representative,
            });
            if let Some(set) = set {
                row["fixed_set_size"] = json!(set.fixed_points(s.representative).len());
            }
            row
        })
        .collect();
    json!({
        "classes": classes,
        "consistent": dec.is_consistent(),
        "total_contribution": dec.total_contribution(),
    })
}

pub fn verify_report<F: Field>(input: Value, report: &HomologyReport<F>, set: Option<&GSet>) -> Value {
    json!({
        "command": "verify",
        "factorization": {
            "holds": report.factorization_failure.is_none(),
            "witness_degree": report.factorization_failure,
        },
        "hochschild": theory(&report.hochschild),
        "input": input,
        "sectors": sector_table(&report.sectors, set),
        "theories": report.theories.iter().map(theory).collect::<Vec<_>>(),
        "valid_degree": report.valid_degree,
        "verdict": report.verdict.label(),
    })
}

/// A comparison map failed to commute with `b` or `B`.
pub fn mixed_map_failure(input: Value, operator: &str, degree: usize, witness: usize) -> Value {
    json!({
        "command": "verify",
        "failure": {
            "degree": degree,
            "operator": operator,
            "witness_basis_vector": witness,
        },
        "input": input,
        "verdict": "FAIL",
    })
}

pub fn total_homology<F: Field>(t: &TotalComplex<F>) -> Value {
    json!({
        "homology": t
            .homology_dims()
            .into_iter()
            .map(|(degree, dim, valid)| json!({"degree": degree, "dim": dim, "valid": valid}))
            .collect::<Vec<_>>(),
        "theory": t.coefficient().kind.label(),
    })
}

pub fn homology_report(input: Value, target: &str, chain_dim: usize, theories: Vec<Value>) -> Value {
    json!({
        "algebra": target,
        "command": "homology",
        "input": input,
        "theories": theories,
        "underlying_dim": chain_dim,
    })
}

pub fn koszul_report(field: FieldSpec, matrix: Vec<Vec<String>>, fixed_space_is_zero: bool, r: &KoszulReport) -> Value {
    let degrees: Vec<Value> = r
        .homology
        .iter()
        .enumerate()
        .map(|(d, dims)| json!({"degree": d, "dims": dims, "total": r.total(d)}))
        .collect();
    json!({
        "command": "koszul",
        "dim": r.dim,
        "field": field_label(field),
        "first_failure": r.first_failure,
        "fixed_space_is_zero": fixed_space_is_zero,
        "homology": degrees,
        "matrix": matrix,
        "max_degree": r.max_degree,
        "order": r.order,
        "verdict": if r.quasi_iso_to_k() { "QUASI-ISO-TO-k" } else { "NOT-QUASI-ISO" },
    })
}

pub fn sectors_report(input: Value, table: Value) -> Value {
    json!({
        "command": "sectors",
        "input": input,
        "sectors": table,
    })
}
