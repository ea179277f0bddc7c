//! Problem files: JSON descriptions of a group acting on a finite set or on a
//! finite-dimensional algebra.

use orbihom::algebra::{build_function_algebra, FinDimAlgebra, FiniteGroup, GSet, GroupAction};
use orbihom::coefficients::{WCoefficient, WKind};
use orbihom::linalg::{SparseMatrix, SparseVec};
use orbihom::orbifold::{Mode, OrbifoldProblem};
use orbihom::{Error, Field, FieldSpec};
use serde::{Deserialize, Serialize};

pub const DEFAULT_TRUNCATION: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldDesc {
    Q,
    Fp { p: u64 },
}

impl FieldDesc {
    pub fn spec(&self) -> FieldSpec {
        match *self {
            FieldDesc::Q => FieldSpec::Rationals,
            FieldDesc::Fp { p } => FieldSpec::PrimeField(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDesc {
    Cyclic { n: usize },
    Symmetric { n: usize },
    Table { rows: Vec<Vec<usize>> },
}

impl GroupDesc {
    pub fn build(&self) -> Result<FiniteGroup, Error> {
        match self {
            GroupDesc::Cyclic { n: 0 } | GroupDesc::Symmetric { n: 0 } => {
                Err(Error::BadGroup("group order must be positive".into()))
            }
            GroupDesc::Cyclic { n } => Ok(FiniteGroup::cyclic(*n)),
            GroupDesc::Symmetric { n } if *n > 6 => Err(Error::BadGroup(format!("S_{n} is too large"))),
            GroupDesc::Symmetric { n } => Ok(FiniteGroup::symmetric(*n)),
            GroupDesc::Table { rows } => FiniteGroup::from_table(rows.clone()),
        }
    }
}

/// A structure constant `e_i e_j ∋ c e_k`, written `[i, j, k, "c"]`.
pub type StructureConstant = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDesc {
    /// `action[g][x] = g·x`.
    FiniteSet { size: usize, action: Vec<Vec<usize>> },
    /// `action[g]` is the matrix of `g` as rows of field elements.
    Algebra {
        dim: usize,
        unit: Vec<String>,
        structure_constants: Vec<StructureConstant>,
        action: Vec<Vec<Vec<String>>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeDesc {
    Verify,
    ReportOnly,
}

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

fn default_coefficients() -> Vec<String> {
    WKind::ALL.iter().map(|k| k.label().to_string()).collect()
}

fn default_mode() -> ModeDesc {
    ModeDesc::Verify
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: FieldDesc,
    pub group: GroupDesc,
    pub space: SpaceDesc,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    #[serde(default = "default_coefficients")]
    pub coefficients: Vec<String>,
    #[serde(default = "default_mode")]
    pub mode: ModeDesc,
}

/// Why a problem could not be loaded.
#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Syntax { line: usize, column: usize, message: String, context: String },
    Invalid(Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "cannot read problem file: {m}"),
            LoadError::Syntax { line, column, message, context } => {
                write!(f, "line {line}, column {column}: {message}\n  {line} | {context}")
            }
            LoadError::Invalid(e) => write!(f, "invalid problem: {e}"),
        }
    }
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        LoadError::Invalid(e)
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        serde_json::from_str(text).map_err(|e| {
            let line = e.line();
            let context = text.lines().nth(line.saturating_sub(1)).unwrap_or("").trim_end().to_string();
            LoadError::Syntax { line, column: e.column(), message: e.to_string(), context }
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical JSON: keys sorted, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("problem files serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn coefficient_kinds(&self) -> Result<Vec<WCoefficient>, Error> {
        let mut kinds = Vec::new();
        for label in &self.coefficients {
            let kind = WKind::from_label(label)
                .ok_or_else(|| Error::Parse(format!("unknown coefficient {label:?}; expected HH, HC, HP or HN")))?;
            if !kinds.contains(&kind) {
                kinds.push(kind);
            }
        }
        kinds.sort();
        Ok(kinds.into_iter().map(WCoefficient::new).collect())
    }

    /// Dimension of the algebra `A` without building it.
    pub fn algebra_dim(&self) -> usize {
        match &self.space {
            SpaceDesc::FiniteSet { size, .. } => *size,
            SpaceDesc::Algebra { dim, .. } => *dim,
        }
    }

    pub fn gset(&self) -> Result<Option<GSet>, Error> {
        match &self.space {
            SpaceDesc::FiniteSet { size, action } => Ok(Some(GSet::new(self.group.build()?, *size, action.clone())?)),
            SpaceDesc::Algebra { .. } => Ok(None),
        }
    }

    /// Validates everything and builds the algebra with its action.
    pub fn build<F: Field>(&self, field: &F) -> Result<(FinDimAlgebra<F>, GroupAction<F>), Error> {
        let group = self.group.build()?;
        match &self.space {
            SpaceDesc::FiniteSet { size, action } => {
                let set = GSet::new(group, *size, action.clone())?;
                build_function_algebra(field, &set)
            }
            SpaceDesc::Algebra { dim, unit, structure_constants, action } => {
                let d = *dim;
                if unit.len() != d {
                    return Err(Error::ShapeMismatch(format!("unit has {} entries, expected {d}", unit.len())));
                }
                let unit = SparseVec::from_dense(field, &unit.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>, _>>()?);
                field.spec().check_group_order(group.order())?;
                let constants = structure_constants
                    .iter()
                    .map(|(i, j, k, c)| Ok((*i, *j, *k, field.parse(c)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                let algebra = FinDimAlgebra::from_structure_constants(field, d, constants, unit)?;
                let rho = action
                    .iter()
                    .map(|rows| {
                        let parsed = rows
                            .iter()
                            .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>, _>>())
                            .collect::<Result<Vec<_>, _>>()?;
                        if parsed.len() != d || parsed.iter().any(|r| r.len() != d) {
                            return Err(Error::BadAction(format!("action matrices must be {d}x{d}")));
                        }
                        SparseMatrix::from_dense(field, &parsed)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let action = GroupAction::new(group, &algebra, rho)?;
                Ok((algebra, action))
            }
        }
    }

    pub fn orbifold_problem<F: Field>(&self, field: &F) -> Result<OrbifoldProblem<F>, Error> {
        let (algebra, action) = self.build(field)?;
        let mut p = OrbifoldProblem::new(algebra, action, self.truncation);
        p.coefficients = self.coefficient_kinds()?;
        p.mode = match self.mode {
            ModeDesc::Verify => Mode::Verify,
            ModeDesc::ReportOnly => Mode::ReportOnly,
        };
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbihom::Rationals;

    const SWAP: &str = r#"{
        "field": {"kind": "Q"},
        "group": {"kind": "cyclic", "n": 2},
        "space": {"kind": "finite_set", "size": 2, "action": [[0, 1], [1, 0]]}
    }"#;

    #[test]
    fn defaults_are_filled_in() {
        let p = ProblemFile::parse(SWAP).unwrap();
        assert_eq!(p.truncation, 4);
        assert_eq!(p.coefficients, vec!["HH", "HC", "HP", "HN"]);
        assert_eq!(p.mode, ModeDesc::Verify);
        assert_eq!(p.coefficient_kinds().unwrap().len(), 4);
    }

    #[test]
    fn canonical_form_sorts_keys() {
        let json = ProblemFile::parse(SWAP).unwrap().to_json();
        let keys: Vec<usize> =
            ["\"coefficients\"", "\"field\"", "\"group\"", "\"mode\"", "\"space\"", "\"truncation\""]
                .iter()
                .map(|k| json.find(k).unwrap())
                .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(json.contains("\"mode\": \"verify\""));
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        let broken = "{\n  \"field\": {\"kind\": \"Q\"},\n  \"group\": oops\n}";
        match ProblemFile::parse(broken) {
            Err(LoadError::Syntax { line: 3, context, .. }) => assert!(context.contains("oops")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn corrupted_action_is_rejected() {
        let bad = SWAP.replace("[[0, 1], [1, 0]]", "[[0, 1], [0, 0]]");
        let p = ProblemFile::parse(&bad).unwrap();
        assert!(matches!(p.build(&Rationals), Err(Error::BadAction(_))));
    }

    #[test]
    fn algebra_input() {
        // k[x]/x^2 with x -> -x
        let text = r#"{
            "field": {"kind": "Q"},
            "group": {"kind": "cyclic", "n": 2},
            "space": {"kind": "algebra", "dim": 2, "unit": ["1", "0"],
                      "structure_constants": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
                      "action": [[["1", "0"], ["0", "1"]], [["1", "0"], ["0", "-1"]]]},
            "mode": "report-only"
        }"#;
        let p = ProblemFile::parse(text).unwrap();
        let (a, act) = p.build(&Rationals).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(!a.is_separable());
        assert_eq!(act.group().order(), 2);
        assert_eq!(ProblemFile::parse(&p.to_json()).unwrap(), p);
    }
}
