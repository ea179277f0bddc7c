use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures of exact checks carry a `witness`: the index of a basis vector on
/// which the two sides of the failed identity differ.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("characteristic {characteristic} divides the group order {order}")]
    CharacteristicDividesOrder { characteristic: u64, order: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("composite of differentials is nonzero (witness column {witness})")]
    CompositionNotZero { witness: usize },

    #[error("not a chain map in degree {degree} (witness basis vector {witness})")]
    NotAChainMap { degree: usize, witness: usize },

    #[error("not a group: {0}")]
    BadGroup(String),

    #[error("bad action: {0}")]
    BadAction(String),

    #[error("algebra is not associative: (e{0} e{1}) e{2} != e{0} (e{1} e{2})")]
    NotAssociative(usize, usize, usize),

    #[error("algebra unit is not a two-sided identity (witness basis vector {0})")]
    NotUnital(usize),

    #[error("algebra is not commutative: e{0} e{1} != e{1} e{0}")]
    NotCommutative(usize, usize),

    #[error("subspace is not a two-sided ideal (witness basis vector {0})")]
    NotAnIdeal(usize),

    #[error("{identity} fails in degree {degree} (witness basis vector {witness})")]
    IdentityFails { identity: String, degree: usize, witness: usize },

    #[error("cyclic identity t^(n+1) = 1 fails in degree {degree} (witness basis vector {witness})")]
    CyclicIdentityFails { degree: usize, witness: usize },

    #[error("not a map of mixed complexes: {operator} commutation fails in degree {degree} (witness basis vector {witness})")]
    NotAMixedMap { operator: &'static str, degree: usize, witness: usize },

    #[error("degree {requested} lies outside the valid window (valid through {valid:?})")]
    WindowTooSmall { requested: usize, valid: Option<usize> },

    #[error("truncation {0} is too small (need at least 2)")]
    TruncationTooSmall(usize),

    #[error("matrix has no multiplicative order up to {bound}")]
    NotFiniteOrder { bound: usize },

    #[error("chain space of dimension {required} exceeds the limit {limit}")]
    ResourceLimit { required: usize, limit: usize },

    #[error("algebra is not smooth (degenerate trace form); use report-only mode")]
    NotSmooth,
}
