//! Comparison maps from the crossed product to the twisted sectors and the
//! fixed loci, the sector decomposition, and the end-to-end check.

mod maps;
mod sectors;
mod verify;

pub use maps::{
    factorization_failure, phi_chain_map, psi_chain_map, pullback_square, ComparisonMap, OrbifoldComplexes,
    PullbackSquare,
};
pub use sectors::{
    sector_count_oracle, sector_decomposition, shapiro_check, Sector, SectorDecomposition, ShapiroDegree,
    ShapiroReport,
};
pub use verify::{verify_theorem, DegreeDim, HomologyReport, MapCheck, Mode, OrbifoldProblem, TheoryReport, Verdict};
