//! Higher-order hesitant fuzzy (HOHF) multi-criteria decision making.
//!
//! Alternatives are evaluated per criterion by collections of generalized
//! fuzzy values ([`GValue`]): crisp degrees, triangular fuzzy numbers,
//! hesitant elements and intuitionistic pairs. Rows are aggregated with a
//! Choquet integral over a non-additive [`FuzzyMeasure`] and ranked by
//! score. The [`consensus`] module scores competing techniques by how far
//! their rankings sit from the collective majority preference.

pub mod choquet;
pub mod cli;
pub mod consensus;
pub mod error;
pub mod exec;
pub mod gvalue;
pub mod hohfe;
pub mod io;
pub mod measure;
pub mod warning;

pub use choquet::{
    aggregate_row, choquet_real, hohf_choquet, rank_alternatives, sigma_order, AggregationOptions,
    AggregationReport,
};
pub use consensus::{
    collective_matrix, dominance_vector, extract_collective, preference_distance,
    preference_matrix, sort_techniques, DominanceVector, Metric, PreferenceMatrix, RankingOrder,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use gvalue::{GValue, Mode};
pub use hohfe::{combine, hohfs_score, CombinePolicy, DecisionMatrix, Hohfe, WeightedTerm};
pub use measure::{solve_rho, FuzzyMeasure, MeasureClass, RhoSign};
