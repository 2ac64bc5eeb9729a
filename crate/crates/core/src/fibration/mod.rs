//! Towers of projections: the level function, filtered path sums, fiber decomposition.

mod fiber;
mod restriction;
mod tower;

pub use fiber::{
    defining_p, explicit_p, fiber_decomposition, fiber_table_by_subgraph, horizontal_paths, skipped_vertices,
    BaseProjection,
};
pub use restriction::{
    certify_term, lambda_factorization, prime_support, tower_restriction, tower_table, TermCertificate, TowerPath,
    TowerResult,
};
pub use tower::{TowerLevel, TowerSpec};
