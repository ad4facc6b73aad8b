//! Convergence diagnostics, the exhaustive κ oracle and max-subgraph
//! extraction.

mod kendall;
mod levels;
mod oracle;
mod subgraph;
mod trace;

pub use kendall::kendall_tau;
pub use levels::{degree_levels, DegreeLevels};
pub use oracle::{brute_force_kappa, BRUTE_FORCE_CAP};
pub use subgraph::max_subgraph;
pub use trace::{ConvergenceTrace, TracePoint};
