//! Core, truss and (3,4)-nucleus decompositions, by peeling and by local
//! iterated h-index updates.
//!
//! ```
//! use nucleus_core::{peel, snd, CliqueSet, Decomposition, EngineOptions, Graph};
//!
//! let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]);
//! let cs = CliqueSet::new(&g, Decomposition::Core);
//! let exact = peel(&cs);
//! assert_eq!(exact, vec![2, 2, 2, 1]);
//! assert_eq!(snd(&cs, &EngineOptions::default()).unwrap().kappa, exact);
//! ```

pub mod analysis;
pub mod cliques;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hindex;
pub mod local;
pub mod peeling;
pub mod report;

pub use cliques::{enumerate_r_cliques, CliqueId, CliqueSet, Decomposition};
pub use error::{Error, Result};
pub use graph::{load_edge_list, Graph, LoadOptions, LoadStats, VertexId};
pub use hindex::{h_index, h_index_with_hint};
pub use local::{
    and, estimate_edge_truss, estimate_vertex_core, partial_and, snd, DecompositionResult,
    EngineOptions, IterationStats, Order,
};
pub use peeling::{core_numbers, peel};
