//! Colouring squares of claw-free graphs within clique-number bounds:
//! 10 colours for clique number 3, 22 for clique number 4, together with
//! the structural analysis behind them and exact solvers to check against.
//!
//! ```
//! use clawsq::{color_square, corpus::named, verify_coloring};
//!
//! let g = named::icosahedron();
//! let c = color_square(&g).unwrap();
//! assert_eq!(c.palette_size(), 6);
//! assert!(verify_coloring(&g, &c).unwrap());
//! ```

pub mod analysis;
pub mod coloring;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod report;
pub mod structure;

pub use analysis::{find_claw, is_claw_free, ClawWitness, LemmaId, LemmaReport};
pub use coloring::{verify_coloring, Coloring};
pub use engine::{bound_for_omega, color_square, greedy_reduce, strong_edge_color, EngineParams, StrongEdgeColoring};
pub use error::{Error, Result};
pub use graph::{build_graph, Graph, VertexSet};
pub use par::Execution;
pub use structure::{classify, Classification, NeighborhoodShape, RootGraph};
