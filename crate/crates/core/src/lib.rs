//! Graph search toolkit for node-weighted directed graphs.
//!
//! * [`graph`]: the immutable graph model, the `u|w v|w` edge-list format and DOT export.
//! * [`search`]: BFS, DFS, reachability, bidirectional BFS and A*.
//! * [`hdbms`]: the hybrid depth-breadth similarity traversal.
//! * [`metrics`]: completeness / MACD / DCG metrics, comparison tables and timing.
//! * [`gen`]: seeded synthetic graph generators.
//! * [`cli`]: the `hdbms` command-line front end.

pub mod cli;
pub mod gen;
pub mod graph;
pub mod hdbms;
pub mod metrics;
pub mod search;

pub use graph::{Direction, NodeId, NodeWeight, WeightedGraph};
pub use hdbms::{hdbms_traverse, HdbmsConfig, SelectionPolicy, TauSchedule};
pub use search::{SearchError, StepKind, TraversalResult};
