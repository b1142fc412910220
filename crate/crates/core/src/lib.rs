//! Certified minor search, tree-decompositions, unavoidable minors and lazily
//! grown universal graphs for minor-closed classes.

pub mod cli;
pub mod connectivity;
pub mod corpus;
pub mod decomposition;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod iso;
pub mod minor;
pub mod oracle;
pub mod paths;
pub mod search;
pub mod series_parallel;
pub mod unavoidable;
pub mod universal;

pub use error::{Error, Result};
pub use families::FamilySpec;
pub use graph::{ColoredGraph, Edge, Graph, Vertex};
pub use search::{Budget, SearchOutcome, DEFAULT_BUDGET};
