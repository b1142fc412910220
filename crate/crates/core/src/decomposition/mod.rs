//! Tree-decompositions: verification, path lifting, locating minors in a
//! part, block structure, and decomposition into 3-connected torsos and cycles.

pub mod blocks;
pub mod locate;
pub mod longpath;
pub mod tree;
pub mod tutte;

pub use blocks::{blocks, BlockDecomposition};
pub use locate::{locate_minor_part, LocatedMinor};
pub use longpath::{ell, lift_long_path, LiftedPath};
pub use tree::{torso, verify_decomposition, DecompositionReport, Node, TreeDecomposition};
pub use tutte::{torso_minor_model, tutte_decomposition, verify_tutte, TorsoKind, TutteDecomposition};
