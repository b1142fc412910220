//! Universal graphs: the pinned-path transform, saturation into finite
//! presentations, catalogs, forbidden-model classes, and lazily grown hosts
//! for cycle- and wheel-minor-free classes.

mod catalog;
mod host;
mod models;
mod saturate;
mod transform;

pub use catalog::{build_catalog, Catalog, CatalogCache, CatalogLimits};
pub use host::{
    build_host, embed, materialize, materialize_star, verify_host, Backend, EmbeddingCertificate, Glue,
    HostDescription, HostMode, HostReport, HostViolation, Piece,
};
pub use models::{check_class_equivalence, enumerate_forbidden_models, ClassChecker, ClassEquivalence};
pub use saturate::{
    contains_colored_subgraph, path_colorings, saturate, saturate_with, Multiplicity, OmegaEntry, OmegaGraph,
    SaturationLimits,
};
pub use transform::{transform_t, transform_t_inv, Descriptor, PinnedTransform};
