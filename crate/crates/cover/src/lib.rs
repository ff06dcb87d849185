//! Abelian covers of cubic multigraphs: twisted adjacency, Bloch bands,
//! gap extraction, cover search and finite quotients.

pub mod bands;
pub mod families;
pub mod periodic;
pub mod quotient;
pub mod search;

pub use bands::{bands, flat_bands, gap_report, grid_angle, BandStructure, GapReport, DEFAULT_THRESHOLD};
pub use periodic::{
    cyclic_quotient, primitive_directions, restrict_subtorus, root_of_unity_spectrum, torus_quotient,
    twisted_adjacency, twisted_adjacency_at, twisted_eigenvalues, PeriodicGraph,
};
pub use quotient::{is_automorphism, quotient_by_automorphism, Quotient};
pub use search::{
    append_catalog, catalog_hash, catalog_to_jsonl, cover_id, has_planar_quotients, read_catalog,
    search_covers, search_covers_streaming, search_planar_covers, CatalogEntry, PlanarCatalog, SearchOptions,
};
