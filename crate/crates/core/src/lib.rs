//! Cubic multigraphs, their spectra, the triangle map and the quadratic
//! dynamics that governs its spectrum.

pub mod canon;
pub mod capacity;
pub mod dynamics;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod interval;
pub mod planar;
pub mod random;
pub mod tmap;
pub mod witness;

pub use canon::{are_isomorphic, canonical_form, canonical_graph, CanonicalForm};
pub use capacity::{capacity_estimate, fekete_points, transfinite_diameter};
pub use dynamics::{
    a_membership, f_apply, f_image_interval, f_iterate, f_preimage, itinerary, level_interval,
    preimage_intervals, pullback_spectral_set, CantorApprox, Itinerary, Membership, SpectralSet,
};
pub use enumerate::enumerate_cubic_multigraphs;
pub use error::{Error, Result};
pub use graph::{named, GeodesicPath, Multigraph, Spectrum};
pub use interval::IntervalSet;
pub use planar::{is_planar, KuratowskiKind, KuratowskiSubdivision, PlanarEmbedding, Planarity};
pub use random::random_cubic_graph;
pub use tmap::{
    tmap, tmap_inverse, tmap_iterate, tmap_spectrum_predict, tmap_spectrum_predict_graph, Preimage,
};
pub use witness::{plan_gap_witness, GapFamily, WitnessPlan};
