//! Certificates for spectral gaps of cubic graphs: exact eigenpair checks on
//! periodic covers, approximate eigenfunctions along paths and geodesics,
//! and the minimal-polynomial obstruction to finite spectra.

pub mod audit;
pub mod error;
pub mod exact;
pub mod fekete;
pub mod geodesic;
pub mod testfn;
pub mod touch;

pub use audit::{audit_gap_interval, AuditReport, BoundMethod, EdgeEvidence, Refutation, WIDENING};
pub use error::{CertifyError, Result};
pub use exact::QuadraticInteger;
pub use fekete::{fekete_finiteness, walk_counts, FeketeReport, FeketeVerdict, FeketeWitness};
pub use geodesic::{
    candidate_geodesics, decompose_geodesic, geodesic_bound, log_size, Attachment, AttachmentKind,
    DecompositionFailure, GeodesicBound, Segment, SegmentAccount, SegmentDecomposition, SegmentType,
};
pub use testfn::{find_hamilton_path, hampath_bound, is_hamilton_path, PathBound, TestFunction};
pub use touch::{
    certify_gap, certify_touchpoint, exact_eigenpairs, flat_band_multiplicity, integer_twisted_adjacency,
    locate_touch_angle, verify_band_extremum, verify_transpose_symmetry, BandExtremum, CertifiedEndpoint,
    EndpointKind, ExactEigenpair, FlatBand, GapCertificate, SymmetryCheck, TouchAngle, CERTIFICATION_GRID,
};
