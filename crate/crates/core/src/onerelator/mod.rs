//! The precell complex of a one-relator presentation near one precell:
//! overlaps, triangle weights, the link of the central vertex, and the
//! certification pipeline.

mod central_link;
mod certify;
mod overlaps;

pub use central_link::{
    build_central_link, check_central_link, intersection_components, triangle_weights, CentralEdge, CentralEdgeKind,
    CentralLink, CentralLinkReport, LinkCycle, LinkVerdict, OverlapPath, TriangleKind, TriangleWeightRecord,
    SEGMENT_CHAIN_BOUND,
};
pub use certify::{
    certify, certify_word, Branch, Certificate, CertifyError, CertifyOptions, CheckSummary, Checks,
    ComplexValidation, LinkVerdictTag, Status, TriangleSummary, WitnessSummary, WITNESS_LIMIT,
};
pub use overlaps::{enumerate_overlaps, precell_relator, OneRelatorError, Overlap};
