//! Angled 2-complexes: quasi-simplicial complexes with corner weights,
//! their vertex links, bounded 2-full cycle search, curvature and the
//! Euclidean (metric) mode.

mod angle;
mod complex;
mod curvature;
mod cycles;
pub mod fixture;
mod link;
mod metric;
pub mod search;

pub use angle::{Angle, FLOAT_TOLERANCE};
pub use complex::{
    check_3flag, validate_complex, AngledComplex, BuildError, ComplexBuilder, ComplexIssue, Edge, EdgeId,
    FlagReport, FlagViolation, Triangle, TriangleId, ValidationReport, VertexId,
};
pub use curvature::{face_curvature, gauss_bonnet_check, vertex_curvature, GaussBonnet};
pub use cycles::{
    cycle_signatures, far_endpoints, is_locally_2pi_large, link_disk_triangulation, link_triples, short_two_full_cycle,
    simple_cycles, two_full_cycles, weak_triangle_inequality, weight_validate, Chord, CycleOptions, DiskTriangulation,
    LinkTriple, LocalVerdict, SimpleCycle, WeightReport, DEFAULT_CYCLE_BOUND,
};
pub use fixture::{parse_complex, write_complex, FixtureError};
pub use link::{link, LinkEdge, LinkError, LinkGraph};
pub use metric::{euclidean_angles, metric_angles, metric_to_weights, MetricError, MetricWeights};
