//! Singular disk diagrams over an angled complex, the moves that reduce
//! them, and the linear isoperimetric inequality.

mod fixture;
mod isoperimetric;
mod map;
mod moves;
mod reduce;
mod synth;

pub use fixture::{parse_diagram, write_diagram, DiagramFixtureError};
pub use isoperimetric::{
    check_linear_isoperimetric, isoperimetric_constant, IsoperimetricConstant, IsoperimetricError, IsoperimetricReport,
};
pub use map::{walks_of, Corner, Dart, DiagramError, DiagramMap, DiagramParts, Face, LinkWalk};
pub use moves::MoveError;
pub use reduce::{Move, ReduceError, ReduceOptions, ReductionTrace, ShortCycle, TraceStep, VrViolation};
pub use synth::{face_diagram, random_diagram, star_diagram, walk_star_diagram};
