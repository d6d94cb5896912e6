use super::angle::Angle;
use super::complex::{AngledComplex, TriangleId, VertexId};
use super::link::{link, LinkError};

/// `κ(v) = 2π − π·χ(lk v) − Σ` corner weights at `v`.
pub fn vertex_curvature(x: &AngledComplex, v: VertexId) -> Result<Angle, LinkError> {
    let l = link(x, v)?;
    Ok(Angle::two_pi() - Angle::pi().scale(l.euler_characteristic()) - l.total_angle())
}

/// Corner sum of `t` minus `π`.
pub fn face_curvature(x: &AngledComplex, t: TriangleId) -> Result<Angle, LinkError> {
    if x.triangle_vertices(t).is_none() {
        return Err(LinkError::UnknownFace(t));
    }
    Ok(x.corner_sum(t) - Angle::pi())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussBonnet {
    pub lhs: Angle,
    pub rhs: Angle,
    pub equal: bool,
}

/// Compares the total curvature with `2π·χ`. Exact when all weights are.
pub fn gauss_bonnet_check(x: &AngledComplex) -> GaussBonnet {
    let faces: Angle = x
        .triangles()
        .filter_map(|(t, _)| face_curvature(x, t).ok())
        .sum();
    let vertices: Angle = x
        .vertices()
        .map(|v| vertex_curvature(x, v).expect("vertex exists"))
        .sum();
    let lhs = faces + vertices;
    let rhs = Angle::two_pi().scale(x.euler_characteristic());
    GaussBonnet {
        lhs,
        rhs,
        equal: lhs.compare(&rhs).is_eq(),
    }
}
