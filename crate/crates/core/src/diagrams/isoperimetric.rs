use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angled_complex::{
    face_curvature, gauss_bonnet_check, vertex_curvature, Angle, AngledComplex, TriangleId,
};
use crate::rational::{format_rational, Rational};

use super::map::DiagramMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoperimetricError {
    #[error("triangle {triangle} has corner sum {sum}, not below pi")]
    NotStrictlySystolicWeights { triangle: TriangleId, sum: String },
    #[error("triangle {0} has a weight that is not a rational multiple of pi")]
    InexactWeights(TriangleId),
    #[error("complex has no triangles")]
    NoTriangles,
}

/// `M` is the largest face curvature and `K = 2π/(−M)`; `m` is `M/π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoperimetricConstant {
    pub m: Rational,
    pub k: Rational,
}

pub fn isoperimetric_constant(x: &AngledComplex) -> Result<IsoperimetricConstant, IsoperimetricError> {
    let mut m: Option<Rational> = None;
    for (t, _) in x.triangles() {
        if x.triangle_vertices(t).is_none() {
            continue;
        }
        let sum = x.corner_sum(t);
        let q = sum.as_exact().ok_or(IsoperimetricError::InexactWeights(t))?;
        let kappa = q - Rational::from_integer(1);
        if kappa >= Rational::from_integer(0) {
            return Err(IsoperimetricError::NotStrictlySystolicWeights {
                triangle: t,
                sum: sum.to_string(),
            });
        }
        m = Some(m.map_or(kappa, |m| m.max(kappa)));
    }
    let m = m.ok_or(IsoperimetricError::NoTriangles)?;
    Ok(IsoperimetricConstant {
        m,
        k: Rational::from_integer(2) / -m,
    })
}

/// Outcome of the curvature argument on a reduced diagram; curvature sums
/// are multiples of `π`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoperimetricReport {
    pub faces: usize,
    pub boundary_length: usize,
    pub m: String,
    pub k: String,
    /// `K · l(∂D)`.
    pub bound: String,
    pub holds: bool,
    pub boundary_curvature: String,
    /// `(Σ_{v ∈ ∂D} κ(v) − 2π) / (−M)`.
    pub intermediate_bound: String,
    pub intermediate_holds: bool,
    pub gauss_bonnet: bool,
    pub interior_vertices_nonpositive: bool,
    pub faces_at_most_m: bool,
    pub boundary_vertices_at_most_2pi: bool,
}

impl IsoperimetricReport {
    pub fn all_hold(&self) -> bool {
        self.holds
            && self.intermediate_holds
            && self.gauss_bonnet
            && self.interior_vertices_nonpositive
            && self.faces_at_most_m
            && self.boundary_vertices_at_most_2pi
    }
}

fn exact(a: Angle) -> Rational {
    a.as_exact().expect("exact weights checked")
}

pub fn check_linear_isoperimetric(f: &DiagramMap) -> Result<IsoperimetricReport, IsoperimetricError> {
    let c = isoperimetric_constant(f.target())?;
    let pulled = f.pullback();
    let boundary = f.boundary_vertices();
    let zero = Rational::from_integer(0);
    let two = Rational::from_integer(2);
    let mut boundary_sum = zero;
    let mut interior_ok = true;
    let mut boundary_ok = true;
    for v in f.vertices() {
        let k = exact(vertex_curvature(&pulled, v).expect("vertex of the diagram"));
        if boundary.contains(&v) {
            boundary_sum += k;
            boundary_ok &= k <= two;
        } else {
            interior_ok &= k <= zero;
        }
    }
    let faces_ok = f
        .faces()
        .all(|(t, _)| exact(face_curvature(&pulled, t).expect("face of the diagram")) <= c.m);
    let faces = Rational::from_integer(f.face_count() as i64);
    let l = f.boundary_length();
    let bound = c.k * Rational::from_integer(l as i64);
    let intermediate = (boundary_sum - two) / -c.m;
    Ok(IsoperimetricReport {
        faces: f.face_count(),
        boundary_length: l,
        m: format_rational(&c.m),
        k: format_rational(&c.k),
        bound: format_rational(&bound),
        holds: faces <= bound,
        boundary_curvature: format_rational(&boundary_sum),
        intermediate_bound: format_rational(&intermediate),
        intermediate_holds: faces <= intermediate,
        gauss_bonnet: {
            let gb = gauss_bonnet_check(&pulled);
            gb.equal && gb.rhs.compare(&Angle::two_pi()).is_eq()
        },
        interior_vertices_nonpositive: interior_ok,
        faces_at_most_m: faces_ok,
        boundary_vertices_at_most_2pi: boundary_ok,
    })
}
