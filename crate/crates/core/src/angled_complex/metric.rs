use std::collections::BTreeMap;
use std::f64::consts::PI;

use thiserror::Error;

use super::angle::{Angle, FLOAT_TOLERANCE};
use super::complex::{AngledComplex, EdgeId, TriangleId, VertexId};
use super::cycles::{link_triples, short_two_full_cycle, two_full_cycles, CycleOptions, LinkTriple, SimpleCycle};
use super::link::link;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("side lengths {0:?} violate the strict triangle inequality")]
    DegenerateTriangle([f64; 3]),
    #[error("edge {0} has no length")]
    MissingLength(EdgeId),
    #[error("triangle {0} is not well formed")]
    MalformedTriangle(TriangleId),
    #[error("2-full cycle of angular length {} at {vertex} is not longer than 2pi", cycle.angular_length)]
    NotStrictlyLarge { vertex: VertexId, cycle: SimpleCycle },
    #[error("link triple at {} satisfies the triangle inequality with equality", triple.vertex)]
    NoSlack { triple: LinkTriple },
}

/// Angles opposite sides `a`, `b`, `c` by the law of cosines.
pub fn euclidean_angles(a: f64, b: f64, c: f64) -> Result<[f64; 3], MetricError> {
    let sides = [a, b, c];
    let ok = sides.iter().all(|s| s.is_finite() && *s > 0.0) && a + b > c && b + c > a && a + c > b;
    if !ok {
        return Err(MetricError::DegenerateTriangle(sides));
    }
    let angle = |opp: f64, x: f64, y: f64| ((x * x + y * y - opp * opp) / (2.0 * x * y)).clamp(-1.0, 1.0).acos();
    let alpha = angle(a, b, c);
    let beta = angle(b, a, c);
    Ok([alpha, beta, PI - alpha - beta])
}

/// Corner angles of the Euclidean shapes given by the edge lengths.
pub fn metric_angles(x: &AngledComplex) -> Result<BTreeMap<(TriangleId, VertexId), f64>, MetricError> {
    let mut out = BTreeMap::new();
    for (t, _) in x.triangles() {
        let vs = x.triangle_vertices(t).ok_or(MetricError::MalformedTriangle(t))?;
        let len = |e: EdgeId| x.edge_length(e).ok_or(MetricError::MissingLength(e));
        let opp: Vec<EdgeId> = vs.iter().map(|&v| x.opposite_edge(t, v).unwrap()).collect();
        let angles = euclidean_angles(len(opp[0])?, len(opp[1])?, len(opp[2])?)?;
        for (v, a) in vs.iter().zip(angles) {
            out.insert((t, *v), a);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricWeights {
    /// The input complex with corner weights `angle − δ` in radians.
    pub complex: AngledComplex,
    pub delta: f64,
    /// Least `(len(σ) − 2π)/|σ|` over the 2-full cycles found, if any.
    pub cycle_slack: Option<f64>,
    /// Least triangle-inequality slack over link triples, if any.
    pub triangle_slack: Option<f64>,
    pub min_corner: f64,
}

/// Turns Euclidean shapes into strictly systolic weights by subtracting
/// a uniform `δ > 0` from every corner angle.
pub fn metric_to_weights(x: &AngledComplex, opts: CycleOptions) -> Result<MetricWeights, MetricError> {
    let angles = metric_angles(x)?;
    let raw = x.with_weights(angles.iter().map(|(k, a)| (*k, Angle::Radians(*a))).collect());
    let mut cycle_slack: Option<f64> = None;
    let mut triangle_slack: Option<f64> = None;
    for v in raw.vertices() {
        let l = link(&raw, v).expect("vertex exists");
        if let Some(cycle) = short_two_full_cycle(&l, opts, true) {
            return Err(MetricError::NotStrictlyLarge { vertex: v, cycle });
        }
        for c in two_full_cycles(&l, opts) {
            let s = (c.angular_length.radians() - 2.0 * PI) / c.len() as f64;
            cycle_slack = Some(cycle_slack.map_or(s, |m| m.min(s)));
        }
        for triple in link_triples(&l) {
            let a = triple.angles.map(|a| a.radians());
            let s = (0..3).map(|i| a[(i + 1) % 3] + a[(i + 2) % 3] - a[i]).fold(f64::INFINITY, f64::min);
            if s <= FLOAT_TOLERANCE {
                return Err(MetricError::NoSlack { triple });
            }
            triangle_slack = Some(triangle_slack.map_or(s, |m| m.min(s)));
        }
    }
    let min_corner = angles.values().copied().fold(f64::INFINITY, f64::min);
    let delta = 0.5
        * [cycle_slack, triangle_slack, Some(min_corner)]
            .into_iter()
            .flatten()
            .fold(f64::INFINITY, f64::min);
    let weights = angles
        .iter()
        .map(|(k, a)| (*k, Angle::Radians(a - delta)))
        .collect();
    Ok(MetricWeights {
        complex: x.with_weights(weights),
        delta,
        cycle_slack,
        triangle_slack,
        min_corner,
    })
}
