use thiserror::Error;

use super::angle::Angle;
use super::complex::{AngledComplex, EdgeId, TriangleId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown triangle {0}")]
    UnknownFace(TriangleId),
}

/// One corner at the base vertex, seen as an edge of the link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkEdge {
    pub triangle: TriangleId,
    /// Indices into [`LinkGraph::vertices`], ascending.
    pub ends: [usize; 2],
    pub angle: Angle,
}

/// The link of a vertex in the 2-skeleton: one vertex per incident edge,
/// one edge per corner.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkGraph {
    pub base: VertexId,
    pub vertices: Vec<EdgeId>,
    pub edges: Vec<LinkEdge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl LinkGraph {
    pub fn from_parts(base: VertexId, vertices: Vec<EdgeId>, edges: Vec<LinkEdge>) -> Self {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.ends[0]].push((e.ends[1], i));
            adjacency[e.ends[1]].push((e.ends[0], i));
        }
        Self {
            base,
            vertices,
            edges,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, e: EdgeId) -> Option<usize> {
        self.vertices.binary_search(&e).ok()
    }

    /// `(neighbour, link edge)` pairs at link vertex `i`.
    pub fn incident(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    /// Link edges joining `a` and `b`, ascending.
    pub fn edges_between(&self, a: usize, b: usize) -> Vec<usize> {
        self.adjacency[a]
            .iter()
            .filter(|(n, _)| *n == b)
            .map(|&(_, e)| e)
            .collect()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].iter().any(|(n, _)| *n == b)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    pub fn total_angle(&self) -> Angle {
        self.edges.iter().map(|e| e.angle).sum()
    }
}

pub fn link(x: &AngledComplex, v: VertexId) -> Result<LinkGraph, LinkError> {
    if !x.has_vertex(v) {
        return Err(LinkError::UnknownVertex(v));
    }
    let mut vertices: Vec<EdgeId> = x.edges_at(v).to_vec();
    vertices.sort();
    vertices.dedup();
    let idx = |e: EdgeId| vertices.binary_search(&e).unwrap();
    let mut edges = Vec::new();
    for &t in x.triangles_at(v) {
        let [e1, e2] = x.corner_edges(t, v).expect("well-formed triangle");
        let (a, b) = (idx(e1), idx(e2));
        edges.push(LinkEdge {
            triangle: t,
            ends: [a.min(b), a.max(b)],
            angle: x.weight(t, v).unwrap_or_default(),
        });
    }
    edges.sort_by_key(|e| e.triangle);
    Ok(LinkGraph::from_parts(v, vertices, edges))
}
