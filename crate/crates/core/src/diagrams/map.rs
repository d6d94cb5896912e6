use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::angled_complex::{Angle, AngledComplex, ComplexBuilder, EdgeId, TriangleId, VertexId};

/// A face of a diagram: `edges[i]` joins `verts[i]` to `verts[(i + 1) % 3]`,
/// listed counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Face {
    pub verts: [VertexId; 3],
    pub edges: [EdgeId; 3],
}

impl Face {
    pub fn corner_index(&self, v: VertexId) -> Option<usize> {
        self.verts.iter().position(|&u| u == v)
    }

    /// Direction in which the face runs along `e`, as `(from, to)`.
    pub fn traversal(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        let i = self.edges.iter().position(|&x| x == e)?;
        Some((self.verts[i], self.verts[(i + 1) % 3]))
    }
}

/// One traversal of an edge by the boundary walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    /// `true` when walked from `ends[0]` to `ends[1]`.
    pub forward: bool,
}

/// The corner of `face` at a vertex: counterclockwise from edge `first`
/// to edge `second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub face: TriangleId,
    pub first: EdgeId,
    pub second: EdgeId,
}

/// A component of the link of a diagram vertex, in rotation order:
/// `corners[k].second == corners[k + 1].first`, wrapping when `closed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkWalk {
    pub closed: bool,
    pub corners: Vec<Corner>,
}

impl LinkWalk {
    /// The edges met in order; a closed walk does not repeat its first edge.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.corners.iter().map(|c| c.first).collect();
        if !self.closed {
            if let Some(c) = self.corners.last() {
                out.push(c.second);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is a loop")]
    Loop(EdgeId),
    #[error("face {0} does not close up around three distinct vertices")]
    OpenFace(TriangleId),
    #[error("edge {0} lies on more than two faces")]
    EdgeOveruse(EdgeId),
    #[error("faces on edge {0} induce the same direction; orientations disagree")]
    Orientation(EdgeId),
    #[error("boundary walk does not close up at position {0}")]
    BoundaryNotClosed(usize),
    #[error("edge {0} is not traversed consistently by faces and boundary")]
    BoundaryMismatch(EdgeId),
    #[error("diagram is not connected")]
    NotConnected,
    #[error("Euler characteristic is {0}, expected 1")]
    EulerCharacteristic(i64),
    #[error("the neighbourhood of vertex {0} is not that of a disk")]
    NotADisk(VertexId),
    #[error("missing label for {0}")]
    MissingLabel(String),
    #[error("label of {0} is not in the target")]
    UnknownLabel(String),
}

/// A singular disk diagram together with its simplicial map to a target
/// angled complex.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramMap {
    target: Arc<AngledComplex>,
    pub(crate) vertices: BTreeSet<VertexId>,
    pub(crate) edges: BTreeMap<EdgeId, [VertexId; 2]>,
    pub(crate) faces: BTreeMap<TriangleId, Face>,
    pub(crate) boundary: Vec<Dart>,
    pub(crate) vertex_label: BTreeMap<VertexId, VertexId>,
    pub(crate) edge_label: BTreeMap<EdgeId, EdgeId>,
    pub(crate) face_label: BTreeMap<TriangleId, TriangleId>,
}

/// Raw parts of a diagram, before validation.
#[derive(Debug, Clone, Default)]
pub struct DiagramParts {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub edges: BTreeMap<EdgeId, ([VertexId; 2], EdgeId)>,
    pub faces: BTreeMap<TriangleId, (Face, TriangleId)>,
    pub boundary: Vec<Dart>,
}

impl DiagramMap {
    /// Assembles and validates a diagram. Labels must name cells of the
    /// target; whether they commute with incidence is checked separately by
    /// [`DiagramMap::label_issues`].
    pub fn new(target: Arc<AngledComplex>, parts: DiagramParts) -> Result<Self, DiagramError> {
        let d = Self {
            target,
            vertices: parts.vertices.keys().copied().collect(),
            edges: parts.edges.iter().map(|(&e, &(ends, _))| (e, ends)).collect(),
            faces: parts.faces.iter().map(|(&t, &(f, _))| (t, f)).collect(),
            boundary: parts.boundary,
            vertex_label: parts.vertices,
            edge_label: parts.edges.iter().map(|(&e, &(_, l))| (e, l)).collect(),
            face_label: parts.faces.iter().map(|(&t, &(_, l))| (t, l)).collect(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn target(&self) -> &AngledComplex {
        &self.target
    }

    pub fn target_arc(&self) -> &Arc<AngledComplex> {
        &self.target
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [VertexId; 2])> + '_ {
        self.edges.iter().map(|(&e, &ends)| (e, ends))
    }

    pub fn faces(&self) -> impl Iterator<Item = (TriangleId, &Face)> + '_ {
        self.faces.iter().map(|(&t, f)| (t, f))
    }

    pub fn face(&self, t: TriangleId) -> Option<&Face> {
        self.faces.get(&t)
    }

    pub fn edge_ends(&self, e: EdgeId) -> Option<[VertexId; 2]> {
        self.edges.get(&e).copied()
    }

    pub fn boundary(&self) -> &[Dart] {
        &self.boundary
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_label(&self, v: VertexId) -> Option<VertexId> {
        self.vertex_label.get(&v).copied()
    }

    pub fn edge_label(&self, e: EdgeId) -> Option<EdgeId> {
        self.edge_label.get(&e).copied()
    }

    pub fn face_label(&self, t: TriangleId) -> Option<TriangleId> {
        self.face_label.get(&t).copied()
    }

    pub fn dart_ends(&self, d: Dart) -> (VertexId, VertexId) {
        let [a, b] = self.edges[&d.edge];
        if d.forward {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Vertices visited by the boundary walk.
    pub fn boundary_vertices(&self) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = self.boundary.iter().map(|&d| self.dart_ends(d).0).collect();
        if self.boundary.is_empty() && self.vertices.len() == 1 {
            out.extend(self.vertices.iter().copied());
        }
        out
    }

    pub fn is_interior(&self, v: VertexId) -> bool {
        !self.boundary_vertices().contains(&v)
    }

    /// The boundary walk read in the target: `(edge, from, to)` per step.
    pub fn boundary_labels(&self) -> Vec<(EdgeId, VertexId, VertexId)> {
        self.boundary
            .iter()
            .map(|&d| {
                let (a, b) = self.dart_ends(d);
                (self.edge_label[&d.edge], self.vertex_label[&a], self.vertex_label[&b])
            })
            .collect()
    }

    pub fn corners_at(&self, v: VertexId) -> Vec<Corner> {
        self.faces
            .iter()
            .filter_map(|(&t, f)| {
                let i = f.corner_index(v)?;
                Some(Corner {
                    face: t,
                    first: f.edges[i],
                    second: f.edges[(i + 2) % 3],
                })
            })
            .collect()
    }

    /// The link of `v` as walks in rotation order. Path walks start at an
    /// edge with no face before it; closed walks start at their least face.
    pub fn link_walks(&self, v: VertexId) -> Vec<LinkWalk> {
        walks_of(&self.corners_at(v))
    }

    /// Corners at every vertex, in one pass over the faces.
    pub fn all_corners(&self) -> BTreeMap<VertexId, Vec<Corner>> {
        let mut out: BTreeMap<VertexId, Vec<Corner>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for (&t, f) in &self.faces {
            for i in 0..3 {
                out.entry(f.verts[i]).or_default().push(Corner {
                    face: t,
                    first: f.edges[i],
                    second: f.edges[(i + 2) % 3],
                });
            }
        }
        out
    }

    /// Edges incident to `v`.
    pub fn edges_at(&self, v: VertexId) -> Vec<EdgeId> {
        self.edges.iter().filter(|(_, ends)| ends.contains(&v)).map(|(&e, _)| e).collect()
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[&e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        for (&e, ends) in &self.edges {
            for v in ends {
                if !self.vertices.contains(v) {
                    return Err(DiagramError::UnknownVertex(*v));
                }
            }
            if ends[0] == ends[1] {
                return Err(DiagramError::Loop(e));
            }
        }
        let mut traversals: BTreeMap<EdgeId, Vec<(VertexId, VertexId)>> = BTreeMap::new();
        for (&t, f) in &self.faces {
            let [a, b, c] = f.verts;
            if a == b || b == c || a == c {
                return Err(DiagramError::OpenFace(t));
            }
            for i in 0..3 {
                let e = f.edges[i];
                let ends = self.edges.get(&e).ok_or(DiagramError::UnknownEdge(e))?;
                let (x, y) = (f.verts[i], f.verts[(i + 1) % 3]);
                if !(ends == &[x, y] || ends == &[y, x]) {
                    return Err(DiagramError::OpenFace(t));
                }
                traversals.entry(e).or_default().push((x, y));
            }
        }
        for &d in &self.boundary {
            if !self.edges.contains_key(&d.edge) {
                return Err(DiagramError::UnknownEdge(d.edge));
            }
        }
        for i in 0..self.boundary.len() {
            let next = self.boundary[(i + 1) % self.boundary.len()];
            if self.dart_ends(self.boundary[i]).1 != self.dart_ends(next).0 {
                return Err(DiagramError::BoundaryNotClosed(i));
            }
        }
        let mut on_boundary: BTreeMap<EdgeId, Vec<(VertexId, VertexId)>> = BTreeMap::new();
        for &d in &self.boundary {
            on_boundary.entry(d.edge).or_default().push(self.dart_ends(d));
        }
        for &e in self.edges.keys() {
            let faces = traversals.get(&e).map_or(&[][..], Vec::as_slice);
            let walks = on_boundary.get(&e).map_or(&[][..], Vec::as_slice);
            match (faces, walks) {
                (f, _) if f.len() > 2 => return Err(DiagramError::EdgeOveruse(e)),
                ([p, q], []) => {
                    if p != &(q.1, q.0) {
                        return Err(DiagramError::Orientation(e));
                    }
                }
                ([p], [w]) if p == w => {}
                ([], [w1, w2]) if w1 == &(w2.1, w2.0) => {}
                _ => return Err(DiagramError::BoundaryMismatch(e)),
            }
        }
        let chi = self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64;
        if chi != 1 {
            return Err(DiagramError::EulerCharacteristic(chi));
        }
        if !self.is_connected() {
            return Err(DiagramError::NotConnected);
        }
        let boundary = self.boundary_vertices();
        for &v in &self.vertices {
            let walks = self.link_walks(v);
            let ok = if boundary.contains(&v) {
                walks.iter().all(|w| !w.closed)
            } else {
                walks.len() == 1 && walks[0].closed
            };
            if !ok {
                return Err(DiagramError::NotADisk(v));
            }
        }
        self.check_label_presence()
    }

    fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return true;
        };
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for ends in self.edges.values() {
            adj.entry(ends[0]).or_default().push(ends[1]);
            adj.entry(ends[1]).or_default().push(ends[0]);
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in adj.get(&v).into_iter().flatten() {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    fn check_label_presence(&self) -> Result<(), DiagramError> {
        let x = &self.target;
        for v in &self.vertices {
            let l = self.vertex_label.get(v).ok_or_else(|| DiagramError::MissingLabel(v.to_string()))?;
            if !x.has_vertex(*l) {
                return Err(DiagramError::UnknownLabel(v.to_string()));
            }
        }
        for e in self.edges.keys() {
            let l = self.edge_label.get(e).ok_or_else(|| DiagramError::MissingLabel(e.to_string()))?;
            if x.edge(*l).is_none() {
                return Err(DiagramError::UnknownLabel(e.to_string()));
            }
        }
        for t in self.faces.keys() {
            let l = self.face_label.get(t).ok_or_else(|| DiagramError::MissingLabel(t.to_string()))?;
            if x.triangle_vertices(*l).is_none() {
                return Err(DiagramError::UnknownLabel(t.to_string()));
            }
        }
        Ok(())
    }

    /// Cells whose labels do not commute with incidence.
    pub fn label_issues(&self) -> Vec<String> {
        let x = &self.target;
        let mut out = Vec::new();
        for (&e, &[a, b]) in &self.edges {
            let l = self.edge_label[&e];
            let ends = x.edge(l).expect("checked").ends;
            let (fa, fb) = (self.vertex_label[&a], self.vertex_label[&b]);
            if !((ends[0] == fa && ends[1] == fb) || (ends[0] == fb && ends[1] == fa)) {
                out.push(format!("edge {e} maps to {l}, whose ends are not the images of {a} and {b}"));
            }
        }
        for (&t, f) in &self.faces {
            let l = self.face_label[&t];
            let mut labels: Vec<EdgeId> = f.edges.iter().map(|e| self.edge_label[e]).collect();
            labels.sort();
            let mut want = x.triangle(l).expect("checked").edges.to_vec();
            want.sort();
            if labels != want {
                out.push(format!("face {t} maps to {l} but its edges map elsewhere"));
            }
        }
        out
    }

    /// Injective on every cell and compatible with incidence.
    pub fn is_nondegenerate(&self) -> bool {
        let injective_faces = self.faces.values().all(|f| {
            let [a, b, c] = f.verts.map(|v| self.vertex_label[&v]);
            a != b && b != c && a != c
        });
        let injective_edges = self
            .edges
            .values()
            .all(|[a, b]| self.vertex_label[a] != self.vertex_label[b]);
        injective_faces && injective_edges && self.label_issues().is_empty()
    }

    pub fn boundary_length(&self) -> usize {
        self.boundary.len()
    }

    /// The diagram as an angled complex with the target's weights pulled
    /// back along the labels.
    pub fn pullback(&self) -> AngledComplex {
        let mut b = ComplexBuilder::new();
        for &v in &self.vertices {
            b.vertex(v).expect("fresh id");
        }
        for (&e, &[p, q]) in &self.edges {
            b.edge(e, p, q).expect("known vertices");
        }
        for (&t, f) in &self.faces {
            b.triangle(t, f.edges).expect("known edges");
            for &v in &f.verts {
                let w = self
                    .target
                    .weight(self.face_label[&t], self.vertex_label[&v])
                    .unwrap_or_default();
                b.weight(t, v, w).expect("corner of the face");
            }
        }
        b.build()
    }

    /// Corner weight of `face` at diagram vertex `v`, read in the target.
    pub fn corner_weight(&self, face: TriangleId, v: VertexId) -> Angle {
        self.target
            .weight(self.face_label[&face], self.vertex_label[&v])
            .unwrap_or_default()
    }

    pub(crate) fn fresh_vertex(&self) -> VertexId {
        VertexId(self.vertices.iter().next_back().map_or(0, |v| v.0 + 1))
    }

    pub(crate) fn fresh_edge(&self) -> EdgeId {
        EdgeId(self.edges.keys().next_back().map_or(0, |e| e.0 + 1))
    }

    pub(crate) fn fresh_face(&self) -> TriangleId {
        TriangleId(self.faces.keys().next_back().map_or(0, |t| t.0 + 1))
    }

    /// Dart along `e` from `from`.
    pub(crate) fn dart_from(&self, e: EdgeId, from: VertexId) -> Dart {
        Dart {
            edge: e,
            forward: self.edges[&e][0] == from,
        }
    }
}

/// Groups corners at one vertex into link walks.
pub fn walks_of(corners: &[Corner]) -> Vec<LinkWalk> {
    let by_first: HashMap<EdgeId, usize> = corners.iter().enumerate().map(|(i, c)| (c.first, i)).collect();
    let seconds: BTreeSet<EdgeId> = corners.iter().map(|c| c.second).collect();
    let mut used = vec![false; corners.len()];
    let mut out = Vec::new();
    let follow = |start: usize, used: &mut Vec<bool>| {
        let mut walk = Vec::new();
        let mut i = start;
        loop {
            used[i] = true;
            walk.push(corners[i]);
            match by_first.get(&corners[i].second) {
                Some(&j) if !used[j] => i = j,
                Some(&j) if j == start => return (true, walk),
                _ => return (false, walk),
            }
        }
    };
    for i in 0..corners.len() {
        if !seconds.contains(&corners[i].first) {
            let (_, walk) = follow(i, &mut used);
            out.push(LinkWalk {
                closed: false,
                corners: walk,
            });
        }
    }
    for i in 0..corners.len() {
        if !used[i] {
            let (closed, walk) = follow(i, &mut used);
            out.push(LinkWalk { closed, corners: walk });
        }
    }
    out
}
