use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::angle::Angle;

macro_rules! id_type {
    ($name:ident, $prefix:literal) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u32);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }
    };
}

id_type!(VertexId, "v");
id_type!(EdgeId, "e");
id_type!(TriangleId, "t");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub ends: [VertexId; 2],
}

impl Edge {
    pub fn contains(&self, v: VertexId) -> bool {
        self.ends.contains(&v)
    }

    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        match self.ends {
            [a, b] if a == v => Some(b),
            [a, b] if b == v => Some(a),
            _ => None,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    fn key(&self) -> [VertexId; 2] {
        let [a, b] = self.ends;
        if a <= b {
            [a, b]
        } else {
            [b, a]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub edges: [EdgeId; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown triangle {0}")]
    UnknownTriangle(TriangleId),
    #[error("invalid edge length {length} on {edge}")]
    InvalidLength { edge: EdgeId, length: String },
}

/// Mutable construction stage; [`ComplexBuilder::build`] freezes it.
#[derive(Debug, Clone, Default)]
pub struct ComplexBuilder {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    triangles: BTreeMap<TriangleId, Triangle>,
    tetrahedra: Vec<[TriangleId; 4]>,
    weights: BTreeMap<(TriangleId, VertexId), Angle>,
    lengths: BTreeMap<EdgeId, f64>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, v: VertexId) -> Result<&mut Self, BuildError> {
        if !self.vertices.insert(v) {
            return Err(BuildError::DuplicateId(v.to_string()));
        }
        Ok(self)
    }

    pub fn edge(&mut self, id: EdgeId, a: VertexId, b: VertexId) -> Result<&mut Self, BuildError> {
        for v in [a, b] {
            if !self.vertices.contains(&v) {
                return Err(BuildError::UnknownVertex(v));
            }
        }
        if self.edges.insert(id, Edge { ends: [a, b] }).is_some() {
            return Err(BuildError::DuplicateId(id.to_string()));
        }
        Ok(self)
    }

    pub fn triangle(&mut self, id: TriangleId, edges: [EdgeId; 3]) -> Result<&mut Self, BuildError> {
        for e in edges {
            if !self.edges.contains_key(&e) {
                return Err(BuildError::UnknownEdge(e));
            }
        }
        if self.triangles.insert(id, Triangle { edges }).is_some() {
            return Err(BuildError::DuplicateId(id.to_string()));
        }
        Ok(self)
    }

    pub fn tetrahedron(&mut self, faces: [TriangleId; 4]) -> Result<&mut Self, BuildError> {
        for t in faces {
            if !self.triangles.contains_key(&t) {
                return Err(BuildError::UnknownTriangle(t));
            }
        }
        self.tetrahedra.push(faces);
        Ok(self)
    }

    pub fn weight(&mut self, t: TriangleId, v: VertexId, w: Angle) -> Result<&mut Self, BuildError> {
        if !self.triangles.contains_key(&t) {
            return Err(BuildError::UnknownTriangle(t));
        }
        if !self.vertices.contains(&v) {
            return Err(BuildError::UnknownVertex(v));
        }
        if self.weights.insert((t, v), w).is_some() {
            return Err(BuildError::DuplicateId(format!("weight {t} {v}")));
        }
        Ok(self)
    }

    pub fn length(&mut self, e: EdgeId, len: f64) -> Result<&mut Self, BuildError> {
        if !self.edges.contains_key(&e) {
            return Err(BuildError::UnknownEdge(e));
        }
        if !(len.is_finite() && len > 0.0) {
            return Err(BuildError::InvalidLength {
                edge: e,
                length: len.to_string(),
            });
        }
        if self.lengths.insert(e, len).is_some() {
            return Err(BuildError::DuplicateId(format!("length {e}")));
        }
        Ok(self)
    }

    pub fn build(self) -> AngledComplex {
        AngledComplex::freeze(self)
    }
}

/// A quasi-simplicial 2-complex with corner weights, immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct AngledComplex {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    triangles: BTreeMap<TriangleId, Triangle>,
    tetrahedra: Vec<[TriangleId; 4]>,
    weights: BTreeMap<(TriangleId, VertexId), Angle>,
    lengths: BTreeMap<EdgeId, f64>,
    // derived
    triangle_vertices: BTreeMap<TriangleId, [VertexId; 3]>,
    edges_at: BTreeMap<VertexId, Vec<EdgeId>>,
    triangles_at: BTreeMap<VertexId, Vec<TriangleId>>,
    by_edges: BTreeMap<[EdgeId; 3], TriangleId>,
}

/// Vertices of a triangle if its edges close up into three distinct
/// vertices, each used by exactly two of the edges.
fn closed_vertices(edges: &BTreeMap<EdgeId, Edge>, t: &Triangle) -> Option<[VertexId; 3]> {
    let es: Vec<&Edge> = t.edges.iter().map(|e| &edges[e]).collect();
    if t.edges[0] == t.edges[1] || t.edges[1] == t.edges[2] || t.edges[0] == t.edges[2] {
        return None;
    }
    let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in &es {
        if e.is_loop() {
            return None;
        }
        for v in e.ends {
            *count.entry(v).or_default() += 1;
        }
    }
    if count.len() != 3 || count.values().any(|&c| c != 2) {
        return None;
    }
    let vs: Vec<VertexId> = count.into_keys().collect();
    Some([vs[0], vs[1], vs[2]])
}

fn sorted3<T: Ord + Copy>(mut a: [T; 3]) -> [T; 3] {
    a.sort();
    a
}

impl AngledComplex {
    fn freeze(b: ComplexBuilder) -> Self {
        let mut triangle_vertices = BTreeMap::new();
        let mut edges_at: BTreeMap<VertexId, Vec<EdgeId>> =
            b.vertices.iter().map(|&v| (v, Vec::new())).collect();
        let mut triangles_at: BTreeMap<VertexId, Vec<TriangleId>> =
            b.vertices.iter().map(|&v| (v, Vec::new())).collect();
        let mut by_edges = BTreeMap::new();
        for (&id, e) in &b.edges {
            edges_at.get_mut(&e.ends[0]).unwrap().push(id);
            if !e.is_loop() {
                edges_at.get_mut(&e.ends[1]).unwrap().push(id);
            }
        }
        for (&id, t) in &b.triangles {
            if let Some(vs) = closed_vertices(&b.edges, t) {
                triangle_vertices.insert(id, vs);
                for v in vs {
                    triangles_at.get_mut(&v).unwrap().push(id);
                }
                by_edges.entry(sorted3(t.edges)).or_insert(id);
            }
        }
        Self {
            vertices: b.vertices,
            edges: b.edges,
            triangles: b.triangles,
            tetrahedra: b.tetrahedra,
            weights: b.weights,
            lengths: b.lengths,
            triangle_vertices,
            edges_at,
            triangles_at,
            by_edges,
        }
    }

    /// Returns a builder holding a copy of this complex.
    pub fn to_builder(&self) -> ComplexBuilder {
        ComplexBuilder {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            triangles: self.triangles.clone(),
            tetrahedra: self.tetrahedra.clone(),
            weights: self.weights.clone(),
            lengths: self.lengths.clone(),
        }
    }

    /// Same cells, new corner weights.
    pub fn with_weights(&self, weights: BTreeMap<(TriangleId, VertexId), Angle>) -> Self {
        let mut b = self.to_builder();
        b.weights = weights;
        b.build()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().map(|(k, v)| (*k, v))
    }

    pub fn triangles(&self) -> impl Iterator<Item = (TriangleId, &Triangle)> + '_ {
        self.triangles.iter().map(|(k, v)| (*k, v))
    }

    pub fn tetrahedra(&self) -> &[[TriangleId; 4]] {
        &self.tetrahedra
    }

    pub fn weights(&self) -> &BTreeMap<(TriangleId, VertexId), Angle> {
        &self.weights
    }

    pub fn lengths(&self) -> &BTreeMap<EdgeId, f64> {
        &self.lengths
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edges.get(&e)
    }

    pub fn triangle(&self, t: TriangleId) -> Option<&Triangle> {
        self.triangles.get(&t)
    }

    /// Sorted vertices of a well-formed triangle.
    pub fn triangle_vertices(&self, t: TriangleId) -> Option<[VertexId; 3]> {
        self.triangle_vertices.get(&t).copied()
    }

    pub fn edges_at(&self, v: VertexId) -> &[EdgeId] {
        self.edges_at.get(&v).map_or(&[], Vec::as_slice)
    }

    /// Well-formed triangles incident to `v`.
    pub fn triangles_at(&self, v: VertexId) -> &[TriangleId] {
        self.triangles_at.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn edges_between(&self, a: VertexId, b: VertexId) -> Vec<EdgeId> {
        self.edges_at(a)
            .iter()
            .copied()
            .filter(|e| self.edges[e].other(a) == Some(b))
            .collect()
    }

    /// The two edges of `t` at `v`, in the order they are listed in `t`.
    pub fn corner_edges(&self, t: TriangleId, v: VertexId) -> Option<[EdgeId; 2]> {
        self.triangle_vertices(t)?;
        let es: Vec<EdgeId> = self.triangles[&t]
            .edges
            .iter()
            .copied()
            .filter(|e| self.edges[e].contains(v))
            .collect();
        (es.len() == 2).then(|| [es[0], es[1]])
    }

    pub fn opposite_edge(&self, t: TriangleId, v: VertexId) -> Option<EdgeId> {
        self.triangle_vertices(t)?;
        let tri = &self.triangles[&t];
        let mut it = tri.edges.iter().copied().filter(|e| !self.edges[e].contains(v));
        let e = it.next()?;
        it.next().is_none().then_some(e)
    }

    /// The vertex of `t` not on edge `e`.
    pub fn opposite_vertex(&self, t: TriangleId, e: EdgeId) -> Option<VertexId> {
        let vs = self.triangle_vertices(t)?;
        let edge = self.edges.get(&e)?;
        if !self.triangles[&t].edges.contains(&e) {
            return None;
        }
        vs.into_iter().find(|v| !edge.contains(*v))
    }

    pub fn triangle_with_edges(&self, edges: [EdgeId; 3]) -> Option<TriangleId> {
        self.by_edges.get(&sorted3(edges)).copied()
    }

    pub fn weight(&self, t: TriangleId, v: VertexId) -> Option<Angle> {
        self.weights.get(&(t, v)).copied()
    }

    /// Sum of the corner weights of `t`; missing weights count as zero.
    pub fn corner_sum(&self, t: TriangleId) -> Angle {
        self.triangle_vertices(t)
            .map(|vs| vs.iter().filter_map(|&v| self.weight(t, v)).sum())
            .unwrap_or_default()
    }

    pub fn edge_length(&self, e: EdgeId) -> Option<f64> {
        self.lengths.get(&e).copied()
    }

    /// V − E + F of the 2-skeleton.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexIssue {
    #[error("edge {0} is a loop")]
    Loop(EdgeId),
    #[error("triangle {0} does not close up into three distinct vertices")]
    OpenTriangle(TriangleId),
    #[error("triangle {triangle} uses parallel edges {edges:?}: two or more edges in common")]
    ParallelEdgesInTriangle { triangle: TriangleId, edges: [EdgeId; 2] },
    #[error("triangles {triangles:?} have two or more edges in common: {edges:?}")]
    SharedEdges { triangles: [TriangleId; 2], edges: Vec<EdgeId> },
    #[error("corner ({triangle}, {vertex}) has no weight")]
    MissingWeight { triangle: TriangleId, vertex: VertexId },
    #[error("corner ({triangle}, {vertex}) has negative weight {weight}")]
    NegativeWeight { triangle: TriangleId, vertex: VertexId, weight: Angle },
    #[error("corner ({triangle}, {vertex}) has a non-finite weight")]
    NonFiniteWeight { triangle: TriangleId, vertex: VertexId },
    #[error("weight given for ({triangle}, {vertex}) which is not a corner")]
    StrayWeight { triangle: TriangleId, vertex: VertexId },
    #[error("tetrahedron #{0} is not the boundary of a 3-simplex")]
    BadTetrahedron(usize),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ComplexIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

pub fn validate_complex(x: &AngledComplex) -> ValidationReport {
    let mut issues = Vec::new();
    for (id, e) in x.edges() {
        if e.is_loop() {
            issues.push(ComplexIssue::Loop(id));
        }
    }
    for (id, t) in x.triangles() {
        if x.triangle_vertices(id).is_some() {
            continue;
        }
        let mut parallel = None;
        'pairs: for i in 0..3 {
            for j in i + 1..3 {
                let (a, b) = (x.edge(t.edges[i]).unwrap(), x.edge(t.edges[j]).unwrap());
                if t.edges[i] != t.edges[j] && !a.is_loop() && a.key() == b.key() {
                    parallel = Some([t.edges[i], t.edges[j]]);
                    break 'pairs;
                }
            }
        }
        issues.push(match parallel {
            Some(edges) => ComplexIssue::ParallelEdgesInTriangle { triangle: id, edges },
            None => ComplexIssue::OpenTriangle(id),
        });
    }
    // triangles sharing two or more edges
    let mut on_edge: BTreeMap<EdgeId, Vec<TriangleId>> = BTreeMap::new();
    for (id, t) in x.triangles() {
        let distinct: BTreeSet<EdgeId> = t.edges.iter().copied().collect();
        for e in distinct {
            on_edge.entry(e).or_default().push(id);
        }
    }
    let mut shared: BTreeMap<(TriangleId, TriangleId), Vec<EdgeId>> = BTreeMap::new();
    for (e, ts) in &on_edge {
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                shared.entry((ts[i], ts[j])).or_default().push(*e);
            }
        }
    }
    for ((a, b), edges) in shared {
        if edges.len() >= 2 {
            issues.push(ComplexIssue::SharedEdges {
                triangles: [a, b],
                edges,
            });
        }
    }
    for (id, _) in x.triangles() {
        let Some(vs) = x.triangle_vertices(id) else {
            continue;
        };
        for v in vs {
            match x.weight(id, v) {
                None => issues.push(ComplexIssue::MissingWeight { triangle: id, vertex: v }),
                Some(w) if !w.is_finite() => {
                    issues.push(ComplexIssue::NonFiniteWeight { triangle: id, vertex: v })
                }
                Some(w) if w.is_negative() => issues.push(ComplexIssue::NegativeWeight {
                    triangle: id,
                    vertex: v,
                    weight: w,
                }),
                Some(_) => {}
            }
        }
    }
    for &(t, v) in x.weights().keys() {
        let ok = x.triangle_vertices(t).is_some_and(|vs| vs.contains(&v));
        if !ok && x.triangle_vertices(t).is_some() {
            issues.push(ComplexIssue::StrayWeight { triangle: t, vertex: v });
        }
    }
    for (i, tet) in x.tetrahedra().iter().enumerate() {
        if !is_tetrahedron_boundary(x, tet) {
            issues.push(ComplexIssue::BadTetrahedron(i));
        }
    }
    ValidationReport { issues }
}

fn is_tetrahedron_boundary(x: &AngledComplex, faces: &[TriangleId; 4]) -> bool {
    let mut vertices = BTreeSet::new();
    let mut edge_use: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for &t in faces {
        let Some(vs) = x.triangle_vertices(t) else {
            return false;
        };
        vertices.extend(vs);
        for e in x.triangle(t).unwrap().edges {
            *edge_use.entry(e).or_default() += 1;
        }
    }
    vertices.len() == 4 && edge_use.len() == 6 && edge_use.values().all(|&c| c == 2)
}

/// Three faces of a tetrahedron whose fourth face or solid is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagViolation {
    pub vertices: [VertexId; 4],
    pub faces: Vec<TriangleId>,
    pub missing_face: bool,
    pub missing_solid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlagReport {
    pub violations: Vec<FlagViolation>,
}

impl FlagReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Finds every triple of triangles around a common apex forming three
/// faces of a tetrahedron and checks the fourth face and the solid.
pub fn check_3flag(x: &AngledComplex) -> FlagReport {
    let solids: BTreeSet<[TriangleId; 4]> = x
        .tetrahedra()
        .iter()
        .map(|t| {
            let mut t = *t;
            t.sort();
            t
        })
        .collect();
    let mut seen: BTreeSet<Vec<TriangleId>> = BTreeSet::new();
    let mut violations = Vec::new();
    for a in x.vertices() {
        let ts = x.triangles_at(a);
        // corner (t, [e1, e2]) at a
        let corners: Vec<(TriangleId, [EdgeId; 2])> = ts
            .iter()
            .filter_map(|&t| x.corner_edges(t, a).map(|c| (t, c)))
            .collect();
        let far = |e: EdgeId| x.edge(e).unwrap().other(a).unwrap();
        for i in 0..corners.len() {
            for j in i + 1..corners.len() {
                for k in j + 1..corners.len() {
                    let (t1, c1) = corners[i];
                    let (t2, c2) = corners[j];
                    let (t3, c3) = corners[k];
                    let mut edges: Vec<EdgeId> = c1.iter().chain(&c2).chain(&c3).copied().collect();
                    edges.sort();
                    edges.dedup();
                    if edges.len() != 3 {
                        continue;
                    }
                    // each edge in exactly two of the corners
                    if !edges.iter().all(|e| {
                        [c1, c2, c3].iter().filter(|c| c.contains(e)).count() == 2
                    }) {
                        continue;
                    }
                    let fars: BTreeSet<VertexId> = edges.iter().map(|&e| far(e)).collect();
                    if fars.len() != 3 {
                        continue;
                    }
                    let opp = [
                        x.opposite_edge(t1, a).unwrap(),
                        x.opposite_edge(t2, a).unwrap(),
                        x.opposite_edge(t3, a).unwrap(),
                    ];
                    let fourth = x.triangle_with_edges(opp);
                    let mut faces = vec![t1, t2, t3];
                    faces.extend(fourth);
                    faces.sort();
                    if !seen.insert(faces.clone()) {
                        continue;
                    }
                    let missing_solid = match fourth {
                        Some(_) => !solids.contains(&[faces[0], faces[1], faces[2], faces[3]]),
                        None => true,
                    };
                    if fourth.is_none() || missing_solid {
                        let mut vs: Vec<VertexId> = fars.into_iter().collect();
                        vs.push(a);
                        vs.sort();
                        violations.push(FlagViolation {
                            vertices: [vs[0], vs[1], vs[2], vs[3]],
                            faces,
                            missing_face: fourth.is_none(),
                            missing_solid,
                        });
                    }
                }
            }
        }
    }
    FlagReport { violations }
}
