//! Building diagram maps by gluing target triangles.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::angled_complex::{
    link, simple_cycles, AngledComplex, EdgeId, LinkGraph, SimpleCycle, TriangleId, VertexId,
};

use super::map::{Dart, DiagramMap, DiagramParts, Face};
use super::moves::MoveError;

fn fail(vertex: VertexId, reason: &str) -> MoveError {
    MoveError::NotApplicable {
        vertex,
        reason: reason.into(),
    }
}

/// One face mapped onto target triangle `t`.
pub fn face_diagram(target: Arc<AngledComplex>, t: TriangleId) -> Option<DiagramMap> {
    let [a, b, c] = target.triangle_vertices(t)?;
    let between = |x: VertexId, y: VertexId| {
        target.triangle(t).unwrap().edges.into_iter().find(|e| {
            let ends = target.edge(*e).unwrap().ends;
            ends.contains(&x) && ends.contains(&y)
        })
    };
    let labels = [between(a, b)?, between(b, c)?, between(c, a)?];
    let mut parts = DiagramParts::default();
    let vs = [VertexId(0), VertexId(1), VertexId(2)];
    for (v, l) in vs.into_iter().zip([a, b, c]) {
        parts.vertices.insert(v, l);
    }
    for i in 0..3 {
        parts.edges.insert(EdgeId(i as u32), ([vs[i], vs[(i + 1) % 3]], labels[i]));
    }
    let edges = [EdgeId(0), EdgeId(1), EdgeId(2)];
    parts.faces.insert(TriangleId(0), (Face { verts: vs, edges }, t));
    parts.boundary = edges.iter().map(|&edge| Dart { edge, forward: true }).collect();
    DiagramMap::new(target, parts).ok()
}

/// The cone over a simple cycle in the link of `base`: one face per cycle
/// edge around a central vertex mapped to `base`.
pub fn star_diagram(target: Arc<AngledComplex>, base: VertexId, cycle: &SimpleCycle) -> Option<DiagramMap> {
    walk_star_diagram(target, base, &cycle.vertices, &cycle.edges)
}

/// The cone over a closed walk in the link of `base`, given as link
/// vertices and the link edges joining `vertices[i]` to `vertices[i + 1]`.
pub fn walk_star_diagram(
    target: Arc<AngledComplex>,
    base: VertexId,
    vertices: &[usize],
    edges: &[usize],
) -> Option<DiagramMap> {
    let lk = link(&target, base).ok()?;
    let k = vertices.len();
    if k < 3 || edges.len() != k {
        return None;
    }
    for i in 0..k {
        let mut ends = [vertices[i], vertices[(i + 1) % k]];
        ends.sort();
        if lk.edges.get(edges[i])?.ends != ends {
            return None;
        }
    }
    let centre = VertexId(0);
    let rim = |i: usize| VertexId(1 + (i % k) as u32);
    let spoke = |i: usize| EdgeId((i % k) as u32);
    let ring = |i: usize| EdgeId((k + i % k) as u32);
    let mut parts = DiagramParts::default();
    parts.vertices.insert(centre, base);
    for i in 0..k {
        let s = lk.vertices[vertices[i]];
        let far = target.edge(s)?.other(base)?;
        parts.vertices.insert(rim(i), far);
        parts.edges.insert(spoke(i), ([centre, rim(i)], s));
    }
    for i in 0..k {
        let t = lk.edges[edges[i]].triangle;
        let opposite = target.opposite_edge(t, base)?;
        parts.edges.insert(ring(i), ([rim(i), rim(i + 1)], opposite));
        let face = Face {
            verts: [centre, rim(i), rim(i + 1)],
            edges: [spoke(i), ring(i), spoke(i + 1)],
        };
        parts.faces.insert(TriangleId(i as u32), (face, t));
        parts.boundary.push(Dart {
            edge: ring(i),
            forward: true,
        });
    }
    DiagramMap::new(target, parts).ok()
}

impl DiagramMap {
    /// Splits edge `e` into two parallel copies and fills the bigon between
    /// them with two faces mapped to `t`, which must contain the label of
    /// `e`. Returns the new vertex.
    pub fn insert_bigon(&mut self, e: EdgeId, t: TriangleId) -> Result<VertexId, MoveError> {
        let [a, b] = self.edge_ends(e).ok_or_else(|| fail(VertexId(0), "unknown edge"))?;
        let x = self.target_arc().clone();
        let label = self.edge_label[&e];
        let apex = x.opposite_vertex(t, label).ok_or_else(|| fail(a, "triangle does not contain the edge label"))?;
        let side = |u: VertexId| {
            let fu = self.vertex_label[&u];
            x.triangle(t)
                .unwrap()
                .edges
                .into_iter()
                .find(|&s| s != label && x.edge(s).unwrap().contains(fu) && x.edge(s).unwrap().contains(apex))
                .expect("triangle edges")
        };
        let (pl, ql) = (side(a), side(b));
        let v = self.fresh_vertex();
        self.vertices.insert(v);
        self.vertex_label.insert(v, apex);
        let p = self.fresh_edge();
        self.edges.insert(p, [v, a]);
        self.edge_label.insert(p, pl);
        let q = self.fresh_edge();
        self.edges.insert(q, [v, b]);
        self.edge_label.insert(q, ql);
        let x2 = self.fresh_edge();
        self.edges.insert(x2, [a, b]);
        self.edge_label.insert(x2, label);
        for f in self.faces.values_mut() {
            if f.traversal(e) == Some((b, a)) {
                let i = f.edges.iter().position(|&y| y == e).unwrap();
                f.edges[i] = x2;
            }
        }
        for d in self.boundary.iter_mut() {
            if d.edge == e && d.forward {
                d.edge = x2;
            }
        }
        let f1 = self.fresh_face();
        self.faces.insert(
            f1,
            Face {
                verts: [b, a, v],
                edges: [e, p, q],
            },
        );
        self.face_label.insert(f1, t);
        let f2 = self.fresh_face();
        self.faces.insert(
            f2,
            Face {
                verts: [a, b, v],
                edges: [x2, q, p],
            },
        );
        self.face_label.insert(f2, t);
        Ok(v)
    }

    /// Cones face `face` off from a new vertex mapped to `apex`.
    pub fn subdivide_face(&mut self, face: TriangleId, apex: VertexId) -> Result<VertexId, MoveError> {
        let f = *self.faces.get(&face).ok_or_else(|| fail(apex, "unknown face"))?;
        let x = self.target_arc().clone();
        let mut spokes = [EdgeId(0); 3];
        for i in 0..3 {
            let fv = self.vertex_label[&f.verts[i]];
            spokes[i] = *x
                .edges_between(apex, fv)
                .first()
                .ok_or_else(|| fail(apex, "apex not adjacent to the face"))?;
        }
        let mut labels = [TriangleId(0); 3];
        for i in 0..3 {
            let es = [self.edge_label[&f.edges[i]], spokes[(i + 1) % 3], spokes[i]];
            labels[i] = x
                .triangle_with_edges(es)
                .ok_or_else(|| fail(apex, "missing target triangle"))?;
        }
        let c = self.fresh_vertex();
        self.vertices.insert(c);
        self.vertex_label.insert(c, apex);
        let mut s = [EdgeId(0); 3];
        for i in 0..3 {
            s[i] = self.fresh_edge();
            self.edges.insert(s[i], [c, f.verts[i]]);
            self.edge_label.insert(s[i], spokes[i]);
        }
        self.faces.remove(&face);
        self.face_label.remove(&face);
        for i in 0..3 {
            let j = (i + 1) % 3;
            let id = if i == 0 { face } else { self.fresh_face() };
            self.faces.insert(
                id,
                Face {
                    verts: [f.verts[i], f.verts[j], c],
                    edges: [f.edges[i], s[j], s[i]],
                },
            );
            self.face_label.insert(id, labels[i]);
        }
        Ok(c)
    }
}

/// Target vertices that can cone off a face with vertex labels `vs`.
fn apexes(x: &AngledComplex, d: &DiagramMap, f: &Face) -> Vec<VertexId> {
    x.vertices()
        .filter(|&u| {
            f.verts.iter().enumerate().all(|(i, &w)| {
                let fw = d.vertex_label(w).unwrap();
                let fn_ = d.vertex_label(f.verts[(i + 1) % 3]).unwrap();
                let (Some(&s), Some(&t)) = (x.edges_between(u, fw).first(), x.edges_between(u, fn_).first()) else {
                    return false;
                };
                u != fw && x.triangle_with_edges([d.edge_label(f.edges[i]).unwrap(), s, t]).is_some()
            })
        })
        .collect()
}

/// A random closed walk of length at least three in a link: a random walk
/// followed by a shortest way back.
fn closed_walk<R: Rng>(lk: &LinkGraph, rng: &mut R) -> Option<(Vec<usize>, Vec<usize>)> {
    let start = rng.gen_range(0..lk.vertex_count().max(1));
    if lk.incident(start).is_empty() {
        return None;
    }
    let mut vs = vec![start];
    let mut es = Vec::new();
    for _ in 0..rng.gen_range(1..=8) {
        let &(next, e) = lk.incident(*vs.last().unwrap()).choose(rng)?;
        vs.push(next);
        es.push(e);
    }
    // breadth-first path back to the start
    let here = *vs.last().unwrap();
    let mut prev: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([here]);
    let mut seen = std::collections::BTreeSet::from([here]);
    while let Some(u) = queue.pop_front() {
        if u == start {
            break;
        }
        for &(w, e) in lk.incident(u) {
            if seen.insert(w) {
                prev.insert(w, (u, e));
                queue.push_back(w);
            }
        }
    }
    let mut back = Vec::new();
    let mut u = start;
    while u != here {
        let (p, e) = *prev.get(&u)?;
        back.push((u, e));
        u = p;
    }
    for (w, e) in back.into_iter().rev() {
        vs.push(w);
        es.push(e);
    }
    vs.pop();
    (vs.len() >= 3).then_some((vs, es))
}

/// A random nondegenerate diagram over `target`: a single face or the cone
/// over a simple cycle or a closed walk in a vertex link, followed by
/// `steps` random bigon insertions and face subdivisions.
pub fn random_diagram<R: Rng>(target: &Arc<AngledComplex>, rng: &mut R, steps: usize) -> Option<DiagramMap> {
    let triangles: Vec<TriangleId> = target
        .triangles()
        .map(|(t, _)| t)
        .filter(|&t| target.triangle_vertices(t).is_some())
        .collect();
    if triangles.is_empty() {
        return None;
    }
    let vs: Vec<VertexId> = target.vertices().collect();
    let base = *vs.choose(rng)?;
    let lk = link(target, base).ok()?;
    let face = |rng: &mut R| face_diagram(target.clone(), *triangles.choose(rng)?);
    let mut d = match rng.gen_range(0..3) {
        0 => {
            let cycles = simple_cycles(&lk, 3, lk.vertex_count().min(16));
            match cycles.choose(rng) {
                Some(c) => star_diagram(target.clone(), base, c)?,
                None => face(rng)?,
            }
        }
        1 => match closed_walk(&lk, rng) {
            Some((ws, es)) => walk_star_diagram(target.clone(), base, &ws, &es)?,
            None => face(rng)?,
        },
        _ => face(rng)?,
    };
    let mut on_edge: BTreeMap<EdgeId, Vec<TriangleId>> = BTreeMap::new();
    for &t in &triangles {
        for e in target.triangle(t).unwrap().edges {
            on_edge.entry(e).or_default().push(t);
        }
    }
    for _ in 0..steps {
        if rng.gen_bool(0.3) {
            let faces: Vec<TriangleId> = d.faces().map(|(t, _)| t).collect();
            let face = *faces.choose(rng)?;
            let f = *d.face(face).unwrap();
            if let Some(&apex) = apexes(target, &d, &f).choose(rng) {
                d.subdivide_face(face, apex).ok()?;
                continue;
            }
        }
        let edges: Vec<EdgeId> = d.edges().map(|(e, _)| e).collect();
        let e = *edges.choose(rng)?;
        let t = *on_edge.get(&d.edge_label(e).unwrap())?.choose(rng)?;
        d.insert_bigon(e, t).ok()?;
    }
    Some(d)
}
