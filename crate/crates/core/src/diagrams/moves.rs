use std::collections::BTreeMap;

use thiserror::Error;

use crate::angled_complex::{link, link_disk_triangulation, Angle, EdgeId, TriangleId, VertexId};

use super::map::{Dart, DiagramMap, Face};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move does not apply at {vertex}: {reason}")]
    NotApplicable { vertex: VertexId, reason: String },
    #[error("no target triangle with edges {edges:?} while removing {vertex}")]
    Target3FlagViolation { vertex: VertexId, edges: [EdgeId; 3] },
}

fn not_applicable(vertex: VertexId, reason: impl Into<String>) -> MoveError {
    MoveError::NotApplicable {
        vertex,
        reason: reason.into(),
    }
}

impl DiagramMap {
    /// Renames vertex `from` to `to` everywhere.
    fn merge_vertex(&mut self, from: VertexId, to: VertexId) {
        if from == to {
            return;
        }
        for ends in self.edges.values_mut() {
            for v in ends.iter_mut() {
                if *v == from {
                    *v = to;
                }
            }
        }
        for f in self.faces.values_mut() {
            for v in f.verts.iter_mut() {
                if *v == from {
                    *v = to;
                }
            }
        }
        self.vertices.remove(&from);
        self.vertex_label.remove(&from);
    }

    /// Replaces edge `from` by `to` in faces and boundary darts and deletes
    /// it. `to` must join the same pair of vertices.
    fn merge_edge(&mut self, from: EdgeId, to: EdgeId) {
        for f in self.faces.values_mut() {
            for e in f.edges.iter_mut() {
                if *e == from {
                    *e = to;
                }
            }
        }
        let darts: Vec<Dart> = self
            .boundary
            .iter()
            .map(|&d| {
                if d.edge == from {
                    let (a, _) = self.dart_ends(d);
                    self.dart_from(to, a)
                } else {
                    d
                }
            })
            .collect();
        self.boundary = darts;
        self.edges.remove(&from);
        self.edge_label.remove(&from);
    }

    /// Folds a bigon: `v` is interior of degree two, its two faces carry the
    /// same label and share both edges at `v`. Returns the surviving edge.
    pub fn edge_reduction(&mut self, v: VertexId) -> Result<EdgeId, MoveError> {
        if !self.vertices.contains(&v) || !self.is_interior(v) {
            return Err(not_applicable(v, "not an interior vertex"));
        }
        let corners = self.corners_at(v);
        let [c1, c2] = corners[..] else {
            return Err(not_applicable(v, "degree is not two"));
        };
        if c1.first != c2.second || c1.second != c2.first {
            return Err(not_applicable(v, "faces do not form a bigon"));
        }
        if self.face_label[&c1.face] != self.face_label[&c2.face] {
            return Err(not_applicable(v, "faces carry different labels"));
        }
        let opposite = |t: TriangleId| {
            let f = &self.faces[&t];
            f.edges[(f.corner_index(v).unwrap() + 1) % 3]
        };
        let (x1, x2) = {
            let (a, b) = (opposite(c1.face), opposite(c2.face));
            (a.min(b), a.max(b))
        };
        for t in [c1.face, c2.face] {
            self.faces.remove(&t);
            self.face_label.remove(&t);
        }
        for e in [c1.first, c1.second] {
            self.edges.remove(&e);
            self.edge_label.remove(&e);
        }
        self.vertices.remove(&v);
        self.vertex_label.remove(&v);
        self.merge_edge(x2, x1);
        Ok(x1)
    }

    /// Cuts along `x1 - v - x2` and zips the two sides, where `e1 = (v, x1)`
    /// and `e2 = (v, x2)` carry the same label. The faces met turning from
    /// `e1` to `e2` in the link of `v` move to a new vertex, which is
    /// returned.
    pub fn diamond_move(&mut self, v: VertexId, e1: EdgeId, e2: EdgeId) -> Result<VertexId, MoveError> {
        if e1 == e2 {
            return Err(not_applicable(v, "edges coincide"));
        }
        if self.edge_label.get(&e1) != self.edge_label.get(&e2) || !self.edge_label.contains_key(&e1) {
            return Err(not_applicable(v, "edges carry different labels"));
        }
        let walks = self.link_walks(v);
        let Some((walk, i, j)) = walks.iter().find_map(|w| {
            let es = w.edges();
            let i = es.iter().position(|&e| e == e1)?;
            let j = es.iter().position(|&e| e == e2)?;
            Some((w, i, j))
        }) else {
            return Err(not_applicable(v, "edges are not in one link component"));
        };
        let m = walk.corners.len();
        let sector: Vec<usize> = if walk.closed {
            (0..(j + m - i) % m).map(|k| (i + k) % m).collect()
        } else {
            (i.min(j)..i.max(j)).collect()
        };
        if sector.len() < 2 {
            return Err(not_applicable(v, "fewer than two faces between the edges"));
        }
        let x1 = self.other_end(e1, v);
        let x2 = self.other_end(e2, v);
        if x1 == x2 {
            return Err(not_applicable(v, "edges are parallel"));
        }
        let v1 = self.fresh_vertex();
        let ea = self.fresh_edge();
        self.vertices.insert(v1);
        self.vertex_label.insert(v1, self.vertex_label[&v]);
        self.edges.insert(ea, [v1, x1]);
        self.edge_label.insert(ea, self.edge_label[&e1]);
        let sector_faces: Vec<TriangleId> = sector.iter().map(|&k| walk.corners[k].face).collect();
        let inner: Vec<EdgeId> = sector[1..].iter().map(|&k| walk.corners[k].first).collect();
        for e in inner {
            let ends = self.edges.get_mut(&e).unwrap();
            for u in ends.iter_mut() {
                if *u == v {
                    *u = v1;
                }
            }
        }
        for t in &sector_faces {
            let f = self.faces.get_mut(t).unwrap();
            for u in f.verts.iter_mut() {
                if *u == v {
                    *u = v1;
                }
            }
            for e in f.edges.iter_mut() {
                if *e == e1 || *e == e2 {
                    *e = ea;
                }
            }
        }
        self.merge_vertex(x2, x1);
        self.merge_edge(e2, e1);
        Ok(v1)
    }

    /// Identifies parallel edges `e1`, `e2` with the same label and discards
    /// the subdiagram they enclose, which would become a sphere. Returns the
    /// number of faces removed.
    pub fn sphere_removal(&mut self, e1: EdgeId, e2: EdgeId) -> Result<usize, MoveError> {
        let (Some(a), Some(b)) = (self.edge_ends(e1), self.edge_ends(e2)) else {
            return Err(not_applicable(VertexId(0), "unknown edge"));
        };
        let at = a[0];
        if e1 == e2 || !(a == b || a == [b[1], b[0]]) {
            return Err(not_applicable(at, "edges are not parallel"));
        }
        if self.edge_label[&e1] != self.edge_label[&e2] {
            return Err(not_applicable(at, "edges carry different labels"));
        }
        let loop_edges = [e1, e2];
        // faces glued along edges other than e1, e2
        let ids: Vec<TriangleId> = self.faces.keys().copied().collect();
        let index: BTreeMap<TriangleId, usize> = ids.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        let mut by_edge: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
        for (&t, f) in &self.faces {
            for e in f.edges {
                by_edge.entry(e).or_default().push(index[&t]);
            }
        }
        for (e, fs) in &by_edge {
            if let [p, q] = fs[..] {
                if !loop_edges.contains(e) {
                    let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
                    parent[rp] = rq;
                }
            }
        }
        let on_boundary: Vec<EdgeId> = self.boundary.iter().map(|d| d.edge).collect();
        let mut best: Option<Vec<usize>> = None;
        let mut roots: Vec<usize> = (0..ids.len()).map(|i| find(&mut parent, i)).collect();
        roots.sort();
        roots.dedup();
        for r in roots {
            let members: Vec<usize> = (0..ids.len()).filter(|&i| find(&mut parent, i) == r).collect();
            let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
            for &i in &members {
                for e in self.faces[&ids[i]].edges {
                    *count.entry(e).or_default() += 1;
                }
            }
            let frontier: Vec<EdgeId> = count.iter().filter(|&(_, &c)| c == 1).map(|(&e, _)| e).collect();
            let enclosed = frontier.len() == 2
                && loop_edges.iter().all(|e| frontier.contains(e))
                && count.keys().all(|e| loop_edges.contains(e) || !on_boundary.contains(e));
            if enclosed && best.as_ref().is_none_or(|b| members.len() < b.len()) {
                best = Some(members);
            }
        }
        let members = best.ok_or_else(|| not_applicable(at, "edges do not enclose a subdiagram"))?;
        for &i in &members {
            self.faces.remove(&ids[i]);
            self.face_label.remove(&ids[i]);
        }
        let mut used: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for f in self.faces.values() {
            for e in f.edges {
                *used.entry(e).or_default() += 1;
            }
        }
        let dead: Vec<EdgeId> = self
            .edges
            .keys()
            .copied()
            .filter(|e| !loop_edges.contains(e) && !used.contains_key(e) && !on_boundary.contains(e))
            .collect();
        for e in dead {
            self.edges.remove(&e);
            self.edge_label.remove(&e);
        }
        let alive: std::collections::BTreeSet<VertexId> = self.edges.values().flatten().copied().collect();
        let lonely: Vec<VertexId> = self.vertices.iter().copied().filter(|v| !alive.contains(v)).collect();
        for v in lonely {
            self.vertices.remove(&v);
            self.vertex_label.remove(&v);
        }
        self.merge_edge(e2.max(e1), e1.min(e2));
        Ok(members.len())
    }

    /// Removes an interior vertex whose link maps to a simple cycle of
    /// angular length below `2π`, refilling the hole from a triangulation of
    /// the image cycle in the target link.
    pub fn vertex_removal(&mut self, v: VertexId) -> Result<(), MoveError> {
        if !self.vertices.contains(&v) || !self.is_interior(v) {
            return Err(not_applicable(v, "not an interior vertex"));
        }
        let walks = self.link_walks(v);
        let [walk] = &walks[..] else {
            return Err(not_applicable(v, "link is not a single cycle"));
        };
        let k = walk.corners.len();
        if k < 3 {
            return Err(not_applicable(v, "degree below three"));
        }
        let target = self.target_arc().clone();
        let base = self.vertex_label[&v];
        let lk = link(&target, base).map_err(|e| not_applicable(v, e.to_string()))?;
        let spokes = walk.edges();
        let mut cycle = Vec::with_capacity(k);
        for e in &spokes {
            let i = lk.index_of(self.edge_label[e]).ok_or_else(|| not_applicable(v, "label not in target link"))?;
            if cycle.contains(&i) {
                return Err(not_applicable(v, "image of the link is not a simple cycle"));
            }
            cycle.push(i);
        }
        let total: Angle = walk.corners.iter().map(|c| self.corner_weight(c.face, v)).sum();
        if !total.lt(&Angle::two_pi()) {
            return Err(not_applicable(v, "image cycle has angular length at least 2 pi"));
        }
        let tri = link_disk_triangulation(&lk, &cycle)
            .ok_or_else(|| not_applicable(v, "image cycle has no chord triangulation"))?;
        let rim: Vec<VertexId> = spokes.iter().map(|&e| self.other_end(e, v)).collect();
        // side (i, i+1) of the rim polygon is the far edge of corner i
        let mut sides: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
        for (i, c) in walk.corners.iter().enumerate() {
            let f = &self.faces[&c.face];
            let far = f.edges[(f.corner_index(v).unwrap() + 1) % 3];
            let key = if i + 1 == k { (0, k - 1) } else { (i, i + 1) };
            sides.insert(key, far);
        }
        for chord in &tri.chords {
            let [i, j] = chord.positions;
            let t = lk.edges[chord.link_edge].triangle;
            let label = target.opposite_edge(t, base).expect("link edge triangle");
            let e = self.fresh_edge();
            self.edges.insert(e, [rim[i], rim[j]]);
            self.edge_label.insert(e, label);
            sides.insert((i, j), e);
        }
        let mut new_faces = Vec::with_capacity(tri.triangles.len());
        for &[i, m, j] in &tri.triangles {
            let edges = [sides[&(i, m)], sides[&(m, j)], sides[&(i, j)]];
            let labels = edges.map(|e| self.edge_label[&e]);
            let t = target
                .triangle_with_edges(labels)
                .ok_or(MoveError::Target3FlagViolation { vertex: v, edges: labels })?;
            new_faces.push((
                Face {
                    verts: [rim[i], rim[m], rim[j]],
                    edges,
                },
                t,
            ));
        }
        for c in &walk.corners {
            self.faces.remove(&c.face);
            self.face_label.remove(&c.face);
        }
        for e in &spokes {
            self.edges.remove(e);
            self.edge_label.remove(e);
        }
        self.vertices.remove(&v);
        self.vertex_label.remove(&v);
        for (f, t) in new_faces {
            let id = self.fresh_face();
            self.faces.insert(id, f);
            self.face_label.insert(id, t);
        }
        Ok(())
    }
}
