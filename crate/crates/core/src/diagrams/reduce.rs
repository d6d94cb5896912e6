use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angled_complex::{Angle, EdgeId, TriangleId, VertexId};

use super::map::{walks_of, Corner, DiagramError, DiagramMap, LinkWalk};
use super::moves::MoveError;

/// A link edge traversed in both directions within one link walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VrViolation {
    pub vertex: VertexId,
    pub walk: usize,
    /// Corner positions in the walk, `positions[0] < positions[1]`.
    pub positions: [usize; 2],
    pub triangle: TriangleId,
}

/// A cycle of the stack decomposition of an interior vertex's link walk
/// whose angular length is below `2π`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortCycle {
    pub vertex: VertexId,
    pub corners: Vec<TriangleId>,
    pub angular_length: Angle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    EdgeReduction { vertex: u32 },
    Diamond { vertex: u32, edges: [u32; 2], new_vertex: u32 },
    VertexRemoval { vertex: u32 },
    SphereRemoval { edges: [u32; 2] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(flatten)]
    pub kind: Move,
    pub faces_before: usize,
    pub faces_after: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReduceOptions {
    /// Only mirrored corners that are adjacent in the walk count as a
    /// failure of vertex reducedness.
    pub consecutive_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("diagram map is degenerate")]
    Degenerate,
    #[error("stuck diagram after {steps} moves at {vertex}: {reason}")]
    StuckDiagram { vertex: VertexId, reason: String, steps: usize },
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("move produced an invalid diagram: {0}")]
    Invalid(#[from] DiagramError),
    #[error("move {0} changed the boundary labels")]
    BoundaryChanged(usize),
}

fn reading(d: &DiagramMap, c: &Corner) -> (TriangleId, EdgeId, EdgeId) {
    (d.face_label[&c.face], d.edge_label[&c.first], d.edge_label[&c.second])
}

fn mirrored(d: &DiagramMap, a: &Corner, b: &Corner) -> bool {
    let (ta, pa, qa) = reading(d, a);
    let (tb, pb, qb) = reading(d, b);
    ta == tb && pa == qb && qa == pb
}

fn walk_violations(d: &DiagramMap, v: VertexId, index: usize, w: &LinkWalk, consecutive_only: bool) -> Vec<VrViolation> {
    let m = w.corners.len();
    let mut out = Vec::new();
    let mut push = |a: usize, b: usize| {
        out.push(VrViolation {
            vertex: v,
            walk: index,
            positions: [a, b],
            triangle: d.face_label[&w.corners[a].face],
        })
    };
    for a in 0..m {
        for b in a + 1..m {
            let adjacent = b == a + 1 || (w.closed && a == 0 && b == m - 1 && m > 2);
            if (adjacent || !consecutive_only) && mirrored(d, &w.corners[a], &w.corners[b]) {
                push(a, b);
            }
        }
    }
    out
}

/// Splits a closed walk into simple cycles of target link vertices by
/// popping a cycle whenever a link vertex repeats. Returns corner indices.
pub(crate) fn stack_cycles(d: &DiagramMap, w: &LinkWalk) -> Vec<Vec<usize>> {
    let m = w.corners.len();
    let label = |k: usize| d.edge_label[&w.corners[k % m].first];
    let mut stack: Vec<(EdgeId, usize)> = vec![(label(0), 0)];
    let mut pending: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for q in 1..=m {
        pending.push(q - 1);
        let l = label(q);
        if let Some(s) = stack.iter().position(|&(x, _)| x == l) {
            let at = stack[s].1;
            out.push(pending.split_off(at));
            stack.truncate(s + 1);
        } else {
            stack.push((l, pending.len()));
        }
    }
    out
}

impl DiagramMap {
    /// Mirrored corner pairs, per link walk, in lexicographic order of
    /// `(vertex, walk, positions)`.
    pub fn vr_violations(&self, consecutive_only: bool) -> Vec<VrViolation> {
        let mut out = Vec::new();
        for (v, corners) in self.all_corners() {
            for (i, w) in walks_of(&corners).iter().enumerate() {
                out.extend(walk_violations(self, v, i, w, consecutive_only));
            }
        }
        out
    }

    pub fn is_vertex_reduced(&self, consecutive_only: bool) -> bool {
        self.vr_violations(consecutive_only).is_empty()
    }

    /// Interior vertices whose link walk has a stack cycle shorter than `2π`.
    pub fn short_interior_cycles(&self) -> Vec<ShortCycle> {
        let boundary = self.boundary_vertices();
        let mut out = Vec::new();
        for (v, corners) in self.all_corners() {
            if boundary.contains(&v) {
                continue;
            }
            for w in walks_of(&corners).iter().filter(|w| w.closed) {
                for cycle in stack_cycles(self, w) {
                    let angular_length: Angle = cycle.iter().map(|&k| self.corner_weight(w.corners[k].face, v)).sum();
                    if angular_length.lt(&Angle::two_pi()) {
                        out.push(ShortCycle {
                            vertex: v,
                            corners: cycle.iter().map(|&k| w.corners[k].face).collect(),
                            angular_length,
                        });
                    }
                }
            }
        }
        out
    }

    /// Interior vertices have every stack cycle of length at least `2π`.
    pub fn interior_cycles_ok(&self) -> bool {
        self.short_interior_cycles().is_empty()
    }

    /// Applies edge reductions, diamond moves and vertex removals until the
    /// map is vertex reduced and every interior stack cycle has length at
    /// least `2π`.
    pub fn reduce(&self, opts: ReduceOptions) -> Result<(DiagramMap, ReductionTrace), ReduceError> {
        if !self.is_nondegenerate() {
            return Err(ReduceError::Degenerate);
        }
        let mut r = Reducer {
            d: self.clone(),
            trace: ReductionTrace::default(),
            boundary: self.boundary_labels(),
        };
        let n = self.face_count() + 1;
        let budget = 8 * n * n + 64;
        loop {
            if r.trace.steps.len() > budget {
                let v = r.d.vertices().next().unwrap_or(VertexId(0));
                return Err(r.stuck(v, "move budget exhausted"));
            }
            if let Some(v) = r.d.find_bigon() {
                r.edge_reduction(v)?;
                continue;
            }
            if let Some(x) = r.d.vr_violations(opts.consecutive_only).first().copied() {
                r.fold(x)?;
                continue;
            }
            if let Some(c) = r.d.short_interior_cycles().first().cloned() {
                r.remove_short(c.vertex)?;
                continue;
            }
            return Ok((r.d, r.trace));
        }
    }

    /// Least interior vertex of degree two whose faces form a foldable bigon.
    fn find_bigon(&self) -> Option<VertexId> {
        let boundary = self.boundary_vertices();
        self.all_corners().into_iter().find_map(|(v, cs)| {
            let [a, b] = cs[..] else { return None };
            let ok = !boundary.contains(&v)
                && a.first == b.second
                && a.second == b.first
                && self.face_label[&a.face] == self.face_label[&b.face];
            ok.then_some(v)
        })
    }

    fn walk_with_face(&self, v: VertexId, face: TriangleId) -> Option<LinkWalk> {
        self.link_walks(v)
            .into_iter()
            .find(|w| w.corners.iter().any(|c| c.face == face))
    }
}

struct Reducer {
    d: DiagramMap,
    trace: ReductionTrace,
    boundary: Vec<(EdgeId, VertexId, VertexId)>,
}

impl Reducer {
    fn stuck(&self, vertex: VertexId, reason: impl Into<String>) -> ReduceError {
        ReduceError::StuckDiagram {
            vertex,
            reason: reason.into(),
            steps: self.trace.steps.len(),
        }
    }

    fn record(&mut self, kind: Move, before: usize) -> Result<(), ReduceError> {
        self.trace.steps.push(TraceStep {
            kind,
            faces_before: before,
            faces_after: self.d.face_count(),
        });
        if cfg!(debug_assertions) {
            self.d.validate()?;
        }
        if self.d.boundary_labels() != self.boundary {
            return Err(ReduceError::BoundaryChanged(self.trace.steps.len()));
        }
        Ok(())
    }

    fn edge_reduction(&mut self, v: VertexId) -> Result<(), ReduceError> {
        let before = self.d.face_count();
        self.d.edge_reduction(v)?;
        self.record(Move::EdgeReduction { vertex: v.0 }, before)
    }

    /// Diamond move, or a sphere removal when the two edges are parallel;
    /// `None` in the latter case.
    fn diamond(&mut self, v: VertexId, e1: EdgeId, e2: EdgeId) -> Result<Option<VertexId>, ReduceError> {
        let before = self.d.face_count();
        if self.d.edge_ends(e1).map(|[a, b]| if a == v { b } else { a })
            == self.d.edge_ends(e2).map(|[a, b]| if a == v { b } else { a })
        {
            self.d
                .sphere_removal(e1, e2)
                .map_err(|e| self.stuck(v, e.to_string()))?;
            self.record(Move::SphereRemoval { edges: [e1.0, e2.0] }, before)?;
            return Ok(None);
        }
        let v1 = self
            .d
            .diamond_move(v, e1, e2)
            .map_err(|e| self.stuck(v, e.to_string()))?;
        self.record(
            Move::Diamond {
                vertex: v.0,
                edges: [e1.0, e2.0],
                new_vertex: v1.0,
            },
            before,
        )?;
        Ok(Some(v1))
    }

    /// Brings two mirrored corners next to each other, isolates them at a
    /// vertex of their own and folds the resulting bigon.
    fn fold(&mut self, x: VrViolation) -> Result<(), ReduceError> {
        let v = x.vertex;
        let walk = &self.d.link_walks(v)[x.walk];
        let f = walk.corners[x.positions[0]];
        let g = walk.corners[x.positions[1]];
        let (f, g) = if walk.closed && x.positions == [0, walk.corners.len() - 1] && walk.corners.len() > 2 {
            (g, f)
        } else {
            (f, g)
        };
        if f.second != g.first && self.diamond(v, f.second, g.first)?.is_none() {
            return Ok(());
        }
        let walk = self.d.walk_with_face(v, f.face).expect("face stays at v");
        if walk.closed && walk.corners.len() == 2 {
            return self.edge_reduction(v);
        }
        match self.diamond(v, f.first, g.second)? {
            Some(v1) => self.edge_reduction(v1),
            None => Ok(()),
        }
    }

    /// Splits simple cycles off an interior vertex until a short one sits
    /// alone at a vertex, then removes that vertex.
    fn remove_short(&mut self, v: VertexId) -> Result<(), ReduceError> {
        loop {
            let walk = match &self.d.link_walks(v)[..] {
                [w] if w.closed => w.clone(),
                _ => return Err(self.stuck(v, "interior vertex without a single link cycle")),
            };
            let m = walk.corners.len();
            let first = stack_cycles(&self.d, &walk).swap_remove(0);
            let angle: Angle = first.iter().map(|&k| self.d.corner_weight(walk.corners[k].face, v)).sum();
            let short = angle.lt(&Angle::two_pi());
            if first.len() == m {
                return if short { self.removal(v) } else { Ok(()) };
            }
            let (p, q) = (first[0], first[first.len() - 1] + 1);
            let Some(v1) = self.diamond(v, walk.corners[p].first, walk.corners[q % m].first)? else {
                return Ok(());
            };
            if short {
                return self.removal(v1);
            }
        }
    }

    fn removal(&mut self, v: VertexId) -> Result<(), ReduceError> {
        let before = self.d.face_count();
        self.d.vertex_removal(v).map_err(|e| match e {
            MoveError::Target3FlagViolation { .. } => ReduceError::Move(e),
            other => self.stuck(v, other.to_string()),
        })?;
        self.record(Move::VertexRemoval { vertex: v.0 }, before)
    }
}
