use std::collections::BTreeSet;
use std::ops::ControlFlow;

use super::angle::Angle;
use super::complex::{AngledComplex, TriangleId, VertexId};
use super::link::{link, LinkGraph};
use super::search::{search_angles, AngleSearch};

pub const DEFAULT_CYCLE_BOUND: usize = 12;

/// A simple cycle in a link: `edges[i]` joins `vertices[i]` to
/// `vertices[(i + 1) % len]`. Indices refer to the link graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub angular_length: Angle,
}

impl SimpleCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleOptions {
    pub max_len: usize,
    /// Read "common neighbour" as any vertex of the link, not just the
    /// vertex between the two along the cycle.
    pub strict: bool,
}

impl Default for CycleOptions {
    fn default() -> Self {
        Self {
            max_len: DEFAULT_CYCLE_BOUND,
            strict: false,
        }
    }
}

fn link_edges(l: &LinkGraph) -> Vec<(usize, usize, Angle)> {
    l.edges.iter().map(|e| (e.ends[0], e.ends[1], e.angle)).collect()
}

fn run(l: &LinkGraph, opts: AngleSearch, stop_after_first: bool) -> Vec<SimpleCycle> {
    let mut out = Vec::new();
    search_angles(l.vertex_count(), &link_edges(l), opts, &mut |vs, es, len| {
        out.push(SimpleCycle {
            vertices: vs.to_vec(),
            edges: es.to_vec(),
            angular_length: len,
        });
        if stop_after_first {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// Every 2-full cycle of length `4..=max_len` in `l`, one representative
/// per cycle up to rotation and reflection.
pub fn two_full_cycles(l: &LinkGraph, opts: CycleOptions) -> Vec<SimpleCycle> {
    run(
        l,
        AngleSearch {
            min_len: 4,
            max_len: opts.max_len,
            limit: None,
            two_full: true,
            strict: opts.strict,
        },
        false,
    )
}

/// Every simple cycle of length `min_len..=max_len` (at least 3).
pub fn simple_cycles(l: &LinkGraph, min_len: usize, max_len: usize) -> Vec<SimpleCycle> {
    run(
        l,
        AngleSearch {
            min_len: min_len.max(3),
            max_len,
            limit: None,
            two_full: false,
            strict: false,
        },
        false,
    )
}

/// First 2-full cycle (in search order) of angular length below `2π`, or
/// at most `2π` when `inclusive`.
pub fn short_two_full_cycle(l: &LinkGraph, opts: CycleOptions, inclusive: bool) -> Option<SimpleCycle> {
    run(
        l,
        AngleSearch {
            min_len: 4,
            max_len: opts.max_len,
            limit: Some((2, inclusive)),
            two_full: true,
            strict: opts.strict,
        },
        true,
    )
    .pop()
}

/// Chords and triangles of a triangulation of the polygon bounded by a
/// cycle. Positions index into the cycle; `link_edge` is the edge of the
/// link used as the chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskTriangulation {
    pub chords: Vec<Chord>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub positions: [usize; 2],
    pub link_edge: usize,
}

/// Triangulates the polygon bounded by `cycle` (given as link vertices)
/// using only chords that are edges of `l`, without interior vertices.
pub fn link_disk_triangulation(l: &LinkGraph, cycle: &[usize]) -> Option<DiskTriangulation> {
    let k = cycle.len();
    if k < 3 {
        return None;
    }
    let side = |i: usize, j: usize| j == i + 1 || (i == 0 && j == k - 1);
    let diag = |i: usize, j: usize| side(i, j) || l.adjacent(cycle[i], cycle[j]);
    // split[i][j]: apex m of the triangle on side (i, j) in a triangulation
    // of the sub-polygon i..=j
    let mut split = vec![vec![None::<usize>; k]; k];
    for gap in 2..k {
        for i in 0..k - gap {
            let j = i + gap;
            if !diag(i, j) {
                continue;
            }
            split[i][j] = (i + 1..j).find(|&m| {
                (m == i + 1 || split[i][m].is_some()) && (j == m + 1 || split[m][j].is_some())
            });
        }
    }
    split[0][k - 1]?;
    let mut out = DiskTriangulation {
        chords: Vec::new(),
        triangles: Vec::new(),
    };
    let mut stack = vec![(0, k - 1)];
    while let Some((i, j)) = stack.pop() {
        if j == i + 1 {
            continue;
        }
        if !side(i, j) {
            let e = l.edges_between(cycle[i], cycle[j])[0];
            out.chords.push(Chord {
                positions: [i, j],
                link_edge: e,
            });
        }
        let m = split[i][j].unwrap();
        out.triangles.push([i, m, j]);
        stack.push((i, m));
        stack.push((m, j));
    }
    out.chords.sort_by_key(|c| c.positions);
    out.triangles.sort();
    Some(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum LocalVerdict {
    PassUpToBound { bound: usize },
    Fail { vertex: VertexId, cycle: SimpleCycle },
}

impl LocalVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, LocalVerdict::PassUpToBound { .. })
    }
}

/// Every 2-full cycle of length at most `opts.max_len` in every vertex
/// link has angular length at least `2π`.
pub fn is_locally_2pi_large(x: &AngledComplex, opts: CycleOptions) -> LocalVerdict {
    for v in x.vertices() {
        let l = link(x, v).expect("vertex exists");
        if let Some(cycle) = short_two_full_cycle(&l, opts, false) {
            return LocalVerdict::Fail { vertex: v, cycle };
        }
    }
    LocalVerdict::PassUpToBound { bound: opts.max_len }
}

/// Three pairwise adjacent link vertices and the corners joining them.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkTriple {
    pub vertex: VertexId,
    /// Triangles of the complex giving the three link edges.
    pub corners: [TriangleId; 3],
    pub angles: [Angle; 3],
}

/// Every 3-cycle in the link of `v`, one per choice of parallel edges.
pub fn link_triples(l: &LinkGraph) -> Vec<LinkTriple> {
    let mut out = Vec::new();
    search_angles(
        l.vertex_count(),
        &link_edges(l),
        AngleSearch {
            min_len: 3,
            max_len: 3,
            limit: None,
            two_full: false,
            strict: false,
        },
        &mut |_, es, _| {
            let e = |i: usize| &l.edges[es[i]];
            out.push(LinkTriple {
                vertex: l.base,
                corners: [e(0).triangle, e(1).triangle, e(2).triangle],
                angles: [e(0).angle, e(1).angle, e(2).angle],
            });
            ControlFlow::Continue(())
        },
    );
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightReport {
    /// (a) corners with a negative weight
    pub negative: Vec<(TriangleId, VertexId)>,
    /// (b) number of distinct weight values (always finite for a finite
    /// complex; reported for completeness)
    pub distinct_values: usize,
    /// (c) link triples violating the weak triangle inequality
    pub triangle_inequality: Vec<LinkTriple>,
    /// (d) triangles whose corner sum is not strictly below `π`
    pub large_triangles: Vec<(TriangleId, Angle)>,
}

impl WeightReport {
    pub fn nonnegative(&self) -> bool {
        self.negative.is_empty()
    }

    pub fn triangle_inequality_holds(&self) -> bool {
        self.triangle_inequality.is_empty()
    }

    pub fn sums_below_pi(&self) -> bool {
        self.large_triangles.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.nonnegative() && self.triangle_inequality_holds() && self.sums_below_pi()
    }
}

/// `a ≤ b + c` for every labelling of the three sides.
pub fn weak_triangle_inequality(w: [Angle; 3]) -> bool {
    (0..3).all(|i| w[i].le(&(w[(i + 1) % 3] + w[(i + 2) % 3])))
}

pub fn weight_validate(x: &AngledComplex) -> WeightReport {
    let mut negative = Vec::new();
    let mut values: Vec<Angle> = Vec::new();
    for (&(t, v), w) in x.weights() {
        if w.is_negative() {
            negative.push((t, v));
        }
        if !values.iter().any(|u| u == w) {
            values.push(*w);
        }
    }
    let mut triangle_inequality = Vec::new();
    for v in x.vertices() {
        let l = link(x, v).expect("vertex exists");
        triangle_inequality.extend(
            link_triples(&l)
                .into_iter()
                .filter(|t| !weak_triangle_inequality(t.angles)),
        );
    }
    let mut large_triangles = Vec::new();
    for (t, _) in x.triangles() {
        if x.triangle_vertices(t).is_none() {
            continue;
        }
        let s = x.corner_sum(t);
        if !s.lt(&Angle::pi()) {
            large_triangles.push((t, s));
        }
    }
    WeightReport {
        negative,
        distinct_values: values.len(),
        triangle_inequality,
        large_triangles,
    }
}

/// Link vertices of `l` grouped by the vertex at the far end of the edge.
pub fn far_endpoints(x: &AngledComplex, l: &LinkGraph) -> Vec<VertexId> {
    l.vertices
        .iter()
        .map(|&e| x.edge(e).and_then(|ed| ed.other(l.base)).expect("edge at base"))
        .collect()
}

/// Vertex sets of the cycles, for comparing enumerations across
/// relabelled complexes.
pub fn cycle_signatures(l: &LinkGraph, cycles: &[SimpleCycle]) -> BTreeSet<Vec<TriangleId>> {
    cycles
        .iter()
        .map(|c| {
            let mut ts: Vec<TriangleId> = c.edges.iter().map(|&e| l.edges[e].triangle).collect();
            ts.sort();
            ts
        })
        .collect()
}
