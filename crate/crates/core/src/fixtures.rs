//! Small named complexes used by tests, benchmarks and the CLI examples.

use std::collections::BTreeMap;

use rand::Rng;

use crate::angled_complex::{Angle, AngledComplex, ComplexBuilder, EdgeId, TriangleId, VertexId};
use crate::rational::Rational;

/// Builds a simplicial complex from vertex triples: one edge per vertex
/// pair that occurs, edge ids in sorted pair order, triangle ids in input
/// order.
#[derive(Debug, Clone, Default)]
pub struct Simplicial {
    pub vertex_count: u32,
    pub triangles: Vec<[u32; 3]>,
    /// Extra edges not on any triangle.
    pub extra_edges: Vec<[u32; 2]>,
    /// Tetrahedra as vertex quadruples; all four faces must be listed.
    pub tetrahedra: Vec<[u32; 4]>,
}

impl Simplicial {
    pub fn edge_map(&self) -> BTreeMap<[u32; 2], EdgeId> {
        let mut pairs: Vec<[u32; 2]> = self.extra_edges.iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect();
        for t in &self.triangles {
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                pairs.push([t[i].min(t[j]), t[i].max(t[j])]);
            }
        }
        pairs.sort();
        pairs.dedup();
        pairs.into_iter().enumerate().map(|(i, p)| (p, EdgeId(i as u32))).collect()
    }

    /// `weight(triangle index, vertex)` gives each corner.
    pub fn build(&self, mut weight: impl FnMut(usize, u32) -> Angle) -> AngledComplex {
        let edges = self.edge_map();
        let mut b = ComplexBuilder::new();
        for v in 0..self.vertex_count {
            b.vertex(VertexId(v)).unwrap();
        }
        for (&[x, y], &id) in &edges {
            b.edge(id, VertexId(x), VertexId(y)).unwrap();
        }
        let e = |x: u32, y: u32| edges[&[x.min(y), x.max(y)]];
        let mut tri_ids: BTreeMap<[u32; 3], TriangleId> = BTreeMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            let id = TriangleId(i as u32);
            b.triangle(id, [e(t[0], t[1]), e(t[1], t[2]), e(t[0], t[2])]).unwrap();
            for &v in t {
                b.weight(id, VertexId(v), weight(i, v)).unwrap();
            }
            let mut key = *t;
            key.sort();
            tri_ids.insert(key, id);
        }
        for q in &self.tetrahedra {
            let mut q = *q;
            q.sort();
            let face = |skip: usize| {
                let vs: Vec<u32> = (0..4).filter(|&i| i != skip).map(|i| q[i]).collect();
                tri_ids[&[vs[0], vs[1], vs[2]]]
            };
            b.tetrahedron([face(0), face(1), face(2), face(3)]).unwrap();
        }
        b.build()
    }

    pub fn uniform(&self, w: Angle) -> AngledComplex {
        self.build(|_, _| w)
    }

    /// Adds Euclidean length `len(a, b)` to every edge.
    pub fn with_lengths(&self, x: AngledComplex, mut len: impl FnMut(u32, u32) -> f64) -> AngledComplex {
        let mut b = x.to_builder();
        for ([p, q], id) in self.edge_map() {
            b.length(id, len(p, q)).unwrap();
        }
        b.build()
    }
}

fn all_triples(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub fn single_triangle(w: [Angle; 3]) -> AngledComplex {
    Simplicial {
        vertex_count: 3,
        triangles: vec![[0, 1, 2]],
        ..Default::default()
    }
    .build(|_, v| w[v as usize])
}

/// Boundary of a 3-simplex with its solid recorded.
pub fn tetrahedron_shape() -> Simplicial {
    Simplicial {
        vertex_count: 4,
        triangles: all_triples(4),
        tetrahedra: vec![[0, 1, 2, 3]],
        ..Default::default()
    }
}

pub fn tetrahedron(w: Angle) -> AngledComplex {
    tetrahedron_shape().uniform(w)
}

/// 2-skeleton of the 4-simplex with all five solids recorded.
pub fn four_simplex_shape() -> Simplicial {
    let tets = (0..5u32)
        .map(|skip| {
            let vs: Vec<u32> = (0..5).filter(|&v| v != skip).collect();
            [vs[0], vs[1], vs[2], vs[3]]
        })
        .collect();
    Simplicial {
        vertex_count: 5,
        triangles: all_triples(5),
        tetrahedra: tets,
        ..Default::default()
    }
}

/// The 4-simplex with every corner `π/4`.
pub fn four_simplex() -> AngledComplex {
    four_simplex_shape().uniform(Angle::pi_times(1, 4))
}

/// Cone with apex `0` over the cycle `1..=k`.
pub fn cone_shape(k: u32) -> Simplicial {
    Simplicial {
        vertex_count: k + 1,
        triangles: (1..=k).map(|i| [0, i, i % k + 1]).collect(),
        ..Default::default()
    }
}

pub fn cone(k: u32, apex: Angle, rim: Angle) -> AngledComplex {
    cone_shape(k).build(|_, v| if v == 0 { apex } else { rim })
}

/// A precell coned off from its centre `0`: `r` triangles, centre corners
/// `2π/r`, all other corners zero.
pub fn precell_disk(r: u32) -> AngledComplex {
    cone(r, Angle::pi_times(2, r as i64), Angle::zero())
}

/// Ball of radius 2 about a vertex in the triangulated hyperbolic plane
/// with seven triangles at every vertex. Interior vertex links are
/// chordless 7-cycles.
pub fn heptagonal_disk_shape() -> Simplicial {
    const DEG: u32 = 7;
    let mut triangles: Vec<[u32; 3]> = (1..=DEG).map(|i| [0, i, i % DEG + 1]).collect();
    let mut count: BTreeMap<u32, u32> = BTreeMap::new();
    for t in &triangles {
        for v in t {
            *count.entry(*v).or_default() += 1;
        }
    }
    let ring: Vec<u32> = (1..=DEG).collect();
    let m = ring.len();
    let mut next = DEG + 1;
    // bridge[i] sits on the outer side of ring edge (ring[i], ring[i+1])
    let bridge: Vec<u32> = (0..m).map(|i| next + i as u32).collect();
    next += m as u32;
    for i in 0..m {
        triangles.push([ring[i], ring[(i + 1) % m], bridge[i]]);
    }
    for i in 0..m {
        let b = ring[i];
        let need = DEG - count[&b] - 2;
        let mut seq = vec![bridge[(i + m - 1) % m]];
        for _ in 0..need - 1 {
            seq.push(next);
            next += 1;
        }
        seq.push(bridge[i]);
        for w in seq.windows(2) {
            triangles.push([b, w[0], w[1]]);
        }
    }
    Simplicial {
        vertex_count: next,
        triangles,
        ..Default::default()
    }
}

/// [`heptagonal_disk_shape`] with every corner `13π/42`.
pub fn heptagonal_disk() -> AngledComplex {
    heptagonal_disk_shape().uniform(Angle::pi_times(13, 42))
}

/// [`heptagonal_disk_shape`] with unit edge lengths (equilateral shapes).
pub fn heptagonal_disk_metric() -> AngledComplex {
    let s = heptagonal_disk_shape();
    s.with_lengths(s.uniform(Angle::pi_times(1, 3)), |_, _| 1.0)
}

/// Cone over a square with unit spokes and rim edges of length `√2`: the
/// apex link is a 2-full 4-cycle of angular length exactly `2π`.
pub fn flat_square_cone() -> AngledComplex {
    let s = cone_shape(4);
    s.with_lengths(s.uniform(Angle::pi_times(1, 4)), |a, _| if a == 0 { 1.0 } else { 2f64.sqrt() })
}

/// Three right isosceles triangles at vertex `0` whose apex angles
/// `π/4, π/4, π/2` make a link triple with no slack.
pub fn flat_link_triple() -> AngledComplex {
    let s = Simplicial {
        vertex_count: 4,
        triangles: vec![[0, 1, 2], [0, 2, 3], [0, 1, 3]],
        ..Default::default()
    };
    let root2 = 2f64.sqrt();
    let len = |a: u32, b: u32| match (a, b) {
        (0, 1) | (0, 3) | (1, 2) | (2, 3) => 1.0,
        _ => root2,
    };
    s.with_lengths(s.uniform(Angle::pi_times(1, 4)), len)
}

/// Named strictly systolic complexes with exact weights.
pub fn strictly_systolic() -> Vec<(&'static str, AngledComplex)> {
    vec![
        ("tetrahedron", tetrahedron(Angle::pi_times(1, 4))),
        ("four-simplex", four_simplex()),
        ("heptagonal-disk", heptagonal_disk()),
        ("precell-disk-15", precell_disk(15)),
        ("cone-7", cone(7, Angle::pi_times(2, 7), Angle::pi_times(1, 3))),
    ]
}

/// Random simplicial complex with random nonnegative rational weights,
/// including isolated vertices and bare edges.
pub fn random_complex<R: Rng>(rng: &mut R) -> AngledComplex {
    let n = rng.gen_range(1..=9u32);
    let mut triangles = Vec::new();
    let mut extra_edges = Vec::new();
    if n >= 3 {
        for t in all_triples(n) {
            if rng.gen_bool(0.3) {
                triangles.push(t);
            }
        }
    }
    if n >= 2 {
        for _ in 0..rng.gen_range(0..3) {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                extra_edges.push([a, b]);
            }
        }
    }
    let s = Simplicial {
        vertex_count: n,
        triangles,
        extra_edges,
        tetrahedra: Vec::new(),
    };
    s.build(|_, _| Angle::Exact(Rational::new(rng.gen_range(0..12), rng.gen_range(1..13))))
}
