use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;
use std::rc::Rc;

use crate::angled_complex::search::{CycleSearch, SearchOptions};
use crate::angled_complex::Angle;
use crate::words::{symmetrized_set, CyclicWord};

use super::overlaps::{enumerate_overlaps, precell_relator, OneRelatorError, Overlap};

/// The boundary path of an overlap: vertices `start ..= start + length`
/// and edges `start .. start + length` of the `r`-cycle, indices mod `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OverlapPath {
    pub start: usize,
    pub length: usize,
}

impl OverlapPath {
    pub fn has_vertex(&self, v: usize, r: usize) -> bool {
        (v + r - self.start % r) % r <= self.length
    }

    pub fn has_edge(&self, e: usize, r: usize) -> bool {
        (e + r - self.start % r) % r < self.length
    }

    pub fn vertices(&self, r: usize) -> impl Iterator<Item = usize> {
        let s = self.start;
        (0..=self.length).map(move |i| (s + i) % r)
    }
}

impl From<&Overlap> for OverlapPath {
    fn from(o: &Overlap) -> Self {
        Self {
            start: o.start,
            length: o.length,
        }
    }
}

/// Connected pieces of the intersection of two boundary paths, as
/// `(first vertex, edge count)`.
pub fn intersection_components(a: OverlapPath, b: OverlapPath, r: usize) -> Vec<(usize, usize)> {
    let both_v = |v: usize| a.has_vertex(v, r) && b.has_vertex(v, r);
    let both_e = |e: usize| a.has_edge(e, r) && b.has_edge(e, r);
    let mut out = Vec::new();
    for v in a.vertices(r) {
        if !both_v(v) || both_e((v + r - 1) % r) {
            continue;
        }
        let len = (0..r).take_while(|&i| both_e((v + i) % r)).count();
        out.push((v, len));
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralEdgeKind {
    /// Between consecutive boundary spokes: a precell triangle.
    Boundary,
    /// From an overlap vertex to a boundary spoke on its path.
    Spoke,
    /// Between two overlap vertices, one per component of the intersection
    /// of their paths.
    Contact { start: usize, length: usize },
}

/// An edge of the central link with weight `units · π / r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralEdge {
    pub ends: [usize; 2],
    pub kind: CentralEdgeKind,
    pub units: i64,
}

/// Link of the central vertex of a coned-off precell. Vertices `0..r` are
/// the spokes to boundary vertices; vertex `r + k` is overlap `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralLink {
    r: usize,
    paths: Vec<OverlapPath>,
    edges: Vec<CentralEdge>,
}

impl CentralLink {
    pub fn from_paths(r: usize, paths: Vec<OverlapPath>) -> Self {
        let mut edges = Vec::new();
        for i in 0..r {
            edges.push(CentralEdge {
                ends: [i, (i + 1) % r],
                kind: CentralEdgeKind::Boundary,
                units: 2,
            });
        }
        for (k, p) in paths.iter().enumerate() {
            for v in p.vertices(r) {
                edges.push(CentralEdge {
                    ends: [r + k, v],
                    kind: CentralEdgeKind::Spoke,
                    units: p.length as i64,
                });
            }
        }
        for a in 0..paths.len() {
            for b in a + 1..paths.len() {
                for (start, length) in intersection_components(paths[a], paths[b], r) {
                    edges.push(CentralEdge {
                        ends: [r + a, r + b],
                        kind: CentralEdgeKind::Contact { start, length },
                        units: (paths[a].length + paths[b].length) as i64 - 2 * length as i64,
                    });
                }
            }
        }
        Self { r, paths, edges }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn paths(&self) -> &[OverlapPath] {
        &self.paths
    }

    pub fn edges(&self) -> &[CentralEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.r + self.paths.len()
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        v < self.r
    }

    pub fn angle(&self, e: &CentralEdge) -> Angle {
        Angle::pi_times(e.units, self.r as i64)
    }

    /// Total weight of the cycle of boundary spokes.
    pub fn boundary_cycle_length(&self) -> Angle {
        self.edges
            .iter()
            .filter(|e| e.kind == CentralEdgeKind::Boundary)
            .map(|e| self.angle(e))
            .sum()
    }
}

pub fn build_central_link(relator: &CyclicWord, include_vertex_contacts: bool) -> Result<CentralLink, OneRelatorError> {
    let overlaps = enumerate_overlaps(relator, include_vertex_contacts)?;
    Ok(CentralLink::from_paths(relator.len(), overlaps.iter().map(OverlapPath::from).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriangleKind {
    /// Central vertex and one boundary edge of the precell.
    Precell,
    /// Two central vertices and a boundary vertex on their shared path.
    Overlap,
    /// Three central vertices of pairwise intersecting precells.
    Triple,
}

/// Corner weights `corners[i] · π / r` of one triangle of the complex near
/// the central vertex; `corners[0]` is the corner at the central vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleWeightRecord {
    pub kind: TriangleKind,
    pub r: usize,
    pub corners: [i64; 3],
    /// Overlap indices involved (none, one or two).
    pub overlaps: Vec<usize>,
    /// For triple triangles: `(l12, l13, l23, l123)`.
    pub lengths: Option<[usize; 4]>,
    pub strict_ok: bool,
}

impl TriangleWeightRecord {
    fn new(kind: TriangleKind, r: usize, corners: [i64; 3], overlaps: Vec<usize>, lengths: Option<[usize; 4]>) -> Self {
        let strict_ok = corners.iter().sum::<i64>() < r as i64;
        Self {
            kind,
            r,
            corners,
            overlaps,
            lengths,
            strict_ok,
        }
    }

    pub fn corner_angles(&self) -> [Angle; 3] {
        self.corners.map(|c| Angle::pi_times(c, self.r as i64))
    }

    pub fn sum(&self) -> Angle {
        Angle::pi_times(self.corners.iter().sum(), self.r as i64)
    }
}

/// Length of the common path of two partner cells through boundary
/// vertex `a0`, found by extending their readings forwards and backwards.
fn partner_overlap(relator: &CyclicWord, o2: &Overlap, o3: &Overlap, a0: usize) -> usize {
    let elements = symmetrized_set(relator);
    let r = relator.len();
    let s2 = elements[o2.partner].letters();
    let s3 = elements[o3.partner].letters();
    let d2 = (a0 + r - o2.start) % r;
    let d3 = (a0 + r - o3.start) % r;
    let forward = (0..r).take_while(|&i| s2[(d2 + i) % r] == s3[(d3 + i) % r]).count();
    let backward = (1..=r)
        .take_while(|&i| s2[(d2 + r * 2 - i) % r] == s3[(d3 + r * 2 - i) % r])
        .count();
    (forward + backward).min(r)
}

/// Every triangle of the complex with a corner at the central vertex.
pub fn triangle_weights(relator: &CyclicWord) -> Result<Vec<TriangleWeightRecord>, OneRelatorError> {
    precell_relator(relator)?;
    let r = relator.len();
    let overlaps = enumerate_overlaps(relator, false)?;
    let mut out: Vec<TriangleWeightRecord> = (0..r)
        .map(|_| TriangleWeightRecord::new(TriangleKind::Precell, r, [2, 0, 0], Vec::new(), None))
        .collect();
    for (k, o) in overlaps.iter().enumerate() {
        let l = o.length as i64;
        out.push(TriangleWeightRecord::new(TriangleKind::Overlap, r, [l, l, 0], vec![k], None));
    }
    for a in 0..overlaps.len() {
        for b in a + 1..overlaps.len() {
            let (o2, o3) = (&overlaps[a], &overlaps[b]);
            for (a0, l123) in intersection_components(o2.into(), o3.into(), r) {
                let (l12, l13) = (o2.length, o3.length);
                let l23 = partner_overlap(relator, o2, o3, a0);
                let c = |x: usize, y: usize| (x + y) as i64 - 2 * l123 as i64;
                out.push(TriangleWeightRecord::new(
                    TriangleKind::Triple,
                    r,
                    [c(l12, l13), c(l12, l23), c(l13, l23)],
                    vec![a, b],
                    Some([l12, l13, l23, l123]),
                ));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkVerdict {
    PassUpToBound,
    Fail,
    /// A short cycle was found, but only through zero-weight spokes of
    /// single-vertex contacts, which may be artefacts of the local model.
    InconclusiveLocal,
}

/// A cycle of the central link with its weight in units of `π / r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub units: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralLinkReport {
    pub bound: usize,
    pub verdict: LinkVerdict,
    /// Length of the cycle of boundary spokes (always `2π`).
    pub boundary_cycle_units: i64,
    /// First short 2-full cycle found, if any.
    pub short_cycle: Option<LinkCycle>,
    /// Cycles of overlap vertices covering the boundary with pairwise
    /// intersections only.
    pub covering_cycles: usize,
    pub covering_mismatches: Vec<LinkCycle>,
    /// Segments leaving and re-entering the boundary spokes through
    /// overlap vertices, checked against twice their boundary span.
    pub segments: usize,
    pub segment_bound: usize,
    pub segment_violations: Vec<LinkCycle>,
}

impl CentralLinkReport {
    pub fn passes(&self) -> bool {
        self.verdict == LinkVerdict::PassUpToBound
    }
}

/// Longest overlap chain examined by the segment check.
pub const SEGMENT_CHAIN_BOUND: usize = 4;

pub fn check_central_link(link: &CentralLink, max_len: usize) -> CentralLinkReport {
    let r = link.r;
    let n = link.vertex_count();
    let es: Vec<(usize, usize, i64)> = link.edges.iter().map(|e| (e.ends[0], e.ends[1], e.units)).collect();
    let g = CycleSearch::new(n, &es);
    let opts = SearchOptions {
        min_len: 4,
        max_len,
        below: Some(2 * r as i64),
        two_full: true,
        strict: false,
    };
    let mut fail = None;
    let mut inconclusive = None;
    let _ = g.for_each(&opts, &mut |c| {
        let cycle = LinkCycle {
            vertices: c.vertices.to_vec(),
            edges: c.edges.to_vec(),
            units: c.weight,
        };
        let local = c
            .edges
            .iter()
            .any(|&e| link.edges[e].kind == CentralEdgeKind::Spoke && link.edges[e].units == 0);
        if local {
            inconclusive.get_or_insert(cycle);
            ControlFlow::Continue(())
        } else {
            fail = Some(cycle);
            ControlFlow::Break(())
        }
    });
    let boundary_cycle_units: i64 = link
        .edges
        .iter()
        .filter(|e| e.kind == CentralEdgeKind::Boundary)
        .map(|e| e.units)
        .sum();
    let (covering_cycles, covering_mismatches) = covering_cycles(link, max_len);
    let segment_bound = SEGMENT_CHAIN_BOUND.min(max_len.saturating_sub(2)).max(1);
    let (segments, segment_violations) = segments(link, segment_bound);
    let broken = fail.is_some()
        || boundary_cycle_units != 2 * r as i64
        || !covering_mismatches.is_empty()
        || !segment_violations.is_empty();
    let verdict = if broken {
        LinkVerdict::Fail
    } else if inconclusive.is_some() {
        LinkVerdict::InconclusiveLocal
    } else {
        LinkVerdict::PassUpToBound
    };
    CentralLinkReport {
        bound: max_len,
        verdict,
        boundary_cycle_units,
        short_cycle: fail.or(inconclusive),
        covering_cycles,
        covering_mismatches,
        segments,
        segment_bound,
        segment_violations,
    }
}

/// Overlap adjacency: `(neighbour overlap, edge index, units)`.
fn contact_adjacency(link: &CentralLink) -> Vec<Vec<(usize, usize, i64)>> {
    let r = link.r;
    let mut adj = vec![Vec::new(); link.paths.len()];
    for (i, e) in link.edges.iter().enumerate() {
        if let CentralEdgeKind::Contact { .. } = e.kind {
            let (a, b) = (e.ends[0] - r, e.ends[1] - r);
            adj[a].push((b, i, e.units));
            adj[b].push((a, i, e.units));
        }
    }
    adj
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct CoverState {
    cur: usize,
    /// boundary vertices on one path, on two paths, and covered edges
    once: Bits,
    twice: Bits,
    edges: Bits,
    len: usize,
    must_close: bool,
}

/// Counts covering cycles through a fixed least overlap `first`, by the
/// total weight of the edges still to be walked. Chains are memoised on
/// what the rest of the walk can see: the current path and the coverage.
struct Cover<'a> {
    link: &'a CentralLink,
    adj: Vec<Vec<(usize, usize, i64)>>,
    max_len: usize,
    first: usize,
    memo: HashMap<CoverState, Rc<BTreeMap<i64, u64>>>,
}

impl Cover<'_> {
    fn full(&self, edges: &Bits) -> bool {
        (0..self.link.r).all(|i| bit(edges, i))
    }

    fn start(&self, k: usize) -> CoverState {
        let words = self.link.r.div_ceil(64);
        let mut s = CoverState {
            cur: k,
            once: vec![0; words],
            twice: vec![0; words],
            edges: vec![0; words],
            len: 1,
            must_close: false,
        };
        let p = self.link.paths[k];
        for v in p.vertices(self.link.r) {
            set(&mut s.once, v);
        }
        for i in 0..p.length {
            set(&mut s.edges, (p.start + i) % self.link.r);
        }
        s
    }

    /// The state after appending path `k`, if admissible: `k` meets no
    /// path except the current one and the first, and no boundary vertex
    /// ends up on three paths.
    fn step(&self, st: &CoverState, k: usize) -> Option<CoverState> {
        let r = self.link.r;
        let (cur, first) = (self.link.paths[st.cur], self.link.paths[self.first]);
        let p = self.link.paths[k];
        let mut next = st.clone();
        next.cur = k;
        next.len += 1;
        for v in p.vertices(r) {
            if bit(&st.twice, v) {
                return None;
            }
            if bit(&st.once, v) {
                if cur.has_vertex(v, r) {
                } else if st.len >= 2 && first.has_vertex(v, r) {
                    next.must_close = true;
                } else {
                    return None;
                }
                set(&mut next.twice, v);
            } else {
                set(&mut next.once, v);
            }
        }
        for i in 0..p.length {
            set(&mut next.edges, (p.start + i) % r);
        }
        Some(next)
    }

    fn solve(&mut self, st: &CoverState) -> Rc<BTreeMap<i64, u64>> {
        if let Some(m) = self.memo.get(st) {
            return m.clone();
        }
        let mut out: BTreeMap<i64, u64> = BTreeMap::new();
        for (nb, _, w) in self.adj[st.cur].clone() {
            if nb == self.first {
                if st.len >= 3 && self.full(&st.edges) {
                    *out.entry(w).or_default() += 1;
                }
                continue;
            }
            if st.must_close || nb < self.first || st.len >= self.max_len {
                continue;
            }
            let Some(next) = self.step(st, nb) else {
                continue;
            };
            for (&rest, &count) in self.solve(&next).iter() {
                *out.entry(rest + w).or_default() += count;
            }
        }
        let out = Rc::new(out);
        self.memo.insert(st.clone(), out.clone());
        out
    }

    /// One cycle from `st` whose remaining edges weigh `target`.
    fn trace(&mut self, st: &CoverState, target: i64, path: &mut Vec<usize>, edges: &mut Vec<usize>) {
        for (nb, e, w) in self.adj[st.cur].clone() {
            if nb == self.first {
                if st.len >= 3 && self.full(&st.edges) && w == target {
                    edges.push(e);
                    return;
                }
                continue;
            }
            if st.must_close || nb < self.first || st.len >= self.max_len {
                continue;
            }
            let Some(next) = self.step(st, nb) else {
                continue;
            };
            if self.solve(&next).contains_key(&(target - w)) {
                path.push(nb);
                edges.push(e);
                self.trace(&next, target - w, path, edges);
                return;
            }
        }
        unreachable!("memo promised a completion");
    }
}

/// Enumerates cycles of overlap vertices whose paths cover the boundary,
/// consecutive paths meeting and no boundary vertex on three paths.
fn covering_cycles(link: &CentralLink, max_len: usize) -> (usize, Vec<LinkCycle>) {
    let r = link.r;
    let m = link.paths.len();
    let adj = contact_adjacency(link);
    let target = 2 * r as i64;
    let mut found = 0u64;
    let mut mismatches = Vec::new();
    // two paths joined by two different contact edges
    for a in 0..m {
        for (i, &(b, e1, w1)) in adj[a].iter().enumerate() {
            if b < a {
                continue;
            }
            for &(b2, e2, w2) in &adj[a][i + 1..] {
                if b2 != b {
                    continue;
                }
                let covered = (0..r).all(|x| link.paths[a].has_edge(x, r) || link.paths[b].has_edge(x, r));
                if !covered {
                    continue;
                }
                found += 1;
                if w1 + w2 != target {
                    mismatches.push(LinkCycle {
                        vertices: vec![a + r, b + r],
                        edges: vec![e1, e2],
                        units: w1 + w2,
                    });
                }
            }
        }
    }
    for s in 0..m {
        let mut c = Cover {
            link,
            adj: adj.clone(),
            max_len,
            first: s,
            memo: HashMap::new(),
        };
        let root = c.start(s);
        let totals = c.solve(&root);
        // each cycle is seen once in each direction
        found += totals.values().sum::<u64>() / 2;
        for (&total, _) in totals.iter().filter(|(&t, _)| t != target) {
            let (mut path, mut edges) = (vec![s], Vec::new());
            c.trace(&root, total, &mut path, &mut edges);
            mismatches.push(LinkCycle {
                vertices: path.iter().map(|&p| p + r).collect(),
                edges,
                units: total,
            });
        }
    }
    (found as usize, mismatches)
}

/// Shortest arc from `a` to `b` along the boundary using only covered
/// vertices and edges, if any.
fn covered_arc(a: usize, b: usize, r: usize, edge_cover: &[u32]) -> Option<usize> {
    let forward = (0..r).take_while(|&i| (a + i) % r != b).count();
    let fwd_ok = (0..forward).all(|i| edge_cover[(a + i) % r] > 0);
    let backward = r - forward;
    let bwd_ok = (0..backward).all(|i| edge_cover[(b + i) % r] > 0);
    match (fwd_ok, bwd_ok) {
        (true, true) => Some(forward.min(backward)),
        (true, false) => Some(forward),
        (false, true) => Some(backward),
        (false, false) => None,
    }
}

/// Checks every segment `v1, P1, …, Pk, v2` (boundary spokes `v1 ≠ v2`,
/// overlap chain of at most `chain_bound` paths, locally 2-full) against
/// twice the covered boundary arc between `v1` and `v2`.
fn segments(link: &CentralLink, chain_bound: usize) -> (usize, Vec<LinkCycle>) {
    let r = link.r;
    let adj = contact_adjacency(link);
    let mut count = 0;
    let mut violations = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>, i64)> =
        (0..link.paths.len()).map(|k| (vec![k], Vec::new(), link.paths[k].length as i64)).collect();
    while let Some((chain, edges, units)) = stack.pop() {
        let k = chain.len();
        let first = link.paths[chain[0]];
        let last = link.paths[chain[k - 1]];
        let total = units + last.length as i64;
        if k == 1 || chain[0] < chain[k - 1] {
            let mut edge_cover = vec![0u32; r];
            for &p in &chain {
                let p = link.paths[p];
                for i in 0..p.length {
                    edge_cover[(p.start + i) % r] += 1;
                }
            }
            let ends1: Vec<usize> = first
                .vertices(r)
                .filter(|&v| k == 1 || !link.paths[chain[1]].has_vertex(v, r))
                .collect();
            let ends2: Vec<usize> = last
                .vertices(r)
                .filter(|&v| k == 1 || !link.paths[chain[k - 2]].has_vertex(v, r))
                .collect();
            for &v1 in &ends1 {
                for &v2 in &ends2 {
                    if v1 == v2 {
                        continue;
                    }
                    let Some(arc) = covered_arc(v1, v2, r, &edge_cover) else {
                        continue;
                    };
                    count += 1;
                    if total < 2 * arc as i64 {
                        let mut vertices = vec![v1];
                        vertices.extend(chain.iter().map(|&p| p + r));
                        vertices.push(v2);
                        violations.push(LinkCycle {
                            vertices,
                            edges: edges.clone(),
                            units: total,
                        });
                    }
                }
            }
        }
        if k >= chain_bound {
            continue;
        }
        let cur = chain[k - 1];
        for &(nb, e, w) in &adj[cur] {
            if chain.contains(&nb) || units + w >= 2 * r as i64 {
                continue;
            }
            if k >= 2 && !intersection_components(link.paths[chain[k - 2]], link.paths[nb], r).is_empty() {
                continue;
            }
            let mut c2 = chain.clone();
            c2.push(nb);
            let mut e2 = edges.clone();
            e2.push(e);
            stack.push((c2, e2, units + w));
        }
    }
    (count, violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{cyclic_reduce, Word};

    fn example_one() -> CyclicWord {
        cyclic_reduce(&Word::from_signed(&[1, 1, 1, 1, 2, 1, 2, 1, -2, -1, 2, 2, 2, -1, 2]))
    }

    #[test]
    fn components_of_path_intersections() {
        let r = 15;
        let a = OverlapPath { start: 0, length: 7 };
        let b = OverlapPath { start: 7, length: 8 };
        assert_eq!(intersection_components(a, b, r), vec![(0, 0), (7, 0)]);
        let c = OverlapPath { start: 5, length: 4 };
        assert_eq!(intersection_components(a, c, r), vec![(5, 2)]);
        let d = OverlapPath { start: 10, length: 2 };
        assert!(intersection_components(a, d, r).is_empty());
    }

    #[test]
    fn boundary_spokes_form_a_cycle_of_length_two_pi() {
        let link = build_central_link(&example_one(), false).unwrap();
        assert_eq!(link.boundary_cycle_length(), Angle::two_pi());
        let boundary: Vec<&CentralEdge> = link.edges().iter().filter(|e| e.kind == CentralEdgeKind::Boundary).collect();
        assert_eq!(boundary.len(), 15);
        for e in link.edges() {
            if e.kind == CentralEdgeKind::Spoke {
                assert!((1..=3).contains(&e.units));
            }
            assert!(e.units >= 0);
        }
    }

    #[test]
    fn contact_weights_match_pairwise_intersections() {
        let link = build_central_link(&example_one(), false).unwrap();
        let r = link.r();
        for e in link.edges() {
            if let CentralEdgeKind::Contact { length, .. } = e.kind {
                let (a, b) = (link.paths()[e.ends[0] - r], link.paths()[e.ends[1] - r]);
                // brute-force common edges on the cycle
                let common = (0..r).filter(|&i| a.has_edge(i, r) && b.has_edge(i, r)).count();
                assert!(length <= common);
                assert_eq!(e.units, (a.length + b.length) as i64 - 2 * length as i64);
            }
        }
    }

    #[test]
    fn two_paths_covering_the_boundary() {
        let link = CentralLink::from_paths(
            15,
            vec![OverlapPath { start: 0, length: 7 }, OverlapPath { start: 7, length: 8 }],
        );
        let report = check_central_link(&link, 12);
        assert_eq!(report.covering_cycles, 1);
        assert!(report.covering_mismatches.is_empty());
        let contacts: Vec<Angle> = link
            .edges()
            .iter()
            .filter(|e| matches!(e.kind, CentralEdgeKind::Contact { .. }))
            .map(|e| link.angle(e))
            .collect();
        assert_eq!(contacts, vec![Angle::pi(), Angle::pi()]);
    }

    #[test]
    fn three_paths_covering_the_boundary() {
        let paths = vec![
            OverlapPath { start: 0, length: 6 },
            OverlapPath { start: 5, length: 6 },
            OverlapPath { start: 10, length: 6 },
        ];
        let link = CentralLink::from_paths(15, paths);
        let report = check_central_link(&link, 12);
        assert_eq!(report.covering_cycles, 1);
        assert!(report.covering_mismatches.is_empty());
    }

    #[test]
    fn triangle_records_are_strict_for_example_one() {
        let records = triangle_weights(&example_one()).unwrap();
        let kinds = |k| records.iter().filter(|t| t.kind == k).count();
        assert_eq!(kinds(TriangleKind::Precell), 15);
        assert_eq!(kinds(TriangleKind::Overlap), enumerate_overlaps(&example_one(), false).unwrap().len());
        assert!(kinds(TriangleKind::Triple) > 0);
        for t in &records {
            assert!(t.strict_ok, "{t:?}");
            assert!(t.corners.iter().all(|&c| c >= 0));
            if let Some([l12, l13, l23, l123]) = t.lengths {
                assert!(l123 <= l12.min(l13).min(l23));
                assert_eq!(t.corners.iter().sum::<i64>(), 2 * (l12 + l13 + l23) as i64 - 6 * l123 as i64);
            }
        }
    }

    #[test]
    fn central_link_weak_triangle_inequality() {
        use crate::angled_complex::weak_triangle_inequality;
        let link = build_central_link(&example_one(), false).unwrap();
        let es: Vec<(usize, usize, i64)> = link.edges().iter().map(|e| (e.ends[0], e.ends[1], e.units)).collect();
        let g = CycleSearch::new(link.vertex_count(), &es);
        let triples = g.collect(&SearchOptions {
            min_len: 3,
            max_len: 3,
            below: None,
            two_full: false,
            strict: false,
        });
        assert!(!triples.is_empty());
        for (_, edges, _) in triples {
            let w = [0, 1, 2].map(|i| link.angle(&link.edges()[edges[i]]));
            assert!(weak_triangle_inequality(w));
        }
    }
    #[test]
    fn a_light_contact_edge_fails_the_link() {
        // disjoint paths joined by a contact edge of weight zero close up
        // with the boundary into a 2-full 4-cycle of length π
        let mut link = CentralLink::from_paths(
            8,
            vec![OverlapPath { start: 0, length: 3 }, OverlapPath { start: 4, length: 3 }],
        );
        link.edges.push(CentralEdge {
            ends: [8, 9],
            kind: CentralEdgeKind::Contact { start: 0, length: 0 },
            units: 0,
        });
        let report = check_central_link(&link, 12);
        assert_eq!(report.verdict, LinkVerdict::Fail);
        let cycle = report.short_cycle.unwrap();
        assert!(cycle.units < 16);
        assert!(cycle.vertices.len() >= 4);
    }
}
