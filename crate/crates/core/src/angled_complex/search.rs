//! Bounded depth-first enumeration of simple cycles in a multigraph with
//! nonnegative edge weights, optionally restricted to 2-full cycles.

use std::ops::{Add, ControlFlow};

use num_integer::Integer;

use super::angle::{Angle, FLOAT_TOLERANCE};
use crate::rational::Rational;

pub trait CycleWeight: Copy + PartialOrd + Add<Output = Self> {
    fn zero() -> Self;
    fn infinity() -> Self;
}

impl CycleWeight for i64 {
    fn zero() -> Self {
        0
    }
    fn infinity() -> Self {
        i64::MAX / 4
    }
}

impl CycleWeight for f64 {
    fn zero() -> Self {
        0.0
    }
    fn infinity() -> Self {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions<W> {
    pub min_len: usize,
    pub max_len: usize,
    /// Only report cycles whose weight is strictly below this value.
    pub below: Option<W>,
    /// Reject cycles where two vertices at distance 2 along the cycle are
    /// adjacent in the graph.
    pub two_full: bool,
    /// Additionally reject cycles with an edge between two non-consecutive
    /// cycle vertices that have a common neighbour anywhere in the graph.
    pub strict: bool,
}

/// Multigraph prepared for repeated cycle searches.
#[derive(Debug, Clone)]
pub struct CycleSearch<W> {
    n: usize,
    adj: Vec<Vec<(usize, usize, W)>>,
    bits: Vec<Vec<u64>>,
}

/// A cycle reported by the search: `vertices[i]` and `vertices[i + 1]`
/// (cyclically) are joined by `edges[i]`.
#[derive(Debug, Clone, Copy)]
pub struct FoundCycle<'a, W> {
    pub vertices: &'a [usize],
    pub edges: &'a [usize],
    pub weight: W,
}

impl<W: CycleWeight> CycleSearch<W> {
    /// `edges[i] = (a, b, w)`; the index `i` is reported back in cycles.
    pub fn new(n: usize, edges: &[(usize, usize, W)]) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![Vec::new(); n];
        let mut bits = vec![vec![0u64; words]; n];
        for (i, &(a, b, w)) in edges.iter().enumerate() {
            if a == b {
                continue;
            }
            adj[a].push((b, i, w));
            adj[b].push((a, i, w));
            bits[a][b / 64] |= 1 << (b % 64);
            bits[b][a / 64] |= 1 << (a % 64);
        }
        for list in &mut adj {
            list.sort_by_key(|&(nb, e, _)| (nb, e));
        }
        Self { n, adj, bits }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.bits[a][b / 64] >> (b % 64) & 1 == 1
    }

    pub fn have_common_neighbour(&self, a: usize, b: usize) -> bool {
        self.bits[a].iter().zip(&self.bits[b]).any(|(x, y)| x & y != 0)
    }

    /// Shortest-path distances (Floyd–Warshall).
    fn distances(&self) -> Vec<Vec<W>> {
        let mut d = vec![vec![W::infinity(); self.n]; self.n];
        for (a, row) in d.iter_mut().enumerate() {
            row[a] = W::zero();
            for &(b, _, w) in &self.adj[a] {
                if w < row[b] {
                    row[b] = w;
                }
            }
        }
        for k in 0..self.n {
            for i in 0..self.n {
                let dik = d[i][k];
                if !(dik < W::infinity()) {
                    continue;
                }
                for j in 0..self.n {
                    let via = dik + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        d
    }

    /// Calls `visit` once per cycle (up to rotation and reflection) until it
    /// returns `Break`. Each cycle is reported starting at its least vertex
    /// with `vertices[1] < vertices[last]`.
    pub fn for_each(
        &self,
        opts: &SearchOptions<W>,
        visit: &mut dyn FnMut(FoundCycle<'_, W>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let dist = opts.below.map(|_| self.distances());
        let mut st = State {
            g: self,
            opts,
            dist: dist.as_deref(),
            path: Vec::with_capacity(opts.max_len + 1),
            edges: Vec::with_capacity(opts.max_len + 1),
            on_path: vec![false; self.n],
            visit,
        };
        for s in 0..self.n {
            st.path.push(s);
            st.on_path[s] = true;
            let flow = st.extend(s, W::zero());
            st.on_path[s] = false;
            st.path.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    pub fn collect(&self, opts: &SearchOptions<W>) -> Vec<(Vec<usize>, Vec<usize>, W)> {
        let mut out = Vec::new();
        let _ = self.for_each(opts, &mut |c| {
            out.push((c.vertices.to_vec(), c.edges.to_vec(), c.weight));
            ControlFlow::Continue(())
        });
        out
    }

    pub fn first(&self, opts: &SearchOptions<W>) -> Option<(Vec<usize>, Vec<usize>, W)> {
        let mut out = None;
        let _ = self.for_each(opts, &mut |c| {
            out = Some((c.vertices.to_vec(), c.edges.to_vec(), c.weight));
            ControlFlow::Break(())
        });
        out
    }
}

struct State<'a, 'v, W> {
    g: &'a CycleSearch<W>,
    opts: &'a SearchOptions<W>,
    dist: Option<&'a [Vec<W>]>,
    path: Vec<usize>,
    edges: Vec<usize>,
    on_path: Vec<bool>,
    visit: &'v mut dyn FnMut(FoundCycle<'_, W>) -> ControlFlow<()>,
}

impl<W: CycleWeight> State<'_, '_, W> {
    fn extend(&mut self, cur: usize, sum: W) -> ControlFlow<()> {
        let s = self.path[0];
        let k = self.path.len();
        let g = self.g;
        for &(nb, e, w) in &g.adj[cur] {
            let total = sum + w;
            if nb == s {
                if k >= self.opts.min_len.max(2) && self.closes(e) {
                    if let Some(b) = self.opts.below {
                        if !(total < b) {
                            continue;
                        }
                    }
                    self.edges.push(e);
                    let accept = !self.opts.strict || self.strict_ok();
                    let flow = if accept {
                        (self.visit)(FoundCycle {
                            vertices: &self.path,
                            edges: &self.edges,
                            weight: total,
                        })
                    } else {
                        ControlFlow::Continue(())
                    };
                    self.edges.pop();
                    flow?;
                }
                continue;
            }
            if nb < s || self.on_path[nb] || k >= self.opts.max_len {
                continue;
            }
            if self.opts.two_full && k >= 2 && g.adjacent(self.path[k - 2], nb) {
                continue;
            }
            if let (Some(b), Some(d)) = (self.opts.below, self.dist) {
                if !(total + d[nb][s] < b) {
                    continue;
                }
            }
            self.path.push(nb);
            self.edges.push(e);
            self.on_path[nb] = true;
            let flow = self.extend(nb, total);
            self.on_path[nb] = false;
            self.edges.pop();
            self.path.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Whether closing the current path with edge `e` back to the start
    /// yields an admissible cycle.
    fn closes(&self, e: usize) -> bool {
        let k = self.path.len();
        if k == 2 {
            // a 2-cycle needs two distinct parallel edges
            return self.edges[0] < e;
        }
        if self.path[1] > self.path[k - 1] {
            return false;
        }
        if self.opts.two_full && k >= 4 {
            let g = self.g;
            if g.adjacent(self.path[k - 2], self.path[0]) || g.adjacent(self.path[k - 1], self.path[1]) {
                return false;
            }
        }
        true
    }

    fn strict_ok(&self) -> bool {
        let k = self.path.len();
        for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let (a, c) = (self.path[i], self.path[j]);
                if self.g.adjacent(a, c) && self.g.have_common_neighbour(a, c) {
                    return false;
                }
            }
        }
        true
    }
}

/// Edge weights brought to a common scale: integers over a common
/// denominator of π when all angles are exact, radians otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum ScaledWeights {
    Exact { denominator: i64, units: Vec<i64> },
    Float(Vec<f64>),
}

impl ScaledWeights {
    pub fn new(angles: &[Angle]) -> Self {
        let exact: Option<Vec<Rational>> = angles.iter().map(Angle::as_exact).collect();
        match exact {
            Some(qs) => {
                let denominator = qs.iter().fold(1i64, |acc, q| acc.lcm(q.denom()));
                let units = qs.iter().map(|q| q.numer() * (denominator / q.denom())).collect();
                ScaledWeights::Exact { denominator, units }
            }
            None => ScaledWeights::Float(angles.iter().map(Angle::radians).collect()),
        }
    }
}

/// Runs a cycle search over angle-weighted edges, on integers over a common
/// denominator when every angle is exact and on radians otherwise.
pub fn search_angles(
    n: usize,
    edges: &[(usize, usize, Angle)],
    opts: AngleSearch,
    visit: &mut dyn FnMut(&[usize], &[usize], Angle) -> ControlFlow<()>,
) {
    let angles: Vec<Angle> = edges.iter().map(|e| e.2).collect();
    match ScaledWeights::new(&angles) {
        ScaledWeights::Exact { denominator, units } => {
            let es: Vec<(usize, usize, i64)> =
                edges.iter().zip(&units).map(|(e, &u)| (e.0, e.1, u)).collect();
            let below = opts.limit.map(|(k, inclusive)| k * denominator + i64::from(inclusive));
            let g = CycleSearch::new(n, &es);
            let so = opts.to_search(below);
            let _ = g.for_each(&so, &mut |c| {
                visit(c.vertices, c.edges, Angle::Exact(Rational::new(c.weight, denominator)))
            });
        }
        ScaledWeights::Float(ws) => {
            let es: Vec<(usize, usize, f64)> = edges.iter().zip(&ws).map(|(e, &w)| (e.0, e.1, w)).collect();
            let below = opts.limit.map(|(k, inclusive)| {
                let base = k as f64 * std::f64::consts::PI;
                if inclusive {
                    base + FLOAT_TOLERANCE
                } else {
                    base - FLOAT_TOLERANCE
                }
            });
            let g = CycleSearch::new(n, &es);
            let so = opts.to_search(below);
            let _ = g.for_each(&so, &mut |c| visit(c.vertices, c.edges, Angle::Radians(c.weight)));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngleSearch {
    pub min_len: usize,
    pub max_len: usize,
    /// `(k, inclusive)`: keep cycles of weight `< kπ`, or `≤ kπ` if inclusive.
    pub limit: Option<(i64, bool)>,
    pub two_full: bool,
    pub strict: bool,
}

impl AngleSearch {
    fn to_search<W>(&self, below: Option<W>) -> SearchOptions<W> {
        SearchOptions {
            min_len: self.min_len,
            max_len: self.max_len,
            below,
            two_full: self.two_full,
            strict: self.strict,
        }
    }
}
