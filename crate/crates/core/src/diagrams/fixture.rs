//! Text format for diagram maps, read against a separately given target.
//!
//! ```text
//! v <id>
//! e <id> <v1> <v2>
//! t <id> <e1> <e2> <e3>      # edges in counterclockwise order
//! label v|e|t <id> <target id>
//! boundary <e> <e> ...       # `-e` walks e from v2 to v1, `+e` from v1 to v2
//! ```
//!
//! Unsigned boundary edges take the direction of their face, or for edges
//! without faces the direction continuing the walk.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use thiserror::Error;

use crate::angled_complex::fixture::{parse_id, tokenize};
use crate::angled_complex::{AngledComplex, EdgeId, FixtureError, TriangleId, VertexId};

use super::map::{Dart, DiagramError, DiagramMap, DiagramParts, Face};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramFixtureError {
    #[error(transparent)]
    Syntax(#[from] FixtureError),
    #[error("invalid diagram: {0}")]
    Invalid(#[from] DiagramError),
}

fn common(line: usize, a: [VertexId; 2], b: [VertexId; 2]) -> Result<VertexId, FixtureError> {
    let shared: Vec<VertexId> = a.iter().copied().filter(|v| b.contains(v)).collect();
    match shared[..] {
        [v] => Ok(v),
        _ => Err(FixtureError::new(line, "face edges do not meet in single vertices")),
    }
}

pub fn parse_diagram(text: &str, target: Arc<AngledComplex>) -> Result<DiagramMap, DiagramFixtureError> {
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut edges: BTreeMap<EdgeId, [VertexId; 2]> = BTreeMap::new();
    let mut faces: Vec<(usize, TriangleId, [EdgeId; 3])> = Vec::new();
    let mut vl = BTreeMap::new();
    let mut el = BTreeMap::new();
    let mut tl = BTreeMap::new();
    let mut boundary: Option<(usize, Vec<(EdgeId, Option<bool>)>)> = None;
    for (line, toks) in tokenize(text) {
        let id = |i: usize| parse_id(line, toks[i]);
        let arity = |n: usize| {
            if toks.len() == n + 1 {
                Ok(())
            } else {
                Err(FixtureError::new(line, format!("`{}` takes {n} arguments", toks[0])))
            }
        };
        match toks[0] {
            "v" => {
                arity(1)?;
                vertices.push(VertexId(id(1)?));
            }
            "e" => {
                arity(3)?;
                let e = EdgeId(id(1)?);
                if edges.insert(e, [VertexId(id(2)?), VertexId(id(3)?)]).is_some() {
                    return Err(FixtureError::new(line, format!("duplicate edge {e}")).into());
                }
            }
            "t" => {
                arity(4)?;
                faces.push((line, TriangleId(id(1)?), [EdgeId(id(2)?), EdgeId(id(3)?), EdgeId(id(4)?)]));
            }
            "label" => {
                arity(3)?;
                let (d, x) = (id(2)?, id(3)?);
                let fresh = match toks[1] {
                    "v" => vl.insert(VertexId(d), VertexId(x)).is_none(),
                    "e" => el.insert(EdgeId(d), EdgeId(x)).is_none(),
                    "t" => tl.insert(TriangleId(d), TriangleId(x)).is_none(),
                    other => return Err(FixtureError::new(line, format!("unknown label kind `{other}`")).into()),
                };
                if !fresh {
                    return Err(FixtureError::new(line, "duplicate label").into());
                }
            }
            "boundary" => {
                if boundary.is_some() {
                    return Err(FixtureError::new(line, "more than one boundary line").into());
                }
                let mut darts = Vec::new();
                for tok in &toks[1..] {
                    let (dir, body) = match tok.as_bytes()[0] {
                        b'-' => (Some(false), &tok[1..]),
                        b'+' => (Some(true), &tok[1..]),
                        _ => (None, *tok),
                    };
                    darts.push((EdgeId(parse_id(line, body)?), dir));
                }
                boundary = Some((line, darts));
            }
            other => return Err(FixtureError::new(line, format!("unknown directive `{other}`")).into()),
        }
    }
    let missing = |what: String| DiagramError::MissingLabel(what);
    let mut parts = DiagramParts::default();
    for v in vertices {
        parts.vertices.insert(v, *vl.get(&v).ok_or_else(|| missing(v.to_string()))?);
    }
    for (&e, &ends) in &edges {
        parts.edges.insert(e, (ends, *el.get(&e).ok_or_else(|| missing(e.to_string()))?));
    }
    let mut traversal: BTreeMap<EdgeId, bool> = BTreeMap::new();
    for (line, t, es) in faces {
        let ends = |e: EdgeId| edges.get(&e).copied().ok_or(DiagramError::UnknownEdge(e));
        let [a, b, c] = [ends(es[0])?, ends(es[1])?, ends(es[2])?];
        let verts = [common(line, a, c)?, common(line, a, b)?, common(line, b, c)?];
        for i in 0..3 {
            traversal.insert(es[i], edges[&es[i]][0] == verts[i]);
        }
        let label = *tl.get(&t).ok_or_else(|| missing(t.to_string()))?;
        parts.faces.insert(t, (Face { verts, edges: es }, label));
    }
    if let Some((line, darts)) = boundary {
        let mut resolved: Vec<Option<Dart>> = darts
            .iter()
            .map(|&(e, dir)| {
                dir.or_else(|| traversal.get(&e).copied())
                    .map(|forward| Dart { edge: e, forward })
            })
            .collect();
        let n = resolved.len();
        for _ in 0..n {
            for i in 0..n {
                if resolved[i].is_some() {
                    continue;
                }
                let e = darts[i].0;
                let ends = edges.get(&e).copied().ok_or(DiagramError::UnknownEdge(e))?;
                if let Some(prev) = resolved[(i + n - 1) % n] {
                    let [p, q] = edges.get(&prev.edge).copied().ok_or(DiagramError::UnknownEdge(prev.edge))?;
                    let end = if prev.forward { q } else { p };
                    resolved[i] = Some(Dart {
                        edge: e,
                        forward: ends[0] == end,
                    });
                }
            }
        }
        parts.boundary = resolved
            .into_iter()
            .map(|d| d.ok_or_else(|| FixtureError::new(line, "cannot orient the boundary walk; sign the edges")))
            .collect::<Result<_, _>>()?;
    }
    Ok(DiagramMap::new(target, parts)?)
}

pub fn write_diagram(d: &DiagramMap) -> String {
    let mut s = String::new();
    for v in d.vertices() {
        writeln!(s, "v {}", v.0).unwrap();
    }
    for (e, [a, b]) in d.edges() {
        writeln!(s, "e {} {} {}", e.0, a.0, b.0).unwrap();
    }
    for (t, f) in d.faces() {
        writeln!(s, "t {} {} {} {}", t.0, f.edges[0].0, f.edges[1].0, f.edges[2].0).unwrap();
    }
    for v in d.vertices() {
        writeln!(s, "label v {} {}", v.0, d.vertex_label(v).unwrap().0).unwrap();
    }
    for (e, _) in d.edges() {
        writeln!(s, "label e {} {}", e.0, d.edge_label(e).unwrap().0).unwrap();
    }
    for (t, _) in d.faces() {
        writeln!(s, "label t {} {}", t.0, d.face_label(t).unwrap().0).unwrap();
    }
    if !d.boundary().is_empty() {
        let darts: Vec<String> = d
            .boundary()
            .iter()
            .map(|b| format!("{}{}", if b.forward { "+" } else { "-" }, b.edge.0))
            .collect();
        writeln!(s, "boundary {}", darts.join(" ")).unwrap();
    }
    s
}
