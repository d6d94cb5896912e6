//! Line-oriented text format for complexes.
//!
//! ```text
//! v <id>
//! e <id> <v1> <v2>
//! t <id> <e1> <e2> <e3>
//! tet <t1> <t2> <t3> <t4>
//! w <t> <v> <p>/<q>        # weight (p/q)·π
//! len <e> <float>          # Euclidean edge length (metric mode)
//! ```
//!
//! Ids are non-negative integers; `#` starts a comment.

use std::fmt::Write;

use thiserror::Error;

use super::angle::Angle;
use super::complex::{AngledComplex, BuildError, ComplexBuilder, EdgeId, TriangleId, VertexId};
use crate::rational::format_rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FixtureError {
    pub line: usize,
    pub message: String,
}

impl FixtureError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Splits a fixture into `(line number, tokens)` pairs, dropping comments
/// and blank lines.
pub fn tokenize(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub fn parse_id(line: usize, tok: &str) -> Result<u32, FixtureError> {
    tok.parse()
        .map_err(|_| FixtureError::new(line, format!("expected a numeric id, found `{tok}`")))
}

fn arity(line: usize, toks: &[&str], n: usize) -> Result<(), FixtureError> {
    if toks.len() != n + 1 {
        return Err(FixtureError::new(
            line,
            format!("`{}` takes {n} arguments, found {}", toks[0], toks.len() - 1),
        ));
    }
    Ok(())
}

/// Applies one complex directive to `b`. Returns `false` for a keyword it
/// does not know, so that other formats can extend this one.
pub fn apply_line(b: &mut ComplexBuilder, line: usize, toks: &[&str]) -> Result<bool, FixtureError> {
    let id = |i: usize| parse_id(line, toks[i]);
    let built = |r: Result<&mut ComplexBuilder, BuildError>| {
        r.map(|_| ()).map_err(|e| FixtureError::new(line, e.to_string()))
    };
    match toks[0] {
        "v" => {
            arity(line, toks, 1)?;
            built(b.vertex(VertexId(id(1)?)))?;
        }
        "e" => {
            arity(line, toks, 3)?;
            built(b.edge(EdgeId(id(1)?), VertexId(id(2)?), VertexId(id(3)?)))?;
        }
        "t" => {
            arity(line, toks, 4)?;
            let es = [EdgeId(id(2)?), EdgeId(id(3)?), EdgeId(id(4)?)];
            built(b.triangle(TriangleId(id(1)?), es))?;
        }
        "tet" => {
            arity(line, toks, 4)?;
            let ts = [
                TriangleId(id(1)?),
                TriangleId(id(2)?),
                TriangleId(id(3)?),
                TriangleId(id(4)?),
            ];
            built(b.tetrahedron(ts))?;
        }
        "w" => {
            if toks.len() < 4 {
                return Err(FixtureError::new(line, "`w` takes 3 arguments"));
            }
            let text = toks[3..].join(" ");
            let w = Angle::parse(&text)
                .ok_or_else(|| FixtureError::new(line, format!("invalid weight `{text}`")))?;
            built(b.weight(TriangleId(id(1)?), VertexId(id(2)?), w))?;
        }
        "len" => {
            arity(line, toks, 2)?;
            let x: f64 = toks[2]
                .parse()
                .map_err(|_| FixtureError::new(line, format!("invalid length `{}`", toks[2])))?;
            built(b.length(EdgeId(id(1)?), x))?;
        }
        _ => return Ok(false),
    }
    Ok(true)
}

pub fn parse_complex(text: &str) -> Result<AngledComplex, FixtureError> {
    let mut b = ComplexBuilder::new();
    for (line, toks) in tokenize(text) {
        if !apply_line(&mut b, line, &toks)? {
            return Err(FixtureError::new(line, format!("unknown directive `{}`", toks[0])));
        }
    }
    Ok(b.build())
}

pub fn write_complex(x: &AngledComplex) -> String {
    let mut s = String::new();
    for v in x.vertices() {
        writeln!(s, "v {}", v.0).unwrap();
    }
    for (id, e) in x.edges() {
        writeln!(s, "e {} {} {}", id.0, e.ends[0].0, e.ends[1].0).unwrap();
    }
    for (id, t) in x.triangles() {
        writeln!(s, "t {} {} {} {}", id.0, t.edges[0].0, t.edges[1].0, t.edges[2].0).unwrap();
    }
    for tet in x.tetrahedra() {
        writeln!(s, "tet {} {} {} {}", tet[0].0, tet[1].0, tet[2].0, tet[3].0).unwrap();
    }
    for (&(t, v), w) in x.weights() {
        match w {
            Angle::Exact(q) => writeln!(s, "w {} {} {}", t.0, v.0, format_rational(q)).unwrap(),
            Angle::Radians(r) => writeln!(s, "w {} {} {r:?} rad", t.0, v.0).unwrap(),
        }
    }
    for (e, l) in x.lengths() {
        writeln!(s, "len {} {l:?}", e.0).unwrap();
    }
    s
}
