//! Machine-readable reports of the non-certify commands, and human text
//! for every report.

use std::fmt::Write;

use hypcert_core::diagrams::{IsoperimetricReport, Move, ReductionTrace};
use hypcert_core::onerelator::{Certificate, CheckSummary, Checks, WitnessSummary};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceEntry {
    pub word: String,
    pub length: usize,
    /// Number of symmetrized-set elements starting with the piece.
    pub places: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecesReport {
    pub presentation: String,
    pub relator: String,
    pub r: usize,
    pub max_piece_length: usize,
    pub pieces: Vec<PieceEntry>,
    pub checks: Checks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkEdgeEntry {
    pub triangle: u32,
    /// Link vertices, named by the edges of the complex.
    pub ends: [u32; 2],
    pub angle: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleEntry {
    /// Link vertices in cyclic order, named by edges of the complex.
    pub vertices: Vec<u32>,
    pub triangles: Vec<u32>,
    pub angular_length: String,
    pub short: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLinkReport {
    pub vertex: u32,
    pub link_vertices: Vec<u32>,
    pub edges: Vec<LinkEdgeEntry>,
    pub euler_characteristic: i64,
    pub total_angle: String,
    pub curvature: String,
    pub two_full_cycles: Vec<CycleEntry>,
    pub large: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkReport {
    pub bound: usize,
    pub strict: bool,
    pub vertices: Vec<VertexLinkReport>,
    pub all_large: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureEntry {
    pub id: u32,
    pub curvature: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussBonnetReport {
    pub euler_characteristic: i64,
    pub faces: Vec<CurvatureEntry>,
    pub vertices: Vec<CurvatureEntry>,
    pub face_total: String,
    pub vertex_total: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub delta: f64,
    pub cycle_slack: Option<f64>,
    pub triangle_slack: Option<f64>,
    pub min_corner: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub scope: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric_error: Option<String>,
    pub structure_ok: bool,
    pub issues: Vec<String>,
    pub three_flag: bool,
    pub flag_violations: Vec<String>,
    pub weights_nonnegative: bool,
    pub weak_triangle_inequality: bool,
    pub sums_below_pi: bool,
    pub distinct_weights: usize,
    pub weight_issues: Vec<String>,
    pub bound: usize,
    pub locally_2pi_large: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub short_cycle: Option<String>,
    pub strictly_systolic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub input_faces: usize,
    pub output_faces: usize,
    pub trace: ReductionTrace,
    pub vertex_reduced: bool,
    pub interior_ok: bool,
    pub isoperimetric: IsoperimetricReport,
    /// The reduced diagram in the diagram fixture format.
    pub diagram: String,
}

impl ReduceReport {
    pub fn holds(&self) -> bool {
        self.vertex_reduced && self.interior_ok && self.isoperimetric.all_hold()
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn witness(w: &WitnessSummary) -> String {
    match w {
        WitnessSummary::Piece { word, length } => format!("piece {word} (length {length})"),
        WitnessSummary::Triple {
            w1,
            w2,
            w3,
            total_length,
        } => format!("triple ({w1}, {w2}, {w3}) of total length {total_length}"),
    }
}

fn check_line(s: &mut String, name: &str, c: &CheckSummary) {
    write!(s, "{name:<8} {}", yes_no(c.holds)).unwrap();
    if let Some(w) = c.witnesses.first() {
        write!(s, "; {} witness(es), e.g. {}", c.witness_count, witness(w)).unwrap();
    }
    if c.capped {
        s.push_str(" [capped]");
    }
    s.push('\n');
}

fn checks_text(s: &mut String, c: &Checks) {
    check_line(s, "C'(1/4)", &c.c14);
    check_line(s, "C'(1/6)", &c.c16);
    check_line(s, "T(4)", &c.t4);
    check_line(s, "(T')", &c.tprime);
    if let Some(l) = &c.lambda {
        let name = format!("C'({})", l.parameter.as_deref().unwrap_or("?"));
        check_line(s, &name, l);
    }
}

fn upper(v: &impl Serialize) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn certificate_text(c: &Certificate) -> String {
    let mut s = String::new();
    write!(s, "status: {}", upper(&c.status)).unwrap();
    if let Some(b) = &c.branch {
        write!(s, " ({})", upper(b)).unwrap();
    }
    s.push('\n');
    writeln!(s, "presentation: {}", c.presentation).unwrap();
    writeln!(s, "relator: {} (r = {})", c.relator, c.r).unwrap();
    if let Some(checks) = &c.checks {
        checks_text(&mut s, checks);
    }
    if let Some(v) = &c.complex_validation {
        writeln!(s, "complex validation ({}):", v.scope).unwrap();
        writeln!(
            s,
            "  triangles: {} (kinds 1/2/3: {}/{}/{})",
            yes_no(v.triangles_ok),
            v.triangle_counts[0],
            v.triangle_counts[1],
            v.triangle_counts[2]
        )
        .unwrap();
        writeln!(s, "  type-(i) circle: {}", v.type_i_length).unwrap();
        writeln!(s, "  central link up to {}: {}", v.bound, upper(&v.link_verdict)).unwrap();
        writeln!(s, "  covering cycles: {} ({})", v.covering_cycles, yes_no(v.covering_ok)).unwrap();
        writeln!(s, "  segments: {} ({})", v.segments, yes_no(v.segments_ok)).unwrap();
        if let Some(c) = &v.short_cycle {
            writeln!(s, "  short cycle: {c}").unwrap();
        }
    }
    for n in &c.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    s
}

impl PiecesReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "relator: {} (r = {})", self.relator, self.r).unwrap();
        writeln!(s, "pieces: {} (longest {})", self.pieces.len(), self.max_piece_length).unwrap();
        for p in &self.pieces {
            writeln!(s, "  {} (length {}, {} places)", p.word, p.length, p.places).unwrap();
        }
        checks_text(&mut s, &self.checks);
        s
    }
}

impl LinkReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            writeln!(
                s,
                "link of v{}: {} vertices, {} edges, chi = {}, total angle {}, curvature {}",
                v.vertex,
                v.link_vertices.len(),
                v.edges.len(),
                v.euler_characteristic,
                v.total_angle,
                v.curvature
            )
            .unwrap();
            for e in &v.edges {
                writeln!(s, "  e{} -- e{} via t{}: {}", e.ends[0], e.ends[1], e.triangle, e.angle).unwrap();
            }
            for c in &v.two_full_cycles {
                let names: Vec<String> = c.vertices.iter().map(|e| format!("e{e}")).collect();
                let mark = if c.short { " < 2 pi" } else { "" };
                writeln!(s, "  2-full cycle {}: {}{mark}", names.join(" "), c.angular_length).unwrap();
            }
        }
        writeln!(
            s,
            "2-full cycles up to length {}: {}",
            self.bound,
            if self.all_large { "all at least 2 pi" } else { "some shorter than 2 pi" }
        )
        .unwrap();
        s
    }
}

impl GaussBonnetReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for f in &self.faces {
            writeln!(s, "kappa(t{}) = {}", f.id, f.curvature).unwrap();
        }
        for v in &self.vertices {
            writeln!(s, "kappa(v{}) = {}", v.id, v.curvature).unwrap();
        }
        writeln!(s, "faces {} + vertices {} = {}", self.face_total, self.vertex_total, self.lhs).unwrap();
        writeln!(s, "2 pi chi = {} (chi = {})", self.rhs, self.euler_characteristic).unwrap();
        writeln!(s, "Gauss-Bonnet: {}", yes_no(self.equal)).unwrap();
        s
    }
}

impl ValidateReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        if let Some(m) = &self.metric {
            writeln!(s, "metric mode: delta = {:.6}, smallest corner {:.6}", m.delta, m.min_corner).unwrap();
        }
        if let Some(e) = &self.metric_error {
            writeln!(s, "metric mode: {e}").unwrap();
            writeln!(s, "strictly systolic: fails").unwrap();
            return s;
        }
        writeln!(s, "structure: {}", yes_no(self.structure_ok)).unwrap();
        for i in &self.issues {
            writeln!(s, "  {i}").unwrap();
        }
        writeln!(s, "3-flag: {}", yes_no(self.three_flag)).unwrap();
        for i in &self.flag_violations {
            writeln!(s, "  {i}").unwrap();
        }
        writeln!(s, "weights nonnegative: {}", yes_no(self.weights_nonnegative)).unwrap();
        writeln!(s, "weak triangle inequality: {}", yes_no(self.weak_triangle_inequality)).unwrap();
        writeln!(s, "corner sums below pi: {}", yes_no(self.sums_below_pi)).unwrap();
        for i in &self.weight_issues {
            writeln!(s, "  {i}").unwrap();
        }
        writeln!(s, "locally 2pi-large up to {}: {}", self.bound, yes_no(self.locally_2pi_large)).unwrap();
        if let Some(c) = &self.short_cycle {
            writeln!(s, "  {c}").unwrap();
        }
        writeln!(s, "strictly systolic ({}): {}", self.scope, yes_no(self.strictly_systolic)).unwrap();
        s
    }
}

impl ReduceReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for step in &self.trace.steps {
            let what = match step.kind {
                Move::EdgeReduction { vertex } => format!("edge reduction at v{vertex}"),
                Move::Diamond {
                    vertex,
                    edges,
                    new_vertex,
                } => format!("diamond move at v{vertex} on e{} e{} (new v{new_vertex})", edges[0], edges[1]),
                Move::VertexRemoval { vertex } => format!("vertex removal at v{vertex}"),
                Move::SphereRemoval { edges } => format!("sphere removal between e{} e{}", edges[0], edges[1]),
            };
            writeln!(s, "{what}: {} -> {} faces", step.faces_before, step.faces_after).unwrap();
        }
        let iso = &self.isoperimetric;
        writeln!(s, "faces: {} -> {}", self.input_faces, self.output_faces).unwrap();
        writeln!(s, "vertex reduced: {}", yes_no(self.vertex_reduced)).unwrap();
        writeln!(s, "interior link cycles at least 2 pi: {}", yes_no(self.interior_ok)).unwrap();
        writeln!(s, "M = {} pi, K = {}", iso.m, iso.k).unwrap();
        writeln!(
            s,
            "|D| = {} <= K l(boundary) = {} * {} = {}: {}",
            iso.faces,
            iso.k,
            iso.boundary_length,
            iso.bound,
            yes_no(iso.holds)
        )
        .unwrap();
        writeln!(
            s,
            "|D| <= (boundary curvature {} pi - 2 pi)/(-M) = {}: {}",
            iso.boundary_curvature,
            iso.intermediate_bound,
            yes_no(iso.intermediate_holds)
        )
        .unwrap();
        s
    }
}
