use std::fmt::Display;
use std::sync::Arc;

use hypcert_core::angled_complex::{
    check_3flag, face_curvature, gauss_bonnet_check, is_locally_2pi_large, link, metric_to_weights, parse_complex,
    two_full_cycles, validate_complex, vertex_curvature, weight_validate, AngledComplex, CycleOptions, LinkGraph,
    LocalVerdict, MetricError, SimpleCycle, VertexId,
};
use hypcert_core::diagrams::{check_linear_isoperimetric, parse_diagram, write_diagram, ReduceError, ReduceOptions};
use hypcert_core::onerelator::{certify_word, CertifyOptions, CheckSummary, Checks};
use hypcert_core::smallcancel::{t4_from_scan, ConditionReport, tprime_from_scan, PieceAnalysis, TripleOptions};
use hypcert_core::words::cyclic_reduce;
use hypcert_core::{Angle, Rational};
use serde::Serialize;

use crate::config::{CliConfig, Command, Input};
use crate::presentation::parse_raw_presentation;
use crate::reports::*;

pub const EXIT_OK: i32 = 0;
/// `certify`: status UNKNOWN. Other commands: the checked property fails.
pub const EXIT_UNKNOWN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Exit code and the text destined for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl Display) -> Self {
        Self {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Pretty JSON with a trailing newline. Field and map order is fixed by
/// the report types, so equal reports give identical bytes.
pub fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn emit<T: Serialize>(config: &CliConfig, report: &T, ok: bool, text: impl FnOnce(&T) -> String) -> Outcome {
    Outcome {
        code: if ok { EXIT_OK } else { EXIT_UNKNOWN },
        stdout: if config.json { to_json(report) } else { text(report) },
        stderr: String::new(),
    }
}

fn read(path: &std::path::Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn input_text(input: &Input) -> Result<String, String> {
    match input {
        Input::Inline(s) => Ok(s.clone()),
        Input::Path(p) => read(p),
    }
}

pub fn run(config: &CliConfig) -> Outcome {
    if let Err(e) = config.validate() {
        return Outcome::input_error(e);
    }
    let text = match input_text(&config.input) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(e),
    };
    let result = match config.command {
        Command::Certify => certify_cmd(config, &text),
        Command::Pieces => pieces_cmd(config, &text),
        Command::Link => complex(&text).and_then(|x| link_cmd(config, &x)),
        Command::GaussBonnet => complex(&text).map(|x| gauss_bonnet_cmd(config, &x)),
        Command::Validate => complex(&text).map(|x| validate_cmd(config, &x)),
        Command::Reduce => reduce_cmd(config, &text),
    };
    result.unwrap_or_else(Outcome::input_error)
}

fn certify_cmd(config: &CliConfig, text: &str) -> Result<Outcome, String> {
    let raw = parse_raw_presentation(text).map_err(|e| e.to_string())?;
    let opts = CertifyOptions {
        lambda: config.lambda,
        validate_complex: config.validate_complex,
        include_vertex_contacts: config.include_vertex_contacts,
        cycle_bound: config.cycle_bound,
        allow_empty_piece: config.allow_empty_piece,
    };
    let cert = certify_word(&raw.alphabet, &raw.word, &opts).map_err(|e| e.to_string())?;
    Ok(emit(config, &cert, cert.is_hyperbolic(), certificate_text))
}

fn pieces_cmd(config: &CliConfig, text: &str) -> Result<Outcome, String> {
    let raw = parse_raw_presentation(text).map_err(|e| e.to_string())?;
    let relator = cyclic_reduce(&raw.word);
    let analysis = PieceAnalysis::new(&relator).map_err(|e| e.to_string())?;
    let summary = |r: &ConditionReport| CheckSummary::from_report(r, &raw.alphabet);
    let metric = |l: Rational| analysis.check_metric(l).map_err(|e| e.to_string());
    let scan = analysis.triples(TripleOptions {
        allow_empty_piece: config.allow_empty_piece,
    });
    let quarter = Rational::new(1, 4);
    let lambda = if config.lambda == quarter {
        None
    } else {
        Some(summary(&metric(config.lambda)?))
    };
    let report = PiecesReport {
        presentation: format!(
            "< {} | {} >",
            raw.alphabet.names().join(", "),
            raw.alphabet.render(raw.word.letters())
        ),
        relator: raw.alphabet.render(relator.letters()),
        r: relator.len(),
        max_piece_length: analysis.max_piece_length(),
        pieces: analysis
            .pieces()
            .iter()
            .map(|p| PieceEntry {
                word: raw.alphabet.render(p.word.letters()),
                length: p.word.len(),
                places: p.occurrences.len(),
            })
            .collect(),
        checks: Checks {
            c14: summary(&metric(quarter)?),
            c16: summary(&metric(Rational::new(1, 6))?),
            t4: summary(&t4_from_scan(&scan)),
            tprime: summary(&tprime_from_scan(&scan, relator.len())),
            lambda,
        },
    };
    Ok(emit(config, &report, true, PiecesReport::text))
}

fn complex(text: &str) -> Result<AngledComplex, String> {
    parse_complex(text).map_err(|e| format!("complex: {e}"))
}

fn cycle_options(config: &CliConfig) -> CycleOptions {
    CycleOptions {
        max_len: config.cycle_bound,
        strict: config.two_full_strict,
    }
}

fn cycle_entry(l: &LinkGraph, c: &SimpleCycle) -> CycleEntry {
    CycleEntry {
        vertices: c.vertices.iter().map(|&i| l.vertices[i].0).collect(),
        triangles: c.edges.iter().map(|&e| l.edges[e].triangle.0).collect(),
        angular_length: c.angular_length.to_string(),
        short: c.angular_length.lt(&Angle::two_pi()),
    }
}

fn link_cmd(config: &CliConfig, x: &AngledComplex) -> Result<Outcome, String> {
    let vertices: Vec<VertexId> = match config.vertex {
        Some(v) if x.has_vertex(VertexId(v)) => vec![VertexId(v)],
        Some(v) => return Err(format!("complex has no vertex v{v}")),
        None => x.vertices().collect(),
    };
    let opts = cycle_options(config);
    let mut reports = Vec::new();
    for v in vertices {
        let l = link(x, v).map_err(|e| e.to_string())?;
        let cycles: Vec<CycleEntry> = two_full_cycles(&l, opts).iter().map(|c| cycle_entry(&l, c)).collect();
        reports.push(VertexLinkReport {
            vertex: v.0,
            link_vertices: l.vertices.iter().map(|e| e.0).collect(),
            edges: l
                .edges
                .iter()
                .map(|e| LinkEdgeEntry {
                    triangle: e.triangle.0,
                    ends: e.ends.map(|i| l.vertices[i].0),
                    angle: e.angle.to_string(),
                })
                .collect(),
            euler_characteristic: l.euler_characteristic(),
            total_angle: l.total_angle().to_string(),
            curvature: vertex_curvature(x, v).map_err(|e| e.to_string())?.to_string(),
            large: !cycles.iter().any(|c| c.short),
            two_full_cycles: cycles,
        });
    }
    let report = LinkReport {
        bound: opts.max_len,
        strict: opts.strict,
        all_large: reports.iter().all(|r| r.large),
        vertices: reports,
    };
    let ok = report.all_large;
    Ok(emit(config, &report, ok, LinkReport::text))
}

fn gauss_bonnet_cmd(config: &CliConfig, x: &AngledComplex) -> Outcome {
    let faces: Vec<(u32, Angle)> = x
        .triangles()
        .filter_map(|(t, _)| face_curvature(x, t).ok().map(|k| (t.0, k)))
        .collect();
    let vertices: Vec<(u32, Angle)> = x
        .vertices()
        .map(|v| (v.0, vertex_curvature(x, v).expect("vertex exists")))
        .collect();
    let gb = gauss_bonnet_check(x);
    let entries = |ks: &[(u32, Angle)]| {
        ks.iter()
            .map(|(id, k)| CurvatureEntry {
                id: *id,
                curvature: k.to_string(),
            })
            .collect()
    };
    let total = |ks: &[(u32, Angle)]| ks.iter().map(|p| p.1).sum::<Angle>().to_string();
    let report = GaussBonnetReport {
        euler_characteristic: x.euler_characteristic(),
        faces: entries(&faces),
        vertices: entries(&vertices),
        face_total: total(&faces),
        vertex_total: total(&vertices),
        lhs: gb.lhs.to_string(),
        rhs: gb.rhs.to_string(),
        equal: gb.equal,
    };
    emit(config, &report, gb.equal, GaussBonnetReport::text)
}

fn short_cycle_text(x: &AngledComplex, v: VertexId, c: &SimpleCycle) -> String {
    let l = link(x, v).expect("vertex exists");
    let names: Vec<String> = c.vertices.iter().map(|&i| l.vertices[i].to_string()).collect();
    format!("2-full cycle at {v} through {}: {}", names.join(" "), c.angular_length)
}

fn metric_error_text(e: &MetricError) -> String {
    let kind = match e {
        MetricError::DegenerateTriangle(_) => "DegenerateTriangle",
        MetricError::MissingLength(_) => "MissingLength",
        MetricError::MalformedTriangle(_) => "MalformedTriangle",
        MetricError::NotStrictlyLarge { .. } => "NotStrictlyLarge",
        MetricError::NoSlack { .. } => "NoSlack",
    };
    format!("{kind}: {e}")
}

/// Runs the local checks; a complex with edge lengths is first converted
/// by the metric mode, replacing any given weights.
fn validate_cmd(config: &CliConfig, input: &AngledComplex) -> Outcome {
    let opts = cycle_options(config);
    let mut report = ValidateReport {
        scope: format!("local, 2-full cycles up to length {}; simple connectivity not checked", opts.max_len),
        metric: None,
        metric_error: None,
        structure_ok: false,
        issues: Vec::new(),
        three_flag: false,
        flag_violations: Vec::new(),
        weights_nonnegative: false,
        weak_triangle_inequality: false,
        sums_below_pi: false,
        distinct_weights: 0,
        weight_issues: Vec::new(),
        bound: opts.max_len,
        locally_2pi_large: false,
        short_cycle: None,
        strictly_systolic: false,
    };
    let metric_mode = !input.lengths().is_empty();
    let converted;
    let x = if metric_mode {
        match metric_to_weights(input, opts) {
            Ok(m) => {
                report.metric = Some(MetricSummary {
                    delta: m.delta,
                    cycle_slack: m.cycle_slack,
                    triangle_slack: m.triangle_slack,
                    min_corner: m.min_corner,
                });
                converted = m.complex;
                &converted
            }
            Err(e) => {
                report.metric_error = Some(metric_error_text(&e));
                return emit(config, &report, false, ValidateReport::text);
            }
        }
    } else {
        input
    };
    let structure = validate_complex(x);
    report.structure_ok = structure.is_valid();
    report.issues = structure.issues.iter().map(|i| i.to_string()).collect();
    let flags = check_3flag(x);
    report.three_flag = flags.holds();
    report.flag_violations = flags
        .violations
        .iter()
        .map(|f| {
            let vs: Vec<String> = f.vertices.iter().map(|v| v.to_string()).collect();
            let what = match (f.missing_face, f.missing_solid) {
                (true, _) => "fourth face missing",
                (false, true) => "tetrahedron missing",
                _ => "incomplete",
            };
            format!("{}: {what}", vs.join(" "))
        })
        .collect();
    let w = weight_validate(x);
    report.weights_nonnegative = w.nonnegative();
    report.weak_triangle_inequality = w.triangle_inequality_holds();
    report.sums_below_pi = w.sums_below_pi();
    report.distinct_weights = w.distinct_values;
    report.weight_issues = w
        .negative
        .iter()
        .map(|(t, v)| format!("negative weight at ({t}, {v})"))
        .chain(w.triangle_inequality.iter().map(|t| {
            format!("link triple at {} violates the weak triangle inequality: {} {} {}", t.vertex, t.angles[0], t.angles[1], t.angles[2])
        }))
        .chain(w.large_triangles.iter().map(|(t, s)| format!("corner sum of {t} is {s}")))
        .collect();
    match is_locally_2pi_large(x, opts) {
        LocalVerdict::PassUpToBound { .. } => report.locally_2pi_large = true,
        LocalVerdict::Fail { vertex, cycle } => report.short_cycle = Some(short_cycle_text(x, vertex, &cycle)),
    }
    report.strictly_systolic = report.structure_ok && report.three_flag && w.all_pass() && report.locally_2pi_large;
    let ok = report.strictly_systolic;
    emit(config, &report, ok, ValidateReport::text)
}

fn reduce_cmd(config: &CliConfig, text: &str) -> Result<Outcome, String> {
    let target_path = config.target.as_ref().expect("validated");
    let target = Arc::new(complex(&read(target_path)?)?);
    let d = parse_diagram(text, target).map_err(|e| format!("diagram: {e}"))?;
    if !d.is_nondegenerate() {
        return Err("diagram: the map is degenerate".into());
    }
    let opts = ReduceOptions {
        consecutive_only: config.vr_consecutive,
    };
    let (out, trace) = match d.reduce(opts) {
        Ok(r) => r,
        Err(e @ ReduceError::StuckDiagram { .. }) => {
            return Ok(Outcome {
                code: EXIT_UNKNOWN,
                stdout: String::new(),
                stderr: format!("reduction failed: {e}\n"),
            })
        }
        Err(e) => return Err(format!("reduction: {e}")),
    };
    let iso = check_linear_isoperimetric(&out).map_err(|e| format!("target: {e}"))?;
    let report = ReduceReport {
        input_faces: d.face_count(),
        output_faces: out.face_count(),
        trace,
        vertex_reduced: out.is_vertex_reduced(config.vr_consecutive),
        interior_ok: out.interior_cycles_ok(),
        isoperimetric: iso,
        diagram: write_diagram(&out),
    };
    let ok = report.holds();
    Ok(emit(config, &report, ok, ReduceReport::text))
}
