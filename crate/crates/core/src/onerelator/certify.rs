use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angled_complex::DEFAULT_CYCLE_BOUND;
use crate::rational::{format_rational, Rational};
use crate::smallcancel::{tprime_from_scan, t4_from_scan, ConditionReport, PieceAnalysis, TripleOptions, Witness};
use crate::words::{cyclic_reduce, is_proper_power, Alphabet, Presentation, Word};

use super::central_link::{build_central_link, check_central_link, triangle_weights, LinkVerdict, TriangleKind};

/// Witnesses kept per check in a certificate; the full count is recorded
/// separately.
pub const WITNESS_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Hyperbolic,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    ShortRelator,
    Torsion,
    SmallCancellation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessSummary {
    Piece { word: String, length: usize },
    Triple { w1: String, w2: String, w3: String, total_length: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    #[serde(default)]
    pub capped: bool,
    pub witness_count: usize,
    pub witnesses: Vec<WitnessSummary>,
}

impl CheckSummary {
    pub fn from_report(report: &ConditionReport, alphabet: &Alphabet) -> Self {
        let render = |w: &Word| alphabet.render(w.letters());
        let witnesses = report
            .witnesses
            .iter()
            .take(WITNESS_LIMIT)
            .map(|w| match w {
                Witness::Piece(p) => WitnessSummary::Piece {
                    word: render(&p.word),
                    length: p.word.len(),
                },
                Witness::Triple(t) => WitnessSummary::Triple {
                    w1: render(&t.w1),
                    w2: render(&t.w2),
                    w3: render(&t.w3),
                    total_length: t.total_length,
                },
            })
            .collect();
        Self {
            holds: report.holds,
            parameter: report.parameter.as_ref().map(format_rational),
            capped: report.capped,
            witness_count: report.witnesses.len(),
            witnesses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub c14: CheckSummary,
    pub c16: CheckSummary,
    pub t4: CheckSummary,
    pub tprime: CheckSummary,
    /// `C'(λ)` for a requested `λ` other than `1/4`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<CheckSummary>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LinkVerdictTag {
    PassUpToBound,
    Fail,
    InconclusiveLocal,
}

impl From<&LinkVerdict> for LinkVerdictTag {
    fn from(v: &LinkVerdict) -> Self {
        match v {
            LinkVerdict::PassUpToBound => LinkVerdictTag::PassUpToBound,
            LinkVerdict::Fail => LinkVerdictTag::Fail,
            LinkVerdict::InconclusiveLocal => LinkVerdictTag::InconclusiveLocal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleSummary {
    pub kind: u8,
    pub corners: [String; 3],
    pub sum: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexValidation {
    pub scope: String,
    pub triangles_ok: bool,
    /// Triangle records of kinds 1, 2 and 3.
    pub triangle_counts: [usize; 3],
    pub bad_triangles: Vec<TriangleSummary>,
    pub link_verdict: LinkVerdictTag,
    pub bound: usize,
    pub type_i_length: String,
    pub covering_cycles: usize,
    pub covering_ok: bool,
    pub segments: usize,
    pub segment_chain_bound: usize,
    pub segments_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub short_cycle: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub status: Status,
    pub branch: Option<Branch>,
    pub r: usize,
    pub presentation: String,
    /// The cyclically reduced relator.
    pub relator: String,
    /// The freely reduced input word.
    pub reduced_input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Checks>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_validation: Option<ComplexValidation>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn is_hyperbolic(&self) -> bool {
        self.status == Status::Hyperbolic
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    pub lambda: Rational,
    pub validate_complex: bool,
    pub include_vertex_contacts: bool,
    pub cycle_bound: usize,
    pub allow_empty_piece: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            lambda: Rational::new(1, 4),
            validate_complex: false,
            include_vertex_contacts: false,
            cycle_bound: DEFAULT_CYCLE_BOUND,
            allow_empty_piece: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("lambda must satisfy 0 < lambda <= 1/4, got {}", format_rational(.0))]
    InvalidLambda(Rational),
    #[error("cycle bound must be at least 4, got {0}")]
    InvalidCycleBound(usize),
}

pub fn certify(p: &Presentation, opts: &CertifyOptions) -> Result<Certificate, CertifyError> {
    certify_word(p.alphabet(), p.reduced_input(), opts)
}

/// Runs the certification pipeline on a raw relator word, which may be
/// trivial in the free group.
pub fn certify_word(alphabet: &Alphabet, word: &Word, opts: &CertifyOptions) -> Result<Certificate, CertifyError> {
    if opts.lambda <= Rational::from_integer(0) || opts.lambda > Rational::new(1, 4) {
        return Err(CertifyError::InvalidLambda(opts.lambda));
    }
    if opts.cycle_bound < 4 {
        return Err(CertifyError::InvalidCycleBound(opts.cycle_bound));
    }
    let relator = cyclic_reduce(word);
    let reduced = crate::words::free_reduce(word);
    let render = |w: &[crate::words::Letter]| alphabet.render(w);
    let mut cert = Certificate {
        status: Status::Unknown,
        branch: None,
        r: relator.len(),
        presentation: format!("< {} | {} >", alphabet.names().join(", "), render(word.letters())),
        relator: render(relator.letters()),
        reduced_input: render(reduced.letters()),
        checks: None,
        complex_validation: None,
        notes: Vec::new(),
    };
    if relator.is_empty() {
        cert.notes.push("EmptyRelator: the relator is trivial in the free group".into());
        return Ok(cert);
    }
    let power = is_proper_power(&relator);
    if power.is_proper_power {
        cert.status = Status::Hyperbolic;
        cert.branch = Some(Branch::Torsion);
        cert.notes.push(format!(
            "relator is ({})^{}",
            render(power.root.letters()),
            power.exponent
        ));
        return Ok(cert);
    }
    let analysis = PieceAnalysis::new(&relator).expect("non-empty, not a proper power");
    let metric = |l: Rational| analysis.check_metric(l).expect("lambda in (0, 1)");
    let c14 = metric(Rational::new(1, 4));
    let c16 = metric(Rational::new(1, 6));
    let scan = analysis.triples(TripleOptions {
        allow_empty_piece: opts.allow_empty_piece,
    });
    let t4 = t4_from_scan(&scan);
    let tprime = tprime_from_scan(&scan, relator.len());
    let custom = (opts.lambda != Rational::new(1, 4)).then(|| metric(opts.lambda));
    let summary = |r: &ConditionReport| CheckSummary::from_report(r, alphabet);
    let small_cancellation = c14.holds && tprime.holds && custom.as_ref().is_none_or(|c| c.holds);
    cert.checks = Some(Checks {
        c14: summary(&c14),
        c16: summary(&c16),
        t4: summary(&t4),
        tprime: summary(&tprime),
        lambda: custom.as_ref().map(summary),
    });
    if relator.len() <= 3 {
        cert.status = Status::Hyperbolic;
        cert.branch = Some(Branch::ShortRelator);
        if opts.validate_complex {
            cert.notes.push("complex validation needs a relator of length at least 4".into());
        }
        return Ok(cert);
    }
    if small_cancellation {
        cert.status = Status::Hyperbolic;
        cert.branch = Some(Branch::SmallCancellation);
    }
    if scan.capped {
        cert.notes.push("triple enumeration was capped; (T') and T(4) can only be refuted".into());
    }
    if opts.validate_complex {
        cert.complex_validation = Some(validate(&relator, opts));
    }
    Ok(cert)
}

fn validate(relator: &crate::words::CyclicWord, opts: &CertifyOptions) -> ComplexValidation {
    let records = triangle_weights(relator).expect("relator hypotheses checked");
    let count = |k| records.iter().filter(|t| t.kind == k).count();
    let bad_triangles: Vec<TriangleSummary> = records
        .iter()
        .filter(|t| !t.strict_ok)
        .take(WITNESS_LIMIT)
        .map(|t| TriangleSummary {
            kind: match t.kind {
                TriangleKind::Precell => 1,
                TriangleKind::Overlap => 2,
                TriangleKind::Triple => 3,
            },
            corners: t.corner_angles().map(|a| a.to_string()),
            sum: t.sum().to_string(),
        })
        .collect();
    let link = build_central_link(relator, opts.include_vertex_contacts).expect("relator hypotheses checked");
    let report = check_central_link(&link, opts.cycle_bound);
    let short_cycle = report.short_cycle.as_ref().map(|c| {
        let names: Vec<String> = c
            .vertices
            .iter()
            .map(|&v| if v < link.r() { format!("i{v}") } else { format!("ii{}", v - link.r()) })
            .collect();
        format!("{} ({} pi)", names.join(" "), format_rational(&Rational::new(c.units, link.r() as i64)))
    });
    ComplexValidation {
        scope: "local, up to identification".into(),
        triangles_ok: records.iter().all(|t| t.strict_ok),
        triangle_counts: [
            count(TriangleKind::Precell),
            count(TriangleKind::Overlap),
            count(TriangleKind::Triple),
        ],
        bad_triangles,
        link_verdict: (&report.verdict).into(),
        bound: report.bound,
        type_i_length: link.boundary_cycle_length().to_string(),
        covering_cycles: report.covering_cycles,
        covering_ok: report.covering_mismatches.is_empty(),
        segments: report.segments,
        segment_chain_bound: report.segment_bound,
        segments_ok: report.segment_violations.is_empty(),
        short_cycle,
    }
}
