use std::path::PathBuf;
use std::process::Command as Process;

use hypcert_cli::*;
use hypcert_core::onerelator::{Branch, Certificate, Status};
use serde_json::Value;

const EXAMPLE_1: &str = "< a, b | a^4 b a b a b^-1 a^-1 b^3 a^-1 b >";
const EXAMPLE_2: &str = "< a, t | a t^-1 a t a^2 t^-2 a^-1 t^2 >";

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn certify_json(text: &str) -> (i32, String) {
    let mut c = CliConfig::inline(Command::Certify, text);
    c.json = true;
    let out = run(&c);
    (out.code, out.stdout)
}

fn file_config(command: Command, rel: &str) -> CliConfig {
    CliConfig::new(command, Input::Path(fixture(rel)))
}

#[test]
fn certify_exit_codes() {
    assert_eq!(run(&CliConfig::inline(Command::Certify, EXAMPLE_1)).code, EXIT_OK);
    assert_eq!(run(&CliConfig::inline(Command::Certify, EXAMPLE_2)).code, EXIT_UNKNOWN);
    assert_eq!(run(&CliConfig::inline(Command::Certify, "< a | a >")).code, EXIT_OK);
    let zero = run(&CliConfig::inline(Command::Certify, "< a | a^0 >"));
    assert_eq!(zero.code, EXIT_INPUT);
    assert!(zero.stderr.contains("exponent must be non-zero"), "{}", zero.stderr);
    let unknown = run(&CliConfig::inline(Command::Certify, "< a | b >"));
    assert_eq!(unknown.code, EXIT_INPUT);
    assert!(unknown.stderr.contains("unknown generator `b`"));
}

#[test]
fn empty_relator_is_unknown() {
    let (code, json) = certify_json("< a, b | a b b^-1 a^-1 >");
    assert_eq!(code, EXIT_UNKNOWN);
    let cert: Certificate = serde_json::from_str(&json).unwrap();
    assert_eq!(cert.r, 0);
    assert!(cert.notes[0].starts_with("EmptyRelator"));
}

#[test]
fn lambda_bounds() {
    let mut c = CliConfig::inline(Command::Certify, EXAMPLE_1);
    c.lambda = hypcert_core::Rational::new(1, 3);
    assert_eq!(run(&c).code, EXIT_INPUT);
    c.command = Command::Pieces;
    assert_eq!(run(&c).code, EXIT_OK);
    c.lambda = hypcert_core::Rational::new(1, 5);
    c.command = Command::Certify;
    // the longest piece has length 3 = r/5
    assert_eq!(run(&c).code, EXIT_UNKNOWN);
}

#[test]
fn certificate_json_round_trips() {
    for text in [EXAMPLE_1, EXAMPLE_2, "< a | a >", "< a, b | a b a b >", "< a, b | a b a^-1 b^-1 >"] {
        let (_, json) = certify_json(text);
        let cert: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(to_json(&cert), json);
        let (_, again) = certify_json(text);
        assert_eq!(again, json);
    }
}

#[test]
fn certificate_schema() {
    let (_, json) = certify_json(EXAMPLE_1);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["status"], "HYPERBOLIC");
    assert_eq!(v["branch"], "SMALL_CANCELLATION");
    assert_eq!(v["r"], 15);
    assert_eq!(v["relator"], "a^4 b a b a b^-1 a^-1 b^3 a^-1 b");
    for (k, holds) in [("c14", true), ("c16", false), ("t4", false), ("tprime", true)] {
        assert_eq!(v["checks"][k]["holds"], holds, "{k}");
        assert!(v["checks"][k]["witnesses"].is_array());
    }
    assert_eq!(v["checks"]["c14"]["parameter"], "1/4");

    let mut c = CliConfig::inline(Command::Certify, EXAMPLE_1);
    c.json = true;
    c.validate_complex = true;
    let v: Value = serde_json::from_str(&run(&c).stdout).unwrap();
    let cv = &v["complex_validation"];
    assert_eq!(cv["triangles_ok"], true);
    assert_eq!(cv["link_verdict"], "PASS_UP_TO_BOUND");
    assert_eq!(cv["bound"], 12);
    assert_eq!(cv["type_i_length"], "2 pi");
}

#[test]
fn branches_in_text_output() {
    let text = |s: &str| run(&CliConfig::inline(Command::Certify, s)).stdout;
    assert!(text("< a, b | a b a b >").starts_with("status: HYPERBOLIC (TORSION)"));
    assert!(text("< a, b | a b >").starts_with("status: HYPERBOLIC (SHORT_RELATOR)"));
    assert!(text(EXAMPLE_2).starts_with("status: UNKNOWN\n"));
    let (_, json) = certify_json("< a, b | a b a^-1 b^-1 >");
    let cert: Certificate = serde_json::from_str(&json).unwrap();
    assert_eq!((cert.status, cert.branch), (Status::Unknown, None));
    let (_, json) = certify_json("< a, b | a b a b >");
    let cert: Certificate = serde_json::from_str(&json).unwrap();
    assert_eq!(cert.branch, Some(Branch::Torsion));
}

#[test]
fn pieces_report() {
    let mut c = CliConfig::inline(Command::Pieces, EXAMPLE_1);
    c.json = true;
    let out = run(&c);
    assert_eq!(out.code, EXIT_OK);
    let report: PiecesReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(to_json(&report), out.stdout);
    assert_eq!(report.r, 15);
    assert_eq!(report.max_piece_length, 3);
    assert!(report.pieces.iter().all(|p| p.places >= 2));
    assert!(report.checks.c14.holds && !report.checks.c16.holds);
    assert_eq!(run(&CliConfig::inline(Command::Pieces, "< a, b | a b a b >")).code, EXIT_INPUT);
}

#[test]
fn validate_fixtures() {
    for name in ["tetrahedron", "four-simplex", "heptagonal-disk", "precell-disk-15", "cone-7"] {
        let out = run(&file_config(Command::Validate, &format!("complexes/{name}.cx")));
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stdout);
    }
    let mut c = file_config(Command::Validate, "complexes/heptagonal-disk-metric.cx");
    c.json = true;
    let out = run(&c);
    assert_eq!(out.code, EXIT_OK);
    let report: ValidateReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(report.metric.unwrap().delta > 0.0);

    let out = run(&file_config(Command::Validate, "complexes/flat-square-cone.cx"));
    assert_eq!(out.code, EXIT_UNKNOWN);
    assert!(out.stdout.contains("NotStrictlyLarge"));
    let out = run(&file_config(Command::Validate, "complexes/flat-hexagon.cx"));
    assert_eq!(out.code, EXIT_UNKNOWN);
    assert!(out.stdout.contains("corner sums below pi: fails"));
}

#[test]
fn gauss_bonnet_and_link() {
    let mut c = file_config(Command::GaussBonnet, "complexes/heptagonal-disk.cx");
    c.json = true;
    let out = run(&c);
    assert_eq!(out.code, EXIT_OK);
    let gb: GaussBonnetReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((gb.lhs.as_str(), gb.rhs.as_str()), ("2 pi", "2 pi"));
    assert_eq!(gb.faces.len(), 35);

    let mut c = file_config(Command::Link, "complexes/cone-7.cx");
    c.json = true;
    c.vertex = Some(0);
    let out = run(&c);
    assert_eq!(out.code, EXIT_OK);
    let l: LinkReport = serde_json::from_str(&out.stdout).unwrap();
    let v = &l.vertices[0];
    assert_eq!((v.link_vertices.len(), v.euler_characteristic), (7, 0));
    assert_eq!(v.two_full_cycles.len(), 1);
    assert_eq!(v.two_full_cycles[0].angular_length, "2 pi");
    assert!(v.edges.iter().all(|e| e.angle == "2/7 pi"));

    c.vertex = Some(99);
    assert_eq!(run(&c).code, EXIT_INPUT);
    let mut c = file_config(Command::Link, "complexes/flat-hexagon.cx");
    c.cycle_bound = 5;
    assert_eq!(run(&c).code, EXIT_OK);
}

#[test]
fn reduce_fixtures() {
    for (dg, cx) in [("octagon", "four-simplex"), ("heptagonal-random", "heptagonal-disk")] {
        let mut c = file_config(Command::Reduce, &format!("diagrams/{dg}.dg"));
        c.target = Some(fixture(&format!("complexes/{cx}.cx")));
        c.json = true;
        let out = run(&c);
        assert_eq!(out.code, EXIT_OK, "{dg}: {}", out.stderr);
        let report: ReduceReport = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(to_json(&report), out.stdout);
        assert!(report.output_faces < report.input_faces);
        assert!(report.holds());
        assert_eq!(run(&c).stdout, out.stdout);
    }
}

#[test]
fn input_errors() {
    let missing = run(&file_config(Command::Validate, "complexes/missing.cx"));
    assert_eq!(missing.code, EXIT_INPUT);
    assert!(missing.stderr.starts_with("error: cannot read"));
    let bad = run(&CliConfig::inline(Command::GaussBonnet, "v 0\nq 1\n"));
    assert_eq!(bad.code, EXIT_INPUT);
    assert!(bad.stderr.contains("line 2"), "{}", bad.stderr);
    let no_target = run(&file_config(Command::Reduce, "diagrams/octagon.dg"));
    assert_eq!(no_target.code, EXIT_INPUT);
    let mut wrong = file_config(Command::Reduce, "diagrams/octagon.dg");
    wrong.target = Some(fixture("complexes/tetrahedron.cx"));
    assert_eq!(run(&wrong).code, EXIT_INPUT);
}

#[test]
fn binary_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_hypcert");
    let status = |args: &[&str]| {
        let out = Process::new(bin).args(args).output().unwrap();
        (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
    };
    assert_eq!(status(&["certify", "--inline", EXAMPLE_1]).0, 0);
    assert_eq!(status(&["certify", "--inline", EXAMPLE_2]).0, 1);
    assert_eq!(status(&["certify", "--inline", "< a | a >"]).0, 0);
    let (code, _, err) = status(&["certify", "--inline", "< a | a^0 >"]);
    assert_eq!(code, 2);
    assert!(err.contains("exponent must be non-zero"));
    let (code, _, err) = status(&["certify", "--inline", "< a | a >", "--cycle-bound", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("--cycle-bound"));
    let path = fixture("presentations/example-1.txt");
    let (code, json, _) = status(&["certify", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(json, certify_json(EXAMPLE_1).1);
}
