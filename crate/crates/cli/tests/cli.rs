use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn vhess(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vhess")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json(args: &[&str]) -> Value {
    let o = vhess(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn analyze_bourgain_sacksteder() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "bs.poly", "# the P4 example\nx0*x3^2 + x1*x3*x4 + x2*x4^2\n");
    let r = json(&["analyze", &f, "--json"]);
    assert_eq!(r["hessian"]["vanishes"]["value"], true);
    assert_eq!(r["hessian"]["vanishes"]["certainty"]["kind"], "exact");
    assert_eq!(r["cone"]["is_cone"]["value"], false);
    assert_eq!(r["codim_z"]["value"], 1);
    assert_eq!(r["mu"]["value"], 1);
    assert_eq!(r["special"]["special"]["value"], true);
    assert_eq!(r["label"], "P4-unique");
    assert_eq!(r["relations"]["basis"][0], "y0*y2 - y1^2");
}

#[test]
fn analyze_fermat_stops_after_the_hessian() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "fermat.poly", "x0^3 + x1^3 + x2^3 + x3^3\n");
    let r = json(&["analyze", &f, "--json"]);
    assert_eq!(r["hessian"]["vanishes"]["value"], false);
    assert_eq!(r["label"], "hess ≠ 0");
    assert!(r["mu"].is_null());
    assert!(r["cone"].is_null());
}

#[test]
fn analyze_cone_reports_the_vertex() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "cone.poly", "nvars: 4\nx0*x2^2\n");
    let r = json(&["analyze", &f, "--json"]);
    assert_eq!(r["cone"]["is_cone"]["value"], true);
    assert_eq!(r["cone"]["vertex"]["dim"], 1);
    assert_eq!(r["label"], "cone");
    assert!(r["mu"].is_null());
}

#[test]
fn analyze_is_byte_identical_for_a_fixed_seed() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "exdet.poly", "x0*x4*x5 + x1*x4^2 + x2*x4*x6 + x3*x5*x6\n");
    let a = vhess(&["analyze", &f, "--json", "--seed", "9"]);
    let b = vhess(&["analyze", &f, "--json", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["seeds"]["seed"], 9);
    assert_eq!(r["label"], "P6-dimZ*2-quadric-or-cubic-surface");
}

#[test]
fn text_report_ends_with_the_label_and_seeds() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "bs.poly", "x0*x3^2 + x1*x3*x4 + x2*x4^2");
    let o = vhess(&["analyze", &f]);
    let text = stdout(&o);
    assert!(text.contains("label        P4-unique"), "{text}");
    assert!(text.ends_with('\n'));
}

#[test]
fn relations_of_the_concatenation() {
    let d = TempDir::new().unwrap();
    let g = vhess(&["generate", "concat"]);
    let f = write(&d, "concat7.poly", &stdout(&g));
    let out = stdout(&vhess(&["relations", &f, "--max-degree", "2"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, ["y0*y2 - y1^2", "y2*y6 - y5^2"]);
}

#[test]
fn relations_of_fermat_are_none() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "fermat.poly", "x0^3 + x1^3 + x2^3");
    let o = vhess(&["relations", &f, "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("none found"));
}

#[test]
fn relations_of_the_determinant_section() {
    let d = TempDir::new().unwrap();
    let out = d.path().join("p7det.poly");
    let g = vhess(&["generate", "det3_section", "--out", out.to_str().unwrap()]);
    assert_eq!(g.status.code(), Some(0));
    let r = stdout(&vhess(&["relations", out.to_str().unwrap(), "--max-degree", "2"]));
    assert_eq!(r.trim(), "y0*y4 - y1*y3");
}

#[test]
fn generate_bs_file() {
    let d = TempDir::new().unwrap();
    let out = d.path().join("bs.poly");
    let o = vhess(&["generate", "bs", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("x0*x3^2 + x1*x3*x4 + x2*x4^2"), "{text}");
}

#[test]
fn generate_canspch_validates_and_round_trips() {
    let d = TempDir::new().unwrap();
    let o = vhess(&["generate", "canSPCH", "--N", "6", "--sigma", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let file = vhess::format::parse_file(&text).unwrap();
    vhess_core::perazzo::validate_canspch(file.poly(), 3).unwrap();
    let f = write(&d, "c.poly", &text);
    let r = json(&["analyze", &f, "--json"]);
    assert_eq!(r["hessian"]["vanishes"]["value"], true);
    assert_eq!(r["codim_z"]["value"], 1);
}

#[test]
fn generate_mu1_in_p20_has_vanishing_hessian() {
    let d = TempDir::new().unwrap();
    let text = stdout(&vhess(&["generate", "mu1", "--N", "20"]));
    let file = vhess::format::parse_file(&text).unwrap();
    assert_eq!(file.poly().nvars(), 21);
    assert_eq!(file.poly().homogeneous_degree(), Some(3));
    let f = write(&d, "mu1.poly", &text);
    let r = json(&["analyze", &f, "--json"]);
    assert_eq!(r["hessian"]["vanishes"]["value"], true);
    assert_eq!(r["hessian"]["vanishes"]["certainty"]["kind"], "monte-carlo");
}

#[test]
fn generate_with_explicit_coefficients() {
    let o = vhess(&["generate", "classe1", "--N", "3", "--tau", "1", "--coeffs", "1,-2,3,4,5,6,7,8,9,10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let f = vhess::format::parse_file(&stdout(&o)).unwrap();
    assert_eq!(f.poly().num_terms(), 10);
    for coeffs in ["1,2,3", "1,2,3,4,5,6,7,8,9,10,11"] {
        let o = vhess(&["generate", "classe1", "--N", "3", "--tau", "1", "--coeffs", coeffs]);
        assert_eq!(o.status.code(), Some(4), "{coeffs}");
    }
}

#[test]
fn verify_paper_filter_selects_rows() {
    let o = vhess(&["verify-paper", "--filter", "exdet"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in out.lines().filter(|l| l.chars().next().is_some_and(|c| c.is_ascii_digit()) && !l.contains("criteria,")) {
        let subject = line.split_whitespace().nth(1).unwrap();
        assert!(subject == "exdet" || subject == "-", "{line}");
    }
    assert!(!out.contains("P4-unique"));
}

#[test]
fn verify_paper_json() {
    let r = json(&["verify-paper", "--filter", "bs", "--json"]);
    let arr = r.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert!(arr[0]["rows"].as_array().unwrap().iter().all(|row| row["pass"] == true));
}

#[test]
fn exit_codes() {
    let d = TempDir::new().unwrap();
    let bad = write(&d, "bad.poly", "x0*x1 +\n");
    let o = vhess(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
    let inhom = write(&d, "inhom.poly", "x0^2 + x1");
    assert_eq!(vhess(&["analyze", &inhom]).status.code(), Some(2));
    assert_eq!(vhess(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(vhess(&["analyze"]).status.code(), Some(4));
    assert_eq!(vhess(&["generate", "nosuchfamily"]).status.code(), Some(4));
    assert_eq!(vhess(&["generate", "canSPCH", "--N", "3", "--sigma", "2"]).status.code(), Some(4));
    assert_eq!(vhess(&["--prime", "10", "analyze", &bad]).status.code(), Some(4));
    let missing = d.path().join("missing.poly");
    assert_eq!(vhess(&["analyze", missing.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(vhess(&["--help"]).status.code(), Some(0));
    assert_eq!(vhess(&["--version"]).status.code(), Some(0));
    assert!(Path::new(env!("CARGO_BIN_EXE_vhess")).exists());
}

#[test]
fn json_report_round_trips_through_the_schema() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "det.poly", &stdout(&vhess(&["generate", "det3_section"])));
    let o = vhess(&["analyze", &f, "--json"]);
    let text = stdout(&o);
    let r: vhess::report::AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.schema_version, vhess::report::SCHEMA_VERSION);
    assert_eq!(r.to_json() + "\n", text);
    assert!(r.timings.is_none());
    let t = vhess(&["analyze", &f, "--json", "--timings"]);
    let r: vhess::report::AnalysisReport = serde_json::from_slice(&t.stdout).unwrap();
    let stages: Vec<String> = r.timings.unwrap().into_iter().map(|t| t.stage).collect();
    assert_eq!(stages.first().map(String::as_str), Some("hessian"));
}
