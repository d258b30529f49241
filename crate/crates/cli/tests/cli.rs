use std::path::PathBuf;
use std::process::{Command, Output};

use tfp_core::format::infer_ring;
use tfp_core::poly::parse_polynomial;
use tfp_core::Rational;

fn tfp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tfp")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn suite(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/suites").join(name).display().to_string()
}

fn stdout(o: &Output) -> Vec<String> {
    String::from_utf8(o.stdout.clone()).unwrap().lines().map(str::to_string).collect()
}

#[test]
fn quad_single_binomial() {
    let o = tfp(&["quad", "--r", "1", "--s", "2", "--t", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), ["z_1_1_2*z_1_2_1 - z_1_1_1*z_1_2_2"]);
}

#[test]
fn quad_broadcasts_sizes() {
    let o = tfp(&["quad", "--r", "2", "--s", "2", "--t", "2"]);
    assert_eq!(stdout(&o).len(), 2);
}

#[test]
fn dependent_grading_is_a_warning() {
    let o = tfp(&["validate", "--spec", &data("three_cycle.tfp")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).iter().any(|l| l == "grading: DEPENDENT"));
}

#[test]
fn dependent_grading_has_no_product() {
    let o = tfp(&["product", "--spec", &data("three_cycle.tfp")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dependent"));
}

#[test]
fn chain_base_is_one_determinant() {
    let o = tfp(&["model", "chain", "--d", "3,2,3"]);
    assert!(o.status.success());
    let lines = stdout(&o);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0].matches(" + ").count() + lines[0].matches(" - ").count(), 5);
}

#[test]
fn output_reparses() {
    for args in [
        vec!["product", "--spec", &data("two_minors.tfp")],
        vec!["lift", "--spec", &data("two_minors.tfp"), "--side", "y"],
        vec!["model", "segre", "--d", "2,2,2"],
    ] {
        let o = tfp(&args.iter().map(|s| s.as_ref()).collect::<Vec<&str>>());
        assert!(o.status.success(), "{args:?}");
        for line in stdout(&o) {
            let ring = infer_ring(&[&line]).unwrap();
            let p = parse_polynomial::<Rational>(&line, &ring).unwrap();
            let q = parse_polynomial::<Rational>(&p.to_string(), &ring).unwrap();
            assert_eq!(p, q);
            assert_eq!(p.terms().len(), line.matches(" + ").count() + line.matches(" - ").count() + 1, "{line}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["product", "--groebner", "--spec", &data("two_minors.tfp")];
    assert_eq!(tfp(&args).stdout, tfp(&args).stdout);
}

#[test]
fn oracle_of_a_map() {
    let o = tfp(&["oracle", "--spec", &data("segre_map.tfp")]);
    assert_eq!(stdout(&o), ["p_1_2*p_2_1 - p_1_1*p_2_2"]);
}

#[test]
fn hilbert_matches_hadamard() {
    let o = tfp(&["hilbert", "--spec", &data("two_minors.tfp"), "--bound", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(&"1,1  3  3  9".to_string()));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let o = tfp(&["-o", path.to_str().unwrap(), "model", "chain", "--d", "3,2,3"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap().lines().count(), 1);
}

#[test]
fn phylo_four_leaves() {
    let o = tfp(&["model", "phylo", "--group", "z2", "--parents=-1,0,1,2,2,1", "--leaves", "3,4,5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).len(), 2);
}

#[test]
fn verify_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let jsonl = dir.path().join("r.jsonl");
    let o = tfp(&["verify", "--config", &suite("mutation.toml"), "--jsonl", jsonl.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let lines = stdout(&o);
    assert_eq!(lines.iter().filter(|l| l.starts_with("FAIL")).count(), 1);
    assert_eq!(std::fs::read_to_string(jsonl).unwrap().lines().count(), 2);
}

#[test]
fn verify_small_suite() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("suite.toml");
    std::fs::write(
        &config,
        "[[case]]\nname = \"square\"\nrecipe = { kind = \"quad\", s = [2], t = [2] }\nchecks = [\"groebner\", \"ideal-equality\"]\n",
    )
    .unwrap();
    let o = tfp(&["verify", "--config", config.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).last().unwrap(), "2 passed, 0 failed, 0 skipped");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tfp(&["quad", "--s", "two", "--t", "2"]).status.code(), Some(2));
    assert_eq!(tfp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tfp(&["validate", "--spec", "/nonexistent.tfp"]).status.code(), Some(2));
    assert_eq!(tfp(&["lift", "--spec", &data("two_minors.tfp"), "--side", "w"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tfp");
    std::fs::write(&bad, "[ideal I]\nx_1_1 +* 2\n").unwrap();
    assert_eq!(tfp(&["validate", "--spec", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn inhomogeneous_ideal_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inhom.tfp");
    std::fs::write(&path, "[grading]\n1\n[sizes]\ns: 2\nt: 1\n[ideal I]\nx_1_1^2 - x_1_2\n").unwrap();
    assert_eq!(tfp(&["validate", "--spec", path.to_str().unwrap()]).status.code(), Some(1));
}
