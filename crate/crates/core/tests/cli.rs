use std::path::PathBuf;
use std::process::{Command, Output};

fn data(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(file).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biserial")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn emit_lambda_m0_has_ten_vertices() {
    let o = run(&["algebra", "build", "--family", "lambda", "--r", "1", "--m", "0", "--emit"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("vertex ")).count(), 10);
}

#[test]
fn projectives_table() {
    let o = run(&["algebra", "projectives", "--family", "lambda", "--r", "1", "--m", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("P(a1)\tdim 4\t"), "{text}");
    assert!(text.contains("P(c1)\tdim 6\t"), "{text}");
    assert!(text.contains("P(u)\tdim 2\tu | u"), "{text}");
}

#[test]
fn bad_presentation_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "algebra bad\nvertex a\narrow x : alpha a -> nowhere\n").unwrap();
    let o = run(&["algebra", "parse", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"), "{:?}", o);
}

#[test]
fn pd_of_z3_and_u() {
    let o = run(&["module", "pd", &data("Z3.mod"), "--algebra", "lambda:r=1,m=3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Finite(4)"));
    let o = run(&["module", "pd", &data("u.mod"), "--algebra", "lambda:r=1,m=0"]);
    assert!(stdout(&o).contains("Infinite (cycle 0≅1)"), "{}", stdout(&o));
}

#[test]
fn strict_inconclusive_exits_3() {
    let o = run(&["module", "pd", &data("Z5.mod"), "--cutoff", "2", "--strict"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    let o = run(&["module", "pd", &data("Z5.mod"), "--cutoff", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn iso_of_identical_files_prints_certificate() {
    let z = data("Z2.mod");
    let o = run(&["module", "iso", &z, &z]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("certified"));
}

#[test]
fn hom_and_syzygy() {
    let o = run(&["module", "hom", &data("X.mod"), "--name", "X9", "--name", "X4", "--structured"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["field"], "q");
    let o = run(&["module", "syzygy", &data("Z1.mod"), "--name", "Z1", "-k", "2", "--field", "fp:7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn split_of_x_members() {
    let o = run(&["module", "split", &data("X.mod"), "--structured"]);
    assert!(o.status.success());
    for (k, line) in stdout(&o).lines().enumerate() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["x_multiplicities"][k], 1, "{line}");
        assert_eq!(v["ok"], true);
    }
}

#[test]
fn verify_exit_codes_and_determinism() {
    let o = run(&["verify", "prop-2", "--r", "2", "--m-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS prop-2"));
    let a = run(&["verify", "all", "--r", "1", "--seed", "42", "--structured", "--samples", "5"]);
    let b = run(&["verify", "all", "--r", "1", "--seed", "42", "--structured", "--samples", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 9);
    let o = run(&["verify", "lemma-1", "--cutoff", "0"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "lemma-9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "all", "--r", "0"]).status.code(), Some(2));
    assert_eq!(run(&["module", "pd", "/nonexistent.mod"]).status.code(), Some(2));
    assert_eq!(run(&["algebra", "build", "--field", "fp:4", "--family", "lambda"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
