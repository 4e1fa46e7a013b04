use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn pbracket(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbracket"))
        .args(args)
        .env_remove("PBRACKET_SEED")
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = pbracket(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_kind(args: &[&str]) -> (i32, String, String) {
    let out = pbracket(args);
    let code = out.status.code().unwrap();
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    (
        code,
        v["error"]["kind"].as_str().unwrap().to_string(),
        v["error"]["message"].as_str().unwrap().to_string(),
    )
}

#[test]
fn bracket_example() {
    let v = json_ok(&["bracket", "--n", "2", "--f", "x1^2", "--g", "x1*x2"]);
    assert_eq!(v["bracket"], json!([{"i": 1, "j": 2, "poly": "2*x1^2"}]));
    assert_eq!(v["degree"], json!(4));
    let v = json_ok(&["bracket-deg", "--n", "3", "--f", "x1", "--g", "x1^2"]);
    assert_eq!(v["degree"], json!("-inf"));
}

#[test]
fn lattice_example() {
    let v = json_ok(&[
        "lattice-min",
        "--d",
        "4",
        "--N",
        "6",
        "--j",
        "4",
        "--t",
        "1",
        "--mode",
        "both",
    ]);
    assert_eq!(v["value"], json!("-2"));
    assert_eq!(v["argmins"], json!([[-2, 0, 0, 2]]));
    assert_eq!(v["agree"], json!(true));
    let v = json_ok(&[
        "lattice-min",
        "--d",
        "6",
        "--N",
        "9",
        "--j",
        "5",
        "--t",
        "3",
        "--tie",
    ]);
    assert_eq!(v["agree"], json!(true));
    assert_eq!(v["argmins"].as_array().unwrap().len(), 3);
}

#[test]
fn hreduce_and_express() {
    let v = json_ok(&[
        "hreduce",
        "--n",
        "2",
        "--h",
        "x1*x2 + x2^2",
        "--p",
        "3*x1^2*x2^2 + 6*x1*x2^3 + 3*x2^4",
    ]);
    assert_eq!((v["a"].clone(), v["k"].clone()), (json!("3"), json!(2)));
    let v = json_ok(&[
        "express",
        "--n",
        "2",
        "--h",
        "x1*x2",
        "--p",
        "x1^2*x2^2 - 2*x1*x2 + 5",
    ]);
    assert_eq!(v["coefficients"], json!(["5", "-2", "1"]));
    let v = json_ok(&[
        "express",
        "--n",
        "2",
        "--h",
        "x1*x2 + x1",
        "--p",
        "x1^2*x2^2",
    ]);
    assert_eq!(v["member"], json!(false));
    let (code, kind, _) = error_kind(&["hreduce", "--n", "2", "--h", "x1^2", "--p", "x1^4"]);
    assert_eq!((code, kind.as_str()), (1, "h_is_proper_power"));
}

#[test]
fn build_and_verify_from_spec() {
    let spec = data("minimal.toml");
    let v = json_ok(&["build-g", "--spec", spec.to_str().unwrap()]);
    assert_eq!(v["G"], json!("x2^3 + 3/2*x1*x2"));
    assert_eq!(v["below_bound"], json!(true));
    let v = json_ok(&[
        "verify-formula",
        "--d",
        "4",
        "--N",
        "6",
        "--t",
        "2",
        "--a",
        "2=1/3",
        "--i",
        "1",
    ]);
    assert_eq!(v["all_hold"], json!(true));
    let v = json_ok(&[
        "verify-formula",
        "--spec",
        spec.to_str().unwrap(),
        "--i",
        "1",
        "--table",
    ]);
    assert!(v["table"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn structure_reports() {
    let spec = data("dependent.toml");
    let spec = spec.to_str().unwrap();
    let v = json_ok(&["check-dependence", "--spec", spec, "--i", "2"]);
    assert_eq!(v["report"]["relation_holds"], json!(true));
    assert_eq!(v["report"]["f_tilde"], json!("x2"));
    assert_eq!(v["consistent"], json!(true));
    let v = json_ok(&["oracle-min-bracket", "--spec", spec]);
    assert_eq!(v["bound"], json!(6));
    let v = json_ok(&["check-divisibility", "--spec", spec, "--k", "1"]);
    assert_eq!(v["report"]["conclusion"], json!(true));
    assert_eq!(v["consistent"], json!(true));
    let v = json_ok(&[
        "check-divisibility",
        "--random",
        "4,1,6",
        "--seed",
        "3",
        "--n",
        "3",
    ]);
    assert_eq!(v["spec"]["n"], json!(3));
    let (code, kind, _) = error_kind(&[
        "check-dependence",
        "--spec",
        data("minimal.toml").to_str().unwrap(),
    ]);
    assert_eq!((code, kind.as_str()), (1, "not_applicable"));
}

#[test]
fn su_bound_report() {
    let v = json_ok(&[
        "su-bound",
        "--n",
        "2",
        "--f",
        "x1",
        "--g",
        "x2",
        "--p",
        "x1^2 + x2",
    ]);
    assert_eq!(v["holds"], json!(true));
    assert_eq!(v["composed_degree"], json!(2));
}

#[test]
fn spec_errors_are_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "n = 2\nd = 4\nN = 6\nt = 2\nh = \"x1*x2\"\n[a]\n3 = 1\n6 = 1\n",
    )
    .unwrap();
    let (code, kind, msg) = error_kind(&["build-g", "--spec", bad.to_str().unwrap()]);
    assert_eq!((code, kind.as_str()), (1, "invalid_parameters"));
    assert!(msg.contains("a_3 must be zero"), "{msg}");
    std::fs::write(&bad, "n = 2\nd = 4\nN = [6\n").unwrap();
    let (code, kind, msg) = error_kind(&["build-g", "--spec", bad.to_str().unwrap()]);
    assert_eq!((code, kind.as_str()), (1, "config"));
    assert!(msg.contains("line 3"), "{msg}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pbracket(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        pbracket(&["bracket", "--n", "2", "--f", "x1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(pbracket(&["build-g"]).status.code(), Some(2));
    assert_eq!(
        pbracket(&[
            "lattice-min",
            "--d",
            "4",
            "--N",
            "6",
            "--j",
            "4",
            "--mode",
            "fast"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(pbracket(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_flag_and_seed_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = pbracket(&[
        "build-g",
        "--random",
        "4,2,6",
        "--seed",
        "11",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let from_flag = std::fs::read(&out).unwrap();
    let from_env = Command::new(env!("CARGO_BIN_EXE_pbracket"))
        .args(["build-g", "--random", "4,2,6"])
        .env("PBRACKET_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(from_env.stdout, from_flag);
    let other = pbracket(&["build-g", "--random", "4,2,6", "--seed", "12"]);
    assert_ne!(other.stdout, from_flag);
}

#[test]
fn search_is_byte_stable() {
    let config = data("search.toml");
    let config = config.to_str().unwrap();
    let a = pbracket(&["search-conjecture", "--config", config, "--threads", "1"]);
    let b = pbracket(&["search-conjecture", "--config", config, "--threads", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["evaluated"], json!(100));
    assert!(v["note"].as_str().unwrap().contains("centralizer"));
}

#[test]
fn search_config_rejects_bad_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(
        &config,
        "nvars = 2\ndegree_pairs = [[6, 9]]\nt = 2\nsamples = 4\n",
    )
    .unwrap();
    let (code, kind, msg) =
        error_kind(&["search-conjecture", "--config", config.to_str().unwrap()]);
    assert_eq!((code, kind.as_str()), (1, "invalid_parameters"));
    assert!(msg.contains("must divide"), "{msg}");
}

#[test]
fn structured_search_dumps_every_candidate() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("structured.toml");
    std::fs::write(
        &config,
        "nvars = 3\ndegree_pairs = [[4, 6], [2, 5]]\nt = 1\nsamples = 60\nseed = 1\nmode = \"structured\"\n",
    )
    .unwrap();
    let dumps = dir.path().join("dumps");
    let v = json_ok(&[
        "search-conjecture",
        "--config",
        config.to_str().unwrap(),
        "--dump-dir",
        dumps.to_str().unwrap(),
    ]);
    let candidates = v["candidates"].as_array().unwrap();
    let files = std::fs::read_dir(&dumps).unwrap().count();
    assert_eq!(files, candidates.len());
    for c in candidates {
        let path = dumps.join(format!(
            "candidate-{:06}.json",
            c["index"].as_u64().unwrap()
        ));
        let dumped: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
        assert_eq!(&dumped, c);
        assert!(c["report"]["hypotheses_hold"].as_bool().unwrap());
    }
}

#[test]
fn selftest_quick() {
    let v = json_ok(&["selftest", "--quick", "--seed", "9"]);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
}
