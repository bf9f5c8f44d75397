use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run(args: &[&str], budget: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_flowcount"));
    cmd.args(args).env_remove("FLOWCOUNT_BUDGET");
    if let Some(b) = budget {
        cmd.env("FLOWCOUNT_BUDGET", b);
    }
    cmd.output().unwrap()
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = corpus(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args, None)
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_graph(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn coefficients(doc: &Value, residue: usize) -> Vec<String> {
    doc["constituents"][residue]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn k4_strict_polynomial() {
    let doc = json(&run_on("poly", "k4.graph", &["--strict", "--json"]));
    assert_eq!(doc["period"], 1);
    assert_eq!(doc["degree"], 3);
    assert_eq!(coefficients(&doc, 0), ["-24", "44", "-24", "4"]);
}

#[test]
fn mixed_signed_digon_weak_quasipolynomial() {
    let doc = json(&run_on("poly", "pmk2_1_1.graph", &["--weak", "--json"]));
    assert_eq!(doc["period"], 2);
    assert_eq!(coefficients(&doc, 1), ["1/2", "-1", "3/2"]);
    assert_eq!(coefficients(&doc, 0), ["1", "-2", "3/2"]);
    assert_eq!(doc["leading_coefficient"], "3/2");
}

#[test]
fn even_order_groups_disagree() {
    let z4 = json(&run_on("modflow", "s1.graph", &["--group", "4", "--json"]));
    assert_eq!((z4["total"].as_str(), z4["nowhere_zero"].as_str()), (Some("8"), Some("5")));
    let klein = json(&run_on("modflow", "s1.graph", &["--group", "2,2", "--json"]));
    assert_eq!((klein["total"].as_str(), klein["nowhere_zero"].as_str()), (Some("16"), Some("9")));
    let z5 = json(&run_on("modflow", "k2x3.graph", &["--group", "5", "--json"]));
    assert_eq!(z5["nowhere_zero"], "12");
}

#[test]
fn orientation_count_and_negative_evaluation() {
    assert_eq!(json(&run_on("tco", "k2x3.graph", &["--json"]))["totally_cyclic"], "6");
    let doc = json(&run_on("eval", "k2x3.graph", &["--at", "-1", "--strict", "--json"]));
    assert_eq!(doc["value"], "18");
    let doc = json(&run_on("tutte", "k2x3.graph", &["--json"]));
    assert_eq!(doc["polynomial"], "x + y + y^2");
}

#[test]
fn empty_graph_is_constant_one() {
    let f = temp_graph("nodes 2\n");
    let doc = json(&run(&["poly", f.path().to_str().unwrap(), "--json"], None));
    assert_eq!(doc["degree"], 0);
    assert_eq!(coefficients(&doc, 0), ["1"]);
}

#[test]
fn plain_and_json_agree() {
    let plain = run_on("eval", "k4.graph", &["--at", "-2"]);
    let doc = json(&run_on("eval", "k4.graph", &["--at", "-2", "--json"]));
    let text = String::from_utf8(plain.stdout).unwrap();
    let value = text.lines().find_map(|l| l.strip_prefix("value: ")).unwrap();
    assert_eq!(value, doc["value"].as_str().unwrap());

    let plain = String::from_utf8(run_on("poly", "pmk2_2_0.graph", &[]).stdout).unwrap();
    let doc = json(&run_on("poly", "pmk2_2_0.graph", &["--json"]));
    for c in doc["constituents"].as_array().unwrap() {
        assert!(plain.contains(c["polynomial"].as_str().unwrap()), "{plain}");
    }
}

#[test]
fn verify_passes_and_skips_contraction_for_signed_input() {
    let out = run_on("verify", "s1.graph", &["--json"]);
    let doc = json(&out);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["skipped"][0], "contraction");
    let out = run_on("verify", "k2x3.graph", &["--check", "contraction", "--json"]);
    assert_eq!(json(&out)["reports"][0]["check"], "contraction");
    // asking for it explicitly on a signed graph is an input error
    assert_eq!(run_on("verify", "s1.graph", &["--check", "contraction"]).status.code(), Some(1));
    assert_eq!(run_on("verify", "k2x3.graph", &["--orders", "4"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let bad = temp_graph("nodes 2\nedge 1 link 1 5 +\n");
    let out = run(&["poly", bad.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert_eq!(run(&["poly", "/no/such/file"], None).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(run(&["eval", corpus("k4.graph").to_str().unwrap()], None).status.code(), Some(1));

    let k4 = corpus("k4.graph");
    let out = run(&["poly", k4.to_str().unwrap()], Some("1000"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FLOWCOUNT_BUDGET"));
    assert_eq!(run(&["tco", k4.to_str().unwrap()], Some("lots")).status.code(), Some(1));
}

#[test]
fn in_process_runner_matches_binary() {
    let path = corpus("c3.graph");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = flowcount::cli::run(["flowcount", "tco", path.to_str().unwrap()], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, run_on("tco", "c3.graph", &[]).stdout);
}
