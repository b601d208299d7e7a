use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn diffiso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffiso"))
        .args(args)
        .env_remove("DIFFISO_CAP_BITS")
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = diffiso(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn canon_single_edge() {
    let v = json_ok(&["canon", "--n", "4", "--r", "2", "--graph", "02"]);
    assert_eq!(v["canon"], "01");
    assert_eq!(v["format"], "diffiso-canon/1");
    assert!(v["tool_version"].is_string());
}

#[test]
fn canon_rejects_out_of_space_bits() {
    // bit 6 does not exist for C(4,2) = 6 edges
    assert_eq!(
        diffiso(&["canon", "--n", "4", "--r", "2", "--graph", "40"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table_rows() {
    let v = json_ok(&["table", "--json", "--n-max", "6", "--r-max", "3"]);
    let rows = v["rows"].as_array().unwrap();
    let find = |n: u64, r: u64| {
        rows.iter()
            .find(|x| x["n"] == n && x["r"] == r)
            .unwrap()
            .clone()
    };
    assert_eq!(find(6, 2)["f"], 6);
    assert_eq!(find(6, 2)["pow2_f"], "64");
    assert_eq!(find(6, 3)["f"], 10);
    assert_eq!(find(6, 3)["pow2_f"], "1024");
    assert_eq!(find(3, 3)["f"], 0);
    let text = String::from_utf8(diffiso(&["table"]).stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["2", "6", "6", "64"]));
    assert_eq!(diffiso(&["table", "--r-max", "1"]).status.code(), Some(2));
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ext.json");
    let out = diffiso(&[
        "construct",
        "extremal",
        "--n",
        "4",
        "--r",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["graphs"].as_array().unwrap().len(), 4);
    assert_eq!(file["meta"]["verification"]["difference_isomorphic"], true);
    assert_eq!(file["meta"]["verified_digest"], file["digest"]);
    let v = json_ok(&["verify", path.to_str().unwrap()]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["checked_pairs"], 6);
}

#[test]
fn construct_middle_layer_and_appendix() {
    let v = json_ok(&["construct", "middle-layer", "--r", "2"]);
    assert_eq!(v["graphs"].as_array().unwrap().len(), 3);
    let v = json_ok(&["construct", "appendix", "--n", "8", "--r", "2"]);
    assert_eq!(v["graphs"].as_array().unwrap().len(), 5);
    assert_eq!(v["meta"]["verification"]["difference_isomorphic"], true);
    assert_eq!(v["meta"]["involution_clique"]["checked"], true);
    assert_eq!(v["meta"]["g0"], v["graphs"][0]);
}

#[test]
fn construct_usage_errors() {
    assert_eq!(
        diffiso(&["construct", "extremal", "--r", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        diffiso(&["construct", "nonsense", "--n", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        diffiso(&["construct", "stars", "--n", "6"]).status.code(),
        Some(2)
    );
    assert_eq!(
        diffiso(&["construct", "appendix", "--n", "6", "--r", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_mutated_member_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    // extremal (4,2) is 06 14 0a 18; replacing 06 by the triangle 07 breaks pair (0, 1)
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"format":"diffiso-family/1","n":4,"r":2,"graphs":["07","14","0a","18"]}"#,
    );
    let out = diffiso(&["verify", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["witness"]["i"], 0);
    assert_eq!(v["witness"]["j"], 1);
    assert_eq!(v["digest_match"], Value::Null);
}

#[test]
fn verify_flags_stale_digest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    diffiso(&[
        "construct",
        "extremal",
        "--n",
        "4",
        "--r",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    // swap two members: still difference-isomorphic, but the digest is order-sensitive
    let text =
        std::fs::read_to_string(&path)
            .unwrap()
            .replacen("\"06\",\"14\"", "\"14\",\"06\"", 1);
    let p = write(dir.path(), "g.json", &text);
    let out = diffiso(&["verify", &p]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["difference_isomorphic"], true);
    assert_eq!(v["digest_match"], false);
}

#[test]
fn verify_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("trunc.json", r#"{"format": "#),
        (
            "fmt.json",
            r#"{"format":"other/9","n":4,"r":2,"graphs":[]}"#,
        ),
        (
            "hex.json",
            r#"{"format":"diffiso-family/1","n":4,"r":2,"graphs":["zz"]}"#,
        ),
        (
            "dup.json",
            r#"{"format":"diffiso-family/1","n":4,"r":2,"graphs":["01","01"]}"#,
        ),
    ];
    for (name, text) in cases {
        let p = write(dir.path(), name, text);
        assert_eq!(diffiso(&["verify", &p]).status.code(), Some(2), "{name}");
    }
    assert_eq!(
        diffiso(&["verify", "/nonexistent/x.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn search_small_cases() {
    let v = json_ok(&["search", "--n", "3", "--r", "2"]);
    assert_eq!(v["size"], 3);
    assert_eq!(v["exact"], true);
    assert_eq!(v["family"].as_array().unwrap().len(), 3);
    let v = json_ok(&["search", "--n", "4", "--r", "2", "--seed-extremal"]);
    assert_eq!(v["size"], 12);
    let v = json_ok(&["search", "--n", "4", "--r", "3", "--duality"]);
    assert_eq!(v["size_r"], 6);
    assert_eq!(v["matches"], true);
}

#[test]
fn search_over_cap_exits_three() {
    assert_eq!(
        diffiso(&["search", "--n", "7", "--r", "2"]).status.code(),
        Some(3)
    );
}

#[test]
fn cap_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_diffiso"))
        .args(["search", "--n", "4", "--r", "2"])
        .env("DIFFISO_CAP_BITS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn lemma_reports() {
    let v = json_ok(&["lemma", "--id", "2.4", "--n-max", "8"]);
    assert_eq!(v["violations"], 0);
    let v = json_ok(&[
        "lemma",
        "--id",
        "3.2",
        "--n",
        "4",
        "--r",
        "2",
        "--mode",
        "sampled",
        "--samples",
        "200",
        "--seed",
        "11",
    ]);
    assert_eq!(v["parameters"]["seed"], 11);
    assert_eq!(v["parameters"]["rng"], "chacha8-stream/1");
    assert_eq!(v["instances_checked"], 200);
    assert_eq!(v["violations"], 0);
}

#[test]
fn lemma_usage_errors() {
    assert_eq!(diffiso(&["lemma", "--id", "9.9"]).status.code(), Some(2));
    assert_eq!(
        diffiso(&["lemma", "--id", "3.2", "--samples", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        diffiso(&["lemma", "--id", "3.7", "--n", "4", "--n-max", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dualize_and_complement_preserve_verification() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src.json");
    diffiso(&[
        "construct",
        "stars",
        "--n",
        "6",
        "--k",
        "3",
        "--out",
        src.to_str().unwrap(),
    ]);
    for op in ["dualize", "complement"] {
        let out = dir.path().join(format!("{op}.json"));
        let o = diffiso(&[op, src.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{op}");
        let v = json_ok(&["verify", out.to_str().unwrap()]);
        assert_eq!(v["ok"], true, "{op}");
        assert_eq!(v["members"], 6, "{op}");
    }
    let d: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("dualize.json")).unwrap())
            .unwrap();
    assert_eq!(d["r"], 4);
}

#[test]
fn pretty_output_parses_identically() {
    let a = json_ok(&["canon", "--n", "5", "--r", "2", "--graph", "3f"]);
    let b = json_ok(&["canon", "--n", "5", "--r", "2", "--graph", "3f", "--pretty"]);
    assert_eq!(a, b);
}
