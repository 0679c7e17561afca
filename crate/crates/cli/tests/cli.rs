use std::process::{Command, Output};

fn polyzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyzeta")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn lyndon_listing() {
    let out = polyzeta(&["lyndon", "--alphabet", "Y", "--max-weight", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "y1, y2, y3, y2y1");
}

#[test]
fn relations_weight_three() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("table.json");
    let out = polyzeta(&["relations", "--max-weight", "3", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("z(2,1) -> z(3)"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let level = &json["levels"][2];
    assert_eq!(level["weight"], 3);
    assert_eq!(level["rewrites"][0]["head"], "z(2,1)");
    assert_eq!(level["rewrites"][0]["rhs"], "z(3)");
    assert_eq!(level["irreducibles"][0], "z(3)");
}

#[test]
fn output_is_deterministic_and_cache_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let plain = polyzeta(&["relations", "--max-weight", "5", "--duality"]);
    let cold = polyzeta(&["--cache-dir", cache, "relations", "--max-weight", "5", "--duality"]);
    let warm = polyzeta(&["--cache-dir", cache, "relations", "--max-weight", "5", "--duality"]);
    assert!(dir.path().join("relations-w5-duality.json").exists());
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    for format in ["markdown", "csv"] {
        let file = dir.path().join(format!("t.{format}"));
        let out = polyzeta(&["relations", "--max-weight", "4", "--format", format, "--out", file.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(std::fs::read_to_string(&file).unwrap().contains("z(4)"));
    }
}

#[test]
fn zeta_values_agree() {
    let a = polyzeta(&["zeta", "2,1", "--prec", "40"]);
    let b = polyzeta(&["zeta", "3", "--prec", "40"]);
    let value = |o: &Output| stdout(o).split(' ').next().unwrap().to_string();
    assert_eq!(value(&a), value(&b));
    assert!(value(&a).starts_with("1.2020569031595942853997381615114499907"));
}

#[test]
fn products_and_regularization() {
    let out = polyzeta(&["product", "--kind", "shuffle", "x0x1", "x1"]);
    assert_eq!(stdout(&out).trim(), "2·x0x1x1 + x1x0x1");
    let out = polyzeta(&["reg", "--kind", "stuffle", "y1y1"]);
    assert_eq!(stdout(&out).trim(), "-1/2·z(2)");
    let out = polyzeta(&["gamma-const", "y1", "--prec", "20", "--check", "100000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("gamma\n0.57721566490153286060"), "{text}");
}

#[test]
fn verify_reports_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.json");
    let out = polyzeta(&["verify", "--max-weight", "5", "--prec", "30", "--hexagon", "--out", file.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failures"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(json["failures"], 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(polyzeta(&["relations", "--max-weight", "13"]).status.code(), Some(2));
    assert_eq!(polyzeta(&["zeta", "3", "--prec", "10"]).status.code(), Some(2));
    assert_eq!(polyzeta(&["zeta", "1,2"]).status.code(), Some(2));
    assert_eq!(polyzeta(&["product", "--kind", "shuffle", "x0", "y1"]).status.code(), Some(2));
    assert_eq!(polyzeta(&["frobnicate"]).status.code(), Some(2));
}
