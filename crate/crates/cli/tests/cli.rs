use std::path::PathBuf;
use std::process::{Command, Output};

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn repknit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repknit")).args(args).output().expect("binary runs")
}

fn config(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const A4_TABLE: &str = "\
slot\t[4[0]] + [1[1]] + [4[1]]\t[4[0] 1[1]] + [4[1]]\t[4[0]] + [1[1] 4[1]]\tP_4[0]
(3,7)\t0\t1\t0\t1
(2,6)\t0\t1\t0\t1
(1,5)\t0\t1\t0\t1
(4,4)\t0\t0\t0\t1
(1,3)\t0\t0\t1\t1
(2,2)\t0\t0\t1\t1
(3,1)\t0\t0\t1\t1
";

#[test]
fn a4_bijection_table_golden() {
    let o = repknit(&["bijection-table", "--config", &config("a4_table.json")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), A4_TABLE);
}

#[test]
fn artifacts_use_configured_names() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    for cmd in ["bijection-table", "poset", "orbits"] {
        let o = repknit(&[cmd, "--config", &config("a4_table.json"), "--out", &out]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read_to_string(dir.path().join("a4_table.tsv")).unwrap(), A4_TABLE);
    let dot = std::fs::read_to_string(dir.path().join("a4_poset.dot")).unwrap();
    assert!(dot.starts_with("digraph strata {"));
    assert_eq!(dot.matches(" -> ").count(), 4);
    let orbits = std::fs::read_to_string(dir.path().join("a4_orbits.tsv")).unwrap();
    assert_eq!(orbits.lines().count(), 5);
}

#[test]
fn orbits_of_zero_is_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("zero.json");
    let quiver = config("a4_quiver.json").replace('\\', "/");
    std::fs::write(&cfg, format!(r#"{{"quiver": "{quiver}", "anchor_shift": 10, "window": [0, 8]}}"#)).unwrap();
    let o = repknit(&["orbits", "--config", &cfg.to_string_lossy()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "class\tV\tW\tmonomial\n0\t0\t0\t1\n");
}

#[test]
fn selfcheck_on_a2_passes_and_is_deterministic() {
    let a = repknit(&["selfcheck", "--config", &config("a2_default.json"), "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let text = stdout(&a);
    assert!(text.lines().count() > 1);
    assert!(text.lines().skip(1).all(|l| l.starts_with("PASS")), "{text}");
    let b = repknit(&["selfcheck", "--config", &config("a2_default.json"), "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let j = repknit(&["selfcheck", "--config", &config("a2_default.json"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["seed"], 1);
}

#[test]
fn sigma_algebra_reports_presentation() {
    let o = repknit(&["sigma-algebra", "--config", &config("a2_sigma.json"), "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"], 6);
    assert_eq!(v["arrows"], 7);
    assert_eq!(v["relation_dims"]["2"], 1);
    assert_eq!(v["relations"], serde_json::json!(["[1>3>6] + [1>4>6]"]));
}

#[test]
fn monomial_both_directions() {
    let o = repknit(&["monomial", "--config", &config("a2_monomial.json")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("\"exponents\""));
    assert!(text.contains("\"class\""));
}

#[test]
fn window_flag_and_formats() {
    let small = repknit(&["hom", "--config", &config("a2_default.json"), "--window=-2:2"]);
    let large = repknit(&["hom", "--config", &config("a2_default.json"), "--window=-6:6"]);
    assert!(small.status.success() && large.status.success());
    assert!(stdout(&small).lines().count() < stdout(&large).lines().count());
    let dot = repknit(&["knit", "--config", &config("a2_default.json"), "--format", "dot"]);
    assert!(stdout(&dot).starts_with("digraph ar {"));
    let bad = repknit(&["orbits", "--config", &config("a4_table.json"), "--format", "dot"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = repknit(&["hom", "--config", &config("a2_default.json"), "--window", "3:1"]);
    assert!(!bad.status.success());
}

#[test]
fn config_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"quiver": {"type": "A2", "vertices": ["1", "2"], "arrows": [["1", "2"]]}, "dim": {"1[0]": "x"}}"#).unwrap();
    let o = repknit(&["orbits", "--config", &cfg.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dim.1[0]"), "{}", String::from_utf8_lossy(&o.stderr));

    std::fs::write(&cfg, r#"{"quiver": {"type": "A2", "vertices": ["1", "2"], "arrows": [["1", "2"]]}, "sigma": ["(1,1)"]}"#).unwrap();
    let o = repknit(&["sigma-algebra", "--config", &cfg.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(1,1)"));
}

#[test]
fn describe_lists_presentations() {
    let o = repknit(&["describe", "--config", &config("a4_table.json")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("quiver\tA4"));
    assert!(text.contains("relation\t"));
    let j = repknit(&["describe", "--config", &config("a4_table.json"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["quiver"]["height"]["1"], 3);
}
