use std::process::Command;

use alcove::cli::{ActionReport, ElementReport, ValidationReport};
use alcove::root_system::RootSystemDoc;
use alcove::ComponentTable;

fn alcove(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_alcove"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn element_reports() {
    let (code, out, _) = alcove(&["element", "--type", "A2", "--word", "0", "--format", "json"]);
    assert_eq!(code, 0);
    let r: ElementReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.shi_vector.0, vec![0, 0, 1]);
    assert_eq!(r.length, 1);
    assert_eq!(r.lambda, vec![0, 0, 1]);

    let (code, out, _) = alcove(&["element", "--type", "A2", "--word", "", "--format", "json"]);
    assert_eq!(code, 0);
    let r: ElementReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.shi_vector.0, vec![0, 0, 0]);
    assert_eq!(r.length, 0);

    let (code, out, _) = alcove(&["element", "--type", "B2", "--word", "121", "--format", "json"]);
    assert_eq!(code, 0);
    let r: ElementReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.length, 3);
    assert_eq!(r.shi_vector.abs_sum(), 3);

    let (code, _, err) = alcove(&["element", "--type", "B2", "--word", "1x"]);
    assert_eq!(code, 2);
    assert!(err.contains("malformed word"));
}

#[test]
fn validate_verdicts_and_exit_codes() {
    let (code, out, _) = alcove(&["validate", "--type", "B2", "--tuple", "0,0,2,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("valid"));

    let (code, out, _) = alcove(&["validate", "--type", "B2", "--tuple", "[0,0,3,1]", "--format", "json"]);
    assert_eq!(code, 1);
    let r: ValidationReport = serde_json::from_str(&out).unwrap();
    assert!(!r.valid);
    assert!(r.coroot.unwrap().violation.is_some());
    assert!(r.norm.unwrap().violation.is_some());

    let (code, out, _) = alcove(&["validate", "--type", "B2", "--tuple", "0,0,3,1", "--criterion", "norm"]);
    assert_eq!(code, 1);
    assert!(out.contains("invalid") && out.contains("->"));

    assert_eq!(alcove(&["validate", "--type", "G2", "--tuple", "0,0,0,0,0,0"]).0, 0);
    assert_eq!(alcove(&["validate", "--type", "B2", "--tuple", "0,0,x,1"]).0, 2);
    assert_eq!(alcove(&["validate", "--type", "B2", "--tuple", "0,0,1"]).0, 2);
    assert_eq!(alcove(&["validate", "--type", "B2"]).0, 2);
}

#[test]
fn validate_batch_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tuples.txt");
    std::fs::write(&path, "# A2\n0,0,0\n[0,0,1]\n\n-1,0,0\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = alcove(&["validate", "--type", "A2", "--batch", p, "--format", "json"]);
    assert_eq!(code, 0);
    let rs: Vec<ValidationReport> = serde_json::from_str(&out).unwrap();
    assert_eq!(rs.len(), 3);

    std::fs::write(&path, "0,0,0\n0,0,2\n").unwrap();
    let (code, out, _) = alcove(&["validate", "--type", "A2", "--batch", p, "--format", "csv"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().count(), 3);

    let missing = dir.path().join("nope.txt");
    assert_eq!(alcove(&["validate", "--type", "A2", "--batch", missing.to_str().unwrap()]).0, 2);
}

#[test]
fn components_tables() {
    let (code, out, _) = alcove(&["components", "--type", "G2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 13);

    let (code, out, _) = alcove(&["components", "--type", "E8", "--formula-only", "--format", "json"]);
    assert_eq!(code, 0);
    let t: ComponentTable = serde_json::from_str(&out).unwrap();
    assert_eq!(t.formula_count, 2u64.pow(14) * 3u64.pow(5) * 25 * 7);

    let (code, _, err) = alcove(&["components", "--type", "E7"]);
    assert_eq!(code, 2);
    assert!(err.contains("--allow-huge"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b2.json");
    let (code, out, _) = alcove(&[
        "components",
        "--type",
        "B2",
        "--representatives",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let t = ComponentTable::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(t.count, Some(4));
    assert!(t.components.iter().all(|c| c.finite_elements.as_ref().unwrap().len() == 2));

    let bad = dir.path().join("no/such/dir/out.json");
    assert_eq!(alcove(&["components", "--type", "A2", "--output", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b2.svg");
    let (code, _, _) = alcove(&["plot", "--type", "B2", "--radius", "6", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<svg") && svg.contains("version=\"1.1\""));
    let (code, _, _) = alcove(&["plot", "--type", "B3"]);
    assert_eq!(code, 2);
}

#[test]
fn act_and_info() {
    let (code, out, _) = alcove(&["act", "--type", "A2", "--word", "12", "--lambda", "0,0,1", "--format", "json"]);
    assert_eq!(code, 0);
    let r: ActionReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.lambda, vec![0, 0, 1]);
    assert!(r.image == vec![0, 0, 0] || r.image == vec![0, 0, 1]);

    assert_eq!(alcove(&["act", "--type", "A2", "--word", "1", "--lambda", "0,0,5"]).0, 1);

    let (code, out, _) = alcove(&["info", "--type", "F4", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: RootSystemDoc = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.positive_roots.len(), 24);
    assert_eq!(doc.highest_root, vec![2, 3, 4, 2]);

    let (code, out, _) = alcove(&["info", "--type", "B2"]);
    assert_eq!(code, 0);
    assert!(out.contains("index of connection 2"));
}

#[test]
fn usage() {
    assert_eq!(alcove(&[]).0, 2);
    assert_eq!(alcove(&["element", "--word", "0"]).0, 2);
    let (code, out, _) = alcove(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("alcove"));
}
