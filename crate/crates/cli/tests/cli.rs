use std::path::PathBuf;
use std::process::{Command, Output};

const F19: &str = "Z^3 + X^19*Z + (X-Y)^4";

fn lzres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lzres")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn polygon_text() {
    let o = lzres(&["polygon", "--field", "q", F19]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "vertices: (0,4/3) (4/3,0)\n");
}

#[test]
fn polygon_json_and_svg_match_goldens() {
    let dir = tempfile::tempdir().unwrap();
    let mut svgs = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("f19-{run}.svg"));
        let o = lzres(&["polygon", F19, "--json", "--svg", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), golden("f19.json"));
        svgs.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(svgs[0], svgs[1]);
    assert_eq!(svgs[0], golden("f19.svg"));
}

#[test]
fn monoidal_examples() {
    let o = lzres(&["blowup", "--curve", "X", "Z^3 + X^13*Z + X^3*Y^4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("Z^3 + X^11*Z + Y^4"));

    let o = lzres(&["blowup", "--curve", "X", "Z^3 + X^17*Z + X*Y^4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("center (Z,X) is not permitted"));
}

#[test]
fn quadratic_direction_and_drop() {
    let o = lzres(&["blowup", "--direction", "1:1:0", F19]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Z^3 + X^17*Z + X*Y^4\norder: 3\n");

    // not a near point of F(19)
    let o = lzres(&["blowup", "--direction", "0:1:0", F19]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(dropped)"));
}

#[test]
fn resolve_auto_json() {
    let o = lzres(&["resolve", "--auto", F19, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["drop_step"], 9);
    assert_eq!(v["multiplicity"], 3);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 9);
    assert_eq!(steps[0]["center"]["type"], "point");
    assert_eq!(steps[0]["center"]["direction"], "1:1:0");
    assert_eq!(steps[3]["center"]["type"], "curve");
    assert_eq!(steps[3]["center"]["generator"], "X");
    assert_eq!(steps[3]["equation"], "Z^3 + X^11*Z + Y^4");
    assert_eq!(steps[8]["center"]["type"], "terminal");
    assert!(steps[8]["polygon"].is_null());
    assert_eq!(steps[0]["polygon"]["vertices"][0], serde_json::json!(["1/3", "4/3"]));
}

#[test]
fn resolve_script_file() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("steps.txt");
    std::fs::write(&script, "# first cycle\nQ 1:1:0\nQ 1:0:0\n\nQ 1:0:0\nM X\n").unwrap();
    let o = lzres(&["resolve", "--script", script.to_str().unwrap(), F19]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("M X"));
    assert!(stdout(&o).contains("Z^3 + X^11*Z + Y^4"));

    std::fs::write(&script, "Q 0:1:0\n").unwrap();
    let o = lzres(&["resolve", "--script", script.to_str().unwrap(), F19]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a near point"));

    std::fs::write(&script, "Q 1:1:0\nP X\n").unwrap();
    let o = lzres(&["resolve", "--script", script.to_str().unwrap(), F19]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn step_cap_exit_code() {
    let o = lzres(&["resolve", "--auto", "--max-steps", "3", F19]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn equation_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    std::fs::write(&path, format!("{F19}\n")).unwrap();
    let arg = format!("@{}", path.display());
    let o = lzres(&["polygon", &arg]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "vertices: (0,4/3) (4/3,0)\n");
}

#[test]
fn usage_and_parse_errors_exit_1() {
    assert_eq!(lzres(&["polygon", "Z^3 + + X"]).status.code(), Some(1));
    assert_eq!(lzres(&["--field", "fp:4", "info", "Z^2"]).status.code(), Some(1));
    assert_eq!(lzres(&["--field", "r", "info", "Z^2"]).status.code(), Some(1));
    assert_eq!(lzres(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lzres(&["blowup", F19]).status.code(), Some(1));
    assert_eq!(lzres(&["polygon", "@/nonexistent/file"]).status.code(), Some(1));
}

#[test]
fn precondition_errors_exit_2() {
    // order 2 but Z-degree 3
    assert_eq!(lzres(&["info", "Z^3 + X*Y"]).status.code(), Some(2));
    assert_eq!(lzres(&["counterexample", "--m", "18"]).status.code(), Some(2));
    // neither WT nor minimized
    assert_eq!(lzres(&["nearpoints", "(Z+X)^2 + Y^5"]).status.code(), Some(2));
}

#[test]
fn info_permitted_nearpoints() {
    let o = lzres(&["info", F19]);
    assert!(stdout(&o).contains("multiplicity: 3\nwt: yes\n"));
    assert!(stdout(&o).contains("a_1: X^19\n"));

    let o = lzres(&["permitted", "Z^3 + X^13*Z + X^3*Y^4"]);
    assert_eq!(stdout(&o), "(Z,X)\n");
    let o = lzres(&["permitted", F19]);
    assert_eq!(stdout(&o), "none\n");

    let o = lzres(&["nearpoints", F19]);
    assert_eq!(stdout(&o), "(1:1:0)\n");
}

#[test]
fn prime_field_runs() {
    let o = lzres(&["--field", "fp:7", "resolve", "--auto", F19, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["drop_step"], 9);
}

#[test]
fn minimize_removes_contractible_vertex() {
    let o = lzres(&["minimize", "(Z+X+Y^2)^2+Y^9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Z^2 + Y^9\nvertices: (0,9/2)\n");
}

#[test]
fn counterexample_json_keeps_input_order() {
    let o = lzres(&["counterexample", "--m", "35,19,27", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pairs: Vec<(u64, u64)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["m"].as_u64().unwrap(), e["drop_step"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, [(35, 17), (19, 9), (27, 13)]);
    assert_eq!(v["polygons_equal"], true);
    assert_eq!(v["counts_increasing"], false);
}

#[test]
fn help_mentions_chart_limitation() {
    let o = lzres(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z = G*Z'"));
}
