use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use arclab::formats;
use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = arclab::run_with(std::iter::once("arclab").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, s) = run(args);
    (code, serde_json::from_str(&s).unwrap_or_else(|e| panic!("{e}: {s}")))
}

fn ok(args: &[&str]) -> Value {
    let (code, v) = run_json(args);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["schema"], "arclab/1");
    v
}

fn temp(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("arclab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn hexagon_arc_complex() {
    let v = ok(&["arc-complex", "--polygon", "6", "--homology"]);
    assert_eq!(v["fVector"], json!([9, 21, 14]));
    assert_eq!(v["betti"], json!([1, 0, 1]));
    assert_eq!(v["pseudomanifold"], true);
}

#[test]
fn hexagon_link_of_a_diagonal_is_a_circle() {
    let v = ok(&["arc-complex", "--polygon", "6", "--homology", "--link", "0-3"]);
    assert_eq!(v["link"]["reducedBetti"], json!([0, 0, 1]));
    assert_eq!(v["link"]["sphereHomology"], true);
}

#[test]
fn polygon_range_is_ordered_under_parallelism() {
    let serial = ok(&["arc-complex", "--range", "4..7", "--homology"]);
    let parallel = ok(&["arc-complex", "--range", "4..7", "--homology", "--jobs", "4"]);
    assert_eq!(serial, parallel);
    let ns: Vec<u64> = serial["polygons"].as_array().unwrap().iter().map(|p| p["polygon"].as_u64().unwrap()).collect();
    assert_eq!(ns, vec![4, 5, 6, 7]);
}

#[test]
fn solve_torus_recovers_root_two() {
    let v = ok(&["solve", &fixture("solve_torus.json")]);
    for e in ["0", "1", "2"] {
        assert!((f(&v["lambda"][e]) - 2f64.sqrt()).abs() < 1e-6, "{v}");
    }
}

#[test]
fn crossing_bonding_has_genus_one() {
    let v = ok(&["rna", "analyze", &fixture("crossing.txt")]);
    assert_eq!((v["g"].as_u64(), v["b"].as_u64()), (Some(1), Some(1)));
    assert_eq!(v["secondary"], false);
}

#[test]
fn hairpin_uses_side_tags() {
    let v = ok(&["rna", "analyze", &fixture("hairpin.txt")]);
    assert_eq!(v["model"], "achiral");
    assert_eq!(v["g"], 0);
    let chiral = ok(&["rna", "analyze", &fixture("hairpin.txt"), "--model", "chiral"]);
    assert_eq!(chiral["model"], "chiral");
}

#[test]
fn non_binary_input_is_reduced() {
    let p = temp("star.txt", "m=4\n0 2\n2 4\n");
    let v = ok(&["rna", "analyze", &p]);
    assert_eq!(v["reduced"], true);
    assert_eq!(v["siteMap"][2].as_array().unwrap().len(), 2);
    assert_eq!(v["g"], 0);
}

#[test]
fn rna_sweep_holds() {
    let v = ok(&["rna", "sweep", "--max-m", "6", "--jobs", "2"]);
    assert_eq!(v["planarity"], true);
    assert_eq!(v["helixInvariance"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["flip", &fixture("torus.json")]).0, 2);
    assert_eq!(run(&["coords", "/definitely/not/here.json"]).0, 2);
    assert_eq!(run(&["solve", &fixture("solve_torus.json"), "--tolerance", "-1"]).0, 2);
    assert_eq!(run(&["operad", "named", "nothing"]).0, 2);

    let bad = temp("bad.json", "{ not json");
    let (code, v) = run_json(&["coords", &bad]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "validation");
    assert_eq!(v["error"]["code"], 3);
    assert_eq!(v["schema"], "arclab/1");

    let neg = temp("neg.json", r#"{"preset": "torus", "lambda": [1, -1, 1]}"#);
    assert_eq!(run(&["coords", &neg]).0, 3);
    assert_eq!(run(&["flip", &fixture("torus.json"), "-e", "7"]).0, 3);

    let stuck = temp(
        "stuck.json",
        r#"{"triangulation": {"preset": "sphere"}, "X": [1, 2, 3, 1, 2, 1], "config": {"maxIters": 1}}"#,
    );
    let (code, v) = run_json(&["solve", &stuck]);
    assert_eq!(code, 4, "{v}");
    assert_eq!(v["error"]["kind"], "no-convergence");
    assert_eq!(v["error"]["details"]["iters"], 1);
}

#[test]
fn flip_twice_is_identity_and_exact() {
    let v = ok(&["flip", &fixture("torus.json"), "-e", "1", "-e", "1"]);
    assert_eq!(v["exact"], true);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture("torus.json")).unwrap()).unwrap();
    let a = formats::parse_triangulation(&doc).unwrap();
    let b = formats::parse_triangulation(&v["triangulation"]).unwrap();
    assert_eq!(a.triangulation.topology(), b.triangulation.topology());
    assert_eq!(a.lambda.unwrap().to_f64(), b.lambda.unwrap().to_f64());
}

/// Diagonal chord to its lambda length.
fn chord_lambdas(v: &Value) -> Vec<(Value, Value)> {
    let mut out: Vec<(Value, Value)> = v["diagonals"]
        .as_array()
        .unwrap()
        .iter()
        .enumerate()
        .map(|(e, c)| (c.clone(), v["triangulation"]["lambda"][e.to_string()].clone()))
        .collect();
    out.sort_by_key(|(c, _)| c.to_string());
    out
}

#[test]
fn pentagon_flips_return_home() {
    let p = temp("pent.json", r#"{"preset": "polygon", "n": 5, "lambda": [2, "3/2", 1, 1, 1, 1, 1]}"#);
    let start = ok(&["flip", &p, "-e", "0", "-e", "0"]);
    let v = ok(&["flip", &p, "-e", "0", "-e", "1", "-e", "0", "-e", "1", "-e", "0"]);
    assert_eq!(v["exact"], true);
    assert_eq!(chord_lambdas(&v), chord_lambdas(&start));
    let three = ok(&["flip", &p, "-e", "0", "-e", "1", "-e", "0"]);
    assert_ne!(chord_lambdas(&three), chord_lambdas(&start));
}

#[test]
fn coords_and_delaunay_on_the_fan() {
    let c = ok(&["coords", &fixture("fan6.json")]);
    assert_eq!(c["nonnegative"], false);
    let d = ok(&["delaunay", &fixture("fan6.json")]);
    let e = d["E"].as_object().unwrap();
    let arcs: Vec<u64> = d["arcFamily"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    for a in arcs {
        let x = &e[&a.to_string()];
        assert!(x["num"].as_i64().unwrap() > 0, "{d}");
    }
}

#[test]
fn hull_is_seeded() {
    let a = run(&["hull", "--random", "7", "--seed", "11"]);
    let b = run(&["hull", "--random", "7", "--seed", "11"]);
    let c = run(&["hull", "--random", "7", "--seed", "12"]);
    assert_eq!(a, b);
    assert_ne!(a.1, c.1);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["cell"].as_array().unwrap().len(), 4);
    assert_eq!(run(&["hull"]).0, 2);
}

#[test]
fn hull_agrees_with_delaunay_on_fixture_points() {
    let v = ok(&["hull", &fixture("points.json")]);
    assert_eq!(v["n"], 6);
    assert_eq!(v["cell"].as_array().unwrap().len(), 3);
}

#[test]
fn wp_form_is_antisymmetric() {
    let v = ok(&["wp-form", &fixture("torus.json")]);
    let m: Vec<Vec<i64>> = serde_json::from_value(v["matrix"].clone()).unwrap();
    for i in 0..m.len() {
        for j in 0..m.len() {
            assert_eq!(m[i][j], -m[j][i]);
        }
    }
}

#[test]
fn example5_and_tableaux() {
    let v = ok(&["example5"]);
    assert_eq!(v["cells"], json!([6, 18, 24, 12]));
    assert_eq!(v["euler"], 0);
    assert_eq!(v["threeSphere"], true);
    assert_eq!(v["tableauCells"], v["cells"]);
    let t = ok(&["tableaux", "-s", "3"]);
    assert_eq!(t["cellsByDimension"], json!([6, 18, 24, 12]));
}

#[test]
fn fatgraph_commands() {
    let b = ok(&["fatgraph", "boundaries", &fixture("theta.json")]);
    assert_eq!(b["genus"], 0);
    assert_eq!(b["boundaryCount"], 3);
    assert_eq!(b["lengths"], json!([1.5, 3.0, 2.5]));
    let r = ok(&["fatgraph", "recurrent", &fixture("theta.json"), "--subset", "0,1"]);
    assert_eq!(r["recurrent"], json!([0, 1]));
    let w = ok(&["fatgraph", "whitehead", &fixture("theta.json"), "--edge", "2"]);
    assert_eq!(w["genus"], 0);
    assert_eq!(run(&["fatgraph", "whitehead", &fixture("theta.json")]).0, 2);
}

#[test]
fn operad_glue_and_axioms() {
    let g = ok(&["operad", "glue", &fixture("pants.json"), "1", &fixture("annulus.json")]);
    assert_eq!(g["seamBalanced"], true);
    let show = ok(&["operad", "show", &fixture("pants.json")]);
    assert_eq!(show["type"], json!({"genus": 0, "boundaries": 3}));
    let a = ok(&["operad", "axioms", "--cases", "40", "--jobs", "3", "--seed", "5"]);
    assert_eq!(a["passed"], true);
    assert_eq!(run(&["operad", "glue", &fixture("pants.json"), "9", &fixture("annulus.json")]).0, 3);
}

#[test]
fn svg_outputs() {
    let (code, s) = run(&["operad", "named", "identity", "--format", "svg"]);
    assert_eq!(code, 0);
    assert_eq!(s.matches("<path").count(), 1);
    let (_, h) = run(&["coords", &fixture("fan6.json"), "--format", "svg"]);
    assert_eq!(h.matches("<path").count(), 3);
    assert_eq!(h, run(&["coords", &fixture("fan6.json"), "--format", "svg"]).1);
    let (_, r) = run(&["rna", "analyze", &fixture("crossing.txt"), "--format", "svg"]);
    assert_eq!(r.matches("<path").count(), 2);
    assert_eq!(run(&["example5", "--format", "svg"]).0, 2);
}

#[test]
fn output_flag_writes_a_file() {
    let p = temp("out.json", "");
    let (code, s) = run(&["example5", "-o", &p]);
    assert_eq!((code, s.as_str()), (0, ""));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["schema"], "arclab/1");
}

#[test]
fn fixtures_round_trip() {
    for name in ["torus.json", "fan6.json"] {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        let d = formats::parse_triangulation(&v).unwrap();
        let again = formats::triangulation_json(&d.triangulation, d.lambda.as_ref());
        let d2 = formats::parse_triangulation(&again).unwrap();
        assert_eq!(again, formats::triangulation_json(&d2.triangulation, d2.lambda.as_ref()), "{name}");
    }
    for name in ["annulus.json", "pants.json"] {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        let d = formats::parse_diagram(&v).unwrap();
        assert_eq!(formats::parse_diagram(&formats::diagram_json(&d)).unwrap(), d, "{name}");
    }
    for name in ["crossing.txt", "hairpin.txt"] {
        let d = formats::parse_bonding(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(formats::parse_bonding(&formats::bonding_text(&d)).unwrap(), d, "{name}");
    }
    let v: Value = serde_json::from_str(&std::fs::read_to_string(fixture("theta.json")).unwrap()).unwrap();
    let g = formats::parse_fatgraph(&v).unwrap();
    assert_eq!(formats::parse_fatgraph(&formats::fatgraph_json(&g.graph, g.relaxed)).unwrap().graph, g.graph);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(fixture("tetra_boundary.json")).unwrap()).unwrap();
    let k = formats::parse_complex(&v).unwrap();
    assert_eq!(formats::parse_complex(&formats::complex_json(&k)).unwrap(), k);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(fixture("points.json")).unwrap()).unwrap();
    let p = formats::parse_points(&v).unwrap();
    let again = formats::parse_points(&formats::points_json(&p)).unwrap();
    assert_eq!(formats::points_json(&again), formats::points_json(&p));
}

#[test]
fn reports_are_reproducible() {
    for args in [
        vec!["solve", "FIX:solve_torus.json"],
        vec!["delaunay", "FIX:fan6.json"],
        vec!["operad", "axioms", "--cases", "20", "--jobs", "4"],
        vec!["hull", "--random", "6", "--seed", "3"],
    ] {
        let owned: Vec<String> =
            args.iter().map(|a| a.strip_prefix("FIX:").map(fixture).unwrap_or_else(|| a.to_string())).collect();
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        assert_eq!(run(&refs), run(&refs), "{args:?}");
    }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arclab"))
}

#[test]
fn tolerance_env_and_flag() {
    let out = binary().args(["solve", &fixture("solve_torus.json")]).env("ARCLAB_TOLERANCE", "1e-6").output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(f(&v["config"]["tolConstraint"]), 1e-6);
    assert!((f(&v["config"]["tolEnergy"]) - 1e-10).abs() < 1e-22);

    let out = binary()
        .args(["solve", &fixture("solve_torus.json"), "--tolerance", "1e-8"])
        .env("ARCLAB_TOLERANCE", "1e-6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(f(&v["config"]["tolConstraint"]), 1e-8);

    let out = binary().args(["example5"]).env("ARCLAB_TOLERANCE", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_reads_stdin_and_sets_exit_codes() {
    let mut child = binary()
        .args(["rna", "analyze", "-"])
        .env_remove("ARCLAB_TOLERANCE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"m=3\n0 2\n1 3\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["g"], 1);

    let out = binary().args(["coords", "/no/such/file"]).env_remove("ARCLAB_TOLERANCE").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "usage");
}
