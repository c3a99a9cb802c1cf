use std::path::PathBuf;
use std::process::{Command, Output};

use reeb_toolkit::fixtures;
use reeb_toolkit::graphlink::GraphManifoldDesc;
use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_reeb-toolkit"));
    c.env_remove("REEB_TOOLKIT_TOL");
    c
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn decide_bott_on_cat_torus() {
    let m = fixture("cat_torus.json");
    assert_eq!(report(&["decide-bott", "--manifold", &m, "--euler", "0"]), json!({"bott_integrable": true}));
    for e in ["1", "-1", "2", "-3"] {
        assert_eq!(report(&["decide-bott", "--manifold", &m, "--euler", e]), json!({"bott_integrable": false}));
    }
}

#[test]
fn decide_bott_on_seifert_vertex() {
    let m = fixture("seifert_vertex.json");
    for e in ["0,0,0", "1,0,0", "0,-2,3", "5,7,1"] {
        assert_eq!(report(&["decide-bott", "--manifold", &m, "--euler", e]), json!({"bott_integrable": true}));
    }
}

#[test]
fn decide_graphlink_examples() {
    let m = fixture("cat_torus.json");
    assert_eq!(report(&["decide-graphlink", "--manifold", &m, "--class", "1"]), json!({"representable": false}));
    assert_eq!(report(&["decide-graphlink", "--manifold", &m, "--class", "0"]), json!({"representable": true}));
    let k1 = fixture("cat_plus_s1s2.json");
    for (class, want) in [("3,2", false), ("3,3", true), ("3,1", true), ("3,0", false), ("-2,2", true)] {
        assert_eq!(
            report(&["decide-graphlink", "--manifold", &k1, "--class", class]),
            json!({"representable": want}),
            "{class}"
        );
    }
}

#[test]
fn fixture_names_resolve_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .current_dir(dir.path())
        .args(["decide-bott", "--manifold", "cat_torus.json", "--euler", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn catmap_verify_passes_for_small_n() {
    for n in 0..=5 {
        let r = report(&["catmap-verify", "--n", &n.to_string()]);
        assert_eq!(r["pass"], json!(true));
        assert_eq!(r["torsion"], json!(n));
        assert!(r["equivariance_max_residual"].as_f64().unwrap() < 1e-9);
        assert!(r["fibonacci_max_residual"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn tolerance_override() {
    let out = bin().env("REEB_TOOLKIT_TOL", "1e-30").args(["catmap-verify", "--n", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["pass"], json!(false));
    assert_eq!(r["tolerance"], json!(1e-30));
    let out = bin().env("REEB_TOOLKIT_TOL", "loose").args(["catmap-verify", "--n", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("REEB_TOOLKIT_TOL"));
}

#[test]
fn validation_errors_exit_2_and_name_the_field() {
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(run(&["decide-bott", "--manifold", &fixture("cat_torus.json")]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"summands":[{"vertices":1,"edges":[[0,0]]}],"k":0,"h1_relations":[],"ngens":1,"rho":[[1,2]]}"#,
    )
    .unwrap();
    let out = run(&["jsj", "--manifold", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rho[0]"));

    std::fs::write(&bad, r#"{"kind":"closed_form","domain":[0,1],"form":"spiral"}"#).unwrap();
    let out = run(&["winding", "--curve", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("form"));
}

#[test]
fn computation_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let ray = dir.path().join("ray.json");
    std::fs::write(
        &ray,
        r#"{"kind":"closed_form","domain":[0,1],"form":"segment","params":{"origin":[1,1],"velocity":[1,1]}}"#,
    )
    .unwrap();
    let out = run(&["reeb-flow", "--curve", ray.to_str().unwrap(), "--T", "1", "--dt", "0.1"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reeb_flow_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("traj.csv");
    let r = report(&[
        "reeb-flow", "--n", "0", "--t0", "0.3", "--T", "10", "--dt", "0.001", "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(r["steps"], json!(10_000));
    assert!(r["max_error_vs_exact"].as_f64().unwrap() < 1e-9);
    assert!(r["reversibility_error"].as_f64().unwrap() < 1e-8);
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().next(), Some("time,t,x1,x2,f"));
    assert_eq!(text.lines().count(), 10_002);
}

#[test]
fn other_verbs_report() {
    assert_eq!(report(&["homology"])["group"], json!("Z"));
    assert_eq!(report(&["homology", "--manifold", &fixture("seifert_vertex.json")])["group"], json!("Z^2 + Z/4"));
    assert_eq!(report(&["homology", "--manifold", &fixture("cat_plus_s1s2.json")])["group"], json!("Z^2"));
    assert_eq!(report(&["snf"])["verified"], json!(true));
    assert_eq!(report(&["jsj", "--manifold", &fixture("cat_torus.json")])["betti"], json!(1));
    assert_eq!(report(&["torsion", "--n", "4"])["torsion"], json!(4));
    let w = report(&["winding", "--n", "1"])["winding"].as_f64().unwrap()
        - report(&["winding", "--n", "0"])["winding"].as_f64().unwrap();
    assert!((w + std::f64::consts::TAU).abs() < 1e-6);
    let twist = report(&["lutz-twist", "--t0", "-0.5", "--t1", "0.5"]);
    assert!((twist["winding_delta"].as_f64().unwrap() + std::f64::consts::TAU).abs() < 1e-6);
    assert_eq!(report(&["check-contact", "--n", "2"])["contact"], json!(true));
    let p = report(&["perturb", "--delta", "1", "--epsilon", "0.3"]);
    assert_eq!(p["points"].as_array().unwrap().len(), 2);
    let e = report(&["euler", "--manifold", &fixture("cat_torus.json")]);
    assert_eq!(e["euler_pd"], json!({"a": [0], "b": []}));
    assert_eq!(e["representable"], json!(true));
}

#[test]
fn d2_verb() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("tuple.json");
    std::fs::write(
        &t,
        r#"{"d12":{"a":[1,0,0]},"d23":{"a":[0,1,2]},"d13":{"a":[1,1,-2]},
            "e1":{"a":[2,0,3]},"e2":{"a":[0,0,3]},"d21":{"a":[-1,0,4]}}"#,
    )
    .unwrap();
    let m = fixture("seifert_vertex.json");
    let r = report(&["d2", "--manifold", &m, "--d2", t.to_str().unwrap(), "--class", "1,1,0"]);
    assert_eq!(r["additivity"], json!(true));
    assert_eq!(r["doubling"], json!(true));
    assert_eq!(r["antisymmetry"], json!(true));
    assert_eq!(r["after_twist"], json!({"a": [0, 0, 2], "b": []}));
}

#[test]
fn output_is_deterministic() {
    let args = ["perturb", "--delta", "1.3", "--epsilon", "0.2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let m = fixture("seifert_vertex.json");
    let args = ["euler", "--manifold", &m];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["reeb-flow", "--n", "3", "--T", "5", "--dt", "0.01", "--x1", "1", "--x2", "-2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn human_tables() {
    let out = run(&["decide-graphlink", "--manifold", &fixture("cat_torus.json"), "--class", "1", "--human"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "representable  false\n");
}

#[test]
fn shipped_fixtures_round_trip() {
    for (name, text) in fixtures::ALL {
        let on_disk = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(on_disk, text);
        let d = GraphManifoldDesc::from_json(text).unwrap();
        let again = GraphManifoldDesc::from_json(&d.to_json().unwrap()).unwrap();
        assert_eq!(again, d, "{name}");
        assert_eq!(again.to_doc(), d.to_doc());
    }
}
