use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use twistroot::symplectic::{alpha1_twist, HomologyClass};
use twistroot::twistword::{Curve, CurveSystem, DATA_DIR_ENV};

fn twistroot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistroot")).args(args).env_remove(DATA_DIR_ENV).output().unwrap()
}

fn twistroot_env(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistroot")).args(args).env(DATA_DIR_ENV, dir).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json", "--compare"];
    full.extend_from_slice(args);
    let o = twistroot(&full);
    (code(&o), serde_json::from_slice(&o.stdout).unwrap())
}

fn corrupted_genus3_table() -> String {
    CurveSystem::shipped(3).unwrap().with_class(Curve::Beta(2), HomologyClass::zero(6)).to_toml_string()
}

#[test]
fn enumerate_exit_codes_and_counts() {
    let (c, v) = json(&["enumerate", "--genus", "2", "--degree", "5"]);
    assert_eq!(c, 0);
    assert_eq!(v["command"], "enumerate");
    assert_eq!(v["results"]["listings"][0]["count"], 2);
    assert_eq!(
        v["results"]["listings"][0]["classes"][0],
        json!({"n": 5, "g_prime": 0, "sigma_boundary": [1, 2], "orbits": [[2, 5]]})
    );
    let (c, v) = json(&["enumerate", "--genus", "2", "--degree", "4"]);
    assert_eq!((c, &v["results"]["listings"][0]["count"]), (0, &json!(0)));
    let o = twistroot(&["enumerate", "--genus", "0", "--degree", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(code(&twistroot(&["enumerate", "--genus", "2", "--degree", "1"])), 2);
    assert_eq!(code(&twistroot(&["bogus"])), 2);
}

#[test]
fn spectrum_and_exists() {
    let (_, v) = json(&["spectrum", "--genus", "1"]);
    assert_eq!(v["results"]["degrees"], json!([3]));
    assert_eq!(v["results"]["classes"][0]["unordered"], 1);
    let (_, v) = json(&["spectrum", "--genus", "4"]);
    assert_eq!(v["results"]["degrees"], json!([3, 5, 9]));
    let (c, v) = json(&["exists", "--genus", "6", "--degree", "5"]);
    assert_eq!((c, &v["results"]["exists"]), (0, &json!(true)));
    let (_, v) = json(&["exists", "--genus", "3", "--degree", "5"]);
    assert_eq!(v["results"]["exists"], false);
}

#[test]
fn verify_degree3_tables() {
    for g in ["2", "3", "4", "5"] {
        assert_eq!(code(&twistroot(&["verify-degree3", "--genus", g])), 0, "genus {g}");
    }
    assert_eq!(code(&twistroot(&["verify-degree3", "--genus", "1"])), 2);
    // no shipped table for closed genus 7
    assert_eq!(code(&twistroot(&["verify-degree3", "--genus", "6"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, corrupted_genus3_table()).unwrap();
    let o = twistroot(&["--format", "json", "verify-degree3", "--genus", "2", "--table", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"]["all_pass"], false);

    assert_eq!(code(&twistroot(&["verify-degree3", "--genus", "2", "--table", "/nonexistent/table.toml"])), 2);
    let garbage = dir.path().join("garbage.toml");
    std::fs::write(&garbage, "gplus1 = \"three\"").unwrap();
    assert_eq!(code(&twistroot(&["verify-degree3", "--genus", "2", "--table", garbage.to_str().unwrap()])), 2);
    // table for the wrong genus
    assert_eq!(code(&twistroot(&["verify-degree3", "--genus", "3", "--table", bad.to_str().unwrap()])), 2);
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&twistroot_env(&["verify-degree3", "--genus", "2"], dir.path())), 2);
    std::fs::write(dir.path().join(CurveSystem::file_name(3)), corrupted_genus3_table()).unwrap();
    assert_eq!(code(&twistroot_env(&["verify-degree3", "--genus", "2"], dir.path())), 1);
    std::fs::write(dir.path().join(CurveSystem::file_name(3)), CurveSystem::shipped(3).unwrap().to_toml_string()).unwrap();
    assert_eq!(code(&twistroot_env(&["verify-degree3", "--genus", "2"], dir.path())), 0);
}

#[test]
fn sp_sqrt_reports() {
    for bound in ["1", "3"] {
        let (c, v) = json(&["sp-sqrt", "--genus", "1", "--bound", bound]);
        assert_eq!(c, 0);
        assert_eq!(v["results"]["status"], "absent");
        assert_eq!(v["results"]["root"], Value::Null);
        let constraints = v["results"]["constraints"].as_array().unwrap();
        for want in ["a12 = 0", "a13 = 0", "a14 = 0", "a33 = a11"] {
            assert!(constraints.contains(&json!(want)), "missing {want}");
        }
    }
    let text = String::from_utf8(twistroot(&["sp-sqrt", "--genus", "1", "--bound", "2"]).stdout).unwrap();
    assert!(text.contains("1 0 1 0") && text.contains("a14 = 0"));

    let dir = tempfile::tempdir().unwrap();
    let s = alpha1_twist(2);
    let s2 = dir.path().join("s2.json");
    std::fs::write(&s2, serde_json::to_string(&s.mul(&s)).unwrap()).unwrap();
    let (c, v) = json(&["sp-sqrt", "--genus", "1", "--bound", "2", "--matrix-file", s2.to_str().unwrap()]);
    assert_eq!(c, 1);
    assert_eq!(v["results"]["status"], "found");
    assert_eq!(v["results"]["root"], serde_json::to_value(&s).unwrap());

    let not_sp = dir.path().join("diag.json");
    std::fs::write(&not_sp, "[[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]").unwrap();
    assert_eq!(code(&twistroot(&["sp-sqrt", "--genus", "1", "--matrix-file", not_sp.to_str().unwrap()])), 2);
    let wrong_dim = dir.path().join("small.json");
    std::fs::write(&wrong_dim, "[[1,0],[0,1]]").unwrap();
    assert_eq!(code(&twistroot(&["sp-sqrt", "--genus", "1", "--matrix-file", wrong_dim.to_str().unwrap()])), 2);
    assert_eq!(code(&twistroot(&["sp-sqrt", "--genus", "1", "--bound", "0"])), 2);

    let (c, v) = json(&["sp-sqrt", "--genus", "2", "--bound", "2", "--node-budget", "500"]);
    assert_eq!((c, &v["results"]["status"]), (0, &json!("budget_exhausted")));
}

#[test]
fn marked_and_annulus() {
    let (_, v) = json(&["marked", "--genus", "1", "--punctures", "2"]);
    assert_eq!(v["results"]["verdicts"], json!([{"verdict": "NoDegreeMax", "residue": 2}, {"verdict": "NoRootsAtAll"}]));
    let (_, v) = json(&["marked", "--genus", "2", "--fixed-boundary", "1"]);
    assert_eq!(v["results"]["verdicts"], json!([{"verdict": "NoRoots"}]));
    assert_eq!(code(&twistroot(&["marked", "--genus", "2", "--punctures", "-1"])), 2);
    let (c, v) = json(&["annulus-check", "--degree", "7"]);
    assert_eq!(c, 0);
    assert_eq!(v["results"]["maps"].as_array().unwrap().len(), 5);
    assert_eq!(v["results"]["maps"][0]["twist_defect"], 6);
}

#[test]
fn output_independent_of_worker_count() {
    let cases: [&[&str]; 4] = [
        &["spectrum", "--genus", "6"],
        &["--boundary-convention", "both", "enumerate", "--genus", "6", "--degree", "5"],
        &["sp-sqrt", "--genus", "1", "--bound", "2"],
        &["exists", "--genus", "5", "--degree", "11"],
    ];
    for args in cases {
        let outputs: Vec<Vec<u8>> = ["1", "2", "8"]
            .iter()
            .map(|p| {
                let mut full = vec!["--format", "json", "--compare", "--parallel", p];
                full.extend_from_slice(args);
                // parameters echo the worker count; compare only the results
                let v: Value = serde_json::from_slice(&twistroot(&full).stdout).unwrap();
                serde_json::to_vec(&v["results"]).unwrap()
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}
