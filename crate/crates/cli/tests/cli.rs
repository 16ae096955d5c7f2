use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn dgkern(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.ends_with(".json") { fixture(a).display().to_string() } else { a.to_string() })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_dgkern")).args(&args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn homology_of_m2() {
    let o = dgkern(&["homology", "M2.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H_0 = Z/2, H_1 = 0\n");
}

#[test]
fn ell_window_is_a_category() {
    assert_eq!(dgkern(&["verify-category", "ell_window.json"]).status.code(), Some(0));
    assert_eq!(dgkern(&["verify-category", "graded.json"]).status.code(), Some(0));
}

#[test]
fn cone_of_identity_is_acyclic() {
    for f in ["id_K0.json", "K0.json", "M2.json"] {
        let o = dgkern(&["--json", "cone", "--f", f, "--map-cone-of-identity"]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        for (_, g) in v["homology"].as_object().unwrap() {
            assert_eq!(g, "0");
        }
    }
}

#[test]
fn lz_cokernel_is_z() {
    let o = dgkern(&["cokernel-protosplit", "--f", "lz_f.json", "--t", "lz_t.json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("H_0 = Z\n"), "{out}");
    assert!(out.contains("hold"), "{out}");
}

#[test]
fn non_splitting_is_an_input_error() {
    let o = dgkern(&["cokernel-protosplit", "--f", "lz_f.json", "--t", "lz_t_bad.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn total_complex_and_window() {
    let o = dgkern(&["tot", "square.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("chain isomorphism"));
    let o = dgkern(&["tot", "square.json", "--window", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("window"));
}

#[test]
fn colimit_with_point_weight() {
    let o = dgkern(&["colim", "weight_point.json", "diagram_M2.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H_0 = Z/2"));
}

#[test]
fn cauchy_pass_and_witness() {
    assert_eq!(dgkern(&["verify-cauchy", "cauchy_free.json"]).status.code(), Some(0));
    let o = dgkern(&["--json", "verify-cauchy", "cauchy_negated.json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["witness"]["object"], "K0");
}

#[test]
fn malformed_input_names_field_and_degree() {
    let o = dgkern(&["homology", "bad_shape.json"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("diffs.1") && err.contains("degree 1"), "{err}");
    assert_eq!(dgkern(&["homology", "no_such_file.json"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["--json", "tot", "square.json"], vec!["suite", "--seed", "3"], vec!["tensor", "LZ.json", "M2.json"]] {
        let (a, b) = (dgkern(&args), dgkern(&args));
        assert_eq!(stdout(&a), stdout(&b), "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn suite_reports_every_criterion() {
    let o = dgkern(&["--json", "suite"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 12);
    assert!(criteria.iter().all(|c| c["passed"] == true));
}

#[test]
fn report_to_file() {
    let path = std::env::temp_dir().join(format!("dgkern-report-{}.txt", std::process::id()));
    let o = dgkern(&["homology", "M2.json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "H_0 = Z/2, H_1 = 0\n");
    std::fs::remove_file(path).unwrap();
}
