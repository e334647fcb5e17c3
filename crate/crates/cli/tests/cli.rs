use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kleinlens"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn has_line(o: &Output, line: &str) -> bool {
    stdout(o).lines().any(|l| l == line)
}

#[test]
fn classify_klein_family_member() {
    let o = run(&["classify", "8", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "klein_bottle = yes"));
    assert!(has_line(&o, "klein_bottle.n = 2"));
    assert!(has_line(&o, "klein_bottle.sign = -"));
}

#[test]
fn classify_projective_space() {
    let o = run(&["classify", "2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "projective_plane = yes"));
    assert!(has_line(&o, "klein_bottle = no"));
}

#[test]
fn classify_rejects_non_coprime() {
    let o = run(&["classify", "6", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gcd(6, 4)"));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["classify", "8"]).status.code(), Some(2));
    assert_eq!(run(&["embed", "1", "x", "handles"]).status.code(), Some(2));
    assert_eq!(
        run(&["embed", "1", "+", "tetrahedron"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "0", "4"]).status.code(), Some(2));
}

#[test]
fn filling_examples() {
    let o = run(&["filling", "1", "1"]);
    assert!(has_line(&o, "h1 = Z_4") && has_line(&o, "h1_cyclic = yes"));

    let o = run(&["filling", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "h1 = Z_2 + Z_4"));
    assert!(stdout(&o).contains("not a lens-space filling"));

    let o = run(&["filling", "1", "3"]);
    assert!(has_line(&o, "group_order = 12") && has_line(&o, "abelian = no"));
}

#[test]
fn filling_over_cap_gives_partial_report() {
    let o = run(&["filling", "3", "5", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "group_order = 60"));
    assert!(stdout(&o).contains("exceeds cap 10"));
}

#[test]
fn embed_handles_and_bands() {
    let o = run(&["embed", "5", "+", "handles"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "boundary_class = -11*mu+20*lambda@side2"));
    assert!(has_line(&o, "mu_intersections = 2 + 1 + 8 + 1 + 8 = 20"));

    let o = run(&["embed", "2", "+", "two_moebius"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "band1.boundary = 1*mu+2*lambda@side1"));
    assert!(has_line(&o, "band1.boundary_image = -1*mu+2*lambda@side2"));
}

#[test]
fn embed_lens_model_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run(&["embed", "1", "-", "lens_model", "64", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(has_line(&o, "euler_characteristic = 0"));
    assert!(has_line(&o, "status = pass"));
    let mesh = std::fs::read_to_string(out.join("mesh.4off")).unwrap();
    assert!(mesh.starts_with("4OFF\n4096 7938 0\n"));
    let meta = std::fs::read_to_string(out.join("mesh.meta")).unwrap();
    assert!(meta.contains("seam_check=pass"));
    assert_eq!(meta.lines().filter(|l| l.starts_with("seam=")).count(), 128);
    assert!(std::fs::read_to_string(out.join("mesh.off"))
        .unwrap()
        .starts_with("OFF\n"));
}

#[test]
fn embed_seifert_exports_fibres() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "embed",
        "2",
        "-",
        "seifert",
        "64",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "identification.space = L(8,3)"));
    let curve = std::fs::read_to_string(dir.path().join("fiber_generic.txt")).unwrap();
    assert!(curve.lines().all(|l| l.split(' ').count() == 3));
}

#[test]
fn a_failed_check_exits_one() {
    // a seam tolerance of zero cannot be met
    let o = run(&["embed", "1", "+", "lens_model", "8", "--tolerance", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL seams"));
}

#[test]
fn verify_minimal_sweep() {
    let o = run(&["verify", "1", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(has_line(&o, "status = pass"));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("runtime: "));
}

#[test]
fn verify_full_sweep() {
    let o = run(&["verify", "20", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn injected_fault_is_caught() {
    let o = run(&["verify", "1", "4", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL geometry: first counterexample: n=1 +"));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["classify", "12", "7"][..],
        &["filling", "3", "4", "--format", "structured"],
        &["embed", "3", "-", "lens_model", "16"],
        &["verify", "2", "12", "--format", "structured"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn structured_output_parses() {
    let o = run(&["classify", "8", "5", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "classify 8 5");
    assert_eq!(v["results"][1]["key"], "klein_bottle");
    assert_eq!(v["results"][1]["value"], "yes");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}
