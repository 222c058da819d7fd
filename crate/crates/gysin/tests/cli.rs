use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn gysin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gysin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn sphere_table() {
    let o = gysin(&[
        "compute",
        "--preset",
        "unit-cotangent-sphere",
        "--k",
        "2",
        "--window",
        "-3..3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(
        rows,
        [
            " -3  Z",
            " -2  Z⊕Z_2",
            " -1  Z",
            "  0  Z⊕Z_2",
            "  1  Z",
            "  2  Z⊕Z_2",
            "  3  Z"
        ]
    );
}

#[test]
fn empty_basis_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("empty.json");
    fs::write(
        &path,
        r#"{"schema": 1, "ring": "Z", "grading": {"deg_T": 4}, "dim_sigma": 2, "generators": [], "delta": []}"#,
    )
    .unwrap();
    let o = gysin(&["compute", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("SH = 0 on the window"));
    assert!(out.lines().skip(2).take(4).all(|l| l.ends_with("  0")), "{out}");
}

#[test]
fn flag_vanishing() {
    let o = gysin(&["compute", "--preset", "flag-f3", "--ring", "Q", "--report", "vanishing"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vanishing: SH = 0"));
}

#[test]
fn parse_errors_exit_one_with_line() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        "{\n  \"schema\": 1,\n  \"ring\": \"Z\",\n  \"grading\": {\"deg_T\": 4},\n  \"dim_sigma\": 2,\n  \"generators\": [{\"label\": \"x\", \"degree\": 2}],\n  \"delta\": [\n    {\"from\": \"x\", \"to\": \"y\", \"coeff\": 1}\n  ]\n}\n",
    )
    .unwrap();
    let o = gysin(&["compute", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 8"), "{}", stderr(&o));

    let o = gysin(&["compute", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = gysin(&["compute", "--preset", "no-such-preset"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn les_refuses_a_boundary() {
    let o = gysin(&[
        "compute",
        "--preset",
        "classical-sphere-bundle-morse",
        "--euler",
        "-2",
        "--mode",
        "les",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = gysin(&["compute", "--preset", "classical-sphere-bundle-morse", "--euler", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mode cone"));
}

#[test]
fn verify_suites() {
    let o = gysin(&["verify", "--suite", "spheres"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));

    let o = gysin(&["verify", "--suite", "hypersurfaces-generic"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("PASS (notes)").count(), 4, "{out}");
    assert!(out.contains("\"open_question\": true"));

    let o = gysin(&["verify", "--suite", "snf"]);
    assert_eq!(o.status.code(), Some(0));

    assert_eq!(gysin(&["verify", "--suite", "bogus"]).status.code(), Some(1));
}

#[test]
fn snf_command() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.json");
    fs::write(&m, "[[2,-2],[-2,2]]").unwrap();
    let o = gysin(&["snf", "--matrix", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("diag(2,0)\nrank: 1\ninvariant factors: 2\n"));

    fs::write(&m, "[[1,0,0],[0,1,0],[0,0,1]]").unwrap();
    let o = gysin(&["snf", "--matrix", m.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("diag(1,1,1)\nrank: 3\ninvariant factors: 1, 1, 1\n"));

    fs::write(&m, "[[1,2],[3]]").unwrap();
    assert_eq!(gysin(&["snf", "--matrix", m.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn presets_listing() {
    let o = gysin(&["presets"]);
    let out = stdout(&o);
    assert!(out.contains("hypersurface-complement"));
    assert!(out.contains("1 <= d <= n+1"));
}

#[test]
fn deterministic_output() {
    let args = [
        "compute",
        "--preset",
        "hypersurface-complement",
        "--n",
        "3",
        "--d",
        "2",
        "--format",
        "json",
        "--report",
        "vanishing,divisibility,invertibility,euler",
    ];
    let a = gysin(&args);
    let b = gysin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_then_compute() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("q.json");
    let o = gysin(&[
        "export",
        "--preset",
        "hypersurface-complement",
        "--n",
        "3",
        "--d",
        "2",
        "--window",
        "-6..5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(&path, &o.stdout).unwrap();
    let from_file = gysin(&["compute", "--input", path.to_str().unwrap()]);
    let from_preset = gysin(&[
        "compute",
        "--preset",
        "hypersurface-complement",
        "--n",
        "3",
        "--d",
        "2",
        "--window",
        "-6..5",
    ]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    let body = |o: &Output| stdout(o).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&from_file), body(&from_preset));
}
