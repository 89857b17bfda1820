use std::process::Command;

use idcode::codes::{builtin_code, parse_codespec};

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn idcode(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_idcode"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        status: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn temp_path(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("idcode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exists_reports_missing_code() {
    let r = idcode(&["exists", "--r2", "1", "--R2", "4"]);
    assert_eq!(r.status, 1);
    assert!(r.stdout.starts_with("no code exists"));
    let r = idcode(&["exists", "--r2", "1", "--R2", "2"]);
    assert_eq!(r.status, 0);
}

#[test]
fn verify_builtin() {
    let r = idcode(&["verify", "--code", "fig10-sqrt5", "--r2", "5", "--R2", "8"]);
    assert_eq!((r.status, r.stdout.as_str()), (0, "OK density 2/9\n"));
    let r = idcode(&["verify", "--code", "fig10-sqrt5", "--r2", "5", "--R2", "9"]);
    assert_eq!(r.status, 1);
    assert!(r.stdout.starts_with("FAIL"));
}

#[test]
fn frame_bound() {
    let r = idcode(&["bound", "--frame", "F14", "--r2", "8", "--R2", "9"]);
    assert_eq!((r.status, r.stdout.as_str()), (0, "proved min 2, density ≥ 1/7\n"));
    let r = idcode(&["bound", "--frame", "F12", "--r2", "2", "--R2", "4", "--margin", "-1"]);
    assert_eq!(r.status, 2);
}

#[test]
fn certificate_file() {
    let path = temp_path("f12.cert");
    let p = path.to_str().unwrap();
    let r = idcode(&["bound", "--frame", "F12", "--r2", "2", "--R2", "4", "--out", p]);
    assert_eq!(r.status, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("certificate v1\nkind frame\nprovenance machine-proved\n"));
    assert!(text.contains("bound 1/4\n"));
    assert_eq!(text.matches("\npoint ").count(), 12);
}

#[test]
fn reference_report_labels_every_value() {
    let r = idcode(&["bound", "--r2", "2", "--R2", "4"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("pattern: density ≥ 1/4 (machine-proved"));
    assert!(r.stdout.contains("frame: density ≥ 1/4 = 3/12 (machine-proved)"));
    assert!(r.stdout.contains("density ≥ 16/57 (asserted"));
    let r = idcode(&["bound", "--r2", "100", "--R2", "100"]);
    assert!(r.stdout.contains("≈ 0.0276 (decimal, not exact)"));
    assert!(r.stdout.contains("grid code: density ≤ 7/16"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["exists", "--r2", "1"][..],
        &["exists", "--r2", "2.5", "--R2", "4"],
        &["exists", "--r2", "4", "--R2", "2"],
        &["exists", "--r2", "-1", "--R2", "2"],
        &["verify", "--code", "no-such-code"],
        &["frobnicate"],
        &["render", "--target", "ball", "--r2", "2", "--window", "1000x1000"],
        &["classify", "--frame", "F99", "--r2", "2", "--R2", "4"],
        &["classify", "--frame", "F12", "--r2", "2", "--R2", "4", "--claim", "most 4 F(0,0)"],
        &["construct", "diag"],
    ] {
        let r = idcode(args);
        assert_eq!(r.status, 2, "{args:?}: {}", r.stdout);
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn rational_radii_accepted() {
    let r = idcode(&["analyze", "--r2", "9/2", "--R2", "5"]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("r²=9/2 R²=5\ncode exists"));
}

#[test]
fn render_ball_and_pattern() {
    let r = idcode(&["render", "--target", "ball", "--r2", "5", "--window", "11x11"]);
    assert_eq!(r.status, 0);
    assert_eq!(r.stdout.matches('#').count(), 21);
    let r = idcode(&["render", "--target", "pattern", "--r2", "1", "--R2", "2", "--window", "5x1"]);
    assert_eq!(r.stdout, "o..o.\n");
}

#[test]
fn render_code_svg() {
    let r = idcode(&[
        "render", "--target", "code", "--code", "fig10-sqrt5", "--format", "svg", "--window", "6x6",
        "--mark", "0,0", "--r2", "5", "--R2", "8",
    ]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.starts_with("<svg") && !r.stdout.contains("script"));
    // two code vertices per 3×3 block
    assert_eq!(r.stdout.matches("fill=\"black\"").count(), 8);
    assert_eq!(r.stdout.matches("fill=\"none\"").count(), 2);
}

#[test]
fn construct_round_trip() {
    let path = temp_path("diag.codespec");
    let p = path.to_str().unwrap();
    let r = idcode(&[
        "construct", "diag", "--s", "4", "--t", "6", "--remove", "--r2", "5", "--R2", "9", "--check",
        "--out", p,
    ]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert!(r.stdout.contains("# density 1/3"));
    assert!(r.stdout.contains("# verified identifying"));
    let code = parse_codespec(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(code.density(), num_rational::Rational64::new(1, 3));
    let r = idcode(&["verify", "--code", p, "--r2", "5", "--R2", "9"]);
    assert_eq!((r.status, r.stdout.as_str()), (0, "OK density 1/3\n"));
    let r = idcode(&["verify", "--code", p]);
    assert_eq!(r.status, 2);
}

#[test]
fn construct_stdout_is_codespec() {
    let r = idcode(&["construct", "int-half", "--r", "4", "--check"]);
    assert_eq!(r.status, 0);
    let code = parse_codespec(&r.stdout).unwrap();
    assert_eq!(code.period_area(), 36);
    let r = idcode(&["construct", "family", "--family", "s6", "--k", "5"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("|S| = 6 (expected 6)"));
    assert!(r.stdout.contains("distinct residues: true"));
    let r = idcode(&["construct", "family", "--family", "s6", "--k", "3"]);
    assert_eq!(r.status, 2);
}

#[test]
fn failing_codespec_exits_1() {
    let path = temp_path("sparse.codespec");
    std::fs::write(&path, "codespec v1\nbasis 4 0 0 4\npoint 0 0\n").unwrap();
    let r = idcode(&["verify", "--code", path.to_str().unwrap(), "--r2", "1", "--R2", "2"]);
    assert_eq!(r.status, 1);
    assert!(r.stdout.starts_with("FAIL domination"));
}

#[test]
fn simulation_is_deterministic() {
    let args = ["simulate", "--code", "fig8-sqrt2", "--trials", "300", "--seed", "9"];
    let a = idcode(&args);
    let b = idcode(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, "trials 300 unique-correct 300 ambiguous 0 wrong 0\n");
    let (rp, _) = builtin_code("fig8-sqrt2").unwrap();
    assert_eq!(rp.to_string(), "r²=2 R²=4");
}

#[test]
fn table_tags_every_value() {
    let r = idcode(&["table"]);
    assert_eq!(r.status, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 25);
    assert_eq!(lines.iter().filter(|l| l.contains(" X ")).count(), 12);
    for l in &lines {
        assert!(
            l.contains("computed") || l.contains("literature") || l.contains("asserted"),
            "{l}"
        );
        assert!(!l.contains("NOT verified") && !l.contains("MISMATCH"), "{l}");
    }
    let row = lines.iter().find(|l| l.starts_with("r=√2  r+Δ=2 ")).unwrap();
    assert!(row.contains("lower 16/57 (asserted; 1/4 computed pattern |S|=4, 1/4 computed frame F12 3/12)"));
    let row = lines.iter().find(|l| l.starts_with("r=√5  r+Δ=3 ")).unwrap();
    assert!(row.contains("lower 1/4") && row.contains("upper 1/3"));
    assert_eq!(idcode(&["table"]).stdout, r.stdout);
}

#[test]
fn classify_and_forcing() {
    let claim = "some 4 F(1,0) F(-1,0) F(0,1) F(0,-1)";
    let r = idcode(&["classify", "--frame", "F12", "--r2", "2", "--R2", "4", "--claim", claim]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.starts_with("5 classes with 3 vertices in F12"));
    assert_eq!(r.stdout.matches(": proved").count(), 5);
    let r = idcode(&[
        "classify", "--frame", "F12", "--r2", "2", "--R2", "4", "--claim", claim, "--margin", "0",
    ]);
    assert_eq!(r.status, 3);
    let r = idcode(&[
        "classify", "--frame", "F20", "--r2", "5", "--R2", "8", "--corner=-3,2", "--claim",
        "every 1 {(0,2),(0,-3)} {(-3,-1),(2,-1)}",
    ]);
    assert_eq!(r.status, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("3 classes"));
}

#[test]
fn pattern_listing() {
    let r = idcode(&["pattern", "--r2", "1", "--R2", "2"]);
    assert_eq!(r.stdout, "size 2\npoint -2 0\npoint 1 0\n");
    let r = idcode(&["pattern", "--r2", "1", "--R2", "2", "--u", "0,0", "--v", "0,0"]);
    assert_eq!(r.status, 2);
    let r = idcode(&["pattern", "--r2", "1", "--R2", "4"]);
    assert_eq!((r.status, r.stdout.as_str()), (1, "size 0\n"));
}

#[test]
fn help_exits_zero() {
    let r = idcode(&["--help"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("render"));
}
