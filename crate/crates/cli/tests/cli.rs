use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_entrosep"));
    c.env_remove("ENTROSEP_MAX_DIM");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, body: &[u8]) -> String {
    let p = scratch(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn werner(c: f64) -> String {
    let out = run(&["construct", "werner", "--c", &c.to_string()]);
    assert!(out.status.success());
    write(&format!("werner-{c}.json"), &out.stdout)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn entangled_werner_exits_three() {
    let path = werner(0.9);
    let out = run(&["check", &path, "--criterion", "mub-tsallis,mub-renyi", "--k", "3"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("criterion_id,alpha,beta,k,kappa,a,d,theta,observed,bound,margin,violated,side"));
    assert_eq!(text.matches(",true,").count(), 2);
}

#[test]
fn maximally_mixed_state_exits_zero() {
    let path = werner(0.0);
    let out = run(&["check", &path, "--criterion", "all", "--alpha", "0.5,1,2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!stdout(&out).contains(",true,"));
}

#[test]
fn rotated_bases_on_werner() {
    let path = werner(0.72);
    let mu = run(&["check", &path, "--theta", "pi/4", "--criterion", "mu-renyi", "--alpha", "inf"]);
    assert_eq!(mu.status.code(), Some(3));
    let maj = run(&["check", &path, "--theta", "pi/4", "--criterion", "maj-qubit-a", "--alpha", "2"]);
    assert_eq!(maj.status.code(), Some(0));
}

#[test]
fn non_hermitian_input_exits_one() {
    let z = "[0,0]";
    let row = |first: &str| format!("[{first},{z},{z},{z}]");
    let body = format!(r#"{{"dims":[2,2],"matrix":[{},{},{},{}]}}"#, row("[0.5,0]"), row("[0.5,0]"), row(z), row("[0.5,0]"));
    let path = write("non-hermitian.json", body.as_bytes());
    let out = run(&["check", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Hermitian"));
}

#[test]
fn malformed_json_reports_position() {
    let path = write("broken.json", b"{\"dims\": [2, 2],\n \"matrix\": [[[1, 0]]\n");
    let out = run(&["check", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["check", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--family", "no-such-family"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "--case", "no-such-case"]).status.code(), Some(2));
    let path = werner(0.5);
    let out = run(&["check", &path, "--criterion", "maj-renyi", "--alpha", "2", "--theta", "pi/4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let path = werner(0.8);
    let args = ["check", path.as_str(), "--criterion", "all", "--alpha", "grid"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let s1 = run(&["--format", "json", "validate", "--random-separable", "30", "--seed", "7"]);
    let s2 = run(&["--format", "json", "validate", "--random-separable", "30", "--seed", "7"]);
    assert_eq!(s1.status.code(), Some(0));
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn scan_finds_thresholds_and_none() {
    let out = run(&["scan", "--criterion", "mub-tsallis", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0.57735027"), "{}", stdout(&out));
    let out = run(&["scan", "--criterion", "correlation", "--k", "3"]);
    assert!(stdout(&out).contains("NONE"));
    let out = run(&["scan", "--family", "qutrit-psi", "--criterion", "mub-tsallis", "--k", "3", "--pairing", "cross"]);
    assert!(stdout(&out).contains("0.57735027"), "{}", stdout(&out));
}

#[test]
fn scan_bracket_and_curve() {
    let curve = scratch("curve.csv");
    let out = run(&[
        "--format",
        "json",
        "scan",
        "--theta",
        "pi/4",
        "--criterion",
        "mu-renyi",
        "--alpha",
        "inf",
        "--bracket",
        "0.6,0.9",
        "--emit-curve",
        curve.to_str().unwrap(),
        "--curve-points",
        "11",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = v[0]["c_star"].as_f64().unwrap();
    assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-8);
    assert_eq!(std::fs::read_to_string(curve).unwrap().lines().count(), 12);
    let bad = run(&["scan", "--theta", "pi/4", "--criterion", "mu-renyi", "--alpha", "inf", "--bracket", "0.8,0.9"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn reproduce_single_case() {
    let out = run(&["reproduce", "--case", "qutrit-mub3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn construct_and_validate_round_trip() {
    for (kind, dim) in [("mubs", "3"), ("sic", "3"), ("mum", "2"), ("gsic", "2"), ("setup", "3")] {
        let out = run(&["construct", kind, "--dim", dim, "--kappa-t", "0.6", "--gsic-t", "0.7"]);
        assert!(out.status.success(), "{kind}");
        let path = write(&format!("{kind}.json"), &out.stdout);
        let v = run(&["validate", &path]);
        assert_eq!(v.status.code(), Some(0), "{kind}: {}", stdout(&v));
    }
    let setup = write("setup3.json", &run(&["construct", "setup", "--dim", "3", "--k", "3", "--pairing", "cross"]).stdout);
    let state = write("qutrit.json", &run(&["construct", "qutrit", "--c", "0.7"]).stdout);
    let out = run(&["check", &state, "--setup", &setup]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validate_flags_bad_povm() {
    let body = r#"{"dim": 2, "vectors": [[[1,0],[0,0]], [[1,0],[0,0]]]}"#;
    let path = write("bad-povm.json", body.as_bytes());
    assert_eq!(run(&["validate", &path]).status.code(), Some(1));
}

#[test]
fn profile_outputs() {
    let out = run(&["--format", "json", "profile", "--theta", "pi/4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["eta"].as_f64().unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    let csv = stdout(&run(&["profile", "--theta", "pi/6"]));
    assert!(csv.starts_with("k,s_k,w_k,w_prime_k"));
}

#[test]
fn dimension_cap_from_environment() {
    let path = werner(0.5);
    let out = bin().env("ENTROSEP_MAX_DIM", "3").args(["check", &path]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = bin().env("ENTROSEP_MAX_DIM", "4").args(["check", &path]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
