use std::io::Write;
use std::process::{Command, Stdio};

use walkup::constructions::m4_15_fixture;
use walkup::SimplicialComplex;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn walkup(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_walkup"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(r: &Run) -> serde_json::Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

const TORUS: &str = "\
# seven-vertex torus
0 1 3\n1 2 4\n2 3 5\n3 4 6\n0 4 5\n1 5 6\n0 2 6
0 2 3\n1 3 4\n2 4 5\n3 5 6\n0 4 6\n0 1 5\n1 2 6
";

fn m4_15() -> String {
    walkup(&["generate", "m4-15"], "").stdout
}

#[test]
fn generated_text_is_the_canonical_fixture() {
    assert_eq!(m4_15(), m4_15_fixture().to_text());
    let json_out = walkup(&["generate", "m4-15", "--format", "json"], "").stdout;
    assert_eq!(SimplicialComplex::parse(&json_out).unwrap(), m4_15_fixture());
}

#[test]
fn info_prints_face_vector() {
    let r = walkup(&["info"], &m4_15());
    assert_eq!(r.code, 0);
    assert!(r.stdout.lines().any(|l| l == "f-vector: 15 105 230 240 96"), "{}", r.stdout);
    let p = json(&walkup(&["--porcelain", "info"], &m4_15()));
    assert_eq!(p["command"], "info");
    assert_eq!(p["result"]["f_vector"], serde_json::json!([15, 105, 230, 240, 96]));
    assert_eq!(p["result"]["pseudomanifold"], "closed");
}

#[test]
fn file_argument_and_stdin_agree() {
    let dir = std::env::temp_dir().join(format!("walkup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("torus.txt");
    std::fs::write(&path, TORUS).unwrap();
    let a = walkup(&["homology", path.to_str().unwrap()], "");
    let b = walkup(&["homology", "-"], TORUS);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("betti (Z2): 1 2 1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn predicates_follow_exit_contract() {
    assert_eq!(walkup(&["check", "stacked"], TORUS).code, 1);
    let sphere = walkup(&["generate", "stacked", "--dim", "3", "--n", "12", "--seed", "4"], "").stdout;
    assert_eq!(walkup(&["check", "stacked"], &sphere).code, 0);
    let ball = walkup(&["generate", "ball", "--dim", "3"], "").stdout;
    let r = walkup(&["check", "stacked"], &ball);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("stacked ball: yes"));
    assert_eq!(walkup(&["check", "walkup"], &m4_15()).code, 0);
    assert_eq!(walkup(&["check", "walkup"], TORUS).code, 0);
    // suspension of the octahedron: every vertex link is an octahedron, not stacked
    let octahedron = ["1 3 5", "1 3 6", "1 4 5", "1 4 6", "2 3 5", "2 3 6", "2 4 5", "2 4 6"];
    let suspension: String = octahedron.iter().flat_map(|f| [format!("{f} n\n"), format!("{f} s\n")]).collect();
    let r = walkup(&["check", "walkup"], &suspension);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("links not stacked spheres: 1 2 3 4 5 6 n s"), "{}", r.stdout);
}

#[test]
fn tightness_modes() {
    assert_eq!(walkup(&["check", "tight", "--exhaustive"], &m4_15()).code, 0);
    let sampled = json(&walkup(&["--porcelain", "check", "tight", "--sample", "300", "--seed", "9"], &m4_15()));
    assert_eq!(sampled["result"]["verdict"], "tight-on-sample");
    assert_eq!(sampled["result"]["checked"], 300);
    let sparse = walkup(&["generate", "stacked", "--dim", "4", "--n", "8", "--seed", "1"], "").stdout;
    let r = walkup(&["check", "tight"], &sparse);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("first violation: degree 0"));
    let r = walkup(&["check", "tight", "--ceiling", "10"], &m4_15());
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("ceiling"));
}

#[test]
fn bounds_report() {
    let r = walkup(&["check", "bounds4"], &m4_15());
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("part (a) tight: yes") && r.stdout.contains("part (b) tight: yes"));
    assert_eq!(walkup(&["check", "bounds4"], TORUS).code, 2);
}

#[test]
fn face_vector_formulas() {
    let r = walkup(&["fvector", "walkup", "--dim", "4", "--n", "15", "--chi", "-4"], "");
    assert_eq!(r.stdout.trim(), "f-vector: 15 105 230 240 96");
    let r = walkup(&["fvector", "stacked", "--dim", "4", "--n", "30"], "");
    assert_eq!(r.stdout.trim(), "f-vector: 30 135 260 255 102");
    let r = walkup(&["fvector", "from-f1", "--dim", "4", "--n", "15", "--f1", "105"], "");
    assert_eq!(r.stdout.trim(), "f-vector: 15 105 230 240 96");
    assert_eq!(walkup(&["fvector", "walkup", "--dim", "3", "--n", "15", "--chi", "0"], "").code, 2);
}

#[test]
fn decompose_and_replay() {
    let dir = std::env::temp_dir().join(format!("walkup-ledger-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ledger = dir.join("m4_15.json");
    let r = walkup(&["decompose", "--ledger", ledger.to_str().unwrap()], &m4_15());
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("handles: 3"));
    let back = walkup(&["replay", ledger.to_str().unwrap()], "");
    assert_eq!(back.code, 0);
    assert_eq!(back.stdout, m4_15());
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(walkup(&["decompose"], TORUS).code, 2);
}

#[test]
fn automorphisms_report() {
    let r = walkup(&["automorphisms"], &m4_15());
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("order: 3\n"));
    assert!(r.stdout.contains("(a1 b1 c1)(a2 b2 c2)(a3 b3 c3)(a4 b4 c4)(a5 b5 c5)"));
}

#[test]
fn malformed_input_reports_position() {
    let r = walkup(&["info"], "a b c\na b\n");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("<stdin>:2:1"), "{}", r.stderr);
    let r = walkup(&["info"], "a b c\nx y#z w\n");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("<stdin>:2:"), "{}", r.stderr);
    let r = walkup(&["replay"], "{\"base\": [[\"a\"]], ");
    assert_eq!(r.code, 2);
    assert_eq!(walkup(&["info", "/nonexistent/file"], "").code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(walkup(&["frobnicate"], "").code, 2);
    assert_eq!(walkup(&["generate", "sphere"], "").code, 2);
    assert_eq!(walkup(&["check", "tight", "--exhaustive", "--sample", "3"], "").code, 2);
    assert_eq!(walkup(&["--help"], "").code, 0);
}

#[test]
fn generators_are_deterministic() {
    let args = ["generate", "stacked", "--dim", "4", "--n", "20", "--seed", "42"];
    assert_eq!(walkup(&args, "").stdout, walkup(&args, "").stdout);
    let other = walkup(&["generate", "stacked", "--dim", "4", "--n", "20", "--seed", "43"], "").stdout;
    assert_ne!(walkup(&args, "").stdout, other);
}
