use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const M1: &str = r#"{"ambient_rank":2,"generators":[[2,0],[0,1]]}"#;
const M2: &str = r#"{"ambient_rank":2,"generators":[[1,1],[1,-1]]}"#;
const M3: &str = "1 1 1\n1 -1 0\n";
const EMPTY: &str = r#"{"ambient_rank":0,"generators":[]}"#;
const TORSION: &str = r#"{"ambient_rank":1,"relations":[[2]],"generators":[[1]]}"#;

fn write_input(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ztorsion")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with_input(content: &str, args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let file = write_input(dir.path(), "in.txt", content);
    let mut full: Vec<&str> = args.to_vec();
    full.push(&file);
    run(&full)
}

#[test]
fn info_reports() {
    let o = with_input(M1, &["info"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "d(∅)=2 m(∅)=1 r=2 essential=true\n");
    let o = with_input(M3, &["info", "--all"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2 + 8);
    let row = text.lines().find(|l| l.starts_with("{1,2} ")).unwrap();
    assert_eq!(row.split_whitespace().collect::<Vec<_>>(), vec!["{1,2}", "0", "2", "2", "true"]);
    let o = with_input(EMPTY, &["info"]);
    assert_eq!(stdout(&o), "d(∅)=0 m(∅)=1 r=0 essential=true\n");
}

#[test]
fn tutte_outputs() {
    assert_eq!(stdout(&with_input(M1, &["tutte"])), "x^2 + x\n");
    assert_eq!(stdout(&with_input(M2, &["tutte"])), "x^2 + 1\n");
    assert_eq!(stdout(&with_input(M3, &["tutte"])), "x^2 + x + y + 1\n");
    assert_eq!(stdout(&with_input(M3, &["tutte", "--dual"])), "y^2 + y + x + 1\n");
    assert_eq!(stdout(&with_input(EMPTY, &["tutte"])), "1\n");
    // torsion in M(∅): printed without the explicit cross-check
    let o = with_input(TORSION, &["tutte", "--dual"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn hilbert_outputs() {
    assert_eq!(stdout(&with_input(M1, &["hilbert"])), "(1 + t) / (1 - t)^2\n");
    assert_eq!(stdout(&with_input(M2, &["hilbert"])), "(1 + t^2) / (1 - t)^2\n");
    assert_eq!(stdout(&with_input(M3, &["hilbert"])), "(1 + t + 2*t^2) / (1 - t)^2\n");
    assert_eq!(stdout(&with_input(M3, &["hilbert", "--dual"])), "(1 + 3*t) / (1 - t)^1\n");
    assert_eq!(stdout(&with_input(EMPTY, &["hilbert"])), "1\n");
    let o = with_input(TORSION, &["hilbert", "--dual"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn poset_formats() {
    let o = with_input(M3, &["poset"]);
    let text = stdout(&o);
    assert!(text.contains("\"elements\""));
    assert!(text.contains("\"f_vector_per_component\""));
    let dot = stdout(&with_input(M3, &["poset", "--format", "dot"]));
    assert_eq!(dot.matches(" -> ").count(), 11);
    assert_eq!(dot.matches("[label=").count(), 8);
    let dot = stdout(&with_input(M2, &["poset", "--format", "dot"]));
    assert_eq!(dot.matches(" -> ").count(), 6);
}

#[test]
fn verify_exit_codes() {
    for input in [M1, M2, M3, EMPTY, TORSION] {
        let o = with_input(input, &["verify"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));
    }
    let o = with_input(M2, &["verify", "--corrupt-drop-cover"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL simplicial"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(with_input("{not json", &["tutte"]).status.code(), Some(2));
    assert_eq!(with_input("1 2\n3\n", &["info"]).status.code(), Some(2));
    assert_eq!(with_input(r#"{"ambient_rank":2,"generators":[[1]]}"#, &["poset"]).status.code(), Some(2));
    assert_eq!(run(&["tutte", "/definitely/not/here"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_flag_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "m3.json", M3);
    let out = dir.path().join("out.txt");
    let o = run(&["hilbert", &input, "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "(1 + t + 2*t^2) / (1 - t)^2\n");

    let mut child = Command::new(env!("CARGO_BIN_EXE_ztorsion"))
        .args(["tutte", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(M1.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "x^2 + x\n");
}

#[test]
fn output_is_deterministic() {
    let a = with_input(M3, &["poset"]);
    let b = with_input(M3, &["poset"]);
    assert_eq!(a.stdout, b.stdout);
}
