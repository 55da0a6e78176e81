use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn holant(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holant")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

const EQ2: &str = "sig eq2 arity 2\n00 : 1\n11 : 1\n";
const CYCLE: &str = "use eq2 eq2.sig\nvertex a = eq2\nvertex b = eq2\nedge a.0 b.0\nedge a.1 b.1\n";

#[test]
fn generated_signature_is_classified() {
    let tmp = TempDir::new().unwrap();
    let o = holant(&["gen", "f7a_pm", "h.sig"], tmp.path());
    assert!(o.status.success());
    let o = holant(&["classify-fn", "h.sig"], tmp.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("VERDICT TractableL"), "{out}");
    assert!(out.contains("rank 3 bundles (+-) (+-) (+-) (+-) (+-) (+-) (+-)"), "{out}");
}

#[test]
fn symmetric_shorthand() {
    let tmp = TempDir::new().unwrap();
    let o = holant(&["classify-fn", "[1,0,0,1]"], tmp.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("VERDICT TractableP"));
    assert!(out.contains("Holant*      HP[[1, 0], [0, 1]]"), "{out}");
}

#[test]
fn classify_set_modes() {
    let tmp = TempDir::new().unwrap();
    assert!(holant(&["gen", "f15", "f15.sig"], tmp.path()).status.success());
    assert!(holant(&["gen", "f7a_pm", "h.sig"], tmp.path()).status.success());
    let o = holant(&["classify-set", "f15.sig", "h.sig", "--mode", "csp2c"], tmp.path());
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("VERDICT SharpPHard\n"));
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = holant(&["classify-set", "h.sig", "[1,a]", "--mode", "holantc"], tmp.path());
    assert_eq!(o.status.code(), Some(3));

    assert!(holant(&["gen", "f31", "f31.sig"], tmp.path()).status.success());
    let o = holant(&["classify-set", "h.sig", "f31.sig", "--mode", "holantc"], tmp.path());
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("VERDICT TractableL\n"));
}

#[test]
fn high_arity_signature_is_classified() {
    let tmp = TempDir::new().unwrap();
    assert!(holant(&["gen", "f63", "f63.sig"], tmp.path()).status.success());
    let o = holant(&["classify-fn", "f63.sig"], tmp.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("signature f63 arity 63 support 64"), "{out}");
    assert!(out.contains("Holant*      none"), "{out}");
}

#[test]
fn solve_and_oracle() {
    let tmp = TempDir::new().unwrap();
    write(tmp.path(), "eq2.sig", EQ2);
    write(tmp.path(), "cycle.grid", CYCLE);
    let o = holant(&["solve", "cycle.grid"], tmp.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2  (2.000000+0.000000i)\nmethod product\n");
    let o = holant(&["solve", "cycle.grid", "--quiet"], tmp.path());
    assert_eq!(stdout(&o), "2\n");
    let o = holant(&["solve", "cycle.grid", "--force-brute"], tmp.path());
    assert!(stdout(&o).ends_with("method brute\n"));
    let o = holant(&["oracle", "cycle.grid", "--quiet"], tmp.path());
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn refuses_large_instances() {
    let tmp = TempDir::new().unwrap();
    write(tmp.path(), "w.sig", "sig w arity 2\n00 : 1\n01 : 2\n10 : 2\n11 : 3\n");
    let cycle = |n: usize| {
        let mut grid = String::from("use w w.sig\n");
        for k in 0..n {
            grid.push_str(&format!("vertex v{k} = w\n"));
        }
        for k in 0..n {
            grid.push_str(&format!("edge v{k}.1 v{}.0\n", (k + 1) % n));
        }
        grid
    };
    write(tmp.path(), "big.grid", &cycle(30));
    assert_eq!(holant(&["solve", "big.grid"], tmp.path()).status.code(), Some(2));
    write(tmp.path(), "small.grid", &cycle(10));
    assert!(holant(&["solve", "small.grid", "--quiet"], tmp.path()).status.success());
    let o = holant(&["solve", "small.grid", "--max-brute-edges", "8"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compose_writes_signature() {
    let tmp = TempDir::new().unwrap();
    write(
        tmp.path(),
        "loop.grid",
        "use e4 gen:eq4\nvertex a = e4\nedge a.1 a.2\ndangle a.0\ndangle a.3\n",
    );
    let o = holant(&["compose", "loop.grid", "out.sig"], tmp.path());
    assert!(o.status.success());
    let text = fs::read_to_string(tmp.path().join("out.sig")).unwrap();
    assert_eq!(text, "sig loop arity 2\n00 : 1\n11 : 1\n");
}

#[test]
fn figure1_check() {
    let tmp = TempDir::new().unwrap();
    let o = holant(&["check", "figure1"], tmp.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("proportional to f7a_pp: yes"));
    assert_eq!(holant(&["check", "nothing"], tmp.path()).status.code(), Some(1));
}

#[test]
fn input_errors_exit_one() {
    let tmp = TempDir::new().unwrap();
    write(tmp.path(), "dup.sig", "sig d arity 1\n0 : 1\n0 : 2\n");
    let o = holant(&["classify-fn", "dup.sig"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    write(tmp.path(), "bad.grid", "vertex a = missing\n");
    assert_eq!(holant(&["solve", "bad.grid"], tmp.path()).status.code(), Some(1));
    assert_eq!(holant(&["gen", "nope", "-"], tmp.path()).status.code(), Some(1));
    assert_eq!(holant(&["frobnicate"], tmp.path()).status.code(), Some(1));
}

#[test]
fn gen_to_stdout_is_stable() {
    let tmp = TempDir::new().unwrap();
    let a = stdout(&holant(&["gen", "f7a_pp", "-"], tmp.path()));
    let b = stdout(&holant(&["gen", "f7a_pp", "-"], tmp.path()));
    assert_eq!(a, b);
    assert!(a.starts_with("sig f7a_pp arity 14\n"));
}
