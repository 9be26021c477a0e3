use std::path::Path;
use std::process::{Command, Output};

fn eic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eic"))
        .args(args)
        .env_remove("EIC_WORKERS")
        .output()
        .unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn generate(dir: &Path, name: &str) -> String {
    let g = path(dir, name);
    let o = eic(&["generate", "--kind", "rmat", "--scale", "7", "--edge-factor", "8", "--seed", "3", "--out", &g]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    g
}

#[test]
fn solve_with_verification() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(dir.path(), "g.bin");
    for algo in ["eic", "dijkstra", "bf", "delta"] {
        let o = eic(&["solve", "--graph", &g, "--source", "1", "--algo", algo, "--workers", "2", "--verify"]);
        assert_eq!(o.status.code(), Some(0), "{algo}: {}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        assert!(text.contains("verified  ok"));
        assert!(text.contains("n_frontier"));
    }
}

#[test]
fn text_graph_and_distance_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "t1.txt");
    std::fs::write(&g, "# T1\n0 1 1\n1 2 1\n2 3 1\n0 2 2.5\n").unwrap();
    let d = path(dir.path(), "dist.txt");
    let o = eic(&["solve", "--graph", &g, "--source", "0", "--dist-out", &d]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&d).unwrap(), "0 0\n1 1\n2 2\n3 3\n");
}

#[test]
fn workers_fall_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(dir.path(), "g.bin");
    let o = Command::new(env!("CARGO_BIN_EXE_eic"))
        .args(["solve", "--graph", &g, "--source", "0"])
        .env("EIC_WORKERS", "3")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("workers  3"));
}

#[test]
fn bench_writes_trials_and_average() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(dir.path(), "g.bin");
    let out = path(dir.path(), "results.csv");
    let o = eic(&["bench", "--graph", &g, "--trials", "5", "--seed", "9", "--algo", "eic", "--out", &out, "--verify"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 7);
    assert!(csv.lines().last().unwrap().contains(",AVG,"));
}

#[test]
fn compare_and_transforms() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(dir.path(), "g.bin");
    let p = path(dir.path(), "p4.txt");
    assert!(eic(&["transform", "--power", "4", "--in", &g, "--out", &p]).status.success());
    let c = path(dir.path(), "c.bin");
    assert!(eic(&["transform", "--pivot", "0.3", "--in", &g, "--out", &c]).status.success());
    let out = path(dir.path(), "cmp.csv");
    let o = eic(&["compare", "--graph", &p, "--algos", "eic,dijkstra,delta", "--trials", "3", "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let checksums: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(8).unwrap()).collect();
    assert_eq!(checksums.len(), 3);
    assert!(checksums.iter().all(|c| *c == checksums[0]));
}

#[test]
fn nlt_chain_ends_at_infinity() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(dir.path(), "g.bin");
    let o = eic(&["analyze-nlt", "--graph", &g, "--source", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("0 -> "));
    assert!(text.trim_end().ends_with("-> inf"));
}

#[test]
fn usage_and_io_errors_exit_with_one() {
    assert_eq!(eic(&["solve"]).status.code(), Some(1));
    assert_eq!(eic(&["frobnicate"]).status.code(), Some(1));
    let o = eic(&["solve", "--graph", "/nonexistent/g.bin", "--source", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let g = generate(dir.path(), "g.bin");
    assert_eq!(eic(&["solve", "--graph", &g, "--source", "100000"]).status.code(), Some(1));
    assert_eq!(eic(&["solve", "--graph", &g, "--source", "0", "--algo", "astar"]).status.code(), Some(1));
    assert_eq!(eic(&["--help"]).status.code(), Some(0));
}
