use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn districts(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_districts"))
        .current_dir(dir)
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

/// 4x4 jittered grid as DIMACS `.gr`/`.co`, ids 1..=16.
fn dimacs_fixture(dir: &Path) -> (PathBuf, PathBuf) {
    let mut gr = String::from("c 4x4 grid\np sp 16 48\n");
    let mut co = String::from("p aux sp co 16\n");
    for r in 0..4u64 {
        for c in 0..4u64 {
            let id = r * 4 + c + 1;
            co.push_str(&format!("v {id} {} {}\n", c * 1_000_000, r * 1_000_000));
            if c < 3 {
                let w = 10 + (id * 7) % 5;
                gr.push_str(&format!("a {id} {} {w}\na {} {id} {w}\n", id + 1, id + 1));
            }
            if r < 3 {
                let w = 10 + (id * 3) % 4;
                gr.push_str(&format!("a {id} {} {w}\na {} {id} {w}\n", id + 4, id + 4));
            }
        }
    }
    let (g, c) = (dir.join("g.gr"), dir.join("g.co"));
    fs::write(&g, gr).unwrap();
    fs::write(&c, co).unwrap();
    (g, c)
}

fn body(tsv: &str) -> Vec<&str> {
    tsv.lines().skip(1).collect()
}

#[test]
fn solve_random_centers_on_dimacs() {
    let dir = TempDir::new().unwrap();
    dimacs_fixture(dir.path());
    let o = districts(dir.path(), &["solve", "--algo", "circle", "--random-centers", "6", "--seed", "1", "--quotas", "equal", "g.gr"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let rows = body(&out);
    assert_eq!(rows.len(), 16);
    let mut centers: Vec<&str> = rows.iter().map(|r| r.split('\t').nth(1).unwrap()).collect();
    centers.sort_unstable();
    centers.dedup();
    assert_eq!(centers.len(), 6);
    let err = stderr(&o);
    for key in ["n=16", "m=24", "k=6", "algorithm=circle", "time_ms="] {
        assert!(err.contains(key), "{err}");
    }
}

#[test]
fn all_algorithms_write_identical_tsv() {
    let dir = TempDir::new().unwrap();
    dimacs_fixture(dir.path());
    let outputs: Vec<String> = ["gs-centers", "gs-nodes", "circle", "nnc", "mutual"]
        .iter()
        .map(|algo| {
            let o = districts(dir.path(), &["solve", "--algo", algo, "--random-centers", "5", "--seed", "9", "g.gr"]);
            assert_eq!(o.status.code(), Some(0));
            stdout(&o)
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let o = districts(dir.path(), &["solve", "--algo", "nnc", "--oracle", "truncated", "--random-centers", "5", "--seed", "9", "g.gr"]);
    assert_eq!(stdout(&o), outputs[0]);
}

#[test]
fn quota_deficit_exits_2() {
    let dir = TempDir::new().unwrap();
    dimacs_fixture(dir.path());
    fs::write(dir.path().join("c.txt"), "1\n16\n").unwrap();
    fs::write(dir.path().join("q.txt"), "8\n7\n").unwrap();
    let o = districts(dir.path(), &["solve", "--centers", "c.txt", "--quotas", "q.txt", "g.gr"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1 short"), "{}", stderr(&o));
}

#[test]
fn parse_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.gr"), "p sp 3 1\na 1 9 2\n").unwrap();
    let o = districts(dir.path(), &["solve", "--random-centers", "1", "bad.gr"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = districts(dir.path(), &["solve", "--random-centers", "1", "missing.gr"]);
    assert_eq!(o.status.code(), Some(1));
    let o = districts(dir.path(), &["solve", "--algo", "bogus", "--random-centers", "1", "bad.gr"]);
    assert_eq!(o.status.code(), Some(1));
    // exactly one center source
    let o = districts(dir.path(), &["solve", "bad.gr"]);
    assert_eq!(o.status.code(), Some(1));
    let o = districts(dir.path(), &["solve", "--centers", "c", "--random-centers", "1", "bad.gr"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn disconnected_needs_largest_component() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("g.tsv"), "1\t2\t1\n2\t3\t1\n7\t8\t1\n").unwrap();
    let o = districts(dir.path(), &["solve", "--random-centers", "1", "g.tsv"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = districts(dir.path(), &["solve", "--random-centers", "1", "--largest-component", "g.tsv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("kept 3 of 5 nodes (-2), 2 of 3 edges (-1)"), "{}", stderr(&o));
    assert_eq!(body(&stdout(&o)).len(), 3);
}

#[test]
fn memory_refusal_exits_3() {
    let dir = TempDir::new().unwrap();
    dimacs_fixture(dir.path());
    let o = districts(dir.path(), &["solve", "--algo", "gs-centers", "--random-centers", "4", "--memory-cap-pairs", "63", "g.gr"]);
    assert_eq!(o.status.code(), Some(3));
    let o = districts(dir.path(), &["solve", "--algo", "gs-centers", "--random-centers", "4", "--memory-cap-pairs", "64", "g.gr"]);
    assert_eq!(o.status.code(), Some(0));
    let o = districts(dir.path(), &["solve", "--algo", "nnc", "--random-centers", "4", "--memory-cap-bytes", "0", "g.gr"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_accepts_solver_output_and_rejects_corruption() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("p4.tsv"), "0\t1\t1\n1\t2\t1\n2\t3\t1\n").unwrap();
    fs::write(dir.path().join("c.txt"), "0\n1\n").unwrap();
    let o = districts(dir.path(), &["solve", "--centers", "c.txt", "p4.tsv", "-o", "a.tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let o = districts(dir.path(), &["verify", "--centers", "c.txt", "--assignment", "a.tsv", "p4.tsv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "STABLE\n");

    // node 1 moved to center 0 and node 3 to center 1
    let bad = "node_original_id\tcenter_original_id\tdistance\n0\t0\t0\n1\t0\t1\n2\t1\t1\n3\t1\t2\n";
    fs::write(dir.path().join("bad.tsv"), bad).unwrap();
    let o = districts(dir.path(), &["verify", "--centers", "c.txt", "--assignment", "bad.tsv", "p4.tsv"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("node 1 center 1"), "{}", stderr(&o));

    let over = "node_original_id\tcenter_original_id\tdistance\n0\t0\t0\n1\t0\t1\n2\t0\t2\n3\t1\t2\n";
    fs::write(dir.path().join("over.tsv"), over).unwrap();
    let o = districts(dir.path(), &["verify", "--centers", "c.txt", "--assignment", "over.tsv", "p4.tsv"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("quota"), "{}", stderr(&o));

    let stray = "node_original_id\tcenter_original_id\tdistance\n0\t0\t0\n1\t0\t1\n2\t1\t1\n9\t1\t2\n";
    fs::write(dir.path().join("stray.tsv"), stray).unwrap();
    let o = districts(dir.path(), &["verify", "--centers", "c.txt", "--assignment", "stray.tsv", "p4.tsv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn generate_grid() {
    let dir = TempDir::new().unwrap();
    let o = districts(dir.path(), &["generate", "--grid", "4x4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let edges = out.lines().filter(|l| !l.starts_with('#')).count();
    let nodes = out.lines().filter(|l| l.starts_with("#node")).count();
    assert_eq!((nodes, edges), (16, 24));
}

#[test]
fn bench_counts_records() {
    let dir = TempDir::new().unwrap();
    dimacs_fixture(dir.path());
    let o = districts(dir.path(), &["bench", "--k", "2,4,8", "--runs", "3", "--algos", "gs-centers,circle", "g.gr"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 18);
    assert!(out.lines().skip(1).all(|l| l.starts_with("g,16,24,")));

    let o = districts(dir.path(), &["bench", "--grid", "10x10", "--k", "5", "--runs", "2", "--memory-cap-pairs", "100", "--algos", "gs-nodes,nnc"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches(",refused-memory,").count(), 2);
    assert_eq!(out.matches(",ok,").count(), 2);
}

#[test]
fn render_svg_and_geojson() {
    let dir = TempDir::new().unwrap();
    dimacs_fixture(dir.path());
    let o = districts(dir.path(), &["solve", "--random-centers", "3", "g.gr", "g.co", "-o", "a.tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let o = districts(dir.path(), &["render", "--assignment", "a.tsv", "g.gr", "g.co", "-o", "map.svg", "--geojson", "m.json", "--microdegrees"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = fs::read_to_string(dir.path().join("map.svg")).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<circle").count(), 3);
    let json = fs::read_to_string(dir.path().join("m.json")).unwrap();
    assert_eq!(json.matches(r#""type":"Feature""#).count(), 19);
    assert!(json.contains("[3.0,3.0]"), "{json}");

    // without coordinates there is nothing to draw
    let o = districts(dir.path(), &["render", "--assignment", "a.tsv", "g.gr", "-o", "x.svg"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn trace_requires_circle() {
    let dir = TempDir::new().unwrap();
    dimacs_fixture(dir.path());
    let o = districts(dir.path(), &["solve", "--algo", "nnc", "--random-centers", "2", "--trace", "t.txt", "g.gr"]);
    assert_eq!(o.status.code(), Some(1));
    let o = districts(dir.path(), &["solve", "--algo", "circle", "--random-centers", "2", "--trace", "t.txt", "g.gr", "--summary", "s.json"]);
    assert_eq!(o.status.code(), Some(0));
    let trace = fs::read_to_string(dir.path().join("t.txt")).unwrap();
    assert_eq!(trace.lines().filter(|l| l.starts_with("match\t")).count(), 16);
    let summary = fs::read_to_string(dir.path().join("s.json")).unwrap();
    assert!(summary.contains(r#""k": 2"#), "{summary}");
}

#[test]
fn repeated_invocations_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    dimacs_fixture(dir.path());
    let runs: Vec<Vec<&str>> = vec![
        vec!["solve", "--algo", "nnc", "--random-centers", "4", "--seed", "7", "g.gr"],
        vec!["bench", "--k", "2,3", "--runs", "2", "--omit-timing", "g.gr"],
        vec!["generate", "--grid", "5x3", "--jitter-seed", "2"],
    ];
    for args in runs {
        let a = districts(dir.path(), &args);
        let b = districts(dir.path(), &args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
