use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn oddhex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddhex")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes a generated graph into `dir` and returns its path.
fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", s(&path)]);
    let o = oddhex(&full);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    path
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn gen_k33_has_nine_edges() {
    let o = oddhex(&["gen", "--family", "k33"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let edges = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).count();
    // Header line carries the vertex and edge counts.
    assert!(edges == 9 || edges == 10, "{text}");
    assert!(text.contains("9"));
}

#[test]
fn gen_random_is_deterministic() {
    let a = oddhex(&["gen", "--random", "12", "7"]);
    let b = oddhex(&["gen", "--random", "12", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, oddhex(&["gen", "--random", "12", "8"]).stdout);
}

#[test]
fn check_reports_preconditions() {
    let dir = TempDir::new().unwrap();
    let k33 = gen(&dir, "k33.txt", &["--family", "k33"]);
    let o = oddhex(&["check", s(&k33)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("internally 4-connected: yes"));

    let q3 = gen(&dir, "q3.txt", &["--family", "q3"]);
    let o = oddhex(&["check", s(&q3)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("planar: yes"), "{}", stdout(&o));

    let tri = file(&dir, "tri.txt", "3 3\n0 1\n1 2\n2 0\n");
    let o = oddhex(&["check", s(&tri)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not bipartite: odd cycle"), "{}", stderr(&o));

    let junk = file(&dir, "junk.txt", "this is not a graph\n");
    assert_eq!(code(&oddhex(&["check", s(&junk)])), 2);
    assert_eq!(code(&oddhex(&["check", s(&dir.path().join("missing.txt"))])), 2);
}

#[test]
fn find_then_verify() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "r16.txt", &["--random", "16", "3"]);
    let cert = dir.path().join("r16.json");
    let dot = dir.path().join("r16.dot");
    let o = oddhex(&["find", s(&g), "--certificate", s(&cert), "--dot", s(&dot)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("odd_count = 9"));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph"));
    let o = oddhex(&["verify", s(&g), s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "ok");

    // Same input, same bytes.
    let again = dir.path().join("again.json");
    oddhex(&["find", s(&g), "--certificate", s(&again)]);
    assert_eq!(fs::read(&cert).unwrap(), fs::read(&again).unwrap());

    // A different graph fails the hash check.
    let other = gen(&dir, "r16b.txt", &["--random", "16", "4"]);
    let o = oddhex(&["verify", s(&other), s(&cert)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("graph hash mismatch"));
}

#[test]
fn k33_certificate_has_no_steps() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "k33.txt", &["--family", "k33"]);
    let o = oddhex(&["find", s(&g)]);
    assert_eq!(code(&o), 0);
    let cert: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert["steps"].as_array().unwrap().len(), 0);
    assert_eq!(cert["odd_count"], 9);
}

#[test]
fn tampered_certificates_fail_with_the_clause() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "k44.txt", &["--family", "k44"]);
    let o = oddhex(&["find", s(&g)]);
    let mut cert: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // Replace segment (1,4) by a walk through a same-side foot.
    let f = |k: usize| cert["feet"][k].as_u64().unwrap();
    let (a, b, c) = (f(0), f(3), f(1));
    cert["segments"][0][0] = serde_json::json!([a, c, b]);
    let bad = file(&dir, "bad.json", &cert.to_string());
    let o = oddhex(&["verify", s(&g), s(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("non-edge in segment (1,4)"), "{}", stderr(&o));

    let broken = file(&dir, "broken.json", "{");
    assert_eq!(code(&oddhex(&["verify", s(&g), s(&broken)])), 2);
}

#[test]
fn even_segment_fails_verification() {
    let dir = TempDir::new().unwrap();
    let path = gen(&dir, "r14.txt", &["--random", "14", "2"]);
    let g = oddhex::graph::parse_edge_list(&fs::read_to_string(&path).unwrap()).unwrap();
    let h = oddhex::oracle::enumerate_hexes(&g, 5000).into_iter().find(|h| h.odd_count() == 4).unwrap();
    let k = (0..9).find(|&k| h.segments[k / 3][k % 3].len() % 2 == 0).unwrap();
    let cert = oddhex::certificate::Certificate::new(&g, &h, &h, &[]);
    let c = file(&dir, "c.json", &cert.to_json());
    let o = oddhex(&["verify", s(&path), s(&c)]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert_eq!(stderr(&o).trim(), format!("fail: segment ({},{}) even", k / 3 + 1, k % 3 + 4));
}

#[test]
fn planar_input_is_rejected_by_find() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "grid.txt", &["--family", "grid", "4", "4"]);
    let o = oddhex(&["find", s(&g)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).starts_with("planar"), "{}", stderr(&o));
}

#[test]
fn oracle_modes() {
    let dir = TempDir::new().unwrap();
    let k33 = gen(&dir, "k33.txt", &["--family", "k33"]);
    let o = oddhex(&["oracle", s(&k33), "--mode", "compare"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("agree"));

    let q3 = gen(&dir, "q3.txt", &["--family", "q3"]);
    let o = oddhex(&["oracle", s(&q3), "--mode", "oddhex"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "none (planar)");

    let o = oddhex(&["oracle", s(&k33), "--mode", "hexes"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("odd_count 9"));

    let big = gen(&dir, "r20.txt", &["--random", "20", "1"]);
    let o = oddhex(&["oracle", s(&big), "--mode", "oddhex"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("TooLarge"));
}

#[test]
fn graph6_input_is_accepted() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "k33.g6", &["--family", "k33", "--format", "graph6"]);
    let o = oddhex(&["check", s(&g), "--format", "graph6"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}
