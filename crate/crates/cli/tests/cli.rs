use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn yaolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yaolab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(str::trim))
        .unwrap_or_else(|| panic!("no '{key}' in {text}"))
}

#[test]
fn gen_then_stretch_reports_bound() {
    let dir = TempDir::new().unwrap();
    let pts = path(&dir, "p.csv");
    assert!(yaolab(&["gen", "--n", "30", "--seed", "9", "--out", &pts])
        .status
        .success());
    let o = yaolab(&["stretch", "--in", &pts, "--graph", "y4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(value(&text, "bound ").starts_with("54.613"), "{text}");
    let s: f64 = value(&text, "stretch ").parse().unwrap();
    assert!((1.0..54.62).contains(&s));
    assert_eq!(value(&text, "witness ").split(' ').count(), 2);

    let o = yaolab(&["stretch", "--in", &pts, "--graph", "yk:6"]);
    assert_eq!(value(&stdout(&o), "bound "), "5.8");
}

#[test]
fn generation_is_reproducible_across_formats() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.csv"), path(&dir, "b.json"));
    yaolab(&[
        "gen",
        "--n",
        "12",
        "--seed",
        "4",
        "--dist",
        "clustered",
        "--out",
        &a,
    ]);
    yaolab(&[
        "gen",
        "--n",
        "12",
        "--seed",
        "4",
        "--dist",
        "clustered",
        "--out",
        &b,
    ]);
    for g in ["y4", "y4inf", "delinf"] {
        let sa = stdout(&yaolab(&["stretch", "--in", &a, "--graph", g]));
        let sb = stdout(&yaolab(&["stretch", "--in", &b, "--graph", g]));
        assert_eq!(sa, sb);
    }
}

#[test]
fn verify_two_points_passes() {
    let dir = TempDir::new().unwrap();
    let pts = path(&dir, "two.csv");
    std::fs::write(&pts, "0,0\n3,1\n").unwrap();
    let o = yaolab(&["verify", "--in", &pts, "--checks", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("[FAIL]"));

    let o = yaolab(&[
        "verify",
        "--in",
        &pts,
        "--format",
        "structured",
        "--checks",
        "structure,key-theorem",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("check\t")).count(), 2);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = path(&dir, "missing.csv");
    assert_eq!(
        yaolab(&["stretch", "--in", &missing, "--graph", "y4"])
            .status
            .code(),
        Some(2)
    );

    let bad = path(&dir, "bad.csv");
    std::fs::write(&bad, "0,0\n1;2\n").unwrap();
    assert_eq!(
        yaolab(&["stretch", "--in", &bad, "--graph", "y4"])
            .status
            .code(),
        Some(2)
    );

    let shared = path(&dir, "shared.csv");
    std::fs::write(&shared, "0,0\n0,5\n3,2\n").unwrap();
    let o = yaolab(&["verify", "--in", &shared]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("offending ids: [0, 1]"), "{err}");

    let good = path(&dir, "good.csv");
    std::fs::write(&good, "0,0\n3,1\n").unwrap();
    assert_eq!(
        yaolab(&["verify", "--in", &good, "--checks", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        yaolab(&["stretch", "--in", &good, "--graph", "y3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        yaolab(&["gen", "--n", "3", "--out", &good]).status.code(),
        Some(2)
    );
}

#[test]
fn build_writes_edge_lists() {
    let dir = TempDir::new().unwrap();
    let pts = path(&dir, "p.csv");
    std::fs::write(&pts, "0,0\n5,1\n2,3\n").unwrap();
    let edges = path(&dir, "e.txt");
    assert!(yaolab(&[
        "build",
        "--in",
        &pts,
        "--graph",
        "delinf",
        "--out-edges",
        &edges
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&edges).unwrap();
    assert!(text.starts_with("# graph=DelInf metric=Linf\n"));
    assert_eq!(text.lines().count(), 1 + 6);

    assert!(yaolab(&[
        "build",
        "--in",
        &pts,
        "--graph",
        "y4inf",
        "--out-edges",
        &edges
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&edges).unwrap();
    assert!(text.starts_with("# graph=Y4inf k=4 metric=Linf\n"));
}

#[test]
fn walk_prints_triangles() {
    let dir = TempDir::new().unwrap();
    let pts = path(&dir, "w.csv");
    std::fs::write(&pts, "0,0\n4,6\n5,-3\n10,1\n").unwrap();
    let o = yaolab(&["walk", "--in", &pts, "--a", "0", "--b", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("walk 0 3 steps 2\n"));
    assert_eq!(value(&text, "first_inductive "), "2");
}

#[test]
fn search_is_reproducible_and_recomputable() {
    let dir = TempDir::new().unwrap();
    let (a, b, t) = (
        path(&dir, "a.csv"),
        path(&dir, "b.csv"),
        path(&dir, "t.csv"),
    );
    let args = |out: &str| {
        yaolab(&[
            "search",
            "--family",
            "delinf",
            "--n",
            "6",
            "--seed",
            "3",
            "--iters",
            "60",
            "--restarts",
            "2",
            "--out",
            out,
            "--trajectory",
            &t,
        ])
    };
    let (oa, ob) = (args(&a), args(&b));
    assert_eq!(oa.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap()
    );
    let found: f64 = value(&stdout(&oa), "stretch ").parse().unwrap();
    let again: f64 = value(
        &stdout(&yaolab(&["stretch", "--in", &a, "--graph", "delinf"])),
        "stretch ",
    )
    .parse()
    .unwrap();
    assert!((found - again).abs() <= 1e-12 * found);
    assert_eq!(
        std::fs::read_to_string(&t).unwrap().lines().count(),
        1 + 2 * 61
    );
    assert_eq!(stdout(&oa), stdout(&ob).replace(&b, &a));
}

#[test]
fn render_writes_svg() {
    let dir = TempDir::new().unwrap();
    let pts = path(&dir, "p.json");
    std::fs::write(&pts, r#"{"points": [[0, 0], [5, 1], [2, 3]]}"#).unwrap();
    let svg = path(&dir, "p.svg");
    let o = yaolab(&[
        "render",
        "--in",
        &pts,
        "--layers",
        "DelInf,circumsquares,witness-path,points",
        "--path",
        "0,2,1",
        "--out",
        &svg,
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(Path::new(&svg)).unwrap();
    assert!(text.contains("class=\"witness-path\""));
    assert_eq!(text.matches("<circle").count(), 3);
    assert_eq!(
        yaolab(&["render", "--in", &pts, "--layers", "voronoi", "--out", &svg])
            .status
            .code(),
        Some(2)
    );
}
