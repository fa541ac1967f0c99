use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seedautomaton"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const TERNARY_SPEC: &str = "align: 1 h 0\nmatch: 1\nseed: #=1; @=1h; _=1h0\nhash: #\n";

#[test]
fn build_dot_from_spec_file() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ternary.alpha", TERNARY_SPEC);
    let out_path = dir.path().join("a.dot");
    let out = run(&[
        "build",
        "--spec",
        &spec,
        "--seed",
        "#@_#",
        "--method",
        "incremental",
        "--format",
        "dot",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "states=9 final=8");
    let dot = fs::read_to_string(&out_path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(
        dot.lines()
            .filter(|l| l.trim_start().starts_with("s")
                && l.contains("shape=")
                && !l.contains("point"))
            .count(),
        9
    );
}

#[test]
fn build_single_hash_seed() {
    let out = run(&["build", "--seed", "#"]);
    assert!(out.status.success());
    assert!(stdout(&out)
        .lines()
        .last()
        .unwrap()
        .starts_with("states=2 "));
}

#[test]
fn naive_and_incremental_serialize_identically() {
    let dir = TempDir::new().unwrap();
    let build = |method: &str| {
        let path = dir.path().join(method);
        let out = run(&[
            "build",
            "--alphabet",
            "ternary",
            "--seed",
            "#@_#",
            "--method",
            method,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        fs::read_to_string(path).unwrap()
    };
    assert_eq!(build("naive"), build("incremental"));
}

#[test]
fn minimize_round_trip() {
    let dir = TempDir::new().unwrap();
    let built = dir.path().join("spi.txt");
    assert!(
        run(&["build", "--seed", "##_#", "--out", built.to_str().unwrap()])
            .status
            .success()
    );
    let out = run(&[
        "minimize",
        "--input",
        built.to_str().unwrap(),
        "--out",
        dir.path().join("m").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("states="));
    let bad = write(&dir, "bad.txt", "dfa 2 1 0\nfinals: 5\n0\n1\n");
    assert_eq!(run(&["minimize", "--input", &bad]).status.code(), Some(2));
}

#[test]
fn compare_counts() {
    let out = run(&["compare", "--alphabet", "ternary", "--seed", "#@_#"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "ac=11 spi=9 min=9");
    // `##`: trie ε, 1 plus sink; the seed automaton is the same three states
    assert_eq!(
        stdout(&run(&["compare", "--seed", "##"])).trim(),
        "ac=3 spi=3 min=3"
    );
    let reduced = stdout(&run(&["compare", "--seed", "#_#"]));
    let fields: Vec<&str> = reduced.trim().split(' ').collect();
    assert_eq!(
        fields[1].trim_start_matches("spi="),
        fields[2].trim_start_matches("min=")
    );
    assert!(run(&["compare", "--seed", "#", "--seed", "#_#"])
        .status
        .success());
}

#[test]
fn match_reports_positions_and_first_hit() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "t.txt", "10h1h1101\n");
    let out = run(&[
        "match",
        "--alphabet",
        "ternary",
        "--seed",
        "#@_#",
        "--text",
        &text,
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4 6\nfirst_hit_end=7\n");
    let empty = write(&dir, "e.txt", "");
    let out = run(&[
        "match",
        "--alphabet",
        "ternary",
        "--seed",
        "#@_#",
        "--text",
        &empty,
    ]);
    assert_eq!(stdout(&out), "\nfirst_hit_end=none\n");
}

#[test]
fn bad_text_letter_exits_two() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "t.txt", "10x1");
    let out = run(&[
        "match",
        "--alphabet",
        "ternary",
        "--seed",
        "#@_#",
        "--text",
        &text,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 3"));
}

#[test]
fn bad_seed_and_missing_file_exit_two() {
    assert_eq!(run(&["build", "--seed", "#x"]).status.code(), Some(2));
    assert_eq!(
        run(&["build", "--spec", "/nonexistent/spec", "--seed", "#"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["build"]).status.code(), Some(2));
}

#[test]
fn motif_counts() {
    let motif = "[GA][GA]GGGNNNNAN[CT]ATGNN[AT]NNNNN[CTG]";
    let out = run(&["motif", "--pattern", motif, "--semantics", "exact"]);
    assert_eq!(stdout(&out).trim(), "states=138 min=126");
    let out = run(&["motif", "--pattern", motif, "--semantics", "inclusion"]);
    assert_eq!(stdout(&out).trim(), "states=139 min=127");
}

#[test]
fn motif_with_text() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "dna.txt", "CCAAAGATAAGATAAAGG\n");
    let out = run(&["motif", "--pattern", "ANDGR", "--text", &text]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines[1], "3 14");
    assert_eq!(lines[2], "first_hit_end=7");
    let spec = write(
        &dir,
        "deg.alpha",
        "base: A C G T\ntextsets: base\npatsets: iupac\n",
    );
    assert!(run(&[
        "motif",
        "--spec",
        &spec,
        "--pattern",
        "ANDGR",
        "--text",
        &text
    ])
    .status
    .success());
    assert_eq!(run(&["motif", "--pattern", "AXG"]).status.code(), Some(2));
}

#[test]
fn stats_csv_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let csv = |name: &str| {
        let path = dir.path().join(name);
        let out = run(&[
            "stats",
            "--alphabet",
            "ternary",
            "--weight",
            "4",
            "--weight",
            "5",
            "--samples",
            "40",
            "--seeds-per-sample",
            "2",
            "--rng-seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        fs::read_to_string(path).unwrap()
    };
    let first = csv("a.csv");
    assert_eq!(first, csv("b.csv"));
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(
        lines[0],
        "alphabet,w,seeds_per_sample,samples,avg_ac,ratio_ac,avg_spi,ratio_spi,avg_min"
    );
    assert!(lines[1].starts_with("ternary,4,2,40,"));
    assert!(lines[2].starts_with("ternary,5,2,40,"));
}

#[test]
fn stats_invalid_config_exits_two() {
    let out = run(&["stats", "--weight", "5", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["stats", "--weight", "5", "--joker-weights", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(Path::new(env!("CARGO_BIN_EXE_seedautomaton")).exists());
}
