use std::path::PathBuf;

use higherar::exactla::PrimeField;
use higherar::quivalg::Alg;
use higherar_cli::{load, parse_algebra_text, print_algebra_file, run_args, EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_VERIFIED};

fn corpus() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "algebras"].iter().collect()
}

fn path(name: &str) -> String {
    corpus().join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> higherar_cli::Outcome {
    run_args(std::iter::once("higherar").chain(args.iter().copied()))
}

fn value<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(" = "))
}

fn build(name: &str) -> Alg<PrimeField> {
    load(&corpus().join(name)).unwrap().build(&PrimeField::new(32003)).unwrap()
}

#[test]
fn corpus_round_trips() {
    let mut n = 0;
    for entry in std::fs::read_dir(corpus()).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "alg") {
            let f = parse_algebra_text(&std::fs::read_to_string(&p).unwrap()).unwrap();
            assert_eq!(parse_algebra_text(&print_algebra_file(&f)).unwrap(), f, "{}", p.display());
            n += 1;
        }
    }
    assert!(n >= 7);
}

#[test]
fn small_files() {
    let a2 = build("a2.alg");
    assert_eq!((a2.vertex_count(), a2.arrow_count(), a2.dim()), (2, 1, 3));
    assert_eq!(build("square.alg").dim(), 9);
}

#[test]
fn tensor_file_is_the_square_up_to_relabeling() {
    let (t, sq) = (build("ex1.alg"), build("square.alg"));
    let perms = permutations(4);
    let found = perms.iter().any(|vm| perms.iter().any(|am| t.is_relabeling_of(&sq, vm, am)));
    assert!(found);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn m_quiver_dot() {
    let out = run(&["quiver", &path("ex1.alg"), "--m-cat"]);
    assert_eq!(out.code, EXIT_VERIFIED);
    let dot = &out.stdout;
    assert!(dot.starts_with("digraph M {") && dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("[label=").count(), 5);
    assert_eq!(dot.lines().filter(|l| l.contains("->") && !l.contains("dashed")).count(), 5);
    let dashed: Vec<&str> = dot.lines().filter(|l| l.contains("dashed")).collect();
    assert_eq!(dashed.len(), 1);
    // 0100 ⇢ 0010, drawn as two-row grids.
    let node = |g: &str| dot.lines().find(|l| l.contains(&format!("label=\"{g}\""))).unwrap().split_whitespace().next().unwrap().to_string();
    assert_eq!(dashed[0].trim(), format!("{} -> {} [style=dashed];", node("01\\n00"), node("00\\n10")));
    assert_eq!(run(&["quiver", &path("ex1.alg"), "--m-cat"]).stdout, *dot);
}

#[test]
fn larger_dot_outputs() {
    let out = run(&["quiver", &path("ex2.alg"), "--m-cat"]);
    assert_eq!(out.stdout.matches("[label=").count(), 24);
    let ar = run(&["quiver", &path("ex1.alg"), "--ar"]);
    assert_eq!(ar.stdout.matches("[label=").count(), 11);
    let q = run(&["quiver", &path("square.alg")]);
    assert_eq!(q.stdout.lines().filter(|l| l.contains("->")).count(), 4);
}

#[test]
fn check_reports_and_exit_codes() {
    let ok = run(&["check", &path("ex1.alg"), "--d", "2"]);
    assert_eq!(ok.code, EXIT_VERIFIED, "{}", ok.stderr);
    assert_eq!(value(&ok.stdout, "2-complete"), Some("true"));
    assert!(ok.stdout.contains("--- verdict\n"));
    // gl.dim 2 exceeds d = 1.
    let bad = run(&["check", &path("ex1.alg"), "--d", "1"]);
    assert_eq!(bad.code, EXIT_FAILED);
    assert!(value(&bad.stdout, "condition_A").unwrap().starts_with("failed: global dimension 2"));
    let missing = run(&["check", &path("nope.alg"), "--d", "2"]);
    assert_eq!(missing.code, EXIT_INPUT);
    assert_eq!(run(&["check", &path("ex1.alg"), "--d", "2", "--prime", "12"]).code, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).code, EXIT_INPUT);
}

#[test]
fn parse_errors_exit_with_position() {
    let dir = std::env::temp_dir().join(format!("higherar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.alg");
    std::fs::write(&p, "vertex 1\nvertex 2\narrow a: 1 -> 3\n").unwrap();
    let out = run(&["check", p.to_str().unwrap(), "--d", "1"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 3, column 15"), "{}", out.stderr);
    std::fs::write(&p, "vertex 1\nvertex 2\narrow a: 1 -> 2\narrow b: 2 -> 1\n").unwrap();
    assert_eq!(run(&["check", p.to_str().unwrap(), "--d", "1"]).code, EXIT_INPUT);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn rationals_and_primes_agree() {
    let dir = std::env::temp_dir().join(format!("higherar-q-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("a2q.alg");
    std::fs::write(&p, "field q\nvertex 1\nvertex 2\narrow a: 2 -> 1\n").unwrap();
    let q = run(&["check", p.to_str().unwrap(), "--d", "1"]);
    assert_eq!(value(&q.stdout, "field"), Some("Q"));
    let gf = run(&["check", p.to_str().unwrap(), "--d", "1", "--prime", "101"]);
    assert_eq!(value(&gf.stdout, "field"), Some("GF(101)"));
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with("field")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&q.stdout), strip(&gf.stdout));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn seed_from_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_higherar"))
        .args(["check", &path("a2.alg"), "--d", "1"])
        .env("HIGHERAR_SEED", "77")
        .output()
        .unwrap();
    assert_eq!(value(&String::from_utf8_lossy(&out.stdout), "seed"), Some("77"));
    assert_eq!(value(&run(&["check", &path("a2.alg"), "--d", "1", "--seed", "5"]).stdout, "seed"), Some("5"));
}

#[test]
fn sequences_and_classify() {
    let out = run(&["sequences", &path("ex1.alg"), "--d", "2"]);
    assert_eq!(out.code, EXIT_VERIFIED);
    assert_eq!(value(&out.stdout, "sequence.0100"), Some("0 -> 0010 -> 1111 -> 1100+0101 -> 0100 -> 0"));
    assert_eq!(run(&["sequences", &path("ex1.alg"), "--d", "2", "--end", "1111"]).code, EXIT_FAILED);
    assert_eq!(run(&["sequences", &path("ex1.alg"), "--d", "2", "--end", "0001"]).code, EXIT_INPUT);
    let c = run(&["classify", &path("ex1.alg"), "--d", "2"]);
    assert_eq!(c.code, EXIT_VERIFIED, "{}", c.stderr);
    assert_eq!(value(&c.stdout, "count.in_add_T"), Some("4"));
    assert_eq!(value(&c.stdout, "count.outside_perp"), Some("5"));
    // The 3x3 commutative grid is representation-infinite, so knitting runs into the cap.
    let c = run(&["classify", &path("a3_bipartite_squared.alg"), "--d", "2", "--cap", "30"]);
    assert_eq!(c.code, EXIT_INCONCLUSIVE, "{}", c.stderr);
}
