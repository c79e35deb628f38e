use std::fs;
use std::process::{Command, Output};

fn maxgenus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxgenus"))
        .args(args)
        .env_remove("MAXGENUS_BUDGET")
        .env_remove("MAXGENUS_JOBS")
        .output()
        .expect("run maxgenus")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn census_k23() {
    let out = maxgenus(&["census", "--parts", "2", "3", "--format", "records"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("faces=1 count=2"), "{text}");
    assert!(text.contains("faces=3 count=2"), "{text}");
}

#[test]
fn census_refuses_over_budget() {
    let out = maxgenus(&["census", "--parts", "5", "5", "--budget", "1000000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn census_budget_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_maxgenus"))
        .args(["census", "--parts", "3", "3"])
        .env("MAXGENUS_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn census_output_independent_of_jobs() {
    let a = maxgenus(&["census", "--parts", "2", "5", "--jobs", "1"]);
    let b = maxgenus(&["census", "--parts", "2", "5", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generate_n3_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k33.emb");
    let out = maxgenus(&["generate", "--n", "3", "--exhaustive", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("16 unique / 16"));
    let embeddings = maxgenus::parse_many(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(embeddings.len(), 16);
    assert!(embeddings.iter().all(|e| e.is_one_face()));
    let choices = fs::read_to_string(path.with_extension("choices")).unwrap();
    assert_eq!(choices.lines().count(), 16);
    for line in choices.lines() {
        let seq = maxgenus::ChoiceSequence::parse(line).unwrap();
        assert!(seq.replay().unwrap().is_one_face());
    }
}

#[test]
fn generate_even_n_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.emb");
    let out = maxgenus(&["generate", "--n", "4", "--exhaustive", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sampled_generation_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.emb");
    let b = dir.path().join("b.emb");
    let run = |path: &std::path::Path, jobs: &str| {
        maxgenus(&["generate", "--n", "5", "--sample", "20", "--seed", "9", "--jobs", jobs, "--out", path.to_str().unwrap()])
    };
    assert_eq!(run(&a, "1").status.code(), Some(0));
    assert_eq!(run(&b, "2").status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read(a.with_extension("choices")).unwrap(), fs::read(b.with_extension("choices")).unwrap());
}

#[test]
fn verify_claims_small_n() {
    for n in ["3", "5"] {
        let out = maxgenus(&["verify-claims", "--n", n]);
        assert_eq!(out.status.code(), Some(0), "n = {n}");
        assert!(stdout(&out).contains("overall PASS"));
    }
}

#[test]
fn bounds_table() {
    let out = maxgenus(&["bounds", "--n", "3,5,7,9,11", "--format", "records"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.contains("6772211712"));
    assert!(text.lines().next().unwrap().contains("discrepancy=true"));
}

#[test]
fn bounds_even_n_rejected() {
    assert_eq!(maxgenus(&["bounds", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn trace_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.emb");
    fs::write(
        &path,
        "graph bipartite 2 3\nrot x1: y1 y2 y3\nrot x2: y1 y2 y3\nrot y1: x1 x2\nrot y2: x1 x2\nrot y3: x1 x2\n\n\
         graph bipartite 2 3\nrot x1: y1 y2 y3\nrot x2: y1 y3 y2\nrot y1: x1 x2\nrot y2: x1 x2\nrot y3: x1 x2\n",
    )
    .unwrap();
    let out = maxgenus(&["trace", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("embedding 1"));
    assert!(text.contains("embedding 2"));
    assert!(text.contains("faces 1"));
    assert!(text.contains("faces 3"));
}

#[test]
fn trace_malformed_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.emb");
    fs::write(&path, "graph bipartite 2 3\nrot x1: y1 y2 y9\n").unwrap();
    let out = maxgenus(&["trace", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
