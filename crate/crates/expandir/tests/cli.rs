mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn expandir(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expandir"))
        .current_dir(dir)
        .args(args)
        .env("EXPANDIR_LOG", "error")
        .output()
        .unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = expandir(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn metric(table: &str, name: &str) -> f64 {
    table
        .lines()
        .find_map(|l| {
            let mut f = l.split_whitespace();
            (f.next() == Some(name)).then(|| f.last().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("{name} missing from\n{table}"))
}

#[test]
fn usage_errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    let out = expandir(tmp.path(), &[]);
    assert_eq!(code(&out), 1);

    let out = expandir(tmp.path(), &["search", "--topics", "t.xml"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--index"), "{}", stderr(&out));

    let out = expandir(
        tmp.path(),
        &["search", "--index", "i", "--topics", "t", "--mode", "sideways"],
    );
    assert_eq!(code(&out), 1);
    let out = expandir(tmp.path(), &["frobnicate"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn help_and_version_exit_zero() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(ok(tmp.path(), &["--help"]).contains("sweep"));
    assert!(ok(tmp.path(), &["search", "--help"]).contains("--alpha"));
    assert!(ok(tmp.path(), &["--version"]).starts_with("expandir "));
}

#[test]
fn data_errors_exit_two_with_location() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    fs::write(d.join("run.txt"), "1 Q0 a 1 2.0 t\n1 Q0 b 2 oops t\n").unwrap();
    fs::write(d.join("qrels.txt"), "1 0 a 1\n").unwrap();
    let out = expandir(d, &["evaluate", "--run", "run.txt", "--qrels", "qrels.txt"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("run.txt:2:"), "{}", stderr(&out));

    let out = expandir(d, &["evaluate", "--run", "missing.txt", "--qrels", "qrels.txt"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("missing.txt"));

    fs::write(
        d.join("docs.jsonl"),
        "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n",
    )
    .unwrap();
    let out = expandir(d, &["index", "--docs", "docs.jsonl", "--out", "idx.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("docs.jsonl:2"), "{}", stderr(&out));

    fs::write(d.join("v.txt"), "3 2\na 1 0\n").unwrap();
    let out = expandir(d, &["inspect-vectors", "--vectors", "v.txt"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("v.txt"), "{}", stderr(&out));
}

#[test]
fn evaluate_prints_means() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    fs::write(
        d.join("run.txt"),
        "1 Q0 a 1 3 t\n1 Q0 b 2 2 t\n2 Q0 c 1 3 t\n2 Q0 d 2 2 t\n",
    )
    .unwrap();
    fs::write(d.join("qrels.txt"), "1 0 b 1\n2 0 c 1\n").unwrap();
    let table = ok(d, &["evaluate", "--run", "run.txt", "--qrels", "qrels.txt"]);
    assert!((metric(&table, "mrr") - 0.75).abs() < 1e-4, "{table}");
    assert!((metric(&table, "p@5") - 0.2).abs() < 1e-4, "{table}");
    let csv = ok(d, &["evaluate", "--run", "run.txt", "--qrels", "qrels.txt", "--csv"]);
    assert!(csv.starts_with("query_id,metric,value\n"));
    assert!(csv.contains("all,mrr,0.750000"), "{csv}");
}

#[test]
fn full_flow() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    common::write(d);

    ok(d, &["index", "--docs", "docs.jsonl", "--out", "index.json"]);
    let base = ok(d, &["search", "--index", "index.json", "--topics", "topics.xml"]);
    fs::write(d.join("base.run"), &base).unwrap();
    let first = base.lines().next().unwrap();
    assert_eq!(first.split_whitespace().count(), 6, "{first}");

    ok(
        d,
        &[
            "search",
            "--index",
            "index.json",
            "--topics",
            "topics.xml",
            "--vectors",
            "space.bin",
            "--k",
            "5",
            "--alpha",
            "0.3",
            "--out",
            "exp.run",
            "--workers",
            "2",
        ],
    );

    // expanded queries replay to the same run
    let queries = ok(
        d,
        &[
            "expand",
            "--topics",
            "topics.xml",
            "--vectors",
            "space.txt",
            "--index",
            "index.json",
        ],
    );
    assert_eq!(queries.lines().count(), common::TOPICS.len());
    let first: serde_json::Value = serde_json::from_str(queries.lines().next().unwrap()).unwrap();
    assert_eq!(first["qid"], "1");
    fs::write(d.join("queries.jsonl"), &queries).unwrap();
    let replay = ok(d, &["search", "--index", "index.json", "--queries", "queries.jsonl"]);
    assert_eq!(replay, fs::read_to_string(d.join("exp.run")).unwrap());

    let base_eval = ok(d, &["evaluate", "--run", "base.run", "--qrels", "qrels.txt"]);
    let exp_eval = ok(
        d,
        &[
            "evaluate",
            "--run",
            "exp.run",
            "--qrels",
            "qrels.txt",
            "--baseline",
            "base.run",
        ],
    );
    assert!(
        metric(&exp_eval, "p@5") > metric(&base_eval, "p@5"),
        "{base_eval}\n{exp_eval}"
    );

    let inspect = ok(
        d,
        &[
            "inspect-vectors",
            "--vectors",
            "space.bin",
            "--neighbors",
            "concert",
            "nope",
            "--k",
            "2",
        ],
    );
    assert!(inspect.contains("scène"), "{inspect}");
    assert!(inspect.contains("nope: not in vocabulary"));

    let config = serde_json::json!({
        "index": "index.json",
        "topics": "topics.xml",
        "qrels": "qrels.txt",
        "spaces": [{"name": "TMF", "path": "space.bin"}],
        "modes": ["local"],
        "k_values": [1, 5],
        "alphas": [0.3],
    });
    fs::write(d.join("sweep.json"), config.to_string()).unwrap();
    let msg = ok(d, &["sweep", "--config", "sweep.json", "--out-dir", "results"]);
    assert!(msg.starts_with("3 cells"), "{msg}");
    let p5 = fs::read_to_string(d.join("results/p5.csv")).unwrap();
    assert!(p5.contains("TMF∅,k=5"), "{p5}");
    // the sweep's k=5 run matches the standalone search
    let sweep_run = fs::read_to_string(d.join("results/runs/TMF-raw.local.k5.a0.30.run")).unwrap();
    let strip_tag = |s: &str| {
        s.lines()
            .map(|l| l.rsplit_once(' ').unwrap().0.to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(strip_tag(&sweep_run), strip_tag(&replay));

    let out = expandir(d, &["sweep", "--config", "missing.json"]);
    assert_eq!(code(&out), 2);
}
