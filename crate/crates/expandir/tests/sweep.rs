mod common;

use std::fs;
use std::path::Path;

use expandir::sweep::{
    render_table, run_sweep, write_results, Cell, CellKey, CellOutcome, Layout, SpaceCache, SweepInputs, SweepOptions,
    SweepResult, SweepSpec,
};
use expandir_core::{evaluate, EmbeddingBuilder, ExpansionMode, Metric, Provenance, Qrels, RankedRun};
use serde_json::json;

fn space(name: &str, path: &str, preprocessed: bool) -> serde_json::Value {
    json!({"name": name, "path": path, "preprocessed": preprocessed})
}

fn spec(spaces: Vec<serde_json::Value>, extra: serde_json::Value) -> SweepSpec {
    let mut v = json!({
        "docs": "docs.jsonl",
        "topics": "topics.xml",
        "qrels": "qrels.txt",
        "spaces": spaces,
    });
    for (k, x) in extra.as_object().unwrap() {
        v[k] = x.clone();
    }
    SweepSpec::from_json(&v.to_string()).unwrap()
}

fn eight_spaces() -> Vec<serde_json::Value> {
    ["WF", "WMF", "TF", "TMF"]
        .iter()
        .flat_map(|n| {
            let path = if *n == "TMF" { "space.txt" } else { "space.bin" };
            [space(n, path, false), space(n, path, true)]
        })
        .collect()
}

fn run(dir: &Path, spec: &SweepSpec, workers: usize) -> SweepResult {
    let inputs = SweepInputs::load(spec, dir).unwrap();
    run_sweep(
        spec,
        &inputs,
        SweepOptions {
            workers,
            max_resident_spaces: 2,
        },
    )
    .unwrap()
}

#[test]
fn smallest_grid_has_baseline_and_one_cell() {
    let tmp = tempfile::tempdir().unwrap();
    common::write(tmp.path());
    let s = spec(
        vec![space("TMF", "space.txt", false)],
        json!({"modes": ["local"], "k_values": [1], "alphas": [0.3]}),
    );
    assert_eq!(s.num_cells(), 2);
    let r = run(tmp.path(), &s, 1);
    assert_eq!(r.cells.len(), 2);
    assert!(r.cells[0].key.is_baseline());
    assert_eq!(r.cells[1].key.id(), "TMF-raw.local.k1.a0.30");
    let cell = r
        .cell("TMF∅", ExpansionMode::Local, 1, 0.3)
        .unwrap()
        .outcome
        .as_ref()
        .unwrap();
    assert!(cell.report.mean(Metric::P5) > r.baseline().unwrap().report.mean(Metric::P5));
    assert!(cell.p5_test.is_some());
}

#[test]
fn full_space_grid_has_eighty_expansion_cells() {
    let tmp = tempfile::tempdir().unwrap();
    common::write(tmp.path());
    let s = spec(eight_spaces(), json!({"alphas": [0.3]}));
    let r = run(tmp.path(), &s, 0);
    assert_eq!(r.cells.len(), 81);
    assert_eq!(r.cells.iter().filter(|c| !c.key.is_baseline()).count(), 80);
    assert_eq!(r.errors(), 0);
    // raw spaces see every title word, so expansion always helps here
    let base = r.baseline().unwrap().report.mean(Metric::P5);
    for name in ["WF∅", "WMF∅", "TF∅", "TMF∅"] {
        for mode in [ExpansionMode::Local, ExpansionMode::Global] {
            for k in 1..=5 {
                let c = r.cell(name, mode, k, 0.3).unwrap().outcome.as_ref().unwrap();
                assert!(c.report.mean(Metric::P5) > base, "{name} {mode:?} k={k}");
            }
        }
    }
}

fn read_outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    for sub in [dir.to_path_buf(), dir.join("runs")] {
        let mut entries: Vec<_> = fs::read_dir(&sub)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.is_file())
            .collect();
        entries.sort();
        for p in entries {
            out.push((
                p.strip_prefix(dir).unwrap().display().to_string(),
                fs::read(&p).unwrap(),
            ));
        }
    }
    out
}

#[test]
fn outputs_do_not_depend_on_worker_count() {
    let tmp = tempfile::tempdir().unwrap();
    let files = common::write(tmp.path());
    let s = spec(eight_spaces(), json!({"k_values": [1, 3, 5], "alphas": [0.2, 0.3]}));
    let mut outputs = Vec::new();
    for workers in [1, 3, 8] {
        let out = files.dir.join(format!("out{workers}"));
        write_results(&run(tmp.path(), &s, workers), &s, tmp.path(), &out).unwrap();
        outputs.push(read_outputs(&out));
    }
    assert!(outputs[0].len() > 10);
    assert!(outputs[0].iter().any(|(n, _)| n == "p5.csv"));
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn baseline_does_not_depend_on_spaces() {
    let tmp = tempfile::tempdir().unwrap();
    common::write(tmp.path());
    let one = run(
        tmp.path(),
        &spec(vec![space("TMF", "space.txt", false)], json!({"k_values": [1]})),
        2,
    );
    let many = run(tmp.path(), &spec(eight_spaces(), json!({"k_values": [2]})), 2);
    assert_eq!(one.baseline(), many.baseline());

    let with = run(
        tmp.path(),
        &spec(
            vec![space("TMF", "space.txt", false)],
            json!({"k_values": [2], "alphas": [0.5]}),
        ),
        1,
    );
    let without = run(
        tmp.path(),
        &spec(
            vec![space("TMF", "space.txt", false)],
            json!({"k_values": [2], "alphas": [0.5], "baseline": false}),
        ),
        1,
    );
    assert_eq!(without.cells.len(), 2);
    assert!(without.baseline().is_none());
    for (a, b) in with.cells[1..].iter().zip(&without.cells) {
        let (a, b) = (a.outcome.as_ref().unwrap(), b.outcome.as_ref().unwrap());
        assert_eq!(a.report, b.report);
        assert!(b.p5_test.is_none());
    }
}

#[test]
fn missing_space_only_fails_its_own_cells() {
    let tmp = tempfile::tempdir().unwrap();
    common::write(tmp.path());
    let s = spec(
        vec![space("TMF", "space.txt", false), space("WF", "absent.bin", false)],
        json!({"alphas": [0.3]}),
    );
    let r = run(tmp.path(), &s, 2);
    assert_eq!(r.cells.len(), 21);
    assert_eq!(r.errors(), 10);
    for c in &r.cells {
        let is_wf = c.key.space.as_ref().is_some_and(|s| s.name == "WF");
        assert_eq!(c.outcome.is_err(), is_wf, "{}", c.key.id());
        if let Err(e) = &c.outcome {
            assert!(e.contains("absent.bin"), "{e}");
        }
    }
    let out = tmp.path().join("out");
    write_results(&r, &s, tmp.path(), &out).unwrap();
    let tables = fs::read_to_string(out.join("tables.txt")).unwrap();
    assert!(tables.contains("err"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["errors"], 10);
    assert!(manifest["inputs"]["absent.bin"]
        .as_str()
        .unwrap()
        .starts_with("unreadable"));
    // failed cells get no run file
    assert_eq!(fs::read_dir(out.join("runs")).unwrap().count(), 11);
}

#[test]
fn manifest_records_config_and_input_digests() {
    let tmp = tempfile::tempdir().unwrap();
    let files = common::write(tmp.path());
    let s = spec(
        vec![space("TMF", "space.txt", false)],
        json!({"k_values": [1], "alphas": [0.3]}),
    );
    let out = tmp.path().join("out");
    write_results(&run(tmp.path(), &s, 1), &s, tmp.path(), &out).unwrap();
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["config_sha256"], s.hash());
    assert_eq!(m["cells"], 3);
    assert_eq!(m["config"]["k_values"], json!([1]));
    use sha2::Digest;
    let docs = hex::encode(sha2::Sha256::digest(fs::read(&files.docs).unwrap()));
    assert_eq!(m["inputs"]["docs.jsonl"], docs);
    for name in ["topics.xml", "qrels.txt", "space.txt"] {
        assert_eq!(m["inputs"][name].as_str().unwrap().len(), 64, "{name}");
    }
    assert!(out.join("runs/baseline.run").is_file());
    assert!(out.join("runs/TMF-raw.global.k1.a0.30.run").is_file());
}

#[test]
fn space_cache_evicts_least_recently_used() {
    let mut cache = SpaceCache::new(2);
    let make = || {
        let mut b = EmbeddingBuilder::new(1).unwrap();
        b.push("x", &[1.0]).unwrap();
        Ok(b.build(Provenance::default()).unwrap())
    };
    for key in ["a", "b", "a", "c", "a", "b"] {
        cache.get_or_load(key, make).unwrap();
    }
    // b was evicted by c, then reloaded
    assert_eq!(cache.loads(), 4);
    assert_eq!(cache.resident(), 2);
    assert!(cache
        .get_or_load("zz", || Err(expandir::Error::Config("nope".into())))
        .is_err());
    assert_eq!(cache.loads(), 4);
}

/// A cell whose mean p@5 over one query is `hits / 5`.
fn cell_with_p5(space_spec: &expandir::sweep::SpaceSpec, k: usize, hits: usize) -> Cell {
    let mut qrels = Qrels::new();
    for d in 0..5 {
        qrels.insert("q", format!("r{d}"), 1);
    }
    let run = RankedRun::from_scores((0..5).map(|i| {
        let doc = if i < hits { format!("r{i}") } else { format!("n{i}") };
        ("q", doc, 10.0 - i as f64)
    }));
    let report = evaluate(&run, &qrels);
    Cell {
        key: CellKey {
            space: Some(space_spec.clone()),
            mode: Some(ExpansionMode::Local),
            k,
            alpha: 0.3,
        },
        outcome: Ok(CellOutcome {
            run,
            report,
            p5_test: None,
        }),
    }
}

#[test]
fn rendered_table_marks_row_and_column_best() {
    let s = spec(
        vec![space("TF", "a", false), space("TMF", "b", false)],
        json!({"modes": ["local"], "k_values": [1, 2, 3], "alphas": [0.3]}),
    );
    let (tf, tmf) = (&s.spaces[0], &s.spaces[1]);
    let mut cells = vec![cell_with_p5(tf, 1, 1), cell_with_p5(tf, 2, 3), cell_with_p5(tf, 3, 3)];
    cells.extend([cell_with_p5(tmf, 1, 2), cell_with_p5(tmf, 2, 2)]);
    cells.push(Cell {
        key: CellKey {
            space: Some(tmf.clone()),
            mode: Some(ExpansionMode::Local),
            k: 3,
            alpha: 0.3,
        },
        outcome: Err("boom".into()),
    });
    let result = SweepResult { cells };
    let table = render_table(
        &result,
        &s,
        Metric::P5,
        &Layout::SpacesByK {
            mode: ExpansionMode::Local,
            alpha: 0.3,
        },
    );
    let golden = "\
table,row,column,value,best_in_row,best_in_column
p@5 local α=0.3,TF∅,k=1,0.200000,0,0
p@5 local α=0.3,TF∅,k=2,0.600000,1,1
p@5 local α=0.3,TF∅,k=3,0.600000,1,1
p@5 local α=0.3,TMF∅,k=1,0.400000,1,1
p@5 local α=0.3,TMF∅,k=2,0.400000,1,0
p@5 local α=0.3,TMF∅,k=3,,0,0
";
    assert_eq!(table.to_csv(), golden);
    let text = table.to_text();
    assert!(text.contains("**_0.6000_**"), "{text}");
    assert!(text.contains("_0.4000_"), "{text}");
    assert!(text.contains("err"), "{text}");
}

#[test]
fn alpha_table_has_one_row_per_alpha() {
    let tmp = tempfile::tempdir().unwrap();
    common::write(tmp.path());
    let s = spec(
        vec![space("TMF", "space.txt", false)],
        json!({"modes": ["global"], "k_values": [1, 2]}),
    );
    let r = run(tmp.path(), &s, 0);
    assert_eq!(r.cells.len(), 1 + 9 * 2);
    let t = render_table(
        &r,
        &s,
        Metric::Map,
        &Layout::AlphasByK {
            space: "TMF∅".into(),
            mode: ExpansionMode::Global,
        },
    );
    assert_eq!(t.row_labels.len(), 9);
    assert_eq!(t.row_labels[0], "α=0.1");
    assert!(t.values.iter().flatten().all(Option::is_some));
}

#[test]
fn recipes_parse() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../recipes");
    let spaces = SweepSpec::load(root.join("festival-spaces.json")).unwrap();
    assert_eq!(spaces.num_cells(), 81);
    let alpha = SweepSpec::load(root.join("festival-alpha.json")).unwrap();
    assert_eq!(alpha.num_cells(), 91);
}
