use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Output, Stdio};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_when2tool"));
    c.env_remove("BACKEND_URL");
    c
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) -> Output {
    let out = run(args, dir);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn lines(path: &Path) -> usize {
    std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
        .lines()
        .count()
}

/// Small suite: 2 train and 3 test tasks per cell.
fn small_suite() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    ok(
        &[
            "gen",
            "--seed",
            "3",
            "--out",
            "bench",
            "--train-per-difficulty",
            "2",
            "--test-per-difficulty",
            "3",
        ],
        dir.path(),
    );
    dir
}

#[test]
fn gen_writes_both_suites_with_requested_counts() {
    let dir = small_suite();
    let b = dir.path().join("bench");
    assert_eq!(lines(&b.join("single/tasks.train.jsonl")), 15 * 3 * 2);
    assert_eq!(lines(&b.join("single/tasks.test.jsonl")), 15 * 3 * 3);
    assert_eq!(lines(&b.join("multi/tasks.train.jsonl")), 3 * 3 * 2);
    assert_eq!(lines(&b.join("multi/tasks.test.jsonl")), 3 * 3 * 3);
    assert!(b.join("single/manifest.json").exists() && b.join("multi/manifest.json").exists());
}

#[test]
fn gen_is_byte_identical_across_runs() {
    let a = small_suite();
    let b = small_suite();
    for f in [
        "single/tasks.train.jsonl",
        "single/tasks.test.jsonl",
        "multi/tasks.test.jsonl",
        "multi/manifest.json",
    ] {
        let x = std::fs::read(a.path().join("bench").join(f)).unwrap();
        let y = std::fs::read(b.path().join("bench").join(f)).unwrap();
        assert_eq!(x, y, "{f} differs");
    }
}

#[test]
fn configuration_errors_exit_2() {
    let dir = small_suite();
    let tasks = "bench/single/tasks.test.jsonl";
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "run",
            "--tasks",
            tasks,
            "--mock",
            "oracle-signal",
            "--prefill",
            "probe-hard",
            "--out",
            "r",
        ],
        vec![
            "run",
            "--tasks",
            tasks,
            "--mock",
            "oracle-signal",
            "--prefill",
            "probe-soft",
            "--probe",
            "nope.json",
            "--out",
            "r",
        ],
        vec![
            "run",
            "--tasks",
            tasks,
            "--mock",
            "no-such-profile",
            "--out",
            "r",
        ],
        vec!["run", "--tasks", tasks, "--out", "r"],
        vec![
            "run",
            "--tasks",
            "missing.jsonl",
            "--mock",
            "oracle-signal",
            "--out",
            "r",
        ],
        vec![
            "train-probe",
            "--labels",
            "missing.jsonl",
            "--model-tag",
            "m",
            "--out",
            "p.json",
        ],
    ];
    for args in cases {
        let out = run(&args, dir.path());
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn unreachable_backend_exits_3() {
    let dir = small_suite();
    let out = run(
        &[
            "label",
            "--tasks",
            "bench/single/tasks.test.jsonl",
            "--out",
            "l.jsonl",
            "--backend-url",
            "http://127.0.0.1:9",
            "--attempts",
            "1",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn mock_pipeline_runs_end_to_end() {
    let dir = small_suite();
    let d = dir.path();
    let (train, test) = (
        "bench/single/tasks.train.jsonl",
        "bench/single/tasks.test.jsonl",
    );
    let mock = ["--mock", "oracle-signal"];
    let with = |base: &[&str]| -> Vec<String> {
        base.iter().chain(&mock).map(|s| s.to_string()).collect()
    };
    let okv = |args: Vec<String>| ok(&args.iter().map(String::as_str).collect::<Vec<_>>(), d);

    okv(with(&[
        "label",
        "--tasks",
        train,
        "--out",
        "labels.train.jsonl",
    ]));
    assert_eq!(lines(&d.join("labels.train.jsonl")), 90);
    okv(with(&["extract", "--tasks", train]));
    okv(with(&["extract", "--tasks", test]));
    let cache: Vec<PathBuf> = std::fs::read_dir(d.join("cache"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(cache.len(), 1);
    assert_eq!(lines(&cache[0]), 90 + 135);
    let tag = cache[0]
        .file_name()
        .unwrap()
        .to_str()
        .unwrap()
        .trim_end_matches(".features.jsonl")
        .to_string();

    ok(
        &[
            "train-probe",
            "--labels",
            "labels.train.jsonl",
            "--model-tag",
            &tag,
            "--out",
            "probe.json",
        ],
        d,
    );
    let probe: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("probe.json")).unwrap()).unwrap();
    assert_eq!(probe["lambda"], 10000.0);

    okv(with(&[
        "sweep",
        "--tasks",
        test,
        "--probe",
        "probe.json",
        "--prefill",
        "probe-hard",
        "--out",
        "sweep",
    ]));
    let curve = std::fs::read_to_string(d.join("sweep/curve.csv")).unwrap();
    let rows: Vec<&str> = curve.lines().collect();
    assert_eq!(rows[0], "tau,acc,tc_total,tc_per_task");
    assert_eq!(rows.len(), 6);
    let tc: Vec<usize> = rows[1..]
        .iter()
        .map(|r| r.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(tc.windows(2).all(|w| w[1] <= w[0]), "{tc:?}");

    okv(with(&[
        "run", "--tasks", test, "--mode", "default", "--out", "base",
    ]));
    okv(with(&[
        "run",
        "--tasks",
        test,
        "--prefill",
        "probe-soft",
        "--probe",
        "probe.json",
        "--out",
        "pp",
    ]));
    assert_eq!(lines(&d.join("pp/trajectories.jsonl")), 135);
    let config: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("pp/config.json")).unwrap()).unwrap();
    assert_eq!(config["method"], "probe-soft@0.5");

    okv(with(&[
        "label",
        "--tasks",
        test,
        "--out",
        "labels.test.jsonl",
    ]));
    ok(
        &[
            "report",
            "--run",
            "pp",
            "--run",
            "base",
            "--reference",
            "base",
            "--group-by",
            "overall",
            "--labels",
            "labels.test.jsonl",
            "--probe",
            "probe.json",
            "--out",
            "report",
        ],
        d,
    );
    let csv = std::fs::read_to_string(d.join("report/report.csv")).unwrap();
    assert!(csv.starts_with("method,reference,env,difficulty,metric,value"));
    assert!(csv.contains("auroc"));
    assert!(
        csv.lines()
            .any(|l| l.starts_with("probe-soft@0.5,default,") && l.contains(",cost_ratio,")),
        "{csv}"
    );
    assert!(d.join("report/report.json").exists());
}

#[test]
fn extract_covers_every_default_train_task() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "--seed", "0", "--out", "bench"], d);
    ok(
        &[
            "extract",
            "--tasks",
            "bench/single/tasks.train.jsonl",
            "--mock",
            "planted-signal",
            "--parallel",
            "8",
        ],
        d,
    );
    let file = std::fs::read_dir(d.join("cache"))
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    assert_eq!(lines(&file), 900);
    // A second pass finds everything cached.
    ok(
        &[
            "extract",
            "--tasks",
            "bench/single/tasks.train.jsonl",
            "--mock",
            "planted-signal",
        ],
        d,
    );
    assert_eq!(lines(&file), 900);
}

struct Server(Child);

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.0.kill();
        let _ = self.0.wait();
    }
}

#[test]
fn served_mock_passes_conformance_over_http() {
    let dir = small_suite();
    let mut child = bin()
        .args([
            "serve-mock",
            "--profile",
            "planted-signal",
            "--tasks",
            "bench/single/tasks.test.jsonl",
            "--addr",
            "127.0.0.1:0",
        ])
        .current_dir(dir.path())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let mut first = String::new();
    BufReader::new(child.stdout.take().unwrap())
        .read_line(&mut first)
        .unwrap();
    let _server = Server(child);
    let url = first
        .split_whitespace()
        .find(|w| w.starts_with("http://"))
        .unwrap_or_else(|| panic!("no url in {first:?}"));

    let out = ok(&["conformance", "--backend-url", url], dir.path());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("prefill_prefix") && !text.contains("FAIL"),
        "{text}"
    );

    ok(
        &[
            "label",
            "--tasks",
            "bench/single/tasks.test.jsonl",
            "--out",
            "l.jsonl",
            "--backend-url",
            url,
        ],
        dir.path(),
    );
    assert_eq!(lines(&dir.path().join("l.jsonl")), 135);
}
