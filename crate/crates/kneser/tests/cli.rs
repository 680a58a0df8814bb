use std::fs;
use std::process::{Command, Output};

use kneser::io::read_edgelist;
use kneser_core::graph::{exact_distance_transform, graph_diameter_bfs};
use kneser_core::Budget;

fn kneser(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kneser"))
        .args(args)
        .env_remove("KNESER_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = kneser(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn data_lines(text: &str) -> Vec<(u32, u32)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let (u, v) = l.split_once(' ').unwrap();
            (u.parse().unwrap(), v.parse().unwrap())
        })
        .collect()
}

#[test]
fn dist_queries() {
    assert_eq!(
        ok(&["dist", "--k", "5", "--r", "1", "--d", "2", "--s", "0"]),
        "5\n"
    );
    assert_eq!(ok(&["dist", "--k", "5", "--r", "1", "--s", "2"]), "5\n");
    assert_eq!(
        ok(&["dist", "--family", "johnson", "--n", "10", "--k", "5", "--i", "2", "--s", "0"]),
        "3\n"
    );
    assert_eq!(
        ok(&[
            "dist",
            "--family",
            "gen-kneser",
            "--n",
            "13",
            "--k",
            "6",
            "--i",
            "1",
            "--s",
            "2"
        ]),
        "3\n"
    );
}

#[test]
fn invalid_params_exit_2() {
    let out = kneser(&["dist", "--k", "5", "--r", "1", "--d", "9", "--s", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d exceeds diameter 5"));
    assert_eq!(
        kneser(&["dist", "--k", "5", "--r", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kneser(&["dist", "--k", "5", "--r", "1", "--s", "7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        kneser(&["diam", "--k", "5", "--r", "1", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    let outside = kneser(&[
        "dist",
        "--family",
        "gen-kneser",
        "--n",
        "12",
        "--k",
        "6",
        "--i",
        "0",
        "--s",
        "2",
    ]);
    assert_eq!(outside.status.code(), Some(2));
}

#[test]
fn diameter_modes() {
    assert_eq!(
        ok(&["diam", "--k", "5", "--r", "1", "--d", "2", "--mode", "all"]),
        "theorem=5 maxs=5 bfs=5\n"
    );
    assert_eq!(ok(&["diam", "--k", "2", "--r", "1"]), "2\n");
    assert_eq!(
        ok(&["diam", "--k", "7", "--r", "2", "--d", "3", "--mode", "all"]),
        "theorem=2 maxs=3 bfs=3\n"
    );
    assert_eq!(
        ok(&["diam", "--k", "5", "--r", "1", "--mode", "bfs"]),
        "5\n"
    );
}

#[test]
fn budget_from_env_and_flag() {
    let over = Command::new(env!("CARGO_BIN_EXE_kneser"))
        .args(["diam", "--k", "5", "--r", "1", "--mode", "bfs"])
        .env("KNESER_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(over.status.code(), Some(3));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_kneser"))
        .args([
            "diam", "--k", "5", "--r", "1", "--mode", "bfs", "--budget", "500",
        ])
        .env("KNESER_BUDGET", "100")
        .output()
        .unwrap();
    assert!(flag_wins.status.success());
    assert_eq!(
        kneser(&["gen", "--k", "5", "--r", "1", "--budget", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        kneser(&["gen", "--k", "5", "--r", "1", "--budget", "461"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn petersen_export() {
    let text = ok(&["gen", "--k", "2", "--r", "1"]);
    assert_eq!(
        text.lines().next(),
        Some("# family=kneser n=5 k=2 r=1 vertices=10")
    );
    let edges = data_lines(&text);
    assert_eq!(edges.len(), 15);
    assert!(edges.iter().all(|(u, v)| u < v));
    assert!(edges.windows(2).all(|w| w[0] < w[1]));

    let beyond = ok(&["gen", "--k", "2", "--r", "1", "--d", "3"]);
    assert_eq!(beyond, "# family=exact n=5 k=2 r=1 d=3 vertices=10\n");

    let dot = ok(&["gen", "--k", "2", "--r", "1", "--format", "dot"]);
    assert!(dot.starts_with("graph "));
    assert!(dot.contains("[label=\"{1,2}\"]"));
    assert_eq!(dot.matches(" -- ").count(), 15);
}

#[test]
fn export_is_deterministic() {
    let args = [
        "gen", "--family", "johnson", "--n", "9", "--k", "4", "--i", "1",
    ];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn transform_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("k11.txt");
    let path = base.to_str().unwrap();
    ok(&["gen", "--k", "5", "--r", "1", "--out", path]);

    // d = 1 reproduces the graph; d = 2 matches the exact-distance family export.
    let same = ok(&["transform", "--input", path, "--d", "1"]);
    let original = fs::read_to_string(&base).unwrap();
    assert_eq!(data_lines(&same), data_lines(&original));
    assert!(same.lines().next().unwrap().contains("transform=1"));
    let d2 = ok(&["transform", "--input", path, "--d", "2"]);
    let family = ok(&["gen", "--k", "5", "--r", "1", "--d", "2"]);
    assert_eq!(data_lines(&d2), data_lines(&family));

    let (_, graph) = read_edgelist(original.as_bytes()).unwrap();
    for d in 1..=5 {
        let text = ok(&["transform", "--input", path, "--d", &d.to_string()]);
        let (_, reread) = read_edgelist(text.as_bytes()).unwrap();
        let direct = exact_distance_transform(&graph, d, Budget::DEFAULT).unwrap();
        assert_eq!(
            graph_diameter_bfs(&reread, false, Budget::DEFAULT),
            graph_diameter_bfs(&direct, false, Budget::DEFAULT)
        );
    }

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 1\n").unwrap();
    let out = kneser(&["transform", "--input", bad.to_str().unwrap(), "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_report() {
    let out = ok(&["verify", "--k", "5", "--r", "1", "--d", "3"]);
    let lines: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["family"], "exact");
    assert_eq!(lines[0]["params"]["d"], 3);
    assert!(lines[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] != "fail"));
    assert_eq!(lines[1]["summary"]["passes"], 1);

    let johnson = ok(&[
        "verify", "--family", "johnson", "--n", "10", "--k", "5", "--i", "2",
    ]);
    assert!(johnson.contains(r#""family":"johnson""#));
}

#[test]
fn sweep_flags_do_not_fail() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.jsonl");
    let out = kneser(&[
        "sweep",
        "--k-min",
        "7",
        "--k-max",
        "7",
        "--r-min",
        "2",
        "--r-max",
        "2",
        "--no-generalized",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let flagged = text
        .lines()
        .find(|l| l.contains(r#""d":3"#))
        .expect("(7,2,3) report");
    assert!(flagged.contains(r#""status":"flagged""#));
    assert!(text.lines().last().unwrap().contains(r#""flags":1"#));
}

#[test]
fn sweep_under_tiny_budget_skips_everything() {
    let out = kneser(&[
        "sweep",
        "--k-max",
        "4",
        "--n-max",
        "10",
        "--budget",
        "10",
        "--johnson-n-max",
        "9",
        "--gen-kneser-n-max",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    let tuples = summary["summary"]["tuples"].as_u64().unwrap();
    let skips = summary["summary"]["skips"].as_u64().unwrap();
    // Petersen-sized graphs fit; every skip carries its reason.
    assert!(skips > 0 && skips < tuples);
    for line in text.lines().filter(|l| l.contains(r#""name":"budget""#)) {
        assert!(line.contains("exceed the budget of 10"));
    }
}

#[test]
fn sweep_output_is_reproducible() {
    let args = [
        "sweep",
        "--k-max",
        "5",
        "--n-max",
        "12",
        "--johnson-n-max",
        "10",
        "--gen-kneser-n-max",
        "11",
    ];
    let one = ok(&[&args[..], &["--jobs", "1"]].concat());
    let three = ok(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(one, three);
    assert!(one.lines().last().unwrap().contains(r#""fails":0"#));
}

#[test]
fn bench_rows() {
    assert_eq!(
        ok(&["bench", "--k", "5", "--r", "1", "--count", "0"])
            .lines()
            .next(),
        Some("oracle 0 calls in 0 batches")
    );
    let out = ok(&[
        "bench", "--k", "5", "--r", "1", "--d", "3", "--count", "10000",
    ]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("oracle "));
    assert!(rows[1].starts_with("bfs "));
    assert_eq!(
        kneser(&["bench", "--k", "5", "--r", "1", "--budget", "5"])
            .status
            .code(),
        Some(3)
    );
}
