use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hardcore"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hardcore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_line(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const K1: &str = r#"{"vertices":1,"edges":[],"root":0,"delta":3}"#;
const P2: &str = r#"{"vertices":2,"edges":[[0,1]],"root":0,"delta":3}"#;
const P3: &str = r#"{"vertices":3,"edges":[[0,1],[1,2]],"root":1,"delta":3}"#;

#[test]
fn ratio_single_vertex() {
    let out = run(&["ratio", "--graph", K1, "--lambda", "2"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"z_in":"2","z_out":"1","ratio":"2"}"#
    );
}

#[test]
fn ratio_edge_at_minus_half() {
    let v = json_line(&run(&["ratio", "--graph", P2, "--lambda=-1/2"]));
    assert_eq!(v["ratio"], "-1");
}

#[test]
fn ratio_path_counts_independent_sets() {
    let v = json_line(&run(&["ratio", "--graph", P3, "--lambda", "1"]));
    let zi: i64 = v["z_in"].as_str().unwrap().parse().unwrap();
    let zo: i64 = v["z_out"].as_str().unwrap().parse().unwrap();
    assert_eq!(zi + zo, 5);
}

#[test]
fn ratio_reads_graph_file_and_reports_infinity() {
    let path = tmp("p2.json");
    std::fs::write(
        &path,
        r#"{"vertices":3,"edges":[[0,1],[1,2]],"root":0,"delta":2}"#,
    )
    .unwrap();
    let v = json_line(&run(&[
        "ratio",
        "--graph",
        path.to_str().unwrap(),
        "--lambda=-1/2",
    ]));
    assert_eq!(v["z_out"], "0");
    assert_eq!(v["ratio"], "inf");
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(
        run(&["ratio", "--graph", "{not json", "--lambda", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["ratio", "--graph", K1, "--lambda", "one"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["ratio", "--graph", K1]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn degree_violation_exits_three() {
    let star = r#"{"vertices":5,"edges":[[0,1],[0,2],[0,3],[0,4]],"root":0,"delta":3}"#;
    let out = run(&["ratio", "--graph", star, "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn implement_rejects_real_parameter() {
    let out = run(&[
        "implement",
        "--lambda0",
        "2",
        "--delta",
        "3",
        "--target",
        "1",
        "--eps",
        "1/10",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&[
        "implement",
        "--lambda0",
        "1+i",
        "--delta",
        "3",
        "--target",
        "1",
        "--eps",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn zeros_finds_tree_with_root_ratio_minus_one() {
    let v = json_line(&run(&["zeros", "--lambda=-1/4", "--delta", "3"]));
    assert_eq!(v["found"], true);
    let tree = serde_json::to_string(&v["tree"]).unwrap();
    let r = json_line(&run(&["ratio", "--graph", &tree, "--lambda=-1/4"]));
    assert_eq!(r["ratio"], "-1");
}

#[test]
fn classify_outputs() {
    let v = json_line(&run(&["classify", "--lambda=-1/4"]));
    assert_eq!(v["kind"], "parabolic");
    let v = json_line(&run(&["classify", "--map", "1 0 0 1"]));
    assert_eq!(v["kind"], "identity");
    assert_eq!(
        run(&["classify", "--map", "1 1 1 1"]).status.code(),
        Some(3)
    );
}

#[test]
fn regions_prints_three_lines() {
    let out = run(&["regions", "--delta", "3", "--lambda", "1/10"]);
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["region"], "cardioid");
    assert_eq!(lines[0]["status"], "inside");
    assert_eq!(lines[1]["region"], "shearer");
    assert_eq!(lines[2]["candidate"], false);
}

#[test]
fn render_activity_is_deterministic_pgm() {
    let a = tmp("a.pgm");
    let b = tmp("b.pgm");
    for (p, threads) in [(&a, "1"), (&b, "2")] {
        let out = run(&[
            "render-activity",
            "--d",
            "2",
            "--depth",
            "10",
            "--rect=-1,-1,1,1",
            "--px",
            "40x30",
            "--threshold",
            "1",
            "--out",
            p.to_str().unwrap(),
            "--threads",
            threads,
        ]);
        assert!(out.status.success());
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let header = b"P5\n40 30\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert_eq!(bytes.len(), header.len() + 40 * 30);
    assert!(bytes[header.len()..].iter().all(|&p| p == 0 || p == 255));
}

#[test]
fn render_cardioid_csv() {
    let p = tmp("card.csv");
    let q = tmp("card2.csv");
    assert!(run(&[
        "render-cardioid",
        "--delta",
        "3",
        "--out",
        p.to_str().unwrap()
    ])
    .status
    .success());
    assert!(run(&[
        "render-cardioid",
        "--delta",
        "3",
        "--out",
        q.to_str().unwrap()
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text, std::fs::read_to_string(&q).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im"));
    let pts: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(pts.len(), 4096);
    // θ = 0 gives the positive real endpoint (Δ-1)^(Δ-1)/(Δ-2)^Δ = 4.
    assert!(pts
        .iter()
        .any(|&(x, y)| (x - 4.0).abs() < 1e-9 && y.abs() < 1e-9));
    assert!(pts
        .iter()
        .any(|&(x, y)| (x + 4.0 / 27.0).abs() < 1e-9 && y.abs() < 1e-9));
}

#[test]
fn cayley_zeros_csv() {
    let p = tmp("z.csv");
    assert!(run(&[
        "cayley-zeros",
        "--d",
        "2",
        "--n",
        "2",
        "--out",
        p.to_str().unwrap()
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&p).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,re,im,residual"));
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    // Depth 1 is a root with two leaf children: 1 + 3λ + λ², roots (-3 ± √5)/2.
    let depth1: Vec<f64> = rows
        .iter()
        .filter(|r| r[0] == "1")
        .map(|r| r[1].parse().unwrap())
        .collect();
    assert_eq!(depth1.len(), 2);
    let golden = [(-3.0 - 5f64.sqrt()) / 2.0, (-3.0 + 5f64.sqrt()) / 2.0];
    for (x, g) in depth1.iter().zip(golden) {
        assert!((x - g).abs() < 1e-12);
    }
    assert_eq!(rows.iter().filter(|r| r[0] == "2").count(), 5);
    assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap() < 1e-30));
}

#[test]
fn manifest_records_run() {
    let out = tmp("m-out.csv");
    let man = tmp("manifest.json");
    let status = run(&[
        "render-cardioid",
        "--delta",
        "4",
        "--out",
        out.to_str().unwrap(),
        "--seed",
        "7",
        "--manifest",
        man.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&man).unwrap()).unwrap();
    assert_eq!(m["command"], "render-cardioid");
    assert_eq!(m["seed"], 7);
    assert_eq!(m["exit_code"], 0);
    assert_eq!(m["outputs"][0], out.to_str().unwrap());

    let fail = run(&[
        "ratio",
        "--graph",
        "{",
        "--lambda",
        "1",
        "--manifest",
        man.to_str().unwrap(),
    ]);
    assert_eq!(fail.status.code(), Some(2));
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&man).unwrap()).unwrap();
    assert_eq!(m["exit_code"], 2);
}
