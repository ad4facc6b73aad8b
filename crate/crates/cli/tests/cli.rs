use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn nucleus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nucleus"))
        .args(args)
        .output()
        .expect("run nucleus")
}

fn write_graph(dir: &Path, name: &str, edges: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, edges).unwrap();
    path
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn kappa_column(csv: &str) -> Vec<String> {
    csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect()
}

const RANDOM_GRAPH: &str = "0 1\n0 2\n1 2\n1 3\n2 3\n3 4\n4 5\n5 6\n4 6\n6 7\n2 7\n1 7\n0 7\n8 9\n";

#[test]
fn triangle_peel_writes_three_rows_of_two() {
    let dir = TempDir::new().unwrap();
    let input = write_graph(dir.path(), "tri.txt", "# triangle\n0 1\n1 2\n2 0\n");
    let out = dir.path().join("tri");
    let res = nucleus(&["decompose", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let csv = fs::read_to_string(dir.path().join("tri.kappa.csv")).unwrap();
    assert_eq!(csv, "clique_id,vertices,kappa\n0,0,2\n1,1,2\n2,2,2\n");
    let summary = read_json(&dir.path().join("tri.summary.json"));
    assert_eq!(summary["engine"], "peel");
    assert!(summary["engine_options"].is_null());
    assert_eq!(summary["r_cliques"], 3);
}

#[test]
fn every_engine_writes_the_same_kappa_column() {
    let dir = TempDir::new().unwrap();
    let input = write_graph(dir.path(), "g.txt", RANDOM_GRAPH);
    for decomp in ["core", "truss", "nucleus34"] {
        let mut columns = Vec::new();
        for engine in ["peel", "snd", "and", "and-nonotify"] {
            let prefix = dir.path().join(format!("{decomp}-{engine}"));
            let res = nucleus(&[
                "decompose", "--input", input.to_str().unwrap(), "--decomp", decomp,
                "--engine", engine, "--out", prefix.to_str().unwrap(),
            ]);
            assert!(res.status.success(), "{engine}: {}", String::from_utf8_lossy(&res.stderr));
            let csv = fs::read_to_string(format!("{}.kappa.csv", prefix.display())).unwrap();
            columns.push(csv);
        }
        assert!(columns.windows(2).all(|w| w[0] == w[1]), "{decomp}");
        assert!(!kappa_column(&columns[0]).is_empty() || decomp == "nucleus34");
    }
}

#[test]
fn trace_and_summary_for_local_engines() {
    let dir = TempDir::new().unwrap();
    let input = write_graph(dir.path(), "g.txt", RANDOM_GRAPH);
    let prefix = dir.path().join("run");
    let res = nucleus(&[
        "decompose", "--input", input.to_str().unwrap(), "--decomp", "truss", "--engine", "snd",
        "--threads", "2", "--trace", "--out", prefix.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let trace = fs::read_to_string(dir.path().join("run.trace.csv")).unwrap();
    assert!(trace.starts_with("iteration,kendall_tau,active_ratio,accuracy\n"));
    let last = trace.lines().last().unwrap();
    assert!(last.ends_with(",1.0,1.0,1.0"), "{last}");
    let summary = read_json(&dir.path().join("run.summary.json"));
    assert_eq!(summary["converged"], true);
    assert_eq!(summary["engine"], "snd");
    assert_eq!(summary["engine_options"]["threads"], 2);
    let passes = summary["passes"].as_u64().unwrap() as usize;
    assert_eq!(summary["stats"].as_array().unwrap().len(), passes);
    assert_eq!(trace.lines().count(), passes + 1);
}

#[test]
fn incompatible_options_fail() {
    let dir = TempDir::new().unwrap();
    let input = write_graph(dir.path(), "g.txt", RANDOM_GRAPH);
    let input = input.to_str().unwrap();
    let out = dir.path().join("x");
    let out = out.to_str().unwrap();
    for args in [
        vec!["--engine", "peel", "--threads", "2"],
        vec!["--engine", "peel", "--trace"],
        vec!["--engine", "snd", "--order", "levels"],
        vec!["--engine", "and", "--seed", "3"],
        vec!["--engine", "and-nonotify", "--stop-active-ratio", "0.4"],
        vec!["--engine", "and", "--stop-active-ratio", "1.5"],
        vec!["--engine", "snd", "--threads", "0"],
    ] {
        let mut full = vec!["decompose", "--input", input, "--out", out];
        full.extend(args.iter().copied());
        let res = nucleus(&full);
        assert!(!res.status.success(), "{args:?} should fail");
        assert!(String::from_utf8_lossy(&res.stderr).contains("error"));
    }
    assert!(!dir.path().join("x.kappa.csv").exists());
}

#[test]
fn missing_or_malformed_input_fails() {
    let dir = TempDir::new().unwrap();
    let res = nucleus(&["decompose", "--input", dir.path().join("nope.txt").to_str().unwrap()]);
    assert!(!res.status.success());
    let bad = write_graph(dir.path(), "bad.txt", "0 1\n1 x\n");
    let res = nucleus(&["levels", "--input", bad.to_str().unwrap()]);
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("line 2"));
}

#[test]
fn estimates_bound_exact_values() {
    let dir = TempDir::new().unwrap();
    let input = write_graph(dir.path(), "g.txt", RANDOM_GRAPH);
    let anchors = write_graph(dir.path(), "anchors.txt", "0\n3\n# comment\n7\n9\n");
    let res = nucleus(&[
        "estimate", "--input", input.to_str().unwrap(), "--anchors-file", anchors.to_str().unwrap(),
        "--anchor", "42", "--exact",
    ]);
    assert!(res.status.success());
    let out = String::from_utf8(res.stdout).unwrap();
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("anchor,estimate,exact,error"));
    let mut failures = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells[3].is_empty() {
            let (est, exact): (u32, u32) = (cells[1].parse().unwrap(), cells[2].parse().unwrap());
            assert!(est >= exact, "{line}");
        } else {
            failures += 1;
        }
    }
    assert_eq!(failures, 1);
}

#[test]
fn isolated_vertex_and_triangle_free_edge_estimate_zero() {
    let dir = TempDir::new().unwrap();
    // Identity ids keep vertex 2 as an isolated vertex.
    let input = write_graph(dir.path(), "g.txt", "0 1\n1 3\n");
    let res = nucleus(&["estimate", "--input", input.to_str().unwrap(), "--anchor", "2"]);
    assert!(res.status.success());
    assert!(String::from_utf8(res.stdout).unwrap().contains("\n2,0,,\n"));
    let res = nucleus(&["estimate", "--input", input.to_str().unwrap(), "--decomp", "truss", "--anchor", "0-1"]);
    assert!(res.status.success());
    assert!(String::from_utf8(res.stdout).unwrap().contains("\n0 1,0,,\n"));
}

#[test]
fn all_anchors_failing_is_an_error() {
    let dir = TempDir::new().unwrap();
    let input = write_graph(dir.path(), "g.txt", RANDOM_GRAPH);
    let res = nucleus(&["estimate", "--input", input.to_str().unwrap(), "--decomp", "truss", "--anchor", "0,5"]);
    assert!(!res.status.success());
    let res = nucleus(&["estimate", "--input", input.to_str().unwrap()]);
    assert!(!res.status.success());
}

#[test]
fn levels_report() {
    let dir = TempDir::new().unwrap();
    let k5: String = (0..5).flat_map(|u| (u + 1..5).map(move |v| format!("{u} {v}\n"))).collect();
    let input = write_graph(dir.path(), "k5.txt", &k5);
    let res = nucleus(&["levels", "--input", input.to_str().unwrap()]);
    assert!(res.status.success());
    assert_eq!(String::from_utf8(res.stdout).unwrap(), "1 levels\nlevel,size\n0,5\n");

    let chain = write_graph(dir.path(), "chain.txt", "0 1\n1 2\n1 6\n2 3\n2 4\n6 4\n6 5\n3 4\n4 5\n3 5\n");
    let prefix = dir.path().join("chain");
    let res = nucleus(&["levels", "--input", chain.to_str().unwrap(), "--out", prefix.to_str().unwrap()]);
    assert!(res.status.success());
    assert_eq!(String::from_utf8(res.stdout).unwrap(), "4 levels\n");
    assert_eq!(
        fs::read_to_string(dir.path().join("chain.levels.csv")).unwrap(),
        "level,size\n0,1\n1,1\n2,2\n3,3\n"
    );
}

#[test]
fn repeated_parallel_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let input = write_graph(dir.path(), "g.txt", RANDOM_GRAPH);
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "4", "8", "4"].iter().enumerate() {
        let prefix = dir.path().join(format!("r{i}"));
        let res = nucleus(&[
            "decompose", "--input", input.to_str().unwrap(), "--decomp", "truss", "--engine", "and",
            "--order", "random", "--seed", "5", "--threads", threads, "--out", prefix.to_str().unwrap(),
        ]);
        assert!(res.status.success());
        outputs.push(fs::read(format!("{}.kappa.csv", prefix.display())).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}
