mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::BRIDGE;
use tempfile::TempDir;

fn netrel(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netrel"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn workspace(files: &[(&str, &str)]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in files {
        std::fs::write(dir.path().join(name), body).unwrap();
    }
    dir
}

#[test]
fn compute_bridge_table() {
    let dir = workspace(&[("bridge.txt", BRIDGE)]);
    let o = netrel(
        &["compute", "--input", "bridge.txt", "--p", "0.9"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0.978480000000"), "{text}");
    assert!(text.contains("0.996390000000"));
    assert!(text.contains("avg connected vectors: 20.5"));
    assert!(text.contains("vectors visited: 32"));
}

#[test]
fn compute_bridge_csv_with_counts() {
    let dir = workspace(&[("bridge.txt", BRIDGE)]);
    let o = netrel(
        &[
            "compute",
            "--input",
            "bridge.txt",
            "--p",
            "0.9",
            "--format",
            "csv",
            "--counts",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (rel, counts) = text.split_once("\n\n").unwrap();
    let rel: Vec<&str> = rel.lines().collect();
    assert_eq!(rel[0], "s,t,reliability");
    assert_eq!(rel.len(), 7);
    assert_eq!(rel[1], "1,2,0.988290000000");
    assert!(counts.lines().any(|l| l == "1,4,16"));
    assert!(counts.starts_with("s,t,count\n"));
}

#[test]
fn csv_reparses_to_the_in_memory_result() {
    let g = netrel::generate::random_connected(
        7,
        12,
        3,
        netrel::ArcProbabilities::PerArc((0..12).map(|k| 0.3 + 0.05 * k as f64).collect()),
    )
    .unwrap();
    let dir = workspace(&[("g.txt", &g.to_edge_list())]);
    let o = netrel(
        &["compute", "--input", "g.txt", "--format", "csv", "--counts"],
        dir.path(),
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let r = netrel::all_pairs(&g, Default::default()).unwrap();

    let text = stdout(&o);
    let (rel, counts) = text.split_once("\n\n").unwrap();
    let mut reader = csv::Reader::from_reader(rel.as_bytes());
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let s: usize = rec[0].parse().unwrap();
        let t: usize = rec[1].parse().unwrap();
        assert!(s < t);
        assert_eq!(&rec[2], format!("{:.12}", r.reliability(s - 1, t - 1)));
        rows += 1;
    }
    assert_eq!(rows, 21);
    let mut reader = csv::Reader::from_reader(counts.as_bytes());
    for rec in reader.records() {
        let rec = rec.unwrap();
        let s: usize = rec[0].parse().unwrap();
        let t: usize = rec[1].parse().unwrap();
        assert_eq!(rec[2].parse::<u64>().unwrap(), r.count(s - 1, t - 1));
    }
}

#[test]
fn output_is_identical_across_workers() {
    let dir = workspace(&[("bridge.txt", BRIDGE)]);
    let base = netrel(
        &["compute", "--input", "bridge.txt", "--p", "0.7", "--counts"],
        dir.path(),
    );
    for w in ["2", "4", "7"] {
        let o = netrel(
            &[
                "compute",
                "--input",
                "bridge.txt",
                "--p",
                "0.7",
                "--counts",
                "--workers",
                w,
            ],
            dir.path(),
        );
        assert_eq!(o.stdout, base.stdout);
    }
}

#[test]
fn oracle_on_bridge() {
    let dir = workspace(&[("bridge.txt", BRIDGE)]);
    let o = netrel(
        &["oracle", "--input", "bridge.txt", "--p", "0.9"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max |Δ| = 0"), "{}", stdout(&o));
}

#[test]
fn gen_compute_oracle_round_trip() {
    let dir = workspace(&[]);
    let o = netrel(
        &["gen", "--nodes", "8", "--arcs", "12", "--seed", "7"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(dir.path().join("g.txt"), &o.stdout).unwrap();
    let again = netrel(
        &["gen", "--nodes", "8", "--arcs", "12", "--seed", "7"],
        dir.path(),
    );
    assert_eq!(again.stdout, o.stdout);

    let c = netrel(&["compute", "--input", "g.txt", "--p", "0.9"], dir.path());
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).contains("vectors visited: 4096"));
    let v = netrel(&["oracle", "--input", "g.txt", "--p", "0.9"], dir.path());
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn mc_reports_estimates() {
    let dir = workspace(&[("bridge.txt", BRIDGE)]);
    let args = [
        "mc",
        "--input",
        "bridge.txt",
        "--p",
        "0.9",
        "--samples",
        "20000",
        "--seed",
        "5",
    ];
    let o = netrel(&args, dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("s,t,mean,stderr"));
    assert_eq!(text.lines().filter(|l| l.starts_with("1,")).count(), 3);
    assert_eq!(netrel(&args, dir.path()).stdout, o.stdout);
}

#[test]
fn exit_codes() {
    let many: String = {
        let pairs: Vec<(usize, usize)> = (1..=9)
            .flat_map(|u| (u + 1..=9).map(move |v| (u, v)))
            .take(31)
            .collect();
        let mut s = format!("9 {}\n", pairs.len());
        for (u, v) in pairs {
            s += &format!("{u} {v}\n");
        }
        s
    };
    let dir = workspace(&[
        ("bridge.txt", BRIDGE),
        ("loop.txt", "3 3\n1 2\n2 2\n2 3\n"),
        ("split.txt", "4 2\n1 2\n3 4\n"),
        ("big.txt", &many),
    ]);
    let code = |args: &[&str]| netrel(args, dir.path()).status.code();

    assert_eq!(code(&["compute", "--input", "bridge.txt"]), Some(2));
    assert_eq!(
        code(&["compute", "--input", "missing.txt", "--p", "0.9"]),
        Some(2)
    );
    assert_eq!(code(&["compute", "--p", "0.9"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(
        code(&["compute", "--input", "bridge.txt", "--p", "1.5"]),
        Some(3)
    );
    assert_eq!(
        code(&["compute", "--input", "loop.txt", "--p", "0.9"]),
        Some(3)
    );
    assert_eq!(
        code(&["compute", "--input", "split.txt", "--p", "0.9"]),
        Some(3)
    );
    assert_eq!(
        code(&[
            "compute",
            "--input",
            "split.txt",
            "--p",
            "0.9",
            "--allow-disconnected"
        ]),
        Some(0)
    );
    assert_eq!(
        code(&["compute", "--input", "big.txt", "--p", "0.9"]),
        Some(4)
    );
    assert_eq!(
        code(&["oracle", "--input", "big.txt", "--p", "0.9"]),
        Some(4)
    );
}
