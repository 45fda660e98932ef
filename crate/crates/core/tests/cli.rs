// Copyright 2026 The lteu-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! End-to-end checks of the command-line binary and its CSV outputs.

use std::fs;
use std::path::Path;
use std::process::Command;

use lteu_sim::cli::{COVERAGE_CDF_HEADER, GAPS_HEADER, SUMMARY_HEADER, THROUGHPUT_HEADER};
use lteu_sim::config::SimConfig;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lteu-sim"))
}

fn run_ok(args: &[&str], out: &Path) {
    let status = bin().args(args).arg("--out").arg(out).output().unwrap();
    assert!(
        status.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&status.stderr)
    );
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

const COVERAGE_ARGS: &[&str] = &[
    "coverage",
    "--ratios",
    "4:4,4:8,4:16",
    "--samples",
    "2000",
    "--seed",
    "7",
];
const THROUGHPUT_ARGS: &[&str] = &[
    "throughput",
    "--cases",
    "ca,dcsa",
    "--policies",
    "fixed,flexible",
    "--loads",
    "2.5,10",
    "--seeds",
    "20",
    "--duration",
    "5",
];

#[test]
fn coverage_writes_six_curves_per_metric() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(COVERAGE_ARGS, dir.path());
    let cdf = read(dir.path(), "coverage_cdf.csv");
    let mut lines = cdf.lines();
    assert_eq!(lines.next(), Some(COVERAGE_CDF_HEADER));
    let mut curves = std::collections::BTreeMap::<(String, String, String), usize>::new();
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 4);
        f[3].parse::<f64>().unwrap();
        *curves
            .entry((f[0].into(), f[1].into(), f[2].into()))
            .or_default() += 1;
    }
    // 3 ratios x 2 bands, for each of rsrp and sinr
    assert_eq!(curves.len(), 12);
    assert!(curves.values().all(|&n| n == 2000));
    let rsrp = curves.keys().filter(|k| k.2 == "rsrp_dbm").count();
    assert_eq!(rsrp, 6);

    let gaps = read(dir.path(), "gaps.csv");
    assert_eq!(gaps.lines().next(), Some(GAPS_HEADER));
    assert_eq!(gaps.lines().count(), 1 + 3 * 2);
}

#[test]
fn throughput_writes_one_row_per_run() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(THROUGHPUT_ARGS, dir.path());
    let tp = read(dir.path(), "throughput.csv");
    assert_eq!(tp.lines().next(), Some(THROUGHPUT_HEADER));
    let rows: Vec<&str> = tp.lines().skip(1).collect();
    assert_eq!(rows.len(), 160);
    for row in &rows {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f.len(), 6);
        assert!(["ca", "dcsa"].contains(&f[0]));
        assert!(["fixed", "flexible"].contains(&f[1]));
        f[4].parse::<f64>().unwrap();
        f[5].parse::<usize>().unwrap();
    }
    let summary = read(dir.path(), "summary.csv");
    assert_eq!(summary.lines().next(), Some(SUMMARY_HEADER));
    assert_eq!(summary.lines().count(), 1 + 8);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [COVERAGE_ARGS, THROUGHPUT_ARGS] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        run_ok(args, a.path());
        run_ok(args, b.path());
        for entry in fs::read_dir(a.path()).unwrap() {
            let name = entry.unwrap().file_name();
            let x = fs::read(a.path().join(&name)).unwrap();
            let y = fs::read(b.path().join(&name)).unwrap();
            assert!(x == y, "{name:?} differs");
        }
    }
}

#[test]
fn manifest_reproduces_the_run() {
    let first = tempfile::tempdir().unwrap();
    run_ok(THROUGHPUT_ARGS, first.path());
    let manifest = first.path().join("manifest.txt");
    let cfg = SimConfig::from_file(&manifest).unwrap();
    assert_eq!(cfg.throughput_seeds, 20);
    assert_eq!(cfg.duration_s, 5.0);
    assert_eq!(cfg.seed, 1);

    let second = tempfile::tempdir().unwrap();
    run_ok(
        &["throughput", "--config", manifest.to_str().unwrap()],
        second.path(),
    );
    for name in ["throughput.csv", "summary.csv", "manifest.txt"] {
        assert_eq!(
            read(first.path(), name),
            read(second.path(), name),
            "{name}"
        );
    }
}

#[test]
fn config_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "# comment\nradio.se_cap = 6\ntraffic.lambda = fast\n").unwrap();
    let out = bin()
        .args(["throughput", "--config", bad.to_str().unwrap(), "--out"])
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("line 3") && err.contains("traffic.lambda"),
        "{err}"
    );
    assert!(!dir.path().join("out").exists());

    fs::write(&bad, "no.such_key = 1\n").unwrap();
    let out = bin()
        .args(["coverage", "--config", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success());

    let out = bin()
        .args(["coverage", "--ratios", "4:5"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
