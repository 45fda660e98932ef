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

//! Experiment orchestration and CSV output.
//!
//! Reals are written with six significant digits in plain decimal notation
//! and `.` as the decimal separator, so reruns produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::config::{Experiment, SimConfig};
use crate::engine::{run_coverage, run_throughput, CoverageResult};
use crate::metrics::ThroughputReport;
use crate::policy::{AllocationPolicy, Case};
use crate::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const COVERAGE_CDF_HEADER: &str = "ratio,band_ghz,metric,sample_value";
pub const GAPS_HEADER: &str = "ratio,percentile,gap_db";
pub const THROUGHPUT_HEADER: &str = "case,policy,lambda,seed,mean_user_tput_mbps,completed_files";
pub const SUMMARY_HEADER: &str =
    "case,policy,lambda,seeds,mean_user_tput_mbps,mean_completed_files";

/// Percentiles reported in gaps.csv.
pub const GAP_PERCENTILES: [f64; 2] = [0.05, 0.5];

/// Formats a real with six significant digits.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mut exp = x.abs().log10().floor() as i32;
    let fixed = |e: i32| format!("{:.*}", (5 - e).max(0) as usize, x);
    let mut s = fixed(exp);
    // rounding can carry into the next decade, e.g. 99.99996 -> 100.0000
    if s.parse::<f64>()
        .map(|r| r.abs() >= 10f64.powi(exp + 1))
        .unwrap_or(false)
    {
        exp += 1;
        s = fixed(exp);
    }
    if !(-5..6).contains(&exp) {
        s = format!("{x:.5e}");
    }
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s.remove(0);
    }
    s
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Manifest text: header comments with version, command and seeds, then the
/// effective configuration. Feeding it back through the config parser
/// reproduces the configuration.
pub fn manifest(cfg: &SimConfig, seeds: &[u64]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# lteu-sim run manifest");
    let _ = writeln!(out, "# version = {VERSION}");
    let _ = writeln!(out, "# command = {}", cfg.experiment);
    let seeds: Vec<String> = seeds.iter().map(u64::to_string).collect();
    let _ = writeln!(out, "# seeds = {}", seeds.join(","));
    out.push_str(&cfg.emit());
    out
}

/// Files written by a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outputs {
    pub files: Vec<PathBuf>,
}

pub fn coverage_cdf_csv(result: &CoverageResult) -> String {
    let mut out = String::from(COVERAGE_CDF_HEADER);
    out.push('\n');
    for ((ratio, band, metric), curve) in &result.curves {
        let ghz = fmt_real(result.band_ghz[band]);
        for &v in curve.samples() {
            let _ = writeln!(out, "{ratio},{ghz},{metric},{}", fmt_real(v));
        }
    }
    out
}

pub fn gaps_csv(result: &CoverageResult, cfg: &SimConfig) -> Result<String> {
    let mut out = String::from(GAPS_HEADER);
    out.push('\n');
    for &ratio in &cfg.coverage_ratios {
        for p in GAP_PERCENTILES {
            let gap = result.rsrp_gap(ratio, p)?;
            let _ = writeln!(out, "{ratio},{},{}", fmt_real(p), fmt_real(gap));
        }
    }
    Ok(out)
}

/// Coverage over `cfg.coverage_seeds` seeds, samples pooled per curve.
pub fn coverage_experiment(cfg: &SimConfig) -> Result<(Vec<u64>, CoverageResult)> {
    let seeds = cfg.seed_list(cfg.coverage_seeds.max(1));
    let per_seed: Vec<CoverageResult> = seeds
        .par_iter()
        .map(|&s| run_coverage(cfg, s))
        .collect::<Result<_>>()?;
    Ok((seeds, CoverageResult::pooled(&per_seed)))
}

pub fn write_coverage(cfg: &SimConfig, out_dir: &Path) -> Result<Outputs> {
    let cfg = SimConfig {
        experiment: Experiment::Coverage,
        ..cfg.clone()
    };
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let (seeds, result) = coverage_experiment(&cfg)?;
    let files = vec![
        out_dir.join("coverage_cdf.csv"),
        out_dir.join("gaps.csv"),
        out_dir.join("manifest.txt"),
    ];
    write_file(&files[0], &coverage_cdf_csv(&result))?;
    write_file(&files[1], &gaps_csv(&result, &cfg)?)?;
    write_file(&files[2], &manifest(&cfg, &seeds))?;
    Ok(Outputs { files })
}

/// One simulation per (case, policy, load, seed), in that nesting order.
pub fn throughput_experiment(cfg: &SimConfig) -> Result<(Vec<u64>, Vec<ThroughputReport>)> {
    let seeds = cfg.seed_list(cfg.throughput_seeds);
    let mut combos: Vec<(Case, AllocationPolicy, f64, u64)> = Vec::new();
    for &case in &cfg.cases {
        for &policy in &cfg.policies {
            for &load in &cfg.loads {
                for &seed in &seeds {
                    combos.push((case, policy, load, seed));
                }
            }
        }
    }
    // par_iter().collect() preserves input order
    let reports = combos
        .par_iter()
        .map(|&(case, policy, load, seed)| run_throughput(cfg, case, policy, load, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok((seeds, reports))
}

pub fn throughput_csv(reports: &[ThroughputReport]) -> String {
    let mut out = String::from(THROUGHPUT_HEADER);
    out.push('\n');
    for r in reports {
        let mean = r
            .mean_user_throughput_mbps()
            .map_or_else(|| "nan".to_string(), fmt_real);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.case,
            r.policy,
            fmt_real(r.lambda),
            r.seed,
            mean,
            r.completed_files()
        );
    }
    out
}

/// Seed-averaged mean throughput per (case, policy, load). Seeds with no
/// completed file are left out of the average.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub case: Case,
    pub policy: AllocationPolicy,
    pub lambda: f64,
    pub seeds: usize,
    pub mean_user_tput_mbps: Option<f64>,
    pub mean_completed_files: f64,
}

pub fn summarize(reports: &[ThroughputReport]) -> Vec<SummaryRow> {
    let mut rows: Vec<SummaryRow> = Vec::new();
    let mut i = 0;
    while i < reports.len() {
        let head = &reports[i];
        let group: Vec<&ThroughputReport> = reports[i..]
            .iter()
            .take_while(|r| {
                r.case == head.case && r.policy == head.policy && r.lambda == head.lambda
            })
            .collect();
        i += group.len();
        let means: Vec<f64> = group
            .iter()
            .filter_map(|r| r.mean_user_throughput_mbps())
            .collect();
        rows.push(SummaryRow {
            case: head.case,
            policy: head.policy,
            lambda: head.lambda,
            seeds: means.len(),
            mean_user_tput_mbps: (!means.is_empty())
                .then(|| means.iter().sum::<f64>() / means.len() as f64),
            mean_completed_files: group
                .iter()
                .map(|r| r.completed_files() as f64)
                .sum::<f64>()
                / group.len() as f64,
        });
    }
    rows
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        let mean = r
            .mean_user_tput_mbps
            .map_or_else(|| "nan".to_string(), fmt_real);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.case,
            r.policy,
            fmt_real(r.lambda),
            r.seeds,
            mean,
            fmt_real(r.mean_completed_files)
        );
    }
    out
}

pub fn write_throughput(cfg: &SimConfig, out_dir: &Path) -> Result<Outputs> {
    let cfg = SimConfig {
        experiment: Experiment::Throughput,
        ..cfg.clone()
    };
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let (seeds, reports) = throughput_experiment(&cfg)?;
    let files = vec![
        out_dir.join("throughput.csv"),
        out_dir.join("summary.csv"),
        out_dir.join("manifest.txt"),
    ];
    write_file(&files[0], &throughput_csv(&reports))?;
    write_file(&files[1], &summary_csv(&summarize(&reports)))?;
    write_file(&files[2], &manifest(&cfg, &seeds))?;
    Ok(Outputs { files })
}

/// Entry point shared by the binary: runs `cfg.experiment` into `out_dir`.
pub fn run(cfg: &SimConfig, out_dir: &Path) -> Result<Outputs> {
    match cfg.experiment {
        Experiment::Coverage => write_coverage(cfg, out_dir),
        Experiment::Throughput => write_throughput(cfg, out_dir),
    }
}
