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

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//!     cargo test -p lteu-sim --test acceptance

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use lteu_sim::channel::{inh_los_pathloss, penetration_loss, umi_los_pathloss, PenetrationBand};
use lteu_sim::cli;
use lteu_sim::config::SimConfig;
use lteu_sim::engine::{run_coverage, ThroughputRun, ThroughputSim};
use lteu_sim::policy::{
    allocate_fixed, allocate_flexible, best_assignment, candidate_carriers, counted_rate,
    fixed_assignment, select_mode, AllocationPolicy, Case, Mode, RateEstimate, UNLICENSED_CARRIERS,
};
use lteu_sim::scenario::{CarrierId, RatioLabel, UE_CARRIER_CAPABILITY};
use lteu_sim::traffic::DEFAULT_FILE_BITS;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn close(x: f64, want: f64, tol: f64) -> bool {
    (x - want).abs() <= tol
}

fn formula_oracles() -> Verdict {
    let cases = [
        ("InH 10 m @ 2.6 GHz", inh_los_pathloss(10.0, 2.6), 58.00),
        ("InH 10 m @ 5.8 GHz", inh_los_pathloss(10.0, 5.8), 64.97),
        (
            "UMi 100 m",
            umi_los_pathloss(100.0, 2.6, 10.0, 1.5).unwrap(),
            80.30,
        ),
        (
            "UMi 200 m",
            umi_los_pathloss(200.0, 2.6, 10.0, 1.5).unwrap(),
            88.91,
        ),
        (
            "penetration 5 GHz, 25 m",
            penetration_loss(PenetrationBand::Ghz5, 25.0).unwrap(),
            39.5,
        ),
    ];
    let bad: Vec<String> = cases
        .iter()
        .filter(|(_, got, want)| !close(*got, *want, 0.01))
        .map(|(name, got, want)| format!("{name}: {got:.4} != {want}"))
        .collect();
    let shown: Vec<String> = cases
        .iter()
        .map(|(_, got, _)| format!("{got:.2}"))
        .collect();
    if bad.is_empty() {
        verdict(true, format!("[{}] dB within 0.01", shown.join(", ")))
    } else {
        verdict(false, bad.join("; "))
    }
}

fn band_offset() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let d = rng.random_range(1.0..=120.0);
        let off = inh_los_pathloss(d, 5.8) - inh_los_pathloss(d, 2.6);
        worst = worst.max((off - 6.97).abs());
    }
    verdict(
        worst <= 0.01,
        format!("max |offset - 6.97| = {worst:.5} dB over 100 distances"),
    )
}

fn coverage() -> Verdict {
    let start = Instant::now();
    let cfg = SimConfig {
        shadowing_sigma_db: 3.0,
        penetration: false,
        coverage_samples: 10_000,
        ..SimConfig::default()
    };
    let seeds: Vec<u64> = (1..=5).collect();
    let per_seed: Vec<_> = seeds
        .par_iter()
        .map(|&s| run_coverage(&cfg, s).unwrap())
        .collect();
    let gap = |ratio| {
        per_seed
            .iter()
            .map(|r| r.rsrp_gap(ratio, 0.5).unwrap())
            .sum::<f64>()
            / per_seed.len() as f64
    };
    let (g4, g8, g16) = (
        gap(RatioLabel::R4x4),
        gap(RatioLabel::R4x8),
        gap(RatioLabel::R4x16),
    );
    let elapsed = start.elapsed();
    let checks = [
        ("4:4 in [6,12]", (6.0..=12.0).contains(&g4)),
        ("strict ordering", g4 > g8 && g8 > g16),
        ("4:16 <= 4", g16 <= 4.0),
        ("< 30 s", elapsed < Duration::from_secs(30)),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    verdict(
        failed.is_empty(),
        format!(
            "median RSRP gap 4:4 {g4:.2} dB, 4:8 {g8:.2} dB, 4:16 {g16:.2} dB in {:.1} s{}",
            elapsed.as_secs_f64(),
            if failed.is_empty() {
                String::new()
            } else {
                format!("; failed: {}", failed.join(", "))
            }
        ),
    )
}

struct Sweep {
    runs: Vec<ThroughputRun>,
    elapsed: Duration,
}

/// The full 8-combination, 20-seed throughput sweep at default settings.
fn throughput_sweep() -> Sweep {
    let start = Instant::now();
    let cfg = SimConfig::default();
    let mut combos = Vec::new();
    for case in [Case::CaOnly, Case::DcSa] {
        for policy in [AllocationPolicy::Fixed, AllocationPolicy::Flexible] {
            for lambda in [2.5, 10.0] {
                for seed in 1..=20u64 {
                    combos.push((case, policy, lambda, seed));
                }
            }
        }
    }
    let runs = combos
        .par_iter()
        .map(|&(case, policy, lambda, seed)| {
            ThroughputSim::new(&cfg, case, policy, lambda, seed)
                .unwrap()
                .run()
        })
        .collect();
    Sweep {
        runs,
        elapsed: start.elapsed(),
    }
}

fn throughput(sweep: &Sweep) -> Verdict {
    let reports: Vec<_> = sweep.runs.iter().map(|r| r.report.clone()).collect();
    let mut mean = BTreeMap::new();
    for row in cli::summarize(&reports) {
        let key = (row.case.label(), row.policy.label(), row.lambda.to_string());
        mean.insert(key, row.mean_user_tput_mbps.unwrap_or(f64::NAN));
    }
    let m = |case: Case, policy: AllocationPolicy, lambda: f64| {
        mean[&(case.label(), policy.label(), lambda.to_string())]
    };
    let gain =
        |policy, lambda| m(Case::DcSa, policy, lambda) / m(Case::CaOnly, policy, lambda) - 1.0;
    let policies = [AllocationPolicy::Fixed, AllocationPolicy::Flexible];
    let loads = [2.5, 10.0];

    let a = policies.iter().all(|&p| {
        loads
            .iter()
            .all(|&l| m(Case::DcSa, p, l) >= m(Case::CaOnly, p, l))
    });
    let b = loads
        .iter()
        .all(|&l| gain(AllocationPolicy::Flexible, l) >= gain(AllocationPolicy::Fixed, l));
    let c = gain(AllocationPolicy::Flexible, 2.5) >= 0.20;
    let d = [Case::CaOnly, Case::DcSa]
        .iter()
        .all(|&case| policies.iter().all(|&p| m(case, p, 10.0) < m(case, p, 2.5)));
    let fast = sweep.elapsed < Duration::from_secs(300);

    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    verdict(
        a && b && c && d && fast,
        format!(
            "(a) {} (b) {} (c) {} (d) {}; gains fixed {:.1}%/{:.1}%, flexible {:.1}%/{:.1}% at 2.5/10; \
             flexible CA {:.1}/{:.1}, DC/SA {:.1}/{:.1} Mbit/s; {:.1} s",
            mark(a),
            mark(b),
            mark(c),
            mark(d),
            100.0 * gain(AllocationPolicy::Fixed, 2.5),
            100.0 * gain(AllocationPolicy::Fixed, 10.0),
            100.0 * gain(AllocationPolicy::Flexible, 2.5),
            100.0 * gain(AllocationPolicy::Flexible, 10.0),
            m(Case::CaOnly, AllocationPolicy::Flexible, 2.5),
            m(Case::CaOnly, AllocationPolicy::Flexible, 10.0),
            m(Case::DcSa, AllocationPolicy::Flexible, 2.5),
            m(Case::DcSa, AllocationPolicy::Flexible, 10.0),
            sweep.elapsed.as_secs_f64(),
        ),
    )
}

fn conservation_and_determinism(sweep: &Sweep) -> Verdict {
    let mut completed = 0usize;
    let mut violations = 0usize;
    for run in &sweep.runs {
        for rec in run.jobs.iter().filter(|r| r.job.completion_s.is_some()) {
            completed += 1;
            if rec.served_bits != DEFAULT_FILE_BITS {
                violations += 1;
            }
        }
    }

    let cfg = SimConfig {
        duration_s: 20.0,
        throughput_seeds: 3,
        coverage_samples: 2000,
        coverage_seeds: 2,
        ..SimConfig::default()
    };
    let mut identical = true;
    let mut compared = 0;
    for experiment in ["coverage", "throughput"] {
        let first = tempfile::tempdir().unwrap();
        let second = tempfile::tempdir().unwrap();
        let mut cfg = cfg.clone();
        cfg.set("run.experiment", experiment).unwrap();
        cli::run(&cfg, first.path()).unwrap();
        let replay = SimConfig::from_file(&first.path().join("manifest.txt")).unwrap();
        cli::run(&replay, second.path()).unwrap();
        for entry in fs::read_dir(first.path()).unwrap() {
            let name = entry.unwrap().file_name();
            compared += 1;
            identical &= fs::read(first.path().join(&name)).unwrap()
                == fs::read(second.path().join(&name)).unwrap();
        }
    }
    verdict(
        violations == 0 && completed > 0 && identical,
        format!(
            "{completed} completed files, {violations} with served bits != {DEFAULT_FILE_BITS}; \
             {compared} output files {} on manifest replay",
            if identical {
                "byte-identical"
            } else {
                "DIFFER"
            }
        ),
    )
}

fn policy_structure() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut problems = Vec::new();
    let all_carriers: Vec<CarrierId> = (1..=4).map(CarrierId).collect();

    for mode in Mode::ALL {
        let cand = candidate_carriers(mode);
        for _ in 0..1000 {
            // coarse values so that ties are common
            let est: RateEstimate = all_carriers
                .iter()
                .map(|&c| (c, rng.random_range(0..5) as f64 * 10.0))
                .collect();
            let (set, rate) = best_assignment(mode, &est);
            let optimal = cand
                .assignments()
                .iter()
                .all(|s| counted_rate(s, &est) <= rate);
            let unl = UNLICENSED_CARRIERS[rng.random_range(0..2)];
            let fixed = fixed_assignment(mode, unl);
            for s in [&set, &fixed] {
                if !cand.admits(s) || s.len() > UE_CARRIER_CAPABILITY {
                    problems.push(format!("{mode:?}: {s:?} infeasible"));
                }
            }
            if !optimal {
                problems.push(format!("{mode:?}: {set:?} not optimal"));
            }
        }
    }

    for _ in 0..1000 {
        let n = rng.random_range(0..200);
        let ues: Vec<usize> = (0..n)
            .map(|_| rng.random_range(0..10_000))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let k = rng.random_range(1..=4);
        let carriers = &all_carriers[..k];
        let alloc = allocate_fixed(&ues, carriers).unwrap();
        let mut counts = vec![0usize; k];
        for c in alloc.values() {
            counts[(c.0 - 1) as usize] += 1;
        }
        let spread = counts.iter().max().unwrap() - counts.iter().min().unwrap();
        if spread > 1 || alloc.len() != ues.len() {
            problems.push(format!("fixed allocation counts {counts:?}"));
        }
    }

    // every weak ordering (ties included) of 2 and 3 carrier estimates
    let mut orderings = 0;
    for ids in [
        vec![CarrierId(3), CarrierId(4)],
        vec![CarrierId(2), CarrierId(3), CarrierId(4)],
    ] {
        let n = ids.len();
        for code in 0..n.pow(n as u32) {
            let levels: Vec<usize> = (0..n).map(|i| code / n.pow(i as u32) % n).collect();
            let est: RateEstimate = ids
                .iter()
                .zip(&levels)
                .map(|(&c, &l)| (c, 1.0 + l as f64))
                .collect();
            let top = *levels.iter().max().unwrap();
            let want = ids[levels.iter().position(|&l| l == top).unwrap()];
            orderings += 1;
            if allocate_flexible(&est).unwrap() != want {
                problems.push(format!("flexible picked wrong carrier for {est:?}"));
            }
        }
    }
    for code in 0..27 {
        let levels: Vec<usize> = (0..3).map(|i| code / 3usize.pow(i) % 3).collect();
        let per_mode: BTreeMap<Mode, f64> = Mode::ALL
            .iter()
            .zip(&levels)
            .map(|(&m, &l)| (m, l as f64))
            .collect();
        let top = *levels.iter().max().unwrap();
        let want = [Mode::Sa, Mode::Dc, Mode::Ca]
            .into_iter()
            .find(|m| per_mode[m] == top as f64)
            .unwrap();
        orderings += 1;
        if select_mode(&per_mode) != want {
            problems.push(format!("mode selection wrong for {per_mode:?}"));
        }
    }

    verdict(
        problems.is_empty(),
        if problems.is_empty() {
            format!("3x1000 random assignments feasible and optimal, 1000 fixed splits balanced, {orderings} orderings exact")
        } else {
            format!("{} problems, first: {}", problems.len(), problems[0])
        },
    )
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |n: usize, name: &str, v: Verdict| {
        all &= v.pass;
        println!(
            "criterion {n} ({name}): {} - {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    };
    report(1, "formula oracles", formula_oracles());
    report(2, "band offset", band_offset());
    report(3, "coverage", coverage());
    let sweep = throughput_sweep();
    report(4, "throughput", throughput(&sweep));
    report(
        5,
        "conservation and determinism",
        conservation_and_determinism(&sweep),
    );
    report(6, "policy structure", policy_structure());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
