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

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lteu_sim::cli;
use lteu_sim::config::{Experiment, SimConfig};
use lteu_sim::policy::{AllocationPolicy, Case};
use lteu_sim::scenario::RatioLabel;

#[derive(Parser)]
#[command(
    name = "lteu-sim",
    version,
    about = "LTE-U coverage and CA vs DC/standalone throughput simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Flat `section.key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// First seed; further seeds count up from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of seeds.
    #[arg(long)]
    seeds: Option<usize>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Licensed vs unlicensed coverage CDFs per layout ratio.
    Coverage {
        #[command(flatten)]
        common: Common,
        /// Comma-separated ratios, e.g. 4:4,4:8,4:16.
        #[arg(long, value_delimiter = ',')]
        ratios: Option<Vec<RatioLabel>>,
        /// Test points per seed.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Mean user throughput per case, policy, load and seed.
    Throughput {
        #[command(flatten)]
        common: Common,
        /// Comma-separated cases: ca, dcsa.
        #[arg(long, value_delimiter = ',')]
        cases: Option<Vec<Case>>,
        /// Comma-separated policies: fixed, flexible.
        #[arg(long, value_delimiter = ',')]
        policies: Option<Vec<AllocationPolicy>>,
        /// Comma-separated loads in files/s.
        #[arg(long, value_delimiter = ',')]
        loads: Option<Vec<f64>>,
        /// Simulated seconds per run.
        #[arg(long)]
        duration: Option<f64>,
    },
}

fn base_config(common: &Common) -> lteu_sim::Result<SimConfig> {
    let mut cfg = match &common.config {
        Some(path) => SimConfig::from_file(path)?,
        None => SimConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn apply_override(cfg: &mut SimConfig, key: &str, value: String) -> lteu_sim::Result<()> {
    cfg.set(key, &value).map_err(|msg| lteu_sim::Error::Config {
        line: 0,
        key: key.to_string(),
        msg,
    })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn build(command: &Command) -> lteu_sim::Result<(SimConfig, PathBuf)> {
    match command {
        Command::Coverage {
            common,
            ratios,
            samples,
        } => {
            let mut cfg = base_config(common)?;
            cfg.experiment = Experiment::Coverage;
            if let Some(n) = common.seeds {
                cfg.coverage_seeds = n;
            }
            if let Some(r) = ratios {
                apply_override(&mut cfg, "coverage.ratios", join(r))?;
            }
            if let Some(n) = samples {
                cfg.coverage_samples = *n;
            }
            Ok((cfg, common.out.clone()))
        }
        Command::Throughput {
            common,
            cases,
            policies,
            loads,
            duration,
        } => {
            let mut cfg = base_config(common)?;
            cfg.experiment = Experiment::Throughput;
            if let Some(n) = common.seeds {
                cfg.throughput_seeds = n;
            }
            if let Some(c) = cases {
                apply_override(&mut cfg, "throughput.cases", join(c))?;
            }
            if let Some(p) = policies {
                apply_override(&mut cfg, "throughput.policies", join(p))?;
            }
            if let Some(l) = loads {
                apply_override(&mut cfg, "throughput.loads", join(l))?;
            }
            if let Some(d) = duration {
                apply_override(&mut cfg, "engine.duration_s", d.to_string())?;
            }
            Ok((cfg, common.out.clone()))
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let result = build(&args.command).and_then(|(cfg, out)| cli::run(&cfg, &out));
    match result {
        Ok(outputs) => {
            for f in outputs.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lteu-sim: {e}");
            ExitCode::FAILURE
        }
    }
}
