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

//! Run configuration and the flat `section.key = value` file format.
//!
//! Blank lines and lines starting with `#` are ignored. Every key has a
//! default, so an empty file is a valid configuration. Unknown keys are
//! rejected. [`SimConfig::emit`] writes every key, and parsing the emitted
//! text yields the same configuration.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::policy::{AllocationPolicy, Case};
use crate::radio::{LinkAbstraction, RadioParams};
use crate::scenario::{RatioLabel, SMALL_CELL_TX_DBM};
use crate::{Error, Result, BITS_PER_MBYTE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Coverage,
    Throughput,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Experiment::Coverage => "coverage",
            Experiment::Throughput => "throughput",
        })
    }
}

impl FromStr for Experiment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coverage" => Ok(Experiment::Coverage),
            "throughput" => Ok(Experiment::Throughput),
            other => Err(Error::Invalid(format!("unknown experiment `{other}`"))),
        }
    }
}

/// How the fixed policy sets the mode of a UE in the DC/standalone case.
/// Carriers within a mode always follow the round-robin fixed assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedModeRule {
    /// Modes dealt round-robin over CA, DC and standalone by UE index at
    /// initialization, without CSI, and frozen for the run.
    RoundRobin,
    /// Mode chosen once per UE at initialization from unloaded estimates.
    AtInit,
    /// Mode re-selected from estimates on every file arrival.
    PerFile,
}

impl fmt::Display for FixedModeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedModeRule::RoundRobin => "round_robin",
            FixedModeRule::AtInit => "at_init",
            FixedModeRule::PerFile => "per_file",
        })
    }
}

impl FromStr for FixedModeRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "round_robin" => Ok(FixedModeRule::RoundRobin),
            "at_init" => Ok(FixedModeRule::AtInit),
            "per_file" => Ok(FixedModeRule::PerFile),
            other => Err(Error::Invalid(format!(
                "unknown fixed mode rule `{other}` (expected round_robin, at_init or per_file)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub layout_ratio: RatioLabel,
    pub n_ue_per_node: usize,

    pub shadowing_sigma_db: f64,
    pub penetration: bool,

    pub tx_power_dbm: f64,
    pub noise_figure_db: f64,
    pub se_cap: f64,
    pub sinr_floor_db: f64,

    /// Files per second offered to the whole small-cell system.
    pub lambda: f64,
    /// Multiplier applied to every load; set it to the node count to read
    /// the loads as per-node rates.
    pub lambda_scale: f64,
    pub file_size_mbytes: f64,

    pub fixed_mode_rule: FixedModeRule,

    pub tti_ms: f64,
    pub duration_s: f64,

    pub experiment: Experiment,
    pub seed: u64,

    pub coverage_ratios: Vec<RatioLabel>,
    pub coverage_samples: usize,
    pub coverage_seeds: usize,

    pub cases: Vec<Case>,
    pub policies: Vec<AllocationPolicy>,
    pub loads: Vec<f64>,
    pub throughput_seeds: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            layout_ratio: RatioLabel::R4x4,
            n_ue_per_node: 20,
            shadowing_sigma_db: 3.0,
            penetration: false,
            tx_power_dbm: SMALL_CELL_TX_DBM,
            noise_figure_db: 9.0,
            se_cap: 6.0,
            sinr_floor_db: -10.0,
            lambda: 2.5,
            lambda_scale: 1.0,
            file_size_mbytes: 0.5,
            fixed_mode_rule: FixedModeRule::RoundRobin,
            tti_ms: 1.0,
            duration_s: 100.0,
            experiment: Experiment::Throughput,
            seed: 1,
            coverage_ratios: RatioLabel::ALL.to_vec(),
            coverage_samples: 10_000,
            coverage_seeds: 1,
            cases: vec![Case::CaOnly, Case::DcSa],
            policies: vec![AllocationPolicy::Fixed, AllocationPolicy::Flexible],
            loads: vec![2.5, 10.0],
            throughput_seeds: 20,
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn parse_list<T: FromStr>(value: &str) -> std::result::Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    let items: std::result::Result<Vec<T>, _> = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| e.to_string()))
        .collect();
    match items {
        Ok(v) if v.is_empty() => Err("empty list".into()),
        other => other,
    }
}

fn parse_f64(value: &str) -> std::result::Result<f64, String> {
    let v: f64 = value
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{value}` is not finite"))
    }
}

fn positive(v: f64) -> std::result::Result<f64, String> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must be positive"))
    }
}

fn non_negative(v: f64) -> std::result::Result<f64, String> {
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must not be negative"))
    }
}

fn parse_usize(value: &str) -> std::result::Result<usize, String> {
    value
        .parse()
        .map_err(|_| format!("`{value}` is not a non-negative integer"))
}

fn parse_bool(value: &str) -> std::result::Result<bool, String> {
    match value {
        "true" | "on" | "yes" => Ok(true),
        "false" | "off" | "no" => Ok(false),
        _ => Err(format!("`{value}` is not a boolean")),
    }
}

impl SimConfig {
    /// Every recognised key, in emission order.
    pub const KEYS: [&'static str; 23] = [
        "layout.ratio",
        "scenario.n_ue_per_node",
        "channel.shadowing_sigma_db",
        "channel.penetration",
        "radio.tx_power_dbm",
        "radio.noise_figure_db",
        "radio.se_cap",
        "radio.sinr_floor_db",
        "traffic.lambda",
        "traffic.lambda_scale",
        "traffic.file_size_mbytes",
        "policy.fixed_mode",
        "engine.tti_ms",
        "engine.duration_s",
        "run.experiment",
        "run.seed",
        "coverage.ratios",
        "coverage.samples",
        "coverage.seeds",
        "throughput.cases",
        "throughput.policies",
        "throughput.loads",
        "throughput.seeds",
    ];

    /// Sets one key from its textual value. The error message does not
    /// include the key; callers attach it.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let value = value.trim();
        let map = |e: Error| e.to_string();
        match key {
            "layout.ratio" => self.layout_ratio = value.parse().map_err(map)?,
            "scenario.n_ue_per_node" => self.n_ue_per_node = parse_usize(value)?,
            "channel.shadowing_sigma_db" => {
                self.shadowing_sigma_db = non_negative(parse_f64(value)?)?
            }
            "channel.penetration" => self.penetration = parse_bool(value)?,
            "radio.tx_power_dbm" => self.tx_power_dbm = parse_f64(value)?,
            "radio.noise_figure_db" => self.noise_figure_db = non_negative(parse_f64(value)?)?,
            "radio.se_cap" => self.se_cap = positive(parse_f64(value)?)?,
            "radio.sinr_floor_db" => self.sinr_floor_db = parse_f64(value)?,
            "traffic.lambda" => self.lambda = non_negative(parse_f64(value)?)?,
            "traffic.lambda_scale" => self.lambda_scale = positive(parse_f64(value)?)?,
            "traffic.file_size_mbytes" => self.file_size_mbytes = positive(parse_f64(value)?)?,
            "policy.fixed_mode" => self.fixed_mode_rule = value.parse().map_err(map)?,
            "engine.tti_ms" => self.tti_ms = positive(parse_f64(value)?)?,
            "engine.duration_s" => self.duration_s = non_negative(parse_f64(value)?)?,
            "run.experiment" => self.experiment = value.parse().map_err(map)?,
            "run.seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| format!("`{value}` is not a 64-bit unsigned integer"))?
            }
            "coverage.ratios" => self.coverage_ratios = parse_list(value)?,
            "coverage.samples" => self.coverage_samples = parse_usize(value)?,
            "coverage.seeds" => self.coverage_seeds = parse_usize(value)?,
            "throughput.cases" => self.cases = parse_list(value)?,
            "throughput.policies" => self.policies = parse_list(value)?,
            "throughput.loads" => {
                let loads: Vec<f64> = parse_list::<f64>(value)?;
                for &l in &loads {
                    if !(l.is_finite() && l >= 0.0) {
                        return Err(format!("load {l} must be finite and non-negative"));
                    }
                }
                self.loads = loads;
            }
            "throughput.seeds" => self.throughput_seeds = parse_usize(value)?,
            _ => return Err("unknown key".into()),
        }
        Ok(())
    }

    /// Parses configuration text on top of the defaults.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut cfg = SimConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::config(line_no, line, "expected `key = value`"));
            };
            let key = key.trim();
            cfg.set(key, value)
                .map_err(|msg| Error::config(line_no, key, msg))?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_str(&text)
    }

    /// `(key, value)` pairs for every setting.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("layout.ratio", self.layout_ratio.to_string()),
            ("scenario.n_ue_per_node", self.n_ue_per_node.to_string()),
            (
                "channel.shadowing_sigma_db",
                self.shadowing_sigma_db.to_string(),
            ),
            ("channel.penetration", self.penetration.to_string()),
            ("radio.tx_power_dbm", self.tx_power_dbm.to_string()),
            ("radio.noise_figure_db", self.noise_figure_db.to_string()),
            ("radio.se_cap", self.se_cap.to_string()),
            ("radio.sinr_floor_db", self.sinr_floor_db.to_string()),
            ("traffic.lambda", self.lambda.to_string()),
            ("traffic.lambda_scale", self.lambda_scale.to_string()),
            (
                "traffic.file_size_mbytes",
                self.file_size_mbytes.to_string(),
            ),
            ("policy.fixed_mode", self.fixed_mode_rule.to_string()),
            ("engine.tti_ms", self.tti_ms.to_string()),
            ("engine.duration_s", self.duration_s.to_string()),
            ("run.experiment", self.experiment.to_string()),
            ("run.seed", self.seed.to_string()),
            ("coverage.ratios", join(&self.coverage_ratios)),
            ("coverage.samples", self.coverage_samples.to_string()),
            ("coverage.seeds", self.coverage_seeds.to_string()),
            ("throughput.cases", join(&self.cases)),
            ("throughput.policies", join(&self.policies)),
            ("throughput.loads", join(&self.loads)),
            ("throughput.seeds", self.throughput_seeds.to_string()),
        ]
    }

    pub fn emit(&self) -> String {
        self.entries()
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }

    pub fn radio_params(&self) -> RadioParams {
        RadioParams {
            noise_figure_db: self.noise_figure_db,
            link: LinkAbstraction {
                sinr_floor_db: self.sinr_floor_db,
                se_cap: self.se_cap,
            },
            shadowing_sigma_db: self.shadowing_sigma_db,
            penetration: self.penetration,
        }
    }

    pub fn tti_s(&self) -> f64 {
        self.tti_ms / 1000.0
    }

    /// File size in whole bits.
    pub fn file_bits(&self) -> u64 {
        (self.file_size_mbytes * BITS_PER_MBYTE).round() as u64
    }

    /// Seeds `seed, seed + 1, ...` for the given count.
    pub fn seed_list(&self, count: usize) -> Vec<u64> {
        (0..count as u64)
            .map(|i| self.seed.wrapping_add(i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        let cfg = SimConfig::parse_str("").unwrap();
        assert_eq!(cfg, SimConfig::default());
        assert_eq!(cfg.tx_power_dbm, 24.0);
        assert_eq!(cfg.n_ue_per_node, 20);
        assert_eq!(cfg.file_size_mbytes, 0.5);
        assert_eq!(cfg.file_bits(), 4_000_000);
    }

    #[test]
    fn single_override() {
        let cfg = SimConfig::parse_str("traffic.lambda = 10\n").unwrap();
        assert_eq!(cfg.lambda, 10.0);
        assert_eq!(SimConfig { lambda: 2.5, ..cfg }, SimConfig::default());
    }

    #[test]
    fn comments_and_blank_lines() {
        let cfg = SimConfig::parse_str("# header\n\n  engine.duration_s = 5 \n").unwrap();
        assert_eq!(cfg.duration_s, 5.0);
    }

    #[test]
    fn malformed_value_names_line_and_key() {
        let err = SimConfig::parse_str("traffic.lambda = banana").unwrap_err();
        match err {
            Error::Config { line, key, .. } => {
                assert_eq!(line, 1);
                assert_eq!(key, "traffic.lambda");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        let err = SimConfig::parse_str("radio.tx_power_dbm = 20\nradio.bogus = 1\n").unwrap_err();
        assert!(matches!(err, Error::Config { line: 2, .. }));
    }

    #[test]
    fn out_of_range_rejected() {
        for text in [
            "engine.tti_ms = 0",
            "engine.tti_ms = -1",
            "channel.shadowing_sigma_db = -3",
            "traffic.lambda = inf",
            "traffic.file_size_mbytes = 0",
            "throughput.loads = 2.5,-1",
            "layout.ratio = 3:3",
            "run.seed = -4",
            "throughput.cases = ca,xx",
            "throughput.cases = ",
            "channel.penetration = maybe",
            "no equals sign",
        ] {
            assert!(
                matches!(
                    SimConfig::parse_str(text),
                    Err(Error::Config { line: 1, .. })
                ),
                "{text}"
            );
        }
    }

    #[test]
    fn emit_round_trip() {
        let mut cfg = SimConfig::default();
        cfg.lambda = 0.1 + 0.2;
        cfg.seed = u64::MAX;
        cfg.coverage_ratios = vec![RatioLabel::R4x16];
        cfg.loads = vec![1.0 / 3.0, 7.25];
        cfg.penetration = true;
        cfg.fixed_mode_rule = FixedModeRule::AtInit;
        let text = cfg.emit();
        assert_eq!(SimConfig::parse_str(&text).unwrap(), cfg);
        assert_eq!(text.lines().count(), cfg.entries().len());
    }

    #[test]
    fn every_emitted_key_is_known() {
        for (k, _) in SimConfig::default().entries() {
            assert!(SimConfig::KEYS.contains(&k), "{k}");
        }
    }
}
