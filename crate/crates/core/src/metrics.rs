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

//! Empirical CDFs, percentiles, coverage gaps and throughput aggregation.

use crate::policy::{AllocationPolicy, Case};
use crate::traffic::FileJob;
use crate::{Error, Result};

/// Empirical CDF over a sample set, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CdfCurve {
    samples: Vec<f64>,
}

impl CdfCurve {
    /// NaN samples are dropped.
    pub fn from_samples(mut samples: Vec<f64>) -> Self {
        samples.retain(|v| !v.is_nan());
        samples.sort_by(f64::total_cmp);
        CdfCurve { samples }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Fraction of samples `<= v`.
    pub fn cdf(&self, v: f64) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        let below = self.samples.partition_point(|&s| s <= v);
        below as f64 / self.samples.len() as f64
    }

    /// Smallest sample whose empirical CDF is at least `p`.
    pub fn percentile(&self, p: f64) -> Result<f64> {
        if self.samples.is_empty() {
            return Err(Error::Domain("percentile of an empty curve".into()));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Domain(format!(
                "percentile fraction {p} outside (0, 1]"
            )));
        }
        let n = self.samples.len();
        // smallest k with k/n >= p, guarding against p*n rounding up
        let mut k = ((p * n as f64).ceil() as usize).clamp(1, n);
        while k > 1 && (k - 1) as f64 / n as f64 >= p {
            k -= 1;
        }
        while (k as f64) / (n as f64) < p && k < n {
            k += 1;
        }
        Ok(self.samples[k - 1])
    }

    pub fn shifted(&self, offset: f64) -> Self {
        CdfCurve {
            samples: self.samples.iter().map(|v| v + offset).collect(),
        }
    }
}

/// Licensed minus unlicensed value at percentile `p`.
pub fn coverage_gap(licensed: &CdfCurve, unlicensed: &CdfCurve, p: f64) -> Result<f64> {
    Ok(licensed.percentile(p)? - unlicensed.percentile(p)?)
}

/// Mean per-file throughput in Mbit/s over completed jobs.
pub fn mean_user_throughput(jobs: &[FileJob]) -> Result<f64> {
    let samples: Vec<f64> = jobs
        .iter()
        .filter_map(FileJob::throughput_bps)
        .map(|bps| bps / 1.0e6)
        .collect();
    if samples.is_empty() {
        return Err(Error::Domain("no completed files".into()));
    }
    Ok(samples.iter().sum::<f64>() / samples.len() as f64)
}

/// Result of one throughput run.
#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputReport {
    pub case: Case,
    pub policy: AllocationPolicy,
    pub lambda: f64,
    pub seed: u64,
    /// Per completed file, in Mbit/s.
    pub samples_mbps: Vec<f64>,
    /// Number of files still in flight when the run ended.
    pub unfinished_files: usize,
}

impl ThroughputReport {
    pub fn completed_files(&self) -> usize {
        self.samples_mbps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples_mbps.is_empty()
    }

    /// `None` when no file completed.
    pub fn mean_user_throughput_mbps(&self) -> Option<f64> {
        if self.samples_mbps.is_empty() {
            None
        } else {
            Some(self.samples_mbps.iter().sum::<f64>() / self.samples_mbps.len() as f64)
        }
    }
}
