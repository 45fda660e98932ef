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

//! Experiment engines: the TTI-level throughput simulation and the
//! coverage sweep.

mod coverage;
mod throughput;

pub use coverage::{run_coverage, CoverageBand, CoverageMetric, CoverageResult};
pub use throughput::{
    run_throughput, share_bits, JobRecord, ServedChunk, ThroughputRun, ThroughputSim, TtiOutcome,
};
