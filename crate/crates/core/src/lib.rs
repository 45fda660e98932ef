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

//! System-level simulator for LTE operating in unlicensed spectrum.
//!
//! Two experiments are provided:
//!
//! * a coverage comparison between a licensed 2.6 GHz layer and an
//!   unlicensed 5.8 GHz layer as the unlicensed small cells are densified
//!   ([`engine::run_coverage`]);
//! * a TTI-level throughput comparison between UEs restricted to carrier
//!   aggregation and UEs that may also use dual connectivity or standalone
//!   operation on the unlicensed carriers ([`engine::run_throughput`]).
//!
//! Everything is deterministic given a 64-bit seed. Random draws come from
//! named substreams (see [`rng`]) so that results do not depend on the order
//! in which independent parts of a run consume randomness.

pub mod channel;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod metrics;
pub mod policy;
pub mod radio;
pub mod rng;
pub mod scenario;
pub mod traffic;

pub use error::{Error, Result};

/// Bits in one (decimal) megabyte.
pub const BITS_PER_MBYTE: f64 = 8.0e6;
