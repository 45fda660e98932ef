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

//! FTP Model 1 traffic: Poisson file arrivals onto a fixed UE population.

use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::rng::SimRng;
use crate::BITS_PER_MBYTE;

/// Default file size: 0.5 MByte.
pub const DEFAULT_FILE_BITS: u64 = (0.5 * BITS_PER_MBYTE) as u64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arrival {
    pub time_s: f64,
    pub ue: usize,
}

/// One file transfer.
#[derive(Debug, Clone, PartialEq)]
pub struct FileJob {
    pub ue: usize,
    pub arrival_s: f64,
    pub size_bits: u64,
    pub remaining_bits: u64,
    pub completion_s: Option<f64>,
}

impl FileJob {
    pub fn new(ue: usize, arrival_s: f64, size_bits: u64) -> Self {
        FileJob {
            ue,
            arrival_s,
            size_bits,
            remaining_bits: size_bits,
            completion_s: None,
        }
    }

    pub fn is_done(&self) -> bool {
        self.remaining_bits == 0
    }

    /// Serves up to `bits`, returning how many were actually taken.
    pub fn serve(&mut self, bits: u64) -> u64 {
        let taken = bits.min(self.remaining_bits);
        self.remaining_bits -= taken;
        taken
    }

    /// Per-file throughput in bit/s once completed.
    pub fn throughput_bps(&self) -> Option<f64> {
        self.completion_s
            .map(|done| self.size_bits as f64 / (done - self.arrival_s))
    }
}

/// Poisson arrivals of rate `lambda` (files/s) over `[0, duration_s)`, each
/// attached to a UE drawn uniformly from `0..n_ues`.
///
/// Arrival times come from `time_rng` and UE picks from `ue_rng`, so the
/// arrival instants do not depend on the population size. A drawn time that
/// does not exceed its predecessor is pushed one `tick_s` past it.
pub fn poisson_arrivals(
    lambda: f64,
    duration_s: f64,
    n_ues: usize,
    tick_s: f64,
    time_rng: &mut SimRng,
    ue_rng: &mut SimRng,
) -> Vec<Arrival> {
    let mut out = Vec::new();
    if lambda.is_nan() || lambda <= 0.0 || n_ues == 0 || duration_s.is_nan() || duration_s <= 0.0 {
        return out;
    }
    let gap = Exp::new(lambda).expect("positive rate");
    let mut t = 0.0;
    loop {
        t += gap.sample(time_rng);
        if let Some(prev) = out.last().map(|a: &Arrival| a.time_s) {
            if t <= prev {
                t = prev + tick_s;
            }
        }
        if t >= duration_s {
            break;
        }
        out.push(Arrival {
            time_s: t,
            ue: ue_rng.random_range(0..n_ues),
        });
    }
    out
}
