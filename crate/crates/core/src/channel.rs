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

//! Path loss, indoor penetration loss and lognormal shadowing.
//!
//! Frequencies are in GHz and distances in meters throughout.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::rng::SimRng;
use crate::{Error, Result};

/// Speed of light used for the breakpoint distance.
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

/// Distances below this are evaluated at this value.
pub const MIN_DISTANCE_M: f64 = 1.0;

/// Upper bound of the indoor penetration depth draw.
pub const MAX_PENETRATION_DEPTH_M: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinkLoss {
    pub pathloss_db: f64,
    pub shadowing_db: f64,
    /// Zero when penetration is disabled.
    pub penetration_db: f64,
}

impl LinkLoss {
    pub fn total_db(&self) -> f64 {
        self.pathloss_db + self.shadowing_db + self.penetration_db
    }
}

/// Indoor hotspot line-of-sight path loss.
pub fn inh_los_pathloss(distance_m: f64, fc_ghz: f64) -> f64 {
    let d = distance_m.max(MIN_DISTANCE_M);
    16.9 * d.log10() + 32.8 + 20.0 * fc_ghz.log10()
}

/// Breakpoint distance of the urban micro LoS model, using effective
/// antenna heights `h - 1`.
pub fn umi_breakpoint_m(fc_ghz: f64, h_bs_m: f64, h_ut_m: f64) -> f64 {
    4.0 * (h_bs_m - 1.0) * (h_ut_m - 1.0) * fc_ghz * 1.0e9 / SPEED_OF_LIGHT
}

/// Urban micro line-of-sight path loss (dual slope).
pub fn umi_los_pathloss(distance_m: f64, fc_ghz: f64, h_bs_m: f64, h_ut_m: f64) -> Result<f64> {
    if h_bs_m <= 1.0 || h_ut_m <= 1.0 {
        return Err(Error::Domain(format!(
            "antenna heights must exceed 1 m (got BS {h_bs_m} m, UT {h_ut_m} m)"
        )));
    }
    let d = distance_m.max(MIN_DISTANCE_M);
    let pl = if d < umi_breakpoint_m(fc_ghz, h_bs_m, h_ut_m) {
        22.0 * d.log10() + 28.0 + 20.0 * fc_ghz.log10()
    } else {
        40.0 * d.log10() + 7.8 - 18.0 * (h_bs_m - 1.0).log10() - 18.0 * (h_ut_m - 1.0).log10()
            + 2.0 * fc_ghz.log10()
    };
    Ok(pl)
}

/// Frequency classes with tabulated indoor penetration loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PenetrationBand {
    Ghz2,
    Ghz3_5,
    Ghz5,
}

impl PenetrationBand {
    /// Nearest tabulated class for a carrier frequency.
    pub fn for_frequency(fc_ghz: f64) -> Self {
        if fc_ghz < 2.75 {
            PenetrationBand::Ghz2
        } else if fc_ghz < 4.25 {
            PenetrationBand::Ghz3_5
        } else {
            PenetrationBand::Ghz5
        }
    }

    pub fn base_db(self) -> f64 {
        match self {
            PenetrationBand::Ghz2 => 20.0,
            PenetrationBand::Ghz3_5 => 23.0,
            PenetrationBand::Ghz5 => 27.0,
        }
    }
}

/// Penetration loss for an indoor depth `depth_m` in `[0, 25]`.
pub fn penetration_loss(band: PenetrationBand, depth_m: f64) -> Result<f64> {
    if !(0.0..=MAX_PENETRATION_DEPTH_M).contains(&depth_m) {
        return Err(Error::Domain(format!(
            "penetration depth {depth_m} m outside [0, {MAX_PENETRATION_DEPTH_M}]"
        )));
    }
    Ok(band.base_db() + 0.5 * depth_m)
}

/// Draws the penetration depth uniformly on `[0, min(25, link distance)]`
/// and returns the resulting loss.
pub fn sample_penetration(band: PenetrationBand, link_distance_m: f64, rng: &mut SimRng) -> f64 {
    let upper = link_distance_m.clamp(0.0, MAX_PENETRATION_DEPTH_M);
    let depth = upper * rng.random::<f64>();
    band.base_db() + 0.5 * depth
}

/// One zero-mean normal shadowing draw in dB. Always consumes exactly one
/// normal variate so the stream position does not depend on `sigma_db`.
pub fn shadow_sample(sigma_db: f64, rng: &mut SimRng) -> f64 {
    debug_assert!(sigma_db >= 0.0);
    let z: f64 = rng.sample(StandardNormal);
    sigma_db * z
}
