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

//! Link budget, SINR and the truncated-Shannon link abstraction.

use crate::channel::{
    inh_los_pathloss, sample_penetration, shadow_sample, LinkLoss, PenetrationBand,
};
use crate::rng::SimRng;
use crate::scenario::{CarrierSpec, DeploymentLayout, NodeId, Point2D};
use crate::{Error, Result};

/// Thermal noise density at room temperature.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

/// Received power with 0 dBi antennas on both ends.
pub fn received_power(tx_power_dbm: f64, loss: &LinkLoss) -> f64 {
    tx_power_dbm - loss.total_db()
}

pub fn noise_power(bandwidth_mhz: f64, noise_figure_db: f64) -> f64 {
    THERMAL_NOISE_DBM_PER_HZ + 10.0 * (bandwidth_mhz * 1.0e6).log10() + noise_figure_db
}

/// Interference-as-noise SINR in dB. All powers in dBm.
pub fn sinr(serving_dbm: f64, interferers_dbm: &[f64], noise_dbm: f64) -> f64 {
    let interference: f64 = interferers_dbm.iter().map(|&p| db_to_linear(p)).sum();
    linear_to_db(db_to_linear(serving_dbm) / (interference + db_to_linear(noise_dbm)))
}

/// Same as [`sinr`] but with the interference already summed in mW.
pub fn sinr_linear_interference(serving_dbm: f64, interference_mw: f64, noise_dbm: f64) -> f64 {
    linear_to_db(db_to_linear(serving_dbm) / (interference_mw + db_to_linear(noise_dbm)))
}

/// Truncated Shannon mapping from SINR to spectral efficiency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkAbstraction {
    /// Below this SINR the link carries nothing.
    pub sinr_floor_db: f64,
    /// Maximum spectral efficiency in bit/s/Hz.
    pub se_cap: f64,
}

impl Default for LinkAbstraction {
    fn default() -> Self {
        LinkAbstraction {
            sinr_floor_db: -10.0,
            se_cap: 6.0,
        }
    }
}

impl LinkAbstraction {
    pub fn spectral_efficiency(&self, sinr_db: f64) -> f64 {
        if sinr_db.is_nan() || sinr_db < self.sinr_floor_db {
            return 0.0;
        }
        (1.0 + db_to_linear(sinr_db)).log2().min(self.se_cap)
    }
}

/// Spectral efficiency under the default abstraction (-10 dB floor, 6 b/s/Hz cap).
pub fn spectral_efficiency(sinr_db: f64) -> f64 {
    LinkAbstraction::default().spectral_efficiency(sinr_db)
}

/// Radio parameters shared by every link in a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioParams {
    pub noise_figure_db: f64,
    pub link: LinkAbstraction,
    pub shadowing_sigma_db: f64,
    pub penetration: bool,
}

impl Default for RadioParams {
    fn default() -> Self {
        RadioParams {
            noise_figure_db: 9.0,
            link: LinkAbstraction::default(),
            shadowing_sigma_db: 3.0,
            penetration: false,
        }
    }
}

/// Frozen link losses between every receiver point and every node, one
/// entry per distinct carrier frequency. Carriers on the same frequency share
/// shadowing, so a UE sees the same best server on both of them.
#[derive(Debug, Clone)]
pub struct LossTable {
    bands: Vec<f64>,
    nodes: usize,
    losses: Vec<LinkLoss>,
}

impl LossTable {
    /// Draws shadowing (and optionally penetration) for every
    /// (point, node, band) triple, in that nesting order.
    pub fn build(
        points: &[Point2D],
        layout: &DeploymentLayout,
        params: &RadioParams,
        shadow_rng: &mut SimRng,
        penetration_rng: &mut SimRng,
    ) -> Self {
        let mut bands: Vec<f64> = Vec::new();
        for c in &layout.carriers {
            if layout.nodes_with(c.id).next().is_some() && !bands.contains(&c.center_freq_ghz) {
                bands.push(c.center_freq_ghz);
            }
        }
        let mut losses = Vec::with_capacity(points.len() * layout.nodes.len() * bands.len());
        for p in points {
            for node in &layout.nodes {
                let d = p.distance(&node.position);
                for &fc in &bands {
                    let shadowing_db = shadow_sample(params.shadowing_sigma_db, shadow_rng);
                    let penetration_db = if params.penetration {
                        sample_penetration(PenetrationBand::for_frequency(fc), d, penetration_rng)
                    } else {
                        0.0
                    };
                    losses.push(LinkLoss {
                        pathloss_db: inh_los_pathloss(d, fc),
                        shadowing_db,
                        penetration_db,
                    });
                }
            }
        }
        LossTable {
            bands,
            nodes: layout.nodes.len(),
            losses,
        }
    }

    pub fn points(&self) -> usize {
        if self.nodes == 0 || self.bands.is_empty() {
            0
        } else {
            self.losses.len() / (self.nodes * self.bands.len())
        }
    }

    fn band_index(&self, fc_ghz: f64) -> usize {
        self.bands
            .iter()
            .position(|&b| b == fc_ghz)
            .expect("carrier frequency not present in loss table")
    }

    pub fn loss(&self, point: usize, node: NodeId, carrier: &CarrierSpec) -> &LinkLoss {
        let band = self.band_index(carrier.center_freq_ghz);
        &self.losses[(point * self.nodes + node.0) * self.bands.len() + band]
    }

    pub fn rx_power(&self, point: usize, node: NodeId, carrier: &CarrierSpec) -> f64 {
        received_power(carrier.tx_power_dbm, self.loss(point, node, carrier))
    }
}

/// Best server on `carrier` for receiver `point`: maximum received power,
/// ties to the lowest node id.
pub fn associate(
    point: usize,
    carrier: &CarrierSpec,
    layout: &DeploymentLayout,
    losses: &LossTable,
) -> Result<NodeId> {
    let mut best: Option<(NodeId, f64)> = None;
    for node in layout.nodes_with(carrier.id) {
        let rx = losses.rx_power(point, node.id, carrier);
        if best.is_none_or(|(_, b)| rx > b) {
            best = Some((node.id, rx));
        }
    }
    best.map(|(id, _)| id)
        .ok_or_else(|| Error::Invalid(format!("no node transmits carrier {}", carrier.id)))
}

/// Geometry SINR at `point` from `serving` on `carrier`, with every other
/// node in `active` counted as an interferer.
pub fn geometry_sinr(
    point: usize,
    serving: NodeId,
    carrier: &CarrierSpec,
    active: impl IntoIterator<Item = NodeId>,
    losses: &LossTable,
    noise_figure_db: f64,
) -> f64 {
    let interference: f64 = active
        .into_iter()
        .filter(|&n| n != serving)
        .map(|n| db_to_linear(losses.rx_power(point, n, carrier)))
        .sum();
    sinr_linear_interference(
        losses.rx_power(point, serving, carrier),
        interference,
        noise_power(carrier.bandwidth_mhz, noise_figure_db),
    )
}
