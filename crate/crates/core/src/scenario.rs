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

//! Office geometry, small-cell layouts and UE drops.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::policy::Mode;
use crate::rng::SimRng;
use crate::{Error, Result};

/// Office length along x, in meters.
pub const OFFICE_LENGTH_M: f64 = 120.0;
/// Office width along y, in meters.
pub const OFFICE_WIDTH_M: f64 = 50.0;

/// Licensed-band center frequency used by the coverage layouts.
pub const COVERAGE_LICENSED_GHZ: f64 = 2.6;
/// Unlicensed-band center frequency.
pub const UNLICENSED_GHZ: f64 = 5.8;

/// Default per-carrier small-cell transmit power.
pub const SMALL_CELL_TX_DBM: f64 = 24.0;

/// Carriers a UE can aggregate at once.
pub const UE_CARRIER_CAPABILITY: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2D { x, y }
    }

    pub fn distance(&self, other: &Point2D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CarrierId(pub u8);

impl fmt::Display for CarrierId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BandClass {
    Licensed,
    Unlicensed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SiteKind {
    Macro,
    Small,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CarrierSpec {
    pub id: CarrierId,
    pub center_freq_ghz: f64,
    pub bandwidth_mhz: f64,
    pub band_class: BandClass,
    pub tx_power_dbm: f64,
    pub site_kind: SiteKind,
}

impl CarrierSpec {
    pub fn is_licensed(&self) -> bool {
        self.band_class == BandClass::Licensed
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeSite {
    pub id: NodeId,
    pub position: Point2D,
    pub carrier_ids: BTreeSet<CarrierId>,
}

impl NodeSite {
    pub fn carries(&self, carrier: CarrierId) -> bool {
        self.carrier_ids.contains(&carrier)
    }
}

/// Ratio of licensed small cells to unlicensed small cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatioLabel {
    R4x4,
    R4x8,
    R4x16,
}

impl RatioLabel {
    pub const ALL: [RatioLabel; 3] = [RatioLabel::R4x4, RatioLabel::R4x8, RatioLabel::R4x16];

    pub fn unlicensed_nodes(self) -> usize {
        match self {
            RatioLabel::R4x4 => 4,
            RatioLabel::R4x8 => 8,
            RatioLabel::R4x16 => 16,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RatioLabel::R4x4 => "4:4",
            RatioLabel::R4x8 => "4:8",
            RatioLabel::R4x16 => "4:16",
        }
    }

    /// Licensed node positions: equally spaced on the long-axis centerline.
    fn licensed_positions(self) -> Vec<Point2D> {
        (0..4)
            .map(|k| Point2D::new(15.0 + 30.0 * k as f64, OFFICE_WIDTH_M / 2.0))
            .collect()
    }

    fn unlicensed_positions(self) -> Vec<Point2D> {
        let rows = |per_row: usize, x0: f64, dx: f64| {
            [12.5, 37.5]
                .iter()
                .flat_map(|&y| (0..per_row).map(move |k| Point2D::new(x0 + dx * k as f64, y)))
                .collect::<Vec<_>>()
        };
        match self {
            RatioLabel::R4x4 => self.licensed_positions(),
            RatioLabel::R4x8 => rows(4, 15.0, 30.0),
            RatioLabel::R4x16 => rows(8, 7.5, 15.0),
        }
    }
}

impl fmt::Display for RatioLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RatioLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "4:4" => Ok(RatioLabel::R4x4),
            "4:8" => Ok(RatioLabel::R4x8),
            "4:16" => Ok(RatioLabel::R4x16),
            other => Err(Error::Invalid(format!(
                "unknown layout ratio `{other}` (expected 4:4, 4:8 or 4:16)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeploymentLayout {
    pub width: f64,
    pub height: f64,
    pub ratio: RatioLabel,
    pub carriers: Vec<CarrierSpec>,
    pub nodes: Vec<NodeSite>,
}

impl DeploymentLayout {
    pub fn ratio_label(&self) -> &'static str {
        self.ratio.as_str()
    }

    pub fn carrier(&self, id: CarrierId) -> Option<&CarrierSpec> {
        self.carriers.iter().find(|c| c.id == id)
    }

    pub fn node(&self, id: NodeId) -> &NodeSite {
        &self.nodes[id.0]
    }

    /// Nodes transmitting `carrier`, in id order.
    pub fn nodes_with(&self, carrier: CarrierId) -> impl Iterator<Item = &NodeSite> {
        self.nodes.iter().filter(move |n| n.carries(carrier))
    }

    /// Small-cell nodes carrying at least one small-cell carrier. These are
    /// the nodes whose throughput is counted and around which UEs are dropped.
    pub fn counted_nodes(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| {
                n.carrier_ids.iter().any(|&c| {
                    self.carrier(c)
                        .is_some_and(|spec| spec.site_kind == SiteKind::Small)
                })
            })
            .count()
    }

    pub fn contains(&self, p: &Point2D) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    /// Number of nodes with any licensed / unlicensed carrier.
    pub fn band_node_counts(&self) -> (usize, usize) {
        let has = |n: &NodeSite, class: BandClass| {
            n.carrier_ids
                .iter()
                .any(|&c| self.carrier(c).is_some_and(|s| s.band_class == class))
        };
        let lic = self
            .nodes
            .iter()
            .filter(|n| has(n, BandClass::Licensed))
            .count();
        let unl = self
            .nodes
            .iter()
            .filter(|n| has(n, BandClass::Unlicensed))
            .count();
        (lic, unl)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for c in &self.carriers {
            if !seen.insert(c.id) {
                return Err(Error::Invalid(format!("duplicate carrier id {}", c.id)));
            }
            if !(c.center_freq_ghz > 0.0 && c.bandwidth_mhz > 0.0) {
                return Err(Error::Invalid(format!(
                    "carrier {} needs positive frequency and bandwidth",
                    c.id
                )));
            }
        }
        for n in &self.nodes {
            if n.carrier_ids.is_empty() {
                return Err(Error::Invalid(format!("node {} has no carrier", n.id.0)));
            }
            if let Some(c) = n.carrier_ids.iter().find(|&&c| self.carrier(c).is_none()) {
                return Err(Error::Invalid(format!(
                    "node {} references unknown carrier {c}",
                    n.id.0
                )));
            }
            if !self.contains(&n.position) {
                return Err(Error::Invalid(format!(
                    "node {} lies outside the office",
                    n.id.0
                )));
            }
        }
        Ok(())
    }
}

/// Carriers of the coverage comparison: one licensed 2.6 GHz carrier and
/// one unlicensed 5.8 GHz carrier, both at the same transmit power.
pub fn coverage_carriers() -> (CarrierSpec, CarrierSpec) {
    let lic = CarrierSpec {
        id: CarrierId(1),
        center_freq_ghz: COVERAGE_LICENSED_GHZ,
        bandwidth_mhz: 20.0,
        band_class: BandClass::Licensed,
        tx_power_dbm: SMALL_CELL_TX_DBM,
        site_kind: SiteKind::Small,
    };
    let unl = CarrierSpec {
        id: CarrierId(2),
        center_freq_ghz: UNLICENSED_GHZ,
        band_class: BandClass::Unlicensed,
        ..lic.clone()
    };
    (lic, unl)
}

/// Canonical coverage layout for a ratio label such as `"4:8"`.
pub fn build_layout(ratio_label: &str) -> Result<DeploymentLayout> {
    let ratio: RatioLabel = ratio_label.parse()?;
    let (lic, unl) = coverage_carriers();
    Ok(layout_with_carriers(
        ratio,
        vec![lic],
        vec![unl],
        Vec::new(),
    ))
}

/// Places the licensed carriers on the four centerline nodes and the
/// unlicensed carriers on the ratio's unlicensed node set. Positions shared
/// by both sets become a single dual-band node. `unattached` carriers are
/// part of the carrier set but transmitted by no small-cell node.
pub fn layout_with_carriers(
    ratio: RatioLabel,
    licensed: Vec<CarrierSpec>,
    unlicensed: Vec<CarrierSpec>,
    unattached: Vec<CarrierSpec>,
) -> DeploymentLayout {
    let lic_ids: BTreeSet<CarrierId> = licensed.iter().map(|c| c.id).collect();
    let unl_ids: BTreeSet<CarrierId> = unlicensed.iter().map(|c| c.id).collect();

    let mut nodes: Vec<NodeSite> = ratio
        .licensed_positions()
        .into_iter()
        .enumerate()
        .map(|(i, position)| NodeSite {
            id: NodeId(i),
            position,
            carrier_ids: lic_ids.clone(),
        })
        .collect();
    for position in ratio.unlicensed_positions() {
        match nodes.iter_mut().find(|n| n.position == position) {
            Some(node) => node.carrier_ids.extend(unl_ids.iter().copied()),
            None => nodes.push(NodeSite {
                id: NodeId(nodes.len()),
                position,
                carrier_ids: unl_ids.clone(),
            }),
        }
    }

    let mut carriers = unattached;
    carriers.extend(licensed);
    carriers.extend(unlicensed);
    carriers.sort_by_key(|c| c.id);

    DeploymentLayout {
        width: OFFICE_LENGTH_M,
        height: OFFICE_WIDTH_M,
        ratio,
        carriers,
        nodes,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UeTerminal {
    pub id: usize,
    pub position: Point2D,
    pub capability: usize,
    pub mode: Mode,
    pub assigned_carriers: Vec<CarrierId>,
}

/// Draws a point uniformly from the open rectangle `(0, width) x (0, height)`.
pub fn uniform_point(width: f64, height: f64, rng: &mut SimRng) -> Point2D {
    loop {
        let x = rng.random_range(0.0..width);
        let y = rng.random_range(0.0..height);
        if x > 0.0 && y > 0.0 {
            return Point2D::new(x, y);
        }
    }
}

/// Drops `n_per_node` UEs per counted small-cell node, uniformly over the
/// whole office.
pub fn drop_ues(layout: &DeploymentLayout, n_per_node: usize, rng: &mut SimRng) -> Vec<UeTerminal> {
    let total = n_per_node * layout.counted_nodes();
    (0..total)
        .map(|id| UeTerminal {
            id,
            position: uniform_point(layout.width, layout.height, rng),
            capability: UE_CARRIER_CAPABILITY,
            mode: Mode::Ca,
            assigned_carriers: Vec::new(),
        })
        .collect()
}
