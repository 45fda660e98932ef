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

//! Carrier system, per-mode candidate carriers and the allocation rules.
//!
//! The system has four carriers:
//!
//! | id | role                                  | band      | bandwidth |
//! |----|---------------------------------------|-----------|-----------|
//! | 1  | macro licensed anchor                 | 2 GHz     | 20 MHz    |
//! | 2  | small-cell licensed                   | 3.5 GHz   | 10 MHz    |
//! | 3  | first small-cell unlicensed           | 5.8 GHz   | 20 MHz    |
//! | 4  | second small-cell unlicensed          | 5.8 GHz   | 20 MHz    |
//!
//! Carrier 1 keeps the UE anchored for CA and DC but its throughput is
//! never counted, so it contributes zero to every rate estimate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::scenario::{
    layout_with_carriers, BandClass, CarrierId, CarrierSpec, DeploymentLayout, RatioLabel,
    SiteKind, SMALL_CELL_TX_DBM, UE_CARRIER_CAPABILITY, UNLICENSED_GHZ,
};
use crate::{Error, Result};

pub const MACRO_CARRIER: CarrierId = CarrierId(1);
pub const SMALL_LICENSED_CARRIER: CarrierId = CarrierId(2);
pub const UNLICENSED_CARRIERS: [CarrierId; 2] = [CarrierId(3), CarrierId(4)];

/// LTE-U operation mode of a UE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Carrier aggregation: licensed PCell, unlicensed SCell on the same node.
    Ca,
    /// Dual connectivity: macro anchor plus two small-cell carriers.
    Dc,
    /// Standalone on the unlicensed carriers only.
    Sa,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Ca, Mode::Dc, Mode::Sa];

    /// Preference when estimated rates tie: standalone first.
    fn tie_rank(self) -> u8 {
        match self {
            Mode::Sa => 0,
            Mode::Dc => 1,
            Mode::Ca => 2,
        }
    }
}

/// Which modes UEs may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    /// Every UE is restricted to CA.
    CaOnly,
    /// UEs pick CA, DC or standalone per file.
    DcSa,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::CaOnly => "ca",
            Case::DcSa => "dcsa",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ca" => Ok(Case::CaOnly),
            "dcsa" => Ok(Case::DcSa),
            other => Err(Error::Invalid(format!(
                "unknown case `{other}` (expected ca or dcsa)"
            ))),
        }
    }
}

/// How small-cell carriers are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AllocationPolicy {
    /// Round-robin over the unlicensed carriers, frozen at initialization.
    Fixed,
    /// Chosen per file from estimated rates.
    Flexible,
}

impl AllocationPolicy {
    pub fn label(self) -> &'static str {
        match self {
            AllocationPolicy::Fixed => "fixed",
            AllocationPolicy::Flexible => "flexible",
        }
    }
}

impl fmt::Display for AllocationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for AllocationPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fixed" => Ok(AllocationPolicy::Fixed),
            "flexible" => Ok(AllocationPolicy::Flexible),
            other => Err(Error::Invalid(format!(
                "unknown policy `{other}` (expected fixed or flexible)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CarrierTable {
    carriers: [CarrierSpec; 4],
}

impl Default for CarrierTable {
    fn default() -> Self {
        Self::with_tx_power(SMALL_CELL_TX_DBM)
    }
}

impl CarrierTable {
    /// The standard table with `tx_power_dbm` on every small-cell carrier.
    pub fn with_tx_power(tx_power_dbm: f64) -> Self {
        let small = |id: u8, fc: f64, bw: f64, class: BandClass| CarrierSpec {
            id: CarrierId(id),
            center_freq_ghz: fc,
            bandwidth_mhz: bw,
            band_class: class,
            tx_power_dbm,
            site_kind: SiteKind::Small,
        };
        CarrierTable {
            carriers: [
                CarrierSpec {
                    id: MACRO_CARRIER,
                    center_freq_ghz: 2.0,
                    bandwidth_mhz: 20.0,
                    band_class: BandClass::Licensed,
                    tx_power_dbm: 46.0,
                    site_kind: SiteKind::Macro,
                },
                small(2, 3.5, 10.0, BandClass::Licensed),
                small(3, UNLICENSED_GHZ, 20.0, BandClass::Unlicensed),
                small(4, UNLICENSED_GHZ, 20.0, BandClass::Unlicensed),
            ],
        }
    }

    pub fn carriers(&self) -> &[CarrierSpec] {
        &self.carriers
    }

    pub fn get(&self, id: CarrierId) -> Option<&CarrierSpec> {
        self.carriers.iter().find(|c| c.id == id)
    }

    /// True for carriers whose throughput counts (small-cell carriers).
    pub fn is_counted(&self, id: CarrierId) -> bool {
        self.get(id).is_some_and(|c| c.site_kind == SiteKind::Small)
    }

    /// The 4:4 small-cell layout with every node carrying carriers 2, 3 and 4.
    /// Carrier 1 belongs to the macro layer and has no small-cell node.
    pub fn layout(&self) -> DeploymentLayout {
        let [c1, c2, c3, c4] = self.carriers.clone();
        layout_with_carriers(RatioLabel::R4x4, vec![c2], vec![c3, c4], vec![c1])
    }
}

/// Carrier choices open to a mode: every assignment is `fixed` plus
/// exactly `pick` distinct carriers out of `pool`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub fixed: Vec<CarrierId>,
    pub pool: Vec<CarrierId>,
    pub pick: usize,
}

impl CandidateSet {
    /// All feasible assignments, each sorted ascending, in lexicographic order.
    pub fn assignments(&self) -> Vec<Vec<CarrierId>> {
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(self.pick);
        combinations(&self.pool, self.pick, 0, &mut chosen, &mut |picked| {
            let mut set = self.fixed.clone();
            set.extend_from_slice(picked);
            set.sort();
            out.push(set);
        });
        out.sort();
        out
    }

    /// Whether `assignment` is one of this mode's feasible sets.
    pub fn admits(&self, assignment: &[CarrierId]) -> bool {
        let mut sorted = assignment.to_vec();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
            && sorted.len() <= UE_CARRIER_CAPABILITY
            && self.fixed.iter().all(|c| sorted.contains(c))
            && sorted.len() == self.fixed.len() + self.pick
            && sorted
                .iter()
                .filter(|c| !self.fixed.contains(c))
                .all(|c| self.pool.contains(c))
    }
}

fn combinations<F: FnMut(&[CarrierId])>(
    pool: &[CarrierId],
    k: usize,
    start: usize,
    chosen: &mut Vec<CarrierId>,
    emit: &mut F,
) {
    if chosen.len() == k {
        emit(chosen);
        return;
    }
    for i in start..pool.len() {
        chosen.push(pool[i]);
        combinations(pool, k, i + 1, chosen, emit);
        chosen.pop();
    }
}

/// Candidate carriers per mode.
pub fn candidate_carriers(mode: Mode) -> CandidateSet {
    match mode {
        Mode::Ca => CandidateSet {
            fixed: vec![MACRO_CARRIER, SMALL_LICENSED_CARRIER],
            pool: UNLICENSED_CARRIERS.to_vec(),
            pick: 1,
        },
        Mode::Dc => CandidateSet {
            fixed: vec![MACRO_CARRIER],
            pool: vec![
                SMALL_LICENSED_CARRIER,
                UNLICENSED_CARRIERS[0],
                UNLICENSED_CARRIERS[1],
            ],
            pick: 2,
        },
        Mode::Sa => CandidateSet {
            fixed: UNLICENSED_CARRIERS.to_vec(),
            pool: Vec::new(),
            pick: 0,
        },
    }
}

/// Estimated achievable rate per carrier, in Mbit/s.
pub type RateEstimate = BTreeMap<CarrierId, f64>;

/// Round-robin assignment of UEs to unlicensed carriers, in list order.
pub fn allocate_fixed(
    ue_ids: &[usize],
    unlicensed_carriers: &[CarrierId],
) -> Result<BTreeMap<usize, CarrierId>> {
    if unlicensed_carriers.is_empty() {
        return Err(Error::Invalid(
            "fixed allocation needs at least one unlicensed carrier".into(),
        ));
    }
    Ok(ue_ids
        .iter()
        .enumerate()
        .map(|(i, &ue)| (ue, unlicensed_carriers[i % unlicensed_carriers.len()]))
        .collect())
}

/// Carrier with the highest estimated rate, ties to the lowest id.
pub fn allocate_flexible(estimates: &RateEstimate) -> Result<CarrierId> {
    let mut best: Option<(CarrierId, f64)> = None;
    // BTreeMap iterates in ascending id order, so strict > keeps the lowest id on ties.
    for (&id, &rate) in estimates {
        if best.is_none_or(|(_, r)| rate > r) {
            best = Some((id, rate));
        }
    }
    best.map(|(id, _)| id)
        .ok_or_else(|| Error::Domain("flexible allocation over an empty estimate".into()))
}

/// Counted rate of an assignment: the sum of its carriers' estimates, with
/// missing (uncounted) carriers contributing zero.
pub fn counted_rate(assignment: &[CarrierId], estimates: &RateEstimate) -> f64 {
    assignment
        .iter()
        .map(|c| estimates.get(c).copied().unwrap_or(0.0))
        .sum()
}

/// Best feasible assignment for `mode` under `estimates`, with its counted
/// rate. Ties go to the lexicographically smallest assignment.
pub fn best_assignment(mode: Mode, estimates: &RateEstimate) -> (Vec<CarrierId>, f64) {
    let mut best: Option<(Vec<CarrierId>, f64)> = None;
    for set in candidate_carriers(mode).assignments() {
        let rate = counted_rate(&set, estimates);
        if best.as_ref().is_none_or(|(_, r)| rate > *r) {
            best = Some((set, rate));
        }
    }
    best.expect("every mode has at least one assignment")
}

/// Fixed-policy assignment for a UE: the UE's round-robin unlicensed carrier
/// for CA and DC, both unlicensed carriers for standalone.
pub fn fixed_assignment(mode: Mode, unlicensed: CarrierId) -> Vec<CarrierId> {
    match mode {
        Mode::Ca | Mode::Dc => vec![MACRO_CARRIER, SMALL_LICENSED_CARRIER, unlicensed],
        Mode::Sa => UNLICENSED_CARRIERS.to_vec(),
    }
}

/// Mode with the highest estimated counted rate; ties prefer SA, then DC, then CA.
pub fn select_mode(per_mode: &BTreeMap<Mode, f64>) -> Mode {
    let mut best: Option<(Mode, f64)> = None;
    for (&mode, &rate) in per_mode {
        let better = match best {
            None => true,
            Some((m, r)) => rate > r || (rate == r && mode.tie_rank() < m.tie_rank()),
        };
        if better {
            best = Some((mode, rate));
        }
    }
    best.map(|(m, _)| m).unwrap_or(Mode::Sa)
}
