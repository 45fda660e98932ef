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

use crate::config::{FixedModeRule, SimConfig};
use crate::metrics::ThroughputReport;
use crate::policy::{
    allocate_fixed, best_assignment, counted_rate, fixed_assignment, select_mode, AllocationPolicy,
    CarrierTable, Case, Mode, RateEstimate, UNLICENSED_CARRIERS,
};
use crate::radio::{
    associate, db_to_linear, linear_to_db, noise_power, LinkAbstraction, LossTable,
};
use crate::rng::{substream, Stream};
use crate::scenario::{
    drop_ues, CarrierId, CarrierSpec, DeploymentLayout, NodeId, Point2D, UeTerminal,
    UE_CARRIER_CAPABILITY,
};
use crate::traffic::{poisson_arrivals, Arrival, FileJob};
use crate::{Error, Result};

/// Bits one job receives in one TTI when `n_active` jobs share a carrier
/// of `bandwidth_mhz` at spectral efficiency `se`.
pub fn share_bits(bandwidth_mhz: f64, se: f64, n_active: usize, tti_s: f64) -> f64 {
    bandwidth_mhz * 1.0e6 * se / n_active as f64 * tti_s
}

/// A job together with the decision taken when it arrived.
#[derive(Debug, Clone, PartialEq)]
pub struct JobRecord {
    pub job: FileJob,
    pub mode: Mode,
    /// Full assignment including any uncounted macro carrier.
    pub carriers: Vec<CarrierId>,
    /// Sum of all bits delivered to this job.
    pub served_bits: u64,
}

/// Bits delivered to one job on one carrier in one TTI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ServedChunk {
    pub job: usize,
    pub carrier: CarrierId,
    pub node: NodeId,
    pub sinr_db: f64,
    /// The job's resource-fair share before capping at its remaining bits.
    pub share_bits: f64,
    pub bits: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TtiOutcome {
    pub tti: u64,
    /// Nodes transmitting on each counted carrier this TTI.
    pub active_nodes: Vec<(CarrierId, Vec<NodeId>)>,
    pub served: Vec<ServedChunk>,
}

#[derive(Debug, Clone)]
pub struct ThroughputRun {
    pub report: ThroughputReport,
    pub jobs: Vec<JobRecord>,
}

/// Discrete-time simulation of one (case, policy, load, seed) combination on
/// the 4:4 layout with carriers 2, 3 and 4 on every node.
///
/// Each TTI, a node transmits on a carrier only if some job is active there.
/// A job is active on every carrier of its assignment, except that a UE's
/// jobs on one carrier are served first-in first-out. Each active job gets
/// an equal share of the carrier's time at its own SINR, where only
/// co-channel nodes that transmit in the same TTI interfere.
#[derive(Debug, Clone)]
pub struct ThroughputSim {
    case: Case,
    policy: AllocationPolicy,
    fixed_mode_rule: FixedModeRule,
    lambda: f64,
    seed: u64,
    tti_s: f64,
    end_tti: u64,
    file_bits: u64,
    link: LinkAbstraction,

    table: CarrierTable,
    layout: DeploymentLayout,
    /// Carriers 2, 3 and 4; indices into this array are "carrier slots".
    counted: Vec<CarrierSpec>,
    n_nodes: usize,
    ues: Vec<UeTerminal>,
    /// Best server per UE per carrier slot.
    serving: Vec<Vec<usize>>,
    /// Received power in mW, indexed `[(ue * n_nodes + node) * slots + slot]`.
    rx_mw: Vec<f64>,
    noise_mw: Vec<f64>,
    fixed_unlicensed: Vec<CarrierId>,
    fixed_mode: Vec<Mode>,

    arrivals: Vec<Arrival>,
    next_arrival: usize,
    jobs: Vec<JobRecord>,
    /// Slot bitmask per job.
    job_slots: Vec<u8>,
    inflight: Vec<usize>,
    tti: u64,

    /// Active job ids per `(slot * n_nodes + node)`.
    entries: Vec<Vec<usize>>,
    claimed: Vec<bool>,
}

impl ThroughputSim {
    pub fn new(
        cfg: &SimConfig,
        case: Case,
        policy: AllocationPolicy,
        lambda: f64,
        seed: u64,
    ) -> Result<Self> {
        let table = CarrierTable::with_tx_power(cfg.tx_power_dbm);
        let layout = table.layout();
        let ues = drop_ues(
            &layout,
            cfg.n_ue_per_node,
            &mut substream(seed, Stream::UeDrop),
        );
        let positions: Vec<Point2D> = ues.iter().map(|u| u.position).collect();
        let arrivals = poisson_arrivals(
            lambda * cfg.lambda_scale,
            cfg.duration_s,
            ues.len(),
            cfg.tti_s(),
            &mut substream(seed, Stream::ArrivalTimes),
            &mut substream(seed, Stream::ArrivalUes),
        );
        Self::with_population(cfg, case, policy, lambda, seed, &positions, arrivals)
    }

    /// Builds a simulation over explicit UE positions and arrivals.
    /// Shadowing and penetration are still drawn from `seed`.
    pub fn with_population(
        cfg: &SimConfig,
        case: Case,
        policy: AllocationPolicy,
        lambda: f64,
        seed: u64,
        positions: &[Point2D],
        arrivals: Vec<Arrival>,
    ) -> Result<Self> {
        if let Some(a) = arrivals.iter().find(|a| a.ue >= positions.len()) {
            return Err(Error::Invalid(format!("arrival for unknown UE {}", a.ue)));
        }
        let table = CarrierTable::with_tx_power(cfg.tx_power_dbm);
        let layout = table.layout();
        let radio = cfg.radio_params();
        let losses = LossTable::build(
            positions,
            &layout,
            &radio,
            &mut substream(seed, Stream::Shadowing),
            &mut substream(seed, Stream::Penetration),
        );

        let counted: Vec<CarrierSpec> = table
            .carriers()
            .iter()
            .filter(|c| table.is_counted(c.id))
            .cloned()
            .collect();
        let slots = counted.len();
        let n_nodes = layout.nodes.len();

        let mut serving = Vec::with_capacity(positions.len());
        let mut rx_mw = Vec::with_capacity(positions.len() * n_nodes * slots);
        for ue in 0..positions.len() {
            let mut per_slot = Vec::with_capacity(slots);
            for c in &counted {
                per_slot.push(associate(ue, c, &layout, &losses)?.0);
            }
            serving.push(per_slot);
            for node in &layout.nodes {
                for c in &counted {
                    rx_mw.push(db_to_linear(losses.rx_power(ue, node.id, c)));
                }
            }
        }
        let noise_mw = counted
            .iter()
            .map(|c| db_to_linear(noise_power(c.bandwidth_mhz, cfg.noise_figure_db)))
            .collect();

        let ues: Vec<UeTerminal> = positions
            .iter()
            .enumerate()
            .map(|(id, &position)| UeTerminal {
                id,
                position,
                capability: UE_CARRIER_CAPABILITY,
                mode: Mode::Ca,
                assigned_carriers: Vec::new(),
            })
            .collect();
        let ue_ids: Vec<usize> = (0..ues.len()).collect();
        let fixed_unlicensed: Vec<CarrierId> = allocate_fixed(&ue_ids, &UNLICENSED_CARRIERS)?
            .into_values()
            .collect();

        let ratio = cfg.duration_s / cfg.tti_s();
        let end_tti = if (ratio - ratio.round()).abs() < 1e-6 {
            ratio.round()
        } else {
            ratio.ceil()
        } as u64;

        let mut sim = ThroughputSim {
            case,
            policy,
            fixed_mode_rule: cfg.fixed_mode_rule,
            lambda,
            seed,
            tti_s: cfg.tti_s(),
            end_tti,
            file_bits: cfg.file_bits(),
            link: cfg.radio_params().link,
            table,
            layout,
            counted,
            n_nodes,
            ues,
            serving,
            rx_mw,
            noise_mw,
            fixed_unlicensed,
            fixed_mode: Vec::new(),
            arrivals,
            next_arrival: 0,
            jobs: Vec::new(),
            job_slots: Vec::new(),
            inflight: Vec::new(),
            tti: 0,
            entries: vec![Vec::new(); slots * n_nodes],
            claimed: vec![false; slots * positions.len()],
        };
        sim.fixed_mode = (0..sim.ues.len())
            .map(|ue| match sim.fixed_mode_rule {
                FixedModeRule::RoundRobin => Mode::ALL[ue % Mode::ALL.len()],
                // nothing is active yet, so these are unloaded estimates
                _ => sim.select_fixed_mode(ue, &sim.estimates(ue)),
            })
            .collect();
        Ok(sim)
    }

    pub fn carrier_table(&self) -> &CarrierTable {
        &self.table
    }

    pub fn layout(&self) -> &DeploymentLayout {
        &self.layout
    }

    pub fn ues(&self) -> &[UeTerminal] {
        &self.ues
    }

    pub fn jobs(&self) -> &[JobRecord] {
        &self.jobs
    }

    pub fn current_tti(&self) -> u64 {
        self.tti
    }

    pub fn end_tti(&self) -> u64 {
        self.end_tti
    }

    pub fn is_finished(&self) -> bool {
        self.tti >= self.end_tti
    }

    /// Serving node of a UE on a counted carrier.
    pub fn serving_node(&self, ue: usize, carrier: CarrierId) -> Option<NodeId> {
        self.slot_of(carrier).map(|s| NodeId(self.serving[ue][s]))
    }

    fn slot_of(&self, carrier: CarrierId) -> Option<usize> {
        self.counted.iter().position(|c| c.id == carrier)
    }

    fn rx(&self, ue: usize, node: usize, slot: usize) -> f64 {
        self.rx_mw[(ue * self.n_nodes + node) * self.counted.len() + slot]
    }

    /// Rebuilds the active-job map from the in-flight jobs.
    fn fill_active(&mut self) {
        for e in &mut self.entries {
            e.clear();
        }
        self.claimed.iter_mut().for_each(|c| *c = false);
        let n_ues = self.ues.len();
        for &job in &self.inflight {
            let ue = self.jobs[job].job.ue;
            let mask = self.job_slots[job];
            for slot in 0..self.counted.len() {
                if mask & (1 << slot) == 0 || self.claimed[slot * n_ues + ue] {
                    continue;
                }
                self.claimed[slot * n_ues + ue] = true;
                let node = self.serving[ue][slot];
                self.entries[slot * self.n_nodes + node].push(job);
            }
        }
    }

    fn node_active(&self, slot: usize, node: usize) -> bool {
        !self.entries[slot * self.n_nodes + node].is_empty()
    }

    fn sinr_db(&self, ue: usize, slot: usize, serving: usize) -> f64 {
        let interference: f64 = (0..self.n_nodes)
            .filter(|&n| n != serving && self.node_active(slot, n))
            .map(|n| self.rx(ue, n, slot))
            .sum();
        linear_to_db(self.rx(ue, serving, slot) / (interference + self.noise_mw[slot]))
    }

    /// Rate estimate per counted carrier from CSI against the current
    /// active set and the serving node's current load.
    fn estimates(&self, ue: usize) -> RateEstimate {
        self.counted
            .iter()
            .enumerate()
            .map(|(slot, c)| {
                let node = self.serving[ue][slot];
                let se = self.link.spectral_efficiency(self.sinr_db(ue, slot, node));
                let load = self.entries[slot * self.n_nodes + node].len();
                (c.id, c.bandwidth_mhz * se / (load + 1) as f64)
            })
            .collect()
    }

    fn select_fixed_mode(&self, ue: usize, est: &RateEstimate) -> Mode {
        let per_mode = Mode::ALL
            .iter()
            .map(|&m| {
                (
                    m,
                    counted_rate(&fixed_assignment(m, self.fixed_unlicensed[ue]), est),
                )
            })
            .collect();
        select_mode(&per_mode)
    }

    fn decide(&self, ue: usize) -> (Mode, Vec<CarrierId>) {
        let est = self.estimates(ue);
        let choose = |mode: Mode| match self.policy {
            AllocationPolicy::Fixed => {
                let set = fixed_assignment(mode, self.fixed_unlicensed[ue]);
                let rate = counted_rate(&set, &est);
                (set, rate)
            }
            AllocationPolicy::Flexible => best_assignment(mode, &est),
        };
        match (self.case, self.policy) {
            (Case::CaOnly, _) => (Mode::Ca, choose(Mode::Ca).0),
            (Case::DcSa, AllocationPolicy::Fixed)
                if self.fixed_mode_rule != FixedModeRule::PerFile =>
            {
                let mode = self.fixed_mode[ue];
                (mode, choose(mode).0)
            }
            (Case::DcSa, _) => {
                let options: Vec<(Mode, Vec<CarrierId>, f64)> = Mode::ALL
                    .iter()
                    .map(|&m| {
                        let (set, rate) = choose(m);
                        (m, set, rate)
                    })
                    .collect();
                let per_mode = options.iter().map(|(m, _, r)| (*m, *r)).collect();
                let mode = select_mode(&per_mode);
                let set = options.into_iter().find(|(m, _, _)| *m == mode).unwrap().1;
                (mode, set)
            }
        }
    }

    fn arrival_tti(&self, a: &Arrival) -> u64 {
        (a.time_s / self.tti_s).ceil() as u64
    }

    fn admit_due(&mut self) {
        while let Some(a) = self.arrivals.get(self.next_arrival).copied() {
            if self.arrival_tti(&a) > self.tti {
                break;
            }
            self.next_arrival += 1;
            self.fill_active();
            let (mode, carriers) = self.decide(a.ue);
            let mask = carriers
                .iter()
                .filter_map(|&c| self.slot_of(c))
                .fold(0u8, |m, s| m | (1 << s));
            let ue = &mut self.ues[a.ue];
            ue.mode = mode;
            ue.assigned_carriers = carriers.clone();
            self.jobs.push(JobRecord {
                job: FileJob::new(a.ue, a.time_s, self.file_bits),
                mode,
                carriers,
                served_bits: 0,
            });
            self.job_slots.push(mask);
            self.inflight.push(self.jobs.len() - 1);
        }
    }

    /// Admits arrivals due by the start of the current TTI, serves one TTI
    /// and advances the clock.
    pub fn schedule_tti(&mut self) -> TtiOutcome {
        let tti = self.tti;
        self.admit_due();
        self.fill_active();

        let slots = self.counted.len();
        let mut active_nodes = Vec::with_capacity(slots);
        let mut served = Vec::new();
        for slot in 0..slots {
            let carrier = &self.counted[slot];
            let nodes: Vec<NodeId> = (0..self.n_nodes)
                .filter(|&n| self.node_active(slot, n))
                .map(NodeId)
                .collect();
            for &NodeId(node) in &nodes {
                let entry = &self.entries[slot * self.n_nodes + node];
                let n_active = entry.len();
                for &job in entry {
                    let ue = self.jobs[job].job.ue;
                    let sinr_db = self.sinr_db(ue, slot, node);
                    let se = self.link.spectral_efficiency(sinr_db);
                    served.push(ServedChunk {
                        job,
                        carrier: carrier.id,
                        node: NodeId(node),
                        sinr_db,
                        share_bits: share_bits(carrier.bandwidth_mhz, se, n_active, self.tti_s),
                        bits: 0,
                    });
                }
            }
            active_nodes.push((carrier.id, nodes));
        }

        for chunk in &mut served {
            let record = &mut self.jobs[chunk.job];
            chunk.bits = record.job.serve(chunk.share_bits.floor() as u64);
            record.served_bits += chunk.bits;
        }

        let end_s = (tti + 1) as f64 * self.tti_s;
        let jobs = &mut self.jobs;
        self.inflight.retain(|&j| {
            let job = &mut jobs[j].job;
            if job.is_done() {
                job.completion_s = Some(end_s);
                false
            } else {
                true
            }
        });
        self.tti += 1;

        TtiOutcome {
            tti,
            active_nodes,
            served,
        }
    }

    /// Runs to the end of the configured duration. Idle stretches with no
    /// job in flight are skipped.
    pub fn run(mut self) -> ThroughputRun {
        while self.tti < self.end_tti {
            if self.inflight.is_empty() {
                match self.arrivals.get(self.next_arrival) {
                    Some(a) => {
                        let due = self.arrival_tti(a);
                        if due >= self.end_tti {
                            break;
                        }
                        self.tti = self.tti.max(due);
                    }
                    None => break,
                }
            }
            self.schedule_tti();
        }
        let samples_mbps = self
            .jobs
            .iter()
            .filter_map(|r| r.job.throughput_bps())
            .map(|bps| bps / 1.0e6)
            .collect();
        let report = ThroughputReport {
            case: self.case,
            policy: self.policy,
            lambda: self.lambda,
            seed: self.seed,
            samples_mbps,
            unfinished_files: self
                .jobs
                .iter()
                .filter(|r| r.job.completion_s.is_none())
                .count()
                + self.arrivals.len().saturating_sub(self.next_arrival),
        };
        ThroughputRun {
            report,
            jobs: self.jobs,
        }
    }
}

/// Simulates one combination and returns its report.
pub fn run_throughput(
    cfg: &SimConfig,
    case: Case,
    policy: AllocationPolicy,
    lambda: f64,
    seed: u64,
) -> Result<ThroughputReport> {
    Ok(ThroughputSim::new(cfg, case, policy, lambda, seed)?
        .run()
        .report)
}
