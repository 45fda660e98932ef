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

use std::collections::BTreeMap;
use std::fmt;

use crate::config::SimConfig;
use crate::metrics::{coverage_gap, CdfCurve};
use crate::radio::{associate, geometry_sinr, LossTable, RadioParams};
use crate::rng::{substream, Stream};
use crate::scenario::{
    build_layout, uniform_point, Point2D, RatioLabel, OFFICE_LENGTH_M, OFFICE_WIDTH_M,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverageBand {
    Licensed,
    Unlicensed,
}

impl CoverageBand {
    pub const ALL: [CoverageBand; 2] = [CoverageBand::Licensed, CoverageBand::Unlicensed];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverageMetric {
    RsrpDbm,
    SinrDb,
}

impl CoverageMetric {
    pub const ALL: [CoverageMetric; 2] = [CoverageMetric::RsrpDbm, CoverageMetric::SinrDb];

    pub fn label(self) -> &'static str {
        match self {
            CoverageMetric::RsrpDbm => "rsrp_dbm",
            CoverageMetric::SinrDb => "sinr_db",
        }
    }
}

impl fmt::Display for CoverageMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub type CurveKey = (RatioLabel, CoverageBand, CoverageMetric);

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageResult {
    /// Center frequency per band, GHz.
    pub band_ghz: BTreeMap<CoverageBand, f64>,
    pub curves: BTreeMap<CurveKey, CdfCurve>,
}

impl CoverageResult {
    pub fn curve(
        &self,
        ratio: RatioLabel,
        band: CoverageBand,
        metric: CoverageMetric,
    ) -> Option<&CdfCurve> {
        self.curves.get(&(ratio, band, metric))
    }

    /// Licensed minus unlicensed serving power at percentile `p`.
    pub fn rsrp_gap(&self, ratio: RatioLabel, p: f64) -> Result<f64> {
        let get = |band| {
            self.curve(ratio, band, CoverageMetric::RsrpDbm)
                .ok_or_else(|| Error::Invalid(format!("ratio {ratio} was not simulated")))
        };
        coverage_gap(
            get(CoverageBand::Licensed)?,
            get(CoverageBand::Unlicensed)?,
            p,
        )
    }

    /// Pools the samples of several results curve by curve.
    pub fn pooled<'a>(results: impl IntoIterator<Item = &'a CoverageResult>) -> CoverageResult {
        let mut band_ghz = BTreeMap::new();
        let mut samples: BTreeMap<CurveKey, Vec<f64>> = BTreeMap::new();
        for r in results {
            band_ghz.extend(r.band_ghz.iter().map(|(k, v)| (*k, *v)));
            for (key, curve) in &r.curves {
                samples
                    .entry(*key)
                    .or_default()
                    .extend_from_slice(curve.samples());
            }
        }
        CoverageResult {
            band_ghz,
            curves: samples
                .into_iter()
                .map(|(k, v)| (k, CdfCurve::from_samples(v)))
                .collect(),
        }
    }
}

/// Drops `cfg.coverage_samples` test points uniformly over the office and
/// records, per ratio and band, the serving received power and the
/// full-load geometry SINR at each point. Penetration loss is never applied
/// here, whatever the configuration says.
pub fn run_coverage(cfg: &SimConfig, seed: u64) -> Result<CoverageResult> {
    if cfg.coverage_samples == 0 {
        return Err(Error::Domain(
            "coverage needs at least one test point".into(),
        ));
    }
    let mut point_rng = substream(seed, Stream::CoveragePoints);
    let points: Vec<Point2D> = (0..cfg.coverage_samples)
        .map(|_| uniform_point(OFFICE_LENGTH_M, OFFICE_WIDTH_M, &mut point_rng))
        .collect();
    let radio = RadioParams {
        penetration: false,
        ..cfg.radio_params()
    };

    let mut band_ghz = BTreeMap::new();
    let mut curves = BTreeMap::new();
    for &ratio in &cfg.coverage_ratios {
        let mut layout = build_layout(ratio.as_str())?;
        for c in &mut layout.carriers {
            c.tx_power_dbm = cfg.tx_power_dbm;
        }
        let losses = LossTable::build(
            &points,
            &layout,
            &radio,
            &mut substream(seed, Stream::Shadowing),
            &mut substream(seed, Stream::Penetration),
        );
        for (band, carrier) in CoverageBand::ALL.into_iter().zip(&layout.carriers) {
            band_ghz.insert(band, carrier.center_freq_ghz);
            let nodes: Vec<_> = layout.nodes_with(carrier.id).map(|n| n.id).collect();
            let mut rsrp = Vec::with_capacity(points.len());
            let mut sinr = Vec::with_capacity(points.len());
            for p in 0..points.len() {
                let serving = associate(p, carrier, &layout, &losses)?;
                rsrp.push(losses.rx_power(p, serving, carrier));
                sinr.push(geometry_sinr(
                    p,
                    serving,
                    carrier,
                    nodes.iter().copied(),
                    &losses,
                    radio.noise_figure_db,
                ));
            }
            curves.insert(
                (ratio, band, CoverageMetric::RsrpDbm),
                CdfCurve::from_samples(rsrp),
            );
            curves.insert(
                (ratio, band, CoverageMetric::SinrDb),
                CdfCurve::from_samples(sinr),
            );
        }
    }
    Ok(CoverageResult { band_ghz, curves })
}
