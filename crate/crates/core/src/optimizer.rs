//! Exhaustive grid search over allocation parameters.

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{self, OutageProbs};
use crate::efrc;
use crate::error::{Error, Result};
use crate::params::{ProtocolKind, SystemParams};

/// Evenly spaced values `start + i*step` up to and including `stop`.
///
/// Values are rounded to 12 decimals so that grids like 1.01..4 by 0.01 hit
/// round numbers exactly.
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(Error::Domain(format!("bad grid {start}:{stop}:{step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    if n > 10_000_000 {
        return Err(Error::Domain(format!("grid {start}:{stop}:{step} has too many points")));
    }
    Ok((0..=n)
        .map(|i| {
            let v = start + i as f64 * step;
            (v * 1e12).round() / 1e12
        })
        .collect())
}

/// Which allocation knob(s) to search.
#[derive(Debug, Clone, PartialEq)]
pub enum AllocationGrid {
    /// NOMA power ratio k.
    PowerRatio(Vec<f64>),
    /// ISAOC power fraction rho and frequency fraction theta.
    PowerFrequency { rho: Vec<f64>, theta: Vec<f64> },
}

/// How each grid point is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Exact outage with the fading inter-user link.
    Analytic,
    /// Error-free inter-user link.
    Efrc,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Allocation {
    PowerRatio { k: f64 },
    PowerFrequency { rho: f64, theta: f64 },
}

impl Allocation {
    pub fn apply(&self, params: &SystemParams) -> SystemParams {
        match *self {
            Allocation::PowerRatio { k } => SystemParams {
                power_ratio: k,
                ..*params
            },
            Allocation::PowerFrequency { rho, theta } => SystemParams {
                power_fraction: rho,
                freq_fraction: theta,
                ..*params
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub allocation: Allocation,
    pub outage: OutageProbs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best: Allocation,
    pub best_outage: OutageProbs,
    /// Every valid grid point, in search order.
    pub surface: Vec<SurfacePoint>,
}

impl SearchResult {
    pub fn best_sop(&self) -> f64 {
        self.best_outage.sop
    }
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Minimises SOP over the grid. Points outside the protocol's validity
/// domain are skipped; ties go to the smallest allocation value.
pub fn minimize_sop(
    protocol: ProtocolKind,
    params: &SystemParams,
    grid: &AllocationGrid,
    objective: Objective,
) -> Result<SearchResult> {
    let candidates: Vec<Allocation> = match (grid, protocol.is_noma()) {
        (AllocationGrid::PowerRatio(ks), true) => sorted(ks).into_iter().map(|k| Allocation::PowerRatio { k }).collect(),
        (AllocationGrid::PowerFrequency { rho, theta }, false) => {
            let thetas = sorted(theta);
            sorted(rho)
                .into_iter()
                .flat_map(|r| thetas.iter().map(move |&t| Allocation::PowerFrequency { rho: r, theta: t }))
                .collect()
        }
        _ => {
            return Err(Error::Domain(format!("allocation grid does not match protocol {protocol}")));
        }
    };
    let valid: Vec<Allocation> = candidates
        .into_iter()
        .filter(|a| a.apply(params).validate(protocol).is_ok())
        .collect();
    if valid.is_empty() {
        return Err(Error::Domain(format!("no grid point is a valid allocation for {protocol}")));
    }

    let surface = valid
        .par_iter()
        .map(|a| {
            let p = a.apply(params);
            let outage = match objective {
                Objective::Analytic => analytic::outage(protocol, &p)?,
                Objective::Efrc => efrc::efrc_outage(protocol, &p),
            };
            Ok(SurfacePoint {
                allocation: *a,
                outage,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let best = first_minimum(&surface);
    Ok(SearchResult {
        best: best.allocation,
        best_outage: best.outage,
        surface,
    })
}

/// First point with the smallest SOP; `surface` is in ascending allocation order.
fn first_minimum(surface: &[SurfacePoint]) -> SurfacePoint {
    let mut best = surface[0];
    for pt in &surface[1..] {
        if pt.outage.sop < best.outage.sop {
            best = *pt;
        }
    }
    best
}
