//! Monte Carlo estimation of outage probabilities.
//!
//! Trials are grouped into fixed-size blocks, each with its own ChaCha
//! stream, so counts depend only on `(protocol, params, trials, seed)` and
//! never on the number of worker threads.

use std::ops::Add;

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{block_rng, sample, ChannelRealization, BLOCK_TRIALS};
use crate::error::{Error, Result};
use crate::noma::{NomaLink, TrialOutcome};
use crate::ofdma::OfdmaLink;
use crate::params::{ProtocolKind, SystemParams};

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Failure counts below this make the normal-approximation interval unreliable.
pub const LOW_COUNT: u64 = 100;

/// A protocol bound to one parameter set, ready to evaluate trials.
#[derive(Debug, Clone, Copy)]
pub enum TrialEvaluator {
    Csanc(NomaLink),
    Isanc(NomaLink),
    Isaoc(OfdmaLink),
}

impl TrialEvaluator {
    pub fn new(protocol: ProtocolKind, params: &SystemParams) -> Self {
        match protocol {
            ProtocolKind::Csanc => TrialEvaluator::Csanc(NomaLink::new(params)),
            ProtocolKind::Isanc => TrialEvaluator::Isanc(NomaLink::new(params)),
            ProtocolKind::Isaoc => TrialEvaluator::Isaoc(OfdmaLink::new(params)),
        }
    }

    pub fn protocol(&self) -> ProtocolKind {
        match self {
            TrialEvaluator::Csanc(_) => ProtocolKind::Csanc,
            TrialEvaluator::Isanc(_) => ProtocolKind::Isanc,
            TrialEvaluator::Isaoc(_) => ProtocolKind::Isaoc,
        }
    }

    #[inline]
    pub fn evaluate(&self, ch: &ChannelRealization) -> TrialOutcome {
        match self {
            TrialEvaluator::Csanc(link) => link.csanc(ch),
            TrialEvaluator::Isanc(link) => link.isanc(ch),
            TrialEvaluator::Isaoc(link) => link.isaoc(ch),
        }
    }
}

/// Raw counts of outages and of the individual events behind them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EventTally {
    pub trials: u64,
    pub outage_n: u64,
    pub outage_f: u64,
    pub outage_sys: u64,
    pub ndf0: u64,
    pub ndn0: u64,
    pub fdf0: u64,
    pub fdn0: u64,
    /// {NHF=0, FDF=0, NDF=1, NDN=1}
    pub nhf0: u64,
    /// {FHN=0, NDF=0, NDN=0, FDF=1, FDN=1}
    pub fhn0_ndf0: u64,
    /// {FHN=0, NDF=1, NDN=0, FDF=1, FDN=1}
    pub fhn0_ndf1: u64,
}

impl EventTally {
    pub fn record(&mut self, o: &TrialOutcome) {
        self.trials += 1;
        self.outage_n += o.outage_n as u64;
        self.outage_f += o.outage_f as u64;
        self.outage_sys += o.outage_sys() as u64;
        self.ndf0 += !o.ndf as u64;
        self.ndn0 += !o.ndn as u64;
        self.fdf0 += !o.fdf as u64;
        self.fdn0 += !o.fdn as u64;
        self.nhf0 += (!o.fdf && o.ndf && o.ndn && !o.nhf) as u64;
        let f_full = o.fdf && o.fdn;
        self.fhn0_ndf0 += (f_full && !o.ndf && !o.ndn && !o.fhn) as u64;
        self.fhn0_ndf1 += (f_full && o.ndf && !o.ndn && !o.fhn) as u64;
    }

    pub fn fraction(&self, count: u64) -> f64 {
        count as f64 / self.trials as f64
    }
}

impl Add for EventTally {
    type Output = EventTally;

    fn add(self, o: EventTally) -> EventTally {
        EventTally {
            trials: self.trials + o.trials,
            outage_n: self.outage_n + o.outage_n,
            outage_f: self.outage_f + o.outage_f,
            outage_sys: self.outage_sys + o.outage_sys,
            ndf0: self.ndf0 + o.ndf0,
            ndn0: self.ndn0 + o.ndn0,
            fdf0: self.fdf0 + o.fdf0,
            fdn0: self.fdn0 + o.fdn0,
            nhf0: self.nhf0 + o.nhf0,
            fhn0_ndf0: self.fhn0_ndf0 + o.fhn0_ndf0,
            fhn0_ndf1: self.fhn0_ndf1 + o.fhn0_ndf1,
        }
    }
}

/// Point estimates with 95% normal-approximation half-widths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageEstimate {
    pub protocol: ProtocolKind,
    pub seed: u64,
    pub trials: u64,
    pub failures_n: u64,
    pub failures_f: u64,
    pub failures_sys: u64,
    pub op_n: f64,
    pub op_f: f64,
    pub sop: f64,
    pub ci_half_width_n: f64,
    pub ci_half_width_f: f64,
    pub ci_half_width_sys: f64,
    pub events: EventTally,
}

/// 95% half-width for a binomial proportion.
pub fn ci_half_width(failures: u64, trials: u64) -> f64 {
    let n = trials as f64;
    let p = failures as f64 / n;
    Z_95 * (p * (1.0 - p) / n).sqrt()
}

impl OutageEstimate {
    fn from_tally(protocol: ProtocolKind, seed: u64, t: EventTally) -> Self {
        let n = t.trials;
        OutageEstimate {
            protocol,
            seed,
            trials: n,
            failures_n: t.outage_n,
            failures_f: t.outage_f,
            failures_sys: t.outage_sys,
            op_n: t.fraction(t.outage_n),
            op_f: t.fraction(t.outage_f),
            sop: t.fraction(t.outage_sys),
            ci_half_width_n: ci_half_width(t.outage_n, n),
            ci_half_width_f: ci_half_width(t.outage_f, n),
            ci_half_width_sys: ci_half_width(t.outage_sys, n),
            events: t,
        }
    }

    /// Message naming the counts too small for the normal approximation.
    pub fn low_count_warning(&self) -> Option<String> {
        let low: Vec<String> = [
            ("op_n", self.failures_n),
            ("op_f", self.failures_f),
            ("sop", self.failures_sys),
        ]
        .iter()
        .filter(|(_, c)| *c < LOW_COUNT)
        .map(|(name, c)| format!("{name} ({c})"))
        .collect();
        if low.is_empty() {
            None
        } else {
            Some(format!(
                "{} failures observed for {}; confidence intervals are unreliable below {LOW_COUNT}, \
                 raise --trials or lower the transmit power",
                self.protocol,
                low.join(", ")
            ))
        }
    }
}

fn run_block(eval: &TrialEvaluator, params: &SystemParams, seed: u64, block: u64, count: u64) -> EventTally {
    let protocol = eval.protocol();
    let mut rng = block_rng(seed, block);
    let mut tally = EventTally::default();
    for _ in 0..count {
        let ch = sample(&mut rng, params);
        let out = eval.evaluate(&ch);
        debug_assert_eq!(out.check_invariants(protocol), Ok(()));
        tally.record(&out);
    }
    tally
}

/// Runs `trials` trials on the global thread pool.
pub fn estimate(protocol: ProtocolKind, params: &SystemParams, trials: u64, seed: u64) -> Result<OutageEstimate> {
    estimate_with_workers(protocol, params, trials, seed, 0)
}

/// Runs `trials` trials on `workers` threads (0 picks the rayon default).
pub fn estimate_with_workers(
    protocol: ProtocolKind,
    params: &SystemParams,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<OutageEstimate> {
    if trials == 0 {
        return Err(Error::invalid("trials", ">= 1", 0.0));
    }
    params.validate(protocol)?;
    let eval = TrialEvaluator::new(protocol, params);
    let blocks = trials.div_ceil(BLOCK_TRIALS);
    let block_len = |b: u64| BLOCK_TRIALS.min(trials - b * BLOCK_TRIALS);
    let work = || {
        (0..blocks)
            .into_par_iter()
            .map(|b| run_block(&eval, params, seed, b, block_len(b)))
            .reduce(EventTally::default, Add::add)
    };
    let tally = if workers == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))?
            .install(work)
    };
    assert!(
        tally.outage_sys >= tally.outage_n.max(tally.outage_f) && tally.outage_sys <= tally.outage_n + tally.outage_f,
        "system outage count outside its bounds"
    );
    Ok(OutageEstimate::from_tally(protocol, seed, tally))
}
