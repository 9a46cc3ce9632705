//! Per-trial decoding for the two power-domain protocols.
//!
//! Both users first try to decode in the direct phase with all received power
//! routed to information decoding. A user that recovers everything it needs
//! diverts the largest power-splitting fraction that still leaves its own
//! decoding feasible, and spends the harvested energy relaying the other
//! user's message. The receiver combines the direct and relayed copies (MRC).

use crate::channel::ChannelRealization;
use crate::params::{ProtocolKind, SystemParams};

/// Decoded-event flags for one channel draw.
///
/// Naming follows `<receiver><how><message>`: `ndf` is "N decodes F's message
/// in the direct phase", `nhf` is "N helps F" (F recovers its message after
/// combining the relayed copy), and so on.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TrialOutcome {
    pub ndf: bool,
    pub ndn: bool,
    pub fdf: bool,
    pub fdn: bool,
    pub nhf: bool,
    pub fhn: bool,
    pub outage_n: bool,
    pub outage_f: bool,
    pub beta_n: f64,
    pub beta_f: f64,
}

impl TrialOutcome {
    pub fn outage_sys(&self) -> bool {
        self.outage_n || self.outage_f
    }

    /// Returns the first violated structural invariant, if any.
    pub fn check_invariants(&self, protocol: ProtocolKind) -> Result<(), &'static str> {
        let rules: [(bool, &'static str); 10] = [
            (protocol == ProtocolKind::Isaoc || !self.ndn || self.ndf, "ndn => ndf"),
            (protocol == ProtocolKind::Isaoc || !self.fdn || self.fdf, "fdn => fdf"),
            (self.beta_n <= 0.0 || (self.ndf && self.ndn), "beta_n > 0 => ndf && ndn"),
            (self.beta_f <= 0.0 || (self.fdf && self.fdn), "beta_f > 0 => fdf && fdn"),
            ((0.0..1.0).contains(&self.beta_n) && (0.0..1.0).contains(&self.beta_f), "beta in [0, 1)"),
            (!self.nhf || (!self.fdf && self.ndf && self.ndn), "nhf => !fdf && ndf && ndn"),
            (!self.fhn || (!self.ndn && self.fdf && self.fdn), "fhn => !ndn && fdf && fdn"),
            (self.outage_f == !(self.fdf || self.nhf), "outage_f == !(fdf || nhf)"),
            (self.outage_n == !(self.ndn || self.fhn), "outage_n == !(ndn || fhn)"),
            (
                protocol != ProtocolKind::Csanc || (!self.fdn && !self.fhn && self.beta_f == 0.0),
                "csanc: F never relays",
            ),
        ];
        match rules.iter().find(|(ok, _)| !ok) {
            Some((_, rule)) => Err(rule),
            None => Ok(()),
        }
    }
}

/// Largest EH fraction that keeps decoding feasible: max(1 - c/gain, 0).
pub fn eh_factor(gain: f64, c: f64) -> f64 {
    if gain <= c {
        0.0
    } else {
        1.0 - c / gain
    }
}

/// Squared-gain thresholds of the direct phase.
///
/// `ndf`/`ndn` are the per-message thresholds on y at user N; `fdf`/`fdn`
/// the ones on x at user F. `c_n`/`c_f` are the full-decode thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NomaThresholds {
    pub ndf: f64,
    pub ndn: f64,
    pub fdf: f64,
    pub fdn: f64,
    pub c_n: f64,
    pub c_f: f64,
}

impl NomaThresholds {
    /// True when k > 2^R, i.e. the near user's own message is the binding one.
    pub fn own_message_binds(&self) -> bool {
        self.ndn > self.ndf
    }
}

/// Thresholds for validated NOMA parameters.
pub fn noma_thresholds(params: &SystemParams) -> NomaThresholds {
    let s = params.sinr_target();
    let pw = params.noma_powers();
    let sic_margin = pw.far - pw.near * s;
    let dn = params.direct_noise_n();
    let df = params.direct_noise_f();
    let (ndf, ndn) = (s * dn / sic_margin, s * dn / pw.near);
    let (fdf, fdn) = (s * df / sic_margin, s * df / pw.near);
    let k_above = params.power_ratio > params.rate.exp2();
    NomaThresholds {
        ndf,
        ndn,
        fdf,
        fdn,
        c_n: if k_above { ndn } else { ndf },
        c_f: if k_above { fdn } else { fdf },
    }
}

/// Precomputed constants for evaluating many NOMA trials.
#[derive(Debug, Clone, Copy)]
pub struct NomaLink {
    pub thresholds: NomaThresholds,
    s: f64,
    p_n: f64,
    p_f: f64,
    dn: f64,
    df: f64,
    /// eta * P_B / (d_BN^a d_NF^a sigma_F^2)
    relay_gain_f: f64,
    /// eta * P_B / (d_BF^a d_NF^a sigma_N^2)
    relay_gain_n: f64,
}

impl NomaLink {
    pub fn new(params: &SystemParams) -> Self {
        let pw = params.noma_powers();
        NomaLink {
            thresholds: noma_thresholds(params),
            s: params.sinr_target(),
            p_n: pw.near,
            p_f: pw.far,
            dn: params.direct_noise_n(),
            df: params.direct_noise_f(),
            relay_gain_f: params.eta * params.total_power / params.relay_noise_to_f(),
            relay_gain_n: params.eta * params.total_power / params.relay_noise_to_n(),
        }
    }

    /// Combined SINR of F's message at F after N relays it.
    pub fn gamma_nhf(&self, ch: &ChannelRealization, beta_n: f64) -> f64 {
        let x = ch.gain_bf;
        self.p_f * x / (self.p_n * x + self.df) + beta_n * self.relay_gain_f * ch.gain_bn * ch.gain_nf
    }

    /// Combined SINR of N's message at N after F relays it. `ndf` selects
    /// whether N already cancelled F's message in the direct phase.
    pub fn gamma_fhn(&self, ch: &ChannelRealization, beta_f: f64, ndf: bool) -> f64 {
        let y = ch.gain_bn;
        let direct = if ndf {
            self.p_n * y / self.dn
        } else {
            self.p_n * y / (self.p_f * y + self.dn)
        };
        direct + beta_f * self.relay_gain_n * ch.gain_bf * ch.gain_nf
    }

    pub fn csanc(&self, ch: &ChannelRealization) -> TrialOutcome {
        let t = &self.thresholds;
        let fdf = ch.gain_bf >= t.fdf;
        let ndf = ch.gain_bn >= t.ndf;
        let ndn = ndf && ch.gain_bn >= t.c_n;
        let beta_n = if ndn { eh_factor(ch.gain_bn, t.c_n) } else { 0.0 };
        let nhf = !fdf && ndn && self.gamma_nhf(ch, beta_n) >= self.s;
        TrialOutcome {
            ndf,
            ndn,
            fdf,
            fdn: false,
            nhf,
            fhn: false,
            outage_n: !ndn,
            outage_f: !(fdf || nhf),
            beta_n,
            beta_f: 0.0,
        }
    }

    pub fn isanc(&self, ch: &ChannelRealization) -> TrialOutcome {
        let mut out = self.csanc(ch);
        let t = &self.thresholds;
        out.fdn = out.fdf && ch.gain_bf >= t.c_f;
        if out.fdn {
            out.beta_f = eh_factor(ch.gain_bf, t.c_f);
        }
        out.fhn = !out.ndn && out.fdn && self.gamma_fhn(ch, out.beta_f, out.ndf) >= self.s;
        out.outage_n = !(out.ndn || out.fhn);
        out
    }
}

pub fn evaluate_csanc_trial(params: &SystemParams, ch: &ChannelRealization) -> TrialOutcome {
    NomaLink::new(params).csanc(ch)
}

pub fn evaluate_isanc_trial(params: &SystemParams, ch: &ChannelRealization) -> TrialOutcome {
    NomaLink::new(params).isanc(ch)
}
