//! Closed-form event probabilities and the outage probabilities built from them.
//!
//! Direct-phase events only involve one exponential gain and reduce to
//! exponentials. Relay-failure events need the z-marginal first; integrating
//! out the helper's gain leaves
//!
//! ```text
//! e^{-C/lambda_h} * int_0^T (1/lambda) e^{-v/lambda} (1 - psi(v) K1(psi(v))) dv
//! ```
//!
//! which is evaluated by adaptive quadrature. Working with `1 - psi K1(psi)`
//! instead of differences of probabilities keeps full relative precision even
//! when the event probability is around 1e-10.

pub mod bessel;
pub mod quadrature;

use serde::Serialize;

use crate::error::Result;
use crate::noma::{noma_thresholds, NomaThresholds};
use crate::ofdma::{band_targets, ofdma_thresholds, OfdmaThresholds};
use crate::params::{ProtocolKind, SystemParams};

pub use bessel::{bessel_k1, one_minus_x_k1, x_k1};
pub use quadrature::{integrate, quadrature, QuadEstimate, QuadOptions, DEFAULT_REL_TOL};

/// Per-user and system outage probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageProbs {
    pub op_n: f64,
    pub op_f: f64,
    pub sop: f64,
}

impl OutageProbs {
    pub fn get(&self, which: Metric) -> f64 {
        match which {
            Metric::OpN => self.op_n,
            Metric::OpF => self.op_f,
            Metric::Sop => self.sop,
        }
    }
}

/// Selects one of the three outage figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    OpN,
    OpF,
    Sop,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::OpN, Metric::OpF, Metric::Sop];

    pub fn name(self) -> &'static str {
        match self {
            Metric::OpN => "op_n",
            Metric::OpF => "op_f",
            Metric::Sop => "sop",
        }
    }
}

/// Event probabilities of the power-domain protocols.
///
/// Field names spell out the joint event, e.g. `fhn0_ndf1_ndn0` is
/// P{FHN=0, NDF=1, NDN=0, FDF=1, FDN=1}. `nhf0` is
/// P{NHF=0, FDF=0, NDF=1, NDN=1} and `fhn0_ndf0` is P{FHN=0, NDF=0, FDF=1, FDN=1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NomaEventProbs {
    pub ndf0: f64,
    pub fdf0: f64,
    pub ndf1_ndn0: f64,
    pub fdf1_fdn0: f64,
    pub nhf0: f64,
    pub fhn0_ndf0: f64,
    pub fhn0_ndf1_ndn0: f64,
    /// P{NDN=0}, the complement of N decoding both messages.
    pub ndn0: f64,
    /// P{FDN=0}, the complement of F decoding both messages.
    pub fdn0: f64,
}

/// Event probabilities of the orthogonal-band protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OfdmaEventProbs {
    pub ndn0: f64,
    pub fdf0: f64,
    /// P{NDF=1, NDN=1}
    pub n_full: f64,
    /// P{FDF=1, FDN=1}
    pub f_full: f64,
    pub fdf1_fdn0: f64,
    /// P{NHF=0, FDF=0, NDF=1, NDN=1}
    pub nhf0: f64,
    /// P{FHN=0, NDN=0, FDF=1, FDN=1}
    pub fhn0: f64,
    /// 1 - n_full
    pub n_not_full: f64,
    /// 1 - f_full
    pub f_not_full: f64,
}

/// P{v < t} for v ~ Exp(mean).
fn exp_cdf(t: f64, mean: f64) -> f64 {
    -(-t / mean).exp_m1()
}

/// P{a <= v < b} for v ~ Exp(mean), a <= b.
fn exp_band(a: f64, b: f64, mean: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    // e^{-a/m} - e^{-b/m} = e^{-a/m} (1 - e^{-(b-a)/m})
    (-a / mean).exp() * exp_cdf(b - a, mean)
}

/// Relay-failure integral
/// `int_lo^hi (1/lambda) e^{-v/lambda} (1 - psi K1(psi)) dv` with
/// `psi^2 = scale * max(gap(v), 0)`.
fn relay_failure<G: Fn(f64) -> f64>(lo: f64, hi: f64, lambda: f64, scale: f64, gap: G, rel_tol: f64) -> Result<f64> {
    if hi <= lo {
        return Ok(0.0);
    }
    let integrand = |v: f64| {
        let psi = (scale * gap(v).max(0.0)).sqrt();
        (-v / lambda).exp() / lambda * one_minus_x_k1(psi)
    };
    quadrature(integrand, lo, hi, rel_tol)
}

pub fn noma_event_probs(params: &SystemParams) -> Result<NomaEventProbs> {
    noma_event_probs_with_tol(params, DEFAULT_REL_TOL)
}

pub fn noma_event_probs_with_tol(params: &SystemParams, rel_tol: f64) -> Result<NomaEventProbs> {
    let t: NomaThresholds = noma_thresholds(params);
    let s = params.sinr_target();
    let pw = params.noma_powers();
    let (dn, df) = (params.direct_noise_n(), params.direct_noise_f());
    let (l_bn, l_bf, l_nf) = (params.lambda_bn, params.lambda_bf, params.lambda_nf);
    let eta_pb = params.eta * params.total_power;
    let gap_open = t.own_message_binds();

    let ndf0 = exp_cdf(t.ndf, l_bn);
    let fdf0 = exp_cdf(t.fdf, l_bf);
    let (ndf1_ndn0, fdf1_fdn0) = if gap_open {
        (exp_band(t.ndf, t.ndn, l_bn), exp_band(t.fdf, t.fdn, l_bf))
    } else {
        (0.0, 0.0)
    };

    let scale1 = 4.0 * params.relay_noise_to_f() / (l_bn * l_nf * eta_pb);
    let psi1 = |x: f64| s - pw.far * x / (pw.near * x + df);
    let nhf0 = (-t.c_n / l_bn).exp() * relay_failure(0.0, t.fdf, l_bf, scale1, psi1, rel_tol)?;

    let scale2 = 4.0 * params.relay_noise_to_n() / (l_bf * l_nf * eta_pb);
    let f_full = (-t.c_f / l_bf).exp();
    let psi2 = |y: f64| s - pw.near * y / (pw.far * y + dn);
    let fhn0_ndf0 = f_full * relay_failure(0.0, t.ndf, l_bn, scale2, psi2, rel_tol)?;
    let fhn0_ndf1_ndn0 = if gap_open {
        let psi3 = |y: f64| s - pw.near * y / dn;
        f_full * relay_failure(t.ndf, t.ndn, l_bn, scale2, psi3, rel_tol)?
    } else {
        0.0
    };

    Ok(NomaEventProbs {
        ndf0,
        fdf0,
        ndf1_ndn0,
        fdf1_fdn0,
        nhf0,
        fhn0_ndf0,
        fhn0_ndf1_ndn0,
        ndn0: exp_cdf(t.c_n, l_bn),
        fdn0: exp_cdf(t.c_f, l_bf),
    })
}

pub fn ofdma_event_probs(params: &SystemParams) -> Result<OfdmaEventProbs> {
    ofdma_event_probs_with_tol(params, DEFAULT_REL_TOL)
}

pub fn ofdma_event_probs_with_tol(params: &SystemParams, rel_tol: f64) -> Result<OfdmaEventProbs> {
    let t: OfdmaThresholds = ofdma_thresholds(params);
    let th = params.freq_fraction;
    let (s_f, s_n) = band_targets(params);
    let pw = params.ofdma_powers();
    let (dn, df) = (params.direct_noise_n(), params.direct_noise_f());
    let (l_bn, l_bf, l_nf) = (params.lambda_bn, params.lambda_bf, params.lambda_nf);
    let eta_pb = params.eta * params.total_power;

    let scale4 = 4.0 * params.relay_noise_to_f() * th / (l_bn * l_nf * eta_pb);
    let gap_f = |x: f64| s_f - pw.far * x / (df * th);
    let n_full = (-t.c_n / l_bn).exp();
    let nhf0 = n_full * relay_failure(0.0, t.fdf, l_bf, scale4, gap_f, rel_tol)?;

    let scale4m = 4.0 * params.relay_noise_to_n() * (1.0 - th) / (l_bf * l_nf * eta_pb);
    let gap_n = |y: f64| s_n - pw.near * y / (dn * (1.0 - th));
    let f_full = (-t.c_f / l_bf).exp();
    let fhn0 = f_full * relay_failure(0.0, t.ndn, l_bn, scale4m, gap_n, rel_tol)?;

    Ok(OfdmaEventProbs {
        ndn0: exp_cdf(t.ndn, l_bn),
        fdf0: exp_cdf(t.fdf, l_bf),
        n_full,
        f_full,
        fdf1_fdn0: if t.regime { exp_band(t.fdf, t.fdn, l_bf) } else { 0.0 },
        nhf0,
        fhn0,
        n_not_full: exp_cdf(t.c_n, l_bn),
        f_not_full: exp_cdf(t.c_f, l_bf),
    })
}

pub fn csanc_from_events(e: &NomaEventProbs) -> OutageProbs {
    OutageProbs {
        op_n: e.ndn0,
        op_f: e.fdf0 * e.ndn0 + e.nhf0,
        sop: e.ndn0 + e.nhf0,
    }
}

pub fn isanc_from_events(e: &NomaEventProbs) -> OutageProbs {
    let op_n = e.fdn0 * e.ndn0 + e.fhn0_ndf0 + e.fhn0_ndf1_ndn0;
    OutageProbs {
        op_n,
        op_f: e.fdf0 * e.ndn0 + e.nhf0,
        sop: op_n + e.nhf0,
    }
}

pub fn isaoc_from_events(e: &OfdmaEventProbs) -> OutageProbs {
    OutageProbs {
        op_n: e.fhn0 + e.ndn0 * e.f_not_full,
        op_f: e.nhf0 + e.fdf0 * e.n_not_full,
        sop: e.nhf0 + e.fhn0 + e.fdf0 * e.n_not_full + e.ndn0 * e.fdf1_fdn0,
    }
}

pub fn outage_csanc(params: &SystemParams) -> Result<OutageProbs> {
    Ok(csanc_from_events(&noma_event_probs(params)?))
}

pub fn outage_isanc(params: &SystemParams) -> Result<OutageProbs> {
    Ok(isanc_from_events(&noma_event_probs(params)?))
}

pub fn outage_isaoc(params: &SystemParams) -> Result<OutageProbs> {
    Ok(isaoc_from_events(&ofdma_event_probs(params)?))
}

/// Exact outage probabilities for any protocol.
pub fn outage(protocol: ProtocolKind, params: &SystemParams) -> Result<OutageProbs> {
    match protocol {
        ProtocolKind::Csanc => outage_csanc(params),
        ProtocolKind::Isanc => outage_isanc(params),
        ProtocolKind::Isaoc => outage_isaoc(params),
    }
}
