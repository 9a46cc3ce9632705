//! Per-trial decoding for the orthogonal-band protocol (ISAOC).
//!
//! User F's message occupies a fraction theta of the band with power rho*P_B,
//! user N's message the remaining 1 - theta with the remaining power. Each
//! user can overhear both bands, so the two per-message decoding checks are
//! independent; only a user that recovers both messages harvests and relays.

use crate::channel::ChannelRealization;
use crate::noma::{eh_factor, TrialOutcome};
use crate::params::SystemParams;

/// Squared-gain thresholds of the direct phase plus the regime indicator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OfdmaThresholds {
    pub ndf: f64,
    pub ndn: f64,
    pub fdf: f64,
    pub fdn: f64,
    pub c_n: f64,
    pub c_f: f64,
    /// True when N's message is the harder one to decode at either user,
    /// i.e. `(1-theta)(2^{R/(1-theta)}-1)/P_N > theta(2^{R/theta}-1)/P_F`.
    pub regime: bool,
}

/// Per-band SNR targets `(2^{R/theta}-1, 2^{R/(1-theta)}-1)`.
pub fn band_targets(params: &SystemParams) -> (f64, f64) {
    let th = params.freq_fraction;
    ((params.rate / th).exp2() - 1.0, (params.rate / (1.0 - th)).exp2() - 1.0)
}

pub fn ofdma_thresholds(params: &SystemParams) -> OfdmaThresholds {
    let th = params.freq_fraction;
    let (s_f, s_n) = band_targets(params);
    let pw = params.ofdma_powers();
    let need_f = th * s_f / pw.far;
    let need_n = (1.0 - th) * s_n / pw.near;
    let regime = need_n > need_f;
    let dn = params.direct_noise_n();
    let df = params.direct_noise_f();
    let (ndf, ndn) = (need_f * dn, need_n * dn);
    let (fdf, fdn) = (need_f * df, need_n * df);
    OfdmaThresholds {
        ndf,
        ndn,
        fdf,
        fdn,
        c_n: if regime { ndn } else { ndf },
        c_f: if regime { fdn } else { fdf },
        regime,
    }
}

/// Precomputed constants for evaluating many ISAOC trials.
#[derive(Debug, Clone, Copy)]
pub struct OfdmaLink {
    pub thresholds: OfdmaThresholds,
    s_f: f64,
    s_n: f64,
    theta: f64,
    p_n: f64,
    p_f: f64,
    dn: f64,
    df: f64,
    relay_gain_f: f64,
    relay_gain_n: f64,
}

impl OfdmaLink {
    pub fn new(params: &SystemParams) -> Self {
        let (s_f, s_n) = band_targets(params);
        let pw = params.ofdma_powers();
        OfdmaLink {
            thresholds: ofdma_thresholds(params),
            s_f,
            s_n,
            theta: params.freq_fraction,
            p_n: pw.near,
            p_f: pw.far,
            dn: params.direct_noise_n(),
            df: params.direct_noise_f(),
            relay_gain_f: params.eta * params.total_power / params.relay_noise_to_f(),
            relay_gain_n: params.eta * params.total_power / params.relay_noise_to_n(),
        }
    }

    /// Combined SNR of F's message at F, in F's band.
    pub fn gamma_nhf(&self, ch: &ChannelRealization, beta_n: f64) -> f64 {
        (self.p_f * ch.gain_bf / self.df + beta_n * self.relay_gain_f * ch.gain_bn * ch.gain_nf) / self.theta
    }

    /// Combined SNR of N's message at N, in N's band.
    pub fn gamma_fhn(&self, ch: &ChannelRealization, beta_f: f64) -> f64 {
        (self.p_n * ch.gain_bn / self.dn + beta_f * self.relay_gain_n * ch.gain_bf * ch.gain_nf)
            / (1.0 - self.theta)
    }

    pub fn isaoc(&self, ch: &ChannelRealization) -> TrialOutcome {
        let t = &self.thresholds;
        let (x, y) = (ch.gain_bf, ch.gain_bn);
        let ndf = y >= t.ndf;
        let ndn = y >= t.ndn;
        let fdf = x >= t.fdf;
        let fdn = x >= t.fdn;
        let beta_n = if ndf && ndn { eh_factor(y, t.c_n) } else { 0.0 };
        let beta_f = if fdf && fdn { eh_factor(x, t.c_f) } else { 0.0 };
        let nhf = !fdf && ndf && ndn && self.gamma_nhf(ch, beta_n) >= self.s_f;
        let fhn = !ndn && fdf && fdn && self.gamma_fhn(ch, beta_f) >= self.s_n;
        TrialOutcome {
            ndf,
            ndn,
            fdf,
            fdn,
            nhf,
            fhn,
            outage_n: !(ndn || fhn),
            outage_f: !(fdf || nhf),
            beta_n,
            beta_f,
        }
    }
}

pub fn evaluate_isaoc_trial(params: &SystemParams, ch: &ChannelRealization) -> TrialOutcome {
    OfdmaLink::new(params).isaoc(ch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ProtocolKind;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn symmetric_allocation_thresholds() {
        let t = ofdma_thresholds(&SystemParams::default());
        assert!(!t.regime);
        assert!(rel(t.c_n, 1.875e-4) < 1e-12);
        assert!(rel(t.c_f, 3.675e-4) < 1e-12);
        assert_eq!(t.ndf, t.ndn);
    }

    #[test]
    fn swapping_allocation_swaps_requirements() {
        let p = SystemParams {
            power_fraction: 0.3,
            freq_fraction: 0.6,
            ..SystemParams::default()
        };
        let q = SystemParams {
            power_fraction: 0.7,
            freq_fraction: 0.4,
            ..p
        };
        let (a, b) = (ofdma_thresholds(&p), ofdma_thresholds(&q));
        assert!(rel(a.ndf, b.ndn) < 1e-12 && rel(a.ndn, b.ndf) < 1e-12);
        assert_ne!(a.regime, b.regime);
    }

    #[test]
    fn huge_gains() {
        let out = evaluate_isaoc_trial(&SystemParams::default(), &ChannelRealization::new(50.0, 50.0, 50.0));
        assert!(!out.outage_n && !out.outage_f && !out.nhf && !out.fhn);
        assert!(out.beta_n > 0.99 && out.beta_f > 0.99);
    }

    #[test]
    fn far_user_rescues_near_user() {
        let link = OfdmaLink::new(&SystemParams::default());
        let ch = ChannelRealization::new(1e-2, 1e-4, 10.0);
        let out = link.isaoc(&ch);
        assert!(!out.ndn && out.fdf && out.fdn);
        assert!(rel(out.beta_f, 1.0 - 3.675e-2) < 1e-12);
        let relay = link.gamma_fhn(&ch, out.beta_f) - link.gamma_fhn(&ch, 0.0);
        assert!(rel(relay, out.beta_f * 5.0 / (1.225 * 0.5)) < 1e-12);
        assert!(out.fhn && !out.outage_n);
    }

    fn gain() -> impl Strategy<Value = f64> {
        prop_oneof![1e-7f64..1e-3, 1e-3f64..1.0, 1.0f64..20.0]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn invariants_and_band_targets(
            rho in 0.05f64..0.95, theta in 0.1f64..0.9, pb in -10.0f64..40.0,
            x in gain(), y in gain(), z in gain(),
        ) {
            let p = SystemParams {
                power_fraction: rho,
                freq_fraction: theta,
                total_power: 10f64.powf(pb / 10.0),
                ..SystemParams::default()
            };
            let out = evaluate_isaoc_trial(&p, &ChannelRealization::new(x, y, z));
            prop_assert_eq!(out.check_invariants(ProtocolKind::Isaoc), Ok(()));
            let (s_f, s_n) = band_targets(&p);
            let pw = p.ofdma_powers();
            let ok = |g: f64, s: f64| g >= s * (1.0 - 1e-12);
            if out.ndf { prop_assert!(ok(pw.far * y / (p.direct_noise_n() * theta), s_f)); }
            if out.ndn { prop_assert!(ok(pw.near * y / (p.direct_noise_n() * (1.0 - theta)), s_n)); }
            if out.fdf { prop_assert!(ok(pw.far * x / (p.direct_noise_f() * theta), s_f)); }
            if out.fdn { prop_assert!(ok(pw.near * x / (p.direct_noise_f() * (1.0 - theta)), s_n)); }
        }

        #[test]
        fn user_swap_symmetry(
            x in gain(), y in gain(), z in gain(), d1 in 5.0f64..40.0, d2 in 5.0f64..40.0,
            s1 in -60.0f64..-40.0, s2 in -60.0f64..-40.0, l1 in 0.2f64..3.0, l2 in 0.2f64..3.0,
        ) {
            let p = SystemParams {
                d_bn: d1, d_bf: d2,
                sigma2_n: 10f64.powf(s1 / 10.0), sigma2_f: 10f64.powf(s2 / 10.0),
                lambda_bn: l1, lambda_bf: l2,
                ..SystemParams::default()
            };
            let q = SystemParams {
                d_bn: d2, d_bf: d1,
                sigma2_n: p.sigma2_f, sigma2_f: p.sigma2_n,
                lambda_bn: l2, lambda_bf: l1,
                ..p
            };
            let a = evaluate_isaoc_trial(&p, &ChannelRealization::new(x, y, z));
            let b = evaluate_isaoc_trial(&q, &ChannelRealization::new(y, x, z));
            prop_assert_eq!(a.outage_n, b.outage_f);
            prop_assert_eq!(a.outage_f, b.outage_n);
        }
    }
}
