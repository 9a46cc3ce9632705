//! Error-free relaying channel (EFRC) limit.
//!
//! If the inter-user link never fails, a user that decodes everything always
//! rescues the other one, so outage reduces to direct-phase events only.

use crate::analytic::OutageProbs;
use crate::noma::noma_thresholds;
use crate::ofdma::{band_targets, ofdma_thresholds};
use crate::params::{ProtocolKind, SystemParams};

fn exp_cdf(t: f64, mean: f64) -> f64 {
    -(-t / mean).exp_m1()
}

/// P{NDN=0}, P{FDN=0}, P{FDF=0} for NOMA.
fn noma_parts(params: &SystemParams) -> (f64, f64, f64) {
    let t = noma_thresholds(params);
    (
        exp_cdf(t.c_n, params.lambda_bn),
        exp_cdf(t.c_f, params.lambda_bf),
        exp_cdf(t.fdf, params.lambda_bf),
    )
}

/// SOP of ISANC under EFRC: both users must fail to decode everything.
pub fn efrc_sop_isanc(params: &SystemParams) -> f64 {
    let (ndn0, fdn0, _) = noma_parts(params);
    ndn0 * fdn0
}

/// SOP of CSANC under EFRC: only user N can help, so N's outage is the SOP.
pub fn efrc_sop_csanc(params: &SystemParams) -> f64 {
    noma_parts(params).0
}

/// SOP of ISAOC under EFRC: (1 - P{F decodes both}) (1 - P{N decodes both}).
pub fn efrc_sop_isaoc(params: &SystemParams) -> f64 {
    let t = ofdma_thresholds(params);
    exp_cdf(t.c_f, params.lambda_bf) * exp_cdf(t.c_n, params.lambda_bn)
}

/// Per-user and system outage under EFRC.
pub fn efrc_outage(protocol: ProtocolKind, params: &SystemParams) -> OutageProbs {
    match protocol {
        ProtocolKind::Csanc => {
            let (ndn0, _, fdf0) = noma_parts(params);
            OutageProbs {
                op_n: ndn0,
                op_f: fdf0 * ndn0,
                sop: ndn0,
            }
        }
        ProtocolKind::Isanc => {
            let (ndn0, fdn0, fdf0) = noma_parts(params);
            OutageProbs {
                op_n: ndn0 * fdn0,
                op_f: fdf0 * ndn0,
                sop: ndn0 * fdn0,
            }
        }
        ProtocolKind::Isaoc => {
            let t = ofdma_thresholds(params);
            let n_not_full = exp_cdf(t.c_n, params.lambda_bn);
            let f_not_full = exp_cdf(t.c_f, params.lambda_bf);
            OutageProbs {
                op_n: exp_cdf(t.ndn, params.lambda_bn) * f_not_full,
                op_f: exp_cdf(t.fdf, params.lambda_bf) * n_not_full,
                sop: n_not_full * f_not_full,
            }
        }
    }
}

pub fn efrc_sop(protocol: ProtocolKind, params: &SystemParams) -> f64 {
    match protocol {
        ProtocolKind::Csanc => efrc_sop_csanc(params),
        ProtocolKind::Isanc => efrc_sop_isanc(params),
        ProtocolKind::Isaoc => efrc_sop_isaoc(params),
    }
}

/// Optimal SOP shared by ISANC (k = 2^R) and ISAOC (theta = 1/2, equal powers):
/// `(1 - e^{-D_N (2^{2R}-1)/(lambda_BN P_B)}) (1 - e^{-D_F (2^{2R}-1)/(lambda_BF P_B)})`.
pub fn efrc_optimal_sop(params: &SystemParams) -> f64 {
    let g = (2.0 * params.rate).exp2() - 1.0;
    let pb = params.total_power;
    exp_cdf(params.direct_noise_n() * g / pb, params.lambda_bn)
        * exp_cdf(params.direct_noise_f() * g / pb, params.lambda_bf)
}

/// Optimal power ratio for ISANC under EFRC and the resulting SOP.
pub fn efrc_optimal_isanc(params: &SystemParams) -> (f64, f64) {
    (params.rate.exp2(), efrc_optimal_sop(params))
}

/// Optimum for ISAOC under EFRC.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsaocOptimum {
    pub theta: f64,
    pub rho: f64,
    pub sop: f64,
}

/// Power fraction that equalises the two per-message requirements at `theta`.
pub fn balanced_power_fraction(rate: f64, theta: f64) -> f64 {
    let s_f = (rate / theta).exp2() - 1.0;
    let s_n = (rate / (1.0 - theta)).exp2() - 1.0;
    theta * s_f / (theta * s_f + (1.0 - theta) * s_n)
}

pub fn efrc_optimal_isaoc(params: &SystemParams) -> IsaocOptimum {
    let theta = 0.5;
    IsaocOptimum {
        theta,
        rho: balanced_power_fraction(params.rate, theta),
        sop: efrc_optimal_sop(params),
    }
}

/// `f(theta) = theta (2^{R/theta} - 1) + (1 - theta)(2^{R/(1-theta)} - 1)`,
/// the total normalised power both messages need at a balanced split.
pub fn f_theta(rate: f64, theta: f64) -> f64 {
    theta * ((rate / theta).exp2() - 1.0) + (1.0 - theta) * ((rate / (1.0 - theta)).exp2() - 1.0)
}

/// Second derivative of [`f_theta`].
pub fn f_theta_second_derivative(rate: f64, theta: f64) -> f64 {
    let c = rate * std::f64::consts::LN_2;
    let u = 1.0 - theta;
    c * c * ((rate / theta).exp2() / theta.powi(3) + (rate / u).exp2() / u.powi(3))
}

/// Balanced-split SOP at `theta`, i.e. the best ISAOC can do for that frequency split.
pub fn efrc_sop_isaoc_balanced(params: &SystemParams, theta: f64) -> f64 {
    let p = SystemParams {
        freq_fraction: theta,
        power_fraction: balanced_power_fraction(params.rate, theta),
        ..*params
    };
    efrc_sop_isaoc(&p)
}

/// The two sides of the regime test: `(theta s_F / P_F, (1-theta) s_N / P_N)`.
pub fn per_message_requirements(params: &SystemParams) -> (f64, f64) {
    let th = params.freq_fraction;
    let (s_f, s_n) = band_targets(params);
    let pw = params.ofdma_powers();
    (th * s_f / pw.far, (1.0 - th) * s_n / pw.near)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn optimal_value_at_defaults() {
        let p = SystemParams::default();
        let expected = -(-1.875e-4f64).exp_m1() * -(-3.675e-4f64).exp_m1();
        assert!(rel(efrc_optimal_sop(&p), expected) < 1e-14);
        assert!(rel(efrc_optimal_sop(&p), 6.888_713_165_704_601e-8) < 1e-12);
        assert!((efrc_optimal_sop(&p) - 6.8888e-8).abs() < 1e-11);

        let at_opt = SystemParams {
            power_ratio: 2.0,
            ..p
        };
        assert!(rel(efrc_sop_isanc(&at_opt), expected) < 1e-12);
        assert!(rel(efrc_sop_isaoc(&p), expected) < 1e-12);
    }

    #[test]
    fn optimal_ratio() {
        let p = SystemParams::default();
        assert_eq!(efrc_optimal_isanc(&p).0, 2.0);
        let p2 = SystemParams { rate: 2.0, ..p };
        assert_eq!(efrc_optimal_isanc(&p2).0, 4.0);
        let o = efrc_optimal_isaoc(&p);
        assert_eq!((o.theta, o.rho), (0.5, 0.5));
        assert!(rel(o.sop, efrc_optimal_isanc(&p).1) < 1e-12);
    }

    #[test]
    fn monotone_on_both_sides_of_optimum() {
        let at = |k: f64| {
            efrc_sop_isanc(&SystemParams {
                power_ratio: k,
                ..SystemParams::default()
            })
        };
        assert!(at(3.0) > at(2.0));
        assert!(at(1.5) > at(2.0));
    }

    #[test]
    fn f_theta_shape() {
        assert_eq!(f_theta(1.0, 0.5), 3.0);
        for i in 1..10 {
            let th = i as f64 / 10.0;
            assert!(f_theta_second_derivative(1.0, th) > 0.0);
            // second difference agrees with the closed form
            let h = 1e-4;
            let fd = (f_theta(1.0, th + h) - 2.0 * f_theta(1.0, th) + f_theta(1.0, th - h)) / (h * h);
            assert!(rel(fd, f_theta_second_derivative(1.0, th)) < 1e-5);
        }
    }

    #[test]
    fn balanced_split_equalises_requirements() {
        for th in [0.2, 0.5, 0.65] {
            let p = SystemParams {
                freq_fraction: th,
                power_fraction: balanced_power_fraction(1.0, th),
                ..SystemParams::default()
            };
            let (a, b) = per_message_requirements(&p);
            assert!(rel(a, b) < 1e-12);
        }
    }

    #[test]
    fn outage_shapes() {
        let p = SystemParams::default();
        for protocol in ProtocolKind::ALL {
            let o = efrc_outage(protocol, &p);
            assert_eq!(o.sop, efrc_sop(protocol, &p));
            assert!(o.sop >= o.op_n.max(o.op_f));
            assert!(o.sop <= o.op_n + o.op_f + 1e-18);
        }
    }

    proptest! {
        #[test]
        fn f_theta_symmetric(rate in 0.1f64..3.0, i in 1u32..1024) {
            // dyadic theta so that 1 - theta is exact
            let th = i as f64 / 1024.0;
            prop_assert_eq!(f_theta(rate, th), f_theta(rate, 1.0 - th));
        }

        #[test]
        fn efrc_never_worse_than_full_model(
            pb in -5.0f64..25.0, d_bn in 5.0f64..30.0, excess in 0.05f64..3.0, theta in 0.2f64..0.8, rho in 0.2f64..0.8,
        ) {
            let p = SystemParams {
                total_power: 10f64.powf(pb / 10.0),
                d_bn,
                d_nf: 35.0 - d_bn,
                power_ratio: 1.0 + excess,
                power_fraction: rho,
                freq_fraction: theta,
                ..SystemParams::default()
            };
            for protocol in ProtocolKind::ALL {
                let full = analytic::outage(protocol, &p).unwrap().sop;
                prop_assert!(efrc_sop(protocol, &p) <= full * (1.0 + 1e-12));
            }
        }
    }
}
