//! High-SNR behaviour: leading-order event probabilities, diversity-order
//! fits, normalised spectral efficiency and diversity-multiplexing trade-off.
//!
//! Direct-phase events decay like 1/P_B. Relay-failure events decay like
//! ln(P_B)/P_B^2, using `1 - t K1(t) ~ (t^2/4) ln(4/t^2)` for small `t`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::analytic::{
    self, csanc_from_events, isaoc_from_events, isanc_from_events, quadrature, Metric, NomaEventProbs,
    OfdmaEventProbs, OutageProbs, DEFAULT_REL_TOL,
};
use crate::error::{Error, Result};
use crate::montecarlo;
use crate::noma::noma_thresholds;
use crate::ofdma::{band_targets, ofdma_thresholds};
use crate::params::{dbm_to_mw, ProtocolKind, SystemParams};

/// `int_0^1 h(u) ln(a / h(u)) du`, with `h` clamped at zero.
fn log_weighted_integral<H: Fn(f64) -> f64>(h: H, a: f64) -> Result<f64> {
    quadrature(
        |u| {
            let v = h(u);
            if v <= 0.0 {
                0.0
            } else {
                v * (a / v).ln()
            }
        },
        0.0,
        1.0,
        DEFAULT_REL_TOL,
    )
}

/// Leading-order NOMA event probabilities.
///
/// `ndn0`/`fdn0` are the sums of their two direct-phase parts.
pub fn highsnr_noma_event_probs(params: &SystemParams) -> Result<NomaEventProbs> {
    let t = noma_thresholds(params);
    let s = params.sinr_target();
    let k = params.power_ratio;
    let pb = params.total_power;
    let (dn, df) = (params.direct_noise_n(), params.direct_noise_f());
    let (l_bn, l_bf, l_nf) = (params.lambda_bn, params.lambda_bf, params.lambda_nf);
    let eta = params.eta;
    let gap = k - s;
    let gap_open = t.own_message_binds();

    let ndf0 = s * dn * (1.0 + k) / (l_bn * gap * pb);
    let fdf0 = s * df * (1.0 + k) / (l_bf * gap * pb);
    let excess = k - params.rate.exp2();
    let (ndf1_ndn0, fdf1_fdn0) = if gap_open {
        (ndf0 * excess, fdf0 * excess)
    } else {
        (0.0, 0.0)
    };

    let relay_f = params.relay_noise_to_f();
    let a_f = l_bn * l_nf * eta * pb / relay_f;
    let coeff_f = df * relay_f * s * (1.0 + k) / (l_bf * l_bn * l_nf * eta * gap);
    let h_f = |u: f64| s - k / (1.0 + gap / (u * s));
    let nhf0 = coeff_f * log_weighted_integral(h_f, a_f)? / (pb * pb);

    let relay_n = params.relay_noise_to_n();
    let a_n = l_bf * l_nf * eta * pb / relay_n;
    let coeff_n = dn * relay_n * s * (1.0 + k) / (l_bn * l_bf * l_nf * eta * gap);
    let h_n = |u: f64| s - 1.0 / (k + gap / (s * u));
    let fhn0_ndf0 = coeff_n * log_weighted_integral(h_n, a_n)? / (pb * pb);

    let fhn0_ndf1_ndn0 = if gap_open {
        // int_0^V v ln(A/v) dv with V = s (k - 2^R)/(k - s)
        let v = s * excess / gap;
        dn * (1.0 + k) / (pb * l_bn * a_n) * (0.5 * v * v * (a_n / v).ln() + 0.25 * v * v)
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
        ndn0: ndf0 + ndf1_ndn0,
        fdn0: fdf0 + fdf1_fdn0,
    })
}

/// Leading-order OFDMA event probabilities. `n_full`/`f_full` are reported as 1.
pub fn highsnr_ofdma_event_probs(params: &SystemParams) -> Result<OfdmaEventProbs> {
    let t = ofdma_thresholds(params);
    let th = params.freq_fraction;
    let (s_f, s_n) = band_targets(params);
    let pb = params.total_power;
    let (l_bn, l_bf, l_nf) = (params.lambda_bn, params.lambda_bf, params.lambda_nf);
    let eta = params.eta;

    // thresholds scale exactly as 1/P_B, so the leading terms are T/lambda
    let ndn0 = t.ndn / l_bn;
    let fdf0 = t.fdf / l_bf;

    let a_f = l_bn * l_nf * eta * pb / (params.relay_noise_to_f() * th);
    let nhf0 = fdf0 * (s_f / a_f) * (0.5 * (a_f / s_f).ln() + 0.25);
    let a_n = l_bf * l_nf * eta * pb / (params.relay_noise_to_n() * (1.0 - th));
    let fhn0 = ndn0 * (s_n / a_n) * (0.5 * (a_n / s_n).ln() + 0.25);

    Ok(OfdmaEventProbs {
        ndn0,
        fdf0,
        n_full: 1.0,
        f_full: 1.0,
        fdf1_fdn0: if t.regime { (t.fdn - t.fdf) / l_bf } else { 0.0 },
        nhf0,
        fhn0,
        n_not_full: t.c_n / l_bn,
        f_not_full: t.c_f / l_bf,
    })
}

/// Outage probabilities assembled from the leading-order event terms.
pub fn highsnr_outage(protocol: ProtocolKind, params: &SystemParams) -> Result<OutageProbs> {
    Ok(match protocol {
        ProtocolKind::Csanc => csanc_from_events(&highsnr_noma_event_probs(params)?),
        ProtocolKind::Isanc => isanc_from_events(&highsnr_noma_event_probs(params)?),
        ProtocolKind::Isaoc => isaoc_from_events(&highsnr_ofdma_event_probs(params)?),
    })
}

/// Named (exact, leading-order) pairs for every event term of a protocol family.
pub fn event_ratio_pairs(protocol: ProtocolKind, params: &SystemParams) -> Result<Vec<(&'static str, f64, f64)>> {
    if protocol.is_noma() {
        let e = analytic::noma_event_probs(params)?;
        let a = highsnr_noma_event_probs(params)?;
        let mut v = vec![
            ("ndf0", e.ndf0, a.ndf0),
            ("fdf0", e.fdf0, a.fdf0),
            ("nhf0", e.nhf0, a.nhf0),
            ("fhn0_ndf0", e.fhn0_ndf0, a.fhn0_ndf0),
        ];
        if noma_thresholds(params).own_message_binds() {
            v.push(("ndf1_ndn0", e.ndf1_ndn0, a.ndf1_ndn0));
            v.push(("fdf1_fdn0", e.fdf1_fdn0, a.fdf1_fdn0));
            v.push(("fhn0_ndf1_ndn0", e.fhn0_ndf1_ndn0, a.fhn0_ndf1_ndn0));
        }
        Ok(v)
    } else {
        let e = analytic::ofdma_event_probs(params)?;
        let a = highsnr_ofdma_event_probs(params)?;
        let mut v = vec![
            ("ndn0", e.ndn0, a.ndn0),
            ("fdf0", e.fdf0, a.fdf0),
            ("n_not_full", e.n_not_full, a.n_not_full),
            ("f_not_full", e.f_not_full, a.f_not_full),
            ("nhf0", e.nhf0, a.nhf0),
            ("fhn0", e.fhn0, a.fhn0),
        ];
        if ofdma_thresholds(params).regime {
            v.push(("fdf1_fdn0", e.fdf1_fdn0, a.fdf1_fdn0));
        }
        Ok(v)
    }
}

/// How outage probabilities are obtained for a slope fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Backend {
    Analytic,
    MonteCarlo { trials: u64, seed: u64 },
}

/// Fitted diversity orders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiversitySlope {
    pub op_n: f64,
    pub op_f: f64,
    pub sop: f64,
}

impl DiversitySlope {
    pub fn get(&self, m: Metric) -> f64 {
        match m {
            Metric::OpN => self.op_n,
            Metric::OpF => self.op_f,
            Metric::Sop => self.sop,
        }
    }
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Least-squares slope of -log10(OP) against log10(P_B) over `pb_grid_dbm`.
pub fn diversity_slope(
    protocol: ProtocolKind,
    params: &SystemParams,
    pb_grid_dbm: &[f64],
    backend: Backend,
) -> Result<DiversitySlope> {
    if pb_grid_dbm.len() < 2 {
        return Err(Error::Domain("slope fit needs at least two transmit powers".into()));
    }
    let lo = pb_grid_dbm.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = pb_grid_dbm.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < 20.0 {
        return Err(Error::Domain(format!(
            "slope fit needs a power grid spanning at least 20 dB, got {} dB",
            hi - lo
        )));
    }
    let mut xs = Vec::with_capacity(pb_grid_dbm.len());
    let mut ys: [Vec<f64>; 3] = Default::default();
    for &dbm in pb_grid_dbm {
        let p = SystemParams {
            total_power: dbm_to_mw(dbm)?,
            ..*params
        };
        p.validate(protocol)?;
        let op = match backend {
            Backend::Analytic => analytic::outage(protocol, &p)?,
            Backend::MonteCarlo { trials, seed } => {
                let e = montecarlo::estimate(protocol, &p, trials, seed)?;
                OutageProbs {
                    op_n: e.op_n,
                    op_f: e.op_f,
                    sop: e.sop,
                }
            }
        };
        for (i, m) in Metric::ALL.iter().enumerate() {
            let v = op.get(*m);
            if v <= 0.0 {
                return Err(Error::Range(format!(
                    "{} is zero at {dbm} dBm; lower the transmit power or raise the trial count",
                    m.name()
                )));
            }
            ys[i].push(-v.log10());
        }
        xs.push(dbm / 10.0);
    }
    Ok(DiversitySlope {
        op_n: least_squares_slope(&xs, &ys[0]),
        op_f: least_squares_slope(&xs, &ys[1]),
        sop: least_squares_slope(&xs, &ys[2]),
    })
}

/// Normalised spectral efficiency `R / log2(1 + P_B lambda / (d^alpha sigma^2))`.
pub fn nse(rate: f64, total_power: f64, lambda: f64, d: f64, sigma2: f64, alpha: f64) -> f64 {
    rate / (total_power * lambda / (d.powf(alpha) * sigma2)).ln_1p() * std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum User {
    N,
    F,
}

impl fmt::Display for User {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            User::N => "N",
            User::F => "F",
        })
    }
}

impl FromStr for User {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" | "N" => Ok(User::N),
            "f" | "F" => Ok(User::F),
            _ => Err(Error::Config(format!("unknown user `{s}`"))),
        }
    }
}

/// Allocation regime a DMT is evaluated in.
///
/// For NOMA the power ratio scales with the rate as `k = a (2^R - 1) + b`;
/// for ISAOC the frequency split and which branch of the regime test holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum DmtSetting {
    Noma { a: f64, b: f64 },
    Ofdma { theta: f64, regime: bool },
}

impl DmtSetting {
    fn check(&self, protocol: ProtocolKind) -> Result<()> {
        match (*self, protocol.is_noma()) {
            (DmtSetting::Noma { a, b }, true) => {
                if (a == 1.0 && b > 0.0) || (a > 1.0 && b >= 0.0) {
                    Ok(())
                } else {
                    Err(Error::Domain(format!(
                        "power ratio scaling needs a = 1, b > 0 or a > 1, b >= 0; got a = {a}, b = {b}"
                    )))
                }
            }
            (DmtSetting::Ofdma { theta, .. }, false) => {
                if theta > 0.0 && theta < 1.0 {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("theta must lie in (0, 1), got {theta}")))
                }
            }
            _ => Err(Error::Domain(format!("setting does not match protocol {protocol}"))),
        }
    }
}

/// The DMT as a list of `(intercept, slope)` lines; d(r) = max(0, min_i intercept_i - slope_i r).
fn dmt_lines(protocol: ProtocolKind, user: User, setting: DmtSetting) -> Result<Vec<(f64, f64)>> {
    setting.check(protocol)?;
    Ok(match (protocol, user, setting) {
        (ProtocolKind::Csanc, User::N, _) => vec![(1.0, 2.0)],
        (ProtocolKind::Isanc, User::N, _) => vec![(2.0, 4.0)],
        (_, User::F, DmtSetting::Noma { a, .. }) => {
            if a > 1.0 {
                vec![(2.0, 3.0)]
            } else {
                vec![(2.0, 4.0)]
            }
        }
        (ProtocolKind::Isaoc, user, DmtSetting::Ofdma { theta, regime }) => {
            let mixed = (2.0, 1.0 / (theta * (1.0 - theta)));
            match (user, regime) {
                (User::N, true) => vec![(2.0, 2.0 / (1.0 - theta))],
                (User::F, true) => vec![mixed, (2.0, 2.0 / theta)],
                (User::N, false) => vec![mixed, (2.0, 2.0 / (1.0 - theta))],
                (User::F, false) => vec![(2.0, 2.0 / theta)],
            }
        }
        _ => unreachable!("setting checked against protocol"),
    })
}

/// Diversity at multiplexing gain `r`, clamped at 0.
pub fn dmt(protocol: ProtocolKind, user: User, r: f64, setting: DmtSetting) -> Result<f64> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::Domain(format!("multiplexing gain must be >= 0, got {r}")));
    }
    let lines = dmt_lines(protocol, user, setting)?;
    let d = lines.iter().map(|(c, m)| c - m * r).fold(f64::INFINITY, f64::min);
    Ok(d.max(0.0))
}

/// Achievable multiplexing gain: the largest r with positive diversity.
pub fn amg(protocol: ProtocolKind, user: User, setting: DmtSetting) -> Result<f64> {
    let lines = dmt_lines(protocol, user, setting)?;
    Ok(lines.iter().map(|(c, m)| c / m).fold(f64::INFINITY, f64::min))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DmtCurve {
    pub protocol: ProtocolKind,
    pub user: User,
    pub setting: DmtSetting,
    /// `(r, d)` pairs from r = 0 to the achievable multiplexing gain.
    pub samples: Vec<(f64, f64)>,
}

/// Samples the DMT at `points` evenly spaced gains (at least 2).
pub fn dmt_curve(protocol: ProtocolKind, user: User, setting: DmtSetting, points: usize) -> Result<DmtCurve> {
    let points = points.max(2);
    let r_max = amg(protocol, user, setting)?;
    let samples = (0..points)
        .map(|i| {
            let r = r_max * i as f64 / (points - 1) as f64;
            dmt(protocol, user, r, setting).map(|d| (r, d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DmtCurve {
        protocol,
        user,
        setting,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at_dbm(p: SystemParams, dbm: f64) -> SystemParams {
        p.with_total_power_dbm(dbm).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn direct_phase_coefficients() {
        let p = SystemParams::default();
        let e = highsnr_noma_event_probs(&p).unwrap();
        // 625e-5 * (10/3) / (4/3) = 1.5625e-2 per unit power
        assert!(rel(e.ndf0 * p.total_power, 1.5625e-2) < 1e-12);
        assert!(rel(e.ndf0, 1.5625e-4) < 1e-12);
        let o = highsnr_ofdma_event_probs(&p).unwrap();
        assert!(rel(o.ndn0 * p.total_power, 1.875e-2) < 1e-12);
        // regime boundary: both branches give the same full-decode threshold
        assert_eq!(o.n_not_full, o.ndn0);
    }

    #[test]
    fn gap_terms_vanish_without_gap() {
        let p = SystemParams {
            power_ratio: 2.0,
            ..SystemParams::default()
        };
        let e = highsnr_noma_event_probs(&p).unwrap();
        assert_eq!(e.fhn0_ndf1_ndn0, 0.0);
        assert_eq!(e.ndf1_ndn0, 0.0);
    }

    #[test]
    fn ratios_approach_one() {
        let p = SystemParams {
            power_fraction: 0.6,
            freq_fraction: 0.45,
            ..SystemParams::default()
        };
        for protocol in [ProtocolKind::Isanc, ProtocolKind::Isaoc] {
            for (name, exact, lead) in event_ratio_pairs(protocol, &at_dbm(p, 60.0)).unwrap() {
                assert!(rel(exact / lead, 1.0) < 0.02, "{protocol} {name}: {}", exact / lead);
            }
        }
    }

    #[test]
    fn ratio_monotone_over_last_decade() {
        for protocol in [ProtocolKind::Isanc, ProtocolKind::Isaoc] {
            let pairs: Vec<Vec<(&str, f64, f64)>> = [60.0, 65.0, 70.0]
                .iter()
                .map(|&dbm| event_ratio_pairs(protocol, &at_dbm(SystemParams::default(), dbm)).unwrap())
                .collect();
            for i in 0..pairs[0].len() {
                let dev: Vec<f64> = pairs.iter().map(|v| (v[i].1 / v[i].2 - 1.0).abs()).collect();
                assert!(dev[2] <= dev[1] && dev[1] <= dev[0], "{protocol} {}: {dev:?}", pairs[0][i].0);
                assert!(dev[2] < 0.05);
            }
        }
    }

    #[test]
    fn slope_requires_span_and_positive_values() {
        let p = SystemParams::default();
        assert!(diversity_slope(ProtocolKind::Csanc, &p, &[40.0, 50.0], Backend::Analytic).is_err());
        let r = diversity_slope(
            ProtocolKind::Isanc,
            &p,
            &[40.0, 70.0],
            Backend::MonteCarlo { trials: 1000, seed: 1 },
        );
        assert!(matches!(r, Err(Error::Range(_))));
    }

    #[test]
    fn nse_values() {
        let p = SystemParams::default();
        let r = nse(p.rate, p.total_power, p.lambda_bn, p.d_bn, p.sigma2_n, p.alpha);
        assert!(rel(r, 1.0 / 16001f64.log2()) < 1e-14);
        assert!((r - 0.0716).abs() < 1e-4);
        let r2 = nse(p.rate, p.total_power / 2.0, 2.0 * p.lambda_bn, p.d_bn, p.sigma2_n, p.alpha);
        assert!(rel(r2, r) < 1e-14);
        assert!(nse(1.0, 1e300, 1.0, 1.0, 1.0, 2.0) < 0.002);
    }

    #[test]
    fn dmt_endpoints() {
        let strict = DmtSetting::Noma { a: 2.0, b: 0.0 };
        let unit = DmtSetting::Noma { a: 1.0, b: 0.5 };
        assert_eq!(dmt(ProtocolKind::Csanc, User::N, 0.0, strict).unwrap(), 1.0);
        assert_eq!(dmt(ProtocolKind::Isanc, User::N, 0.0, strict).unwrap(), 2.0);
        assert_eq!(dmt(ProtocolKind::Isanc, User::F, 2.0 / 3.0, strict).unwrap(), 0.0);
        assert!(dmt(ProtocolKind::Isanc, User::F, 0.6, strict).unwrap() > 0.0);
        assert_eq!(amg(ProtocolKind::Csanc, User::F, unit).unwrap(), 0.5);
        assert_eq!(amg(ProtocolKind::Isanc, User::N, unit).unwrap(), 0.5);
        assert_eq!(dmt(ProtocolKind::Csanc, User::N, 0.9, unit).unwrap(), 0.0);

        for regime in [true, false] {
            let s = DmtSetting::Ofdma { theta: 0.5, regime };
            for user in [User::N, User::F] {
                assert_eq!(dmt(ProtocolKind::Isaoc, user, 0.0, s).unwrap(), 2.0);
                assert_eq!(dmt(ProtocolKind::Isaoc, user, 0.5, s).unwrap(), 0.0);
                assert_eq!(amg(ProtocolKind::Isaoc, user, s).unwrap(), 0.5);
            }
        }
    }

    #[test]
    fn ofdma_amg_tracks_frequency_split() {
        let s = DmtSetting::Ofdma { theta: 0.3, regime: true };
        assert!(rel(amg(ProtocolKind::Isaoc, User::N, s).unwrap(), 0.7) < 1e-15);
        assert!(rel(amg(ProtocolKind::Isaoc, User::F, s).unwrap(), 0.3) < 1e-15);
        let s = DmtSetting::Ofdma { theta: 0.7, regime: false };
        assert!(rel(amg(ProtocolKind::Isaoc, User::N, s).unwrap(), 0.3) < 1e-15);
        assert!(rel(amg(ProtocolKind::Isaoc, User::F, s).unwrap(), 0.7) < 1e-15);
    }

    #[test]
    fn invalid_settings() {
        let bad = [
            DmtSetting::Noma { a: 1.0, b: 0.0 },
            DmtSetting::Noma { a: 0.5, b: 1.0 },
            DmtSetting::Noma { a: 2.0, b: -0.1 },
        ];
        for s in bad {
            assert!(matches!(dmt(ProtocolKind::Csanc, User::N, 0.1, s), Err(Error::Domain(_))));
        }
        let s = DmtSetting::Ofdma { theta: 1.0, regime: true };
        assert!(dmt(ProtocolKind::Isaoc, User::N, 0.1, s).is_err());
        assert!(dmt(ProtocolKind::Isaoc, User::N, 0.1, DmtSetting::Noma { a: 2.0, b: 0.0 }).is_err());
        assert!(dmt(ProtocolKind::Csanc, User::N, -0.1, DmtSetting::Noma { a: 2.0, b: 0.0 }).is_err());
    }

    #[test]
    fn curves_decrease_to_zero() {
        let c = dmt_curve(ProtocolKind::Isaoc, User::F, DmtSetting::Ofdma { theta: 0.4, regime: true }, 21).unwrap();
        assert_eq!(c.samples[0], (0.0, 2.0));
        assert!(c.samples.last().unwrap().1.abs() < 1e-12);
        assert!(c.samples.windows(2).all(|w| w[1].1 < w[0].1));
    }
}
