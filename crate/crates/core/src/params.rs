//! Scenario constants for the two-user downlink.
//!
//! All powers are stored in linear milliwatts; dBm only appears at the
//! configuration boundary (see [`dbm_to_mw`]). Distances and fading means are
//! kept as separate fields rather than folded into path-loss products so that
//! every SINR expression can be written term by term.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

/// Converts a power in dBm to linear milliwatts.
pub fn dbm_to_mw(dbm: f64) -> Result<f64> {
    if !dbm.is_finite() {
        return Err(Error::invalid("power_dbm", "finite value", dbm));
    }
    Ok(10f64.powf(dbm / 10.0))
}

/// Converts a linear power in milliwatts to dBm.
pub fn mw_to_dbm(mw: f64) -> f64 {
    10.0 * mw.log10()
}

/// The three cooperation protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolKind {
    /// Only the cell-center user relays (power-domain NOMA).
    Csanc,
    /// Both users relay for each other (power-domain NOMA).
    Isanc,
    /// Both users relay for each other over orthogonal bands.
    Isaoc,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 3] = [ProtocolKind::Csanc, ProtocolKind::Isanc, ProtocolKind::Isaoc];

    pub fn is_noma(self) -> bool {
        matches!(self, ProtocolKind::Csanc | ProtocolKind::Isanc)
    }

    pub fn name(self) -> &'static str {
        match self {
            ProtocolKind::Csanc => "csanc",
            ProtocolKind::Isanc => "isanc",
            ProtocolKind::Isaoc => "isaoc",
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProtocolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csanc" => Ok(ProtocolKind::Csanc),
            "isanc" => Ok(ProtocolKind::Isanc),
            "isaoc" => Ok(ProtocolKind::Isaoc),
            other => Err(Error::Config(format!("unknown protocol `{other}`"))),
        }
    }
}

/// Every constant that defines one scenario.
///
/// NOMA protocols read `power_ratio` (k = P_F / P_N); ISAOC reads
/// `power_fraction` (rho = P_F / P_B) and `freq_fraction` (theta, the share
/// of bandwidth given to the cell-edge user).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Target spectral efficiency R in bit/s/Hz, shared by both users.
    pub rate: f64,
    /// Total BS transmit power P_B, mW.
    pub total_power: f64,
    /// NOMA power allocation ratio k = P_F / P_N.
    pub power_ratio: f64,
    /// OFDMA fraction of the power given to the cell-edge user.
    pub power_fraction: f64,
    /// OFDMA fraction of the bandwidth given to the cell-edge user.
    pub freq_fraction: f64,
    /// Energy conversion efficiency.
    pub eta: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    pub d_bn: f64,
    pub d_bf: f64,
    pub d_nf: f64,
    /// Mean of |h_BN|^2.
    pub lambda_bn: f64,
    /// Mean of |h_BF|^2.
    pub lambda_bf: f64,
    /// Mean of |h_NF|^2.
    pub lambda_nf: f64,
    /// Noise variance at the cell-center user, mW.
    pub sigma2_n: f64,
    /// Noise variance at the cell-edge user, mW.
    pub sigma2_f: f64,
}

impl Default for SystemParams {
    /// Reference scenario: R = 1, P_B = 20 dBm, noise -50 dBm at both users,
    /// eta = 0.5, alpha = 2, unit fading means, d_BF = 35 m, d_BN = 25 m,
    /// d_NF = 10 m, k = 7/3, rho = theta = 0.5.
    fn default() -> Self {
        SystemParams {
            rate: 1.0,
            total_power: 100.0,
            power_ratio: 7.0 / 3.0,
            power_fraction: 0.5,
            freq_fraction: 0.5,
            eta: 0.5,
            alpha: 2.0,
            d_bn: 25.0,
            d_bf: 35.0,
            d_nf: 10.0,
            lambda_bn: 1.0,
            lambda_bf: 1.0,
            lambda_nf: 1.0,
            sigma2_n: 1e-5,
            sigma2_f: 1e-5,
        }
    }
}

/// Transmit powers towards the two users.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit {
    pub near: f64,
    pub far: f64,
}

impl SystemParams {
    pub fn with_total_power_dbm(mut self, dbm: f64) -> Result<Self> {
        self.total_power = dbm_to_mw(dbm)?;
        Ok(self)
    }

    pub fn total_power_dbm(&self) -> f64 {
        mw_to_dbm(self.total_power)
    }

    /// Minimum SINR for decoding one message at rate R: 2^R - 1.
    pub fn sinr_target(&self) -> f64 {
        self.rate.exp2() - 1.0
    }

    /// P_N = P_B / (1 + k), P_F = P_B - P_N.
    pub fn noma_powers(&self) -> PowerSplit {
        let near = self.total_power / (1.0 + self.power_ratio);
        PowerSplit {
            near,
            far: self.total_power - near,
        }
    }

    /// P_F = rho * P_B, P_N = P_B - P_F.
    pub fn ofdma_powers(&self) -> PowerSplit {
        let far = self.power_fraction * self.total_power;
        PowerSplit {
            near: self.total_power - far,
            far,
        }
    }

    /// d_BN^alpha * sigma_N^2
    pub fn direct_noise_n(&self) -> f64 {
        self.d_bn.powf(self.alpha) * self.sigma2_n
    }

    /// d_BF^alpha * sigma_F^2
    pub fn direct_noise_f(&self) -> f64 {
        self.d_bf.powf(self.alpha) * self.sigma2_f
    }

    /// Effective noise of the N -> F relay hop: d_BN^alpha d_NF^alpha sigma_F^2.
    pub fn relay_noise_to_f(&self) -> f64 {
        self.d_bn.powf(self.alpha) * self.d_nf.powf(self.alpha) * self.sigma2_f
    }

    /// Effective noise of the F -> N relay hop: d_BF^alpha d_NF^alpha sigma_N^2.
    pub fn relay_noise_to_n(&self) -> f64 {
        self.d_bf.powf(self.alpha) * self.d_nf.powf(self.alpha) * self.sigma2_n
    }

    /// Checks every invariant relevant to `protocol`, reporting all violations.
    pub fn validate(&self, protocol: ProtocolKind) -> Result<()> {
        let mut violations = Vec::new();
        let mut check = |ok: bool, field: &'static str, bound: &str, value: f64| {
            if !ok {
                violations.push(Violation {
                    field,
                    bound: bound.to_string(),
                    value,
                });
            }
        };

        check(self.rate.is_finite() && self.rate > 0.0, "rate", "> 0", self.rate);
        check(
            self.total_power.is_finite() && self.total_power > 0.0,
            "total_power",
            "> 0",
            self.total_power,
        );
        check(self.eta > 0.0 && self.eta <= 1.0, "eta", "in (0, 1]", self.eta);
        check(self.alpha.is_finite() && self.alpha >= 0.0, "alpha", ">= 0", self.alpha);
        for (field, v) in [("d_bn", self.d_bn), ("d_bf", self.d_bf), ("d_nf", self.d_nf)] {
            check(v.is_finite() && v > 0.0, field, "> 0", v);
        }
        for (field, v) in [
            ("lambda_bn", self.lambda_bn),
            ("lambda_bf", self.lambda_bf),
            ("lambda_nf", self.lambda_nf),
            ("sigma2_n", self.sigma2_n),
            ("sigma2_f", self.sigma2_f),
        ] {
            check(v.is_finite() && v > 0.0, field, "> 0", v);
        }

        if protocol.is_noma() {
            let floor = self.sinr_target();
            check(
                self.power_ratio.is_finite() && self.power_ratio > floor,
                "power_ratio",
                &format!("> 2^R - 1 = {floor}"),
                self.power_ratio,
            );
        } else {
            check(
                self.power_fraction > 0.0 && self.power_fraction < 1.0,
                "power_fraction",
                "in (0, 1)",
                self.power_fraction,
            );
            check(
                self.freq_fraction > 0.0 && self.freq_fraction < 1.0,
                "freq_fraction",
                "in (0, 1)",
                self.freq_fraction,
            );
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// Consuming form of [`SystemParams::validate`].
    pub fn validated(self, protocol: ProtocolKind) -> Result<Self> {
        self.validate(protocol).map(|()| self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dbm_conversion() {
        assert_eq!(dbm_to_mw(0.0).unwrap(), 1.0);
        assert!((dbm_to_mw(20.0).unwrap() - 100.0).abs() < 1e-12);
        assert!((dbm_to_mw(-50.0).unwrap() - 1e-5).abs() < 1e-20);
        assert!(dbm_to_mw(f64::NAN).is_err());
        assert!(dbm_to_mw(f64::INFINITY).is_err());
    }

    #[test]
    fn noma_ratio_bound() {
        let p = SystemParams::default();
        assert!(p.validate(ProtocolKind::Csanc).is_ok());

        let at_bound = SystemParams { power_ratio: 1.0, ..p };
        let err = at_bound.validate(ProtocolKind::Isanc).unwrap_err();
        match err {
            Error::Validation(v) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].field, "power_ratio");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ratio_constraint_only_applies_to_noma() {
        let p = SystemParams {
            power_ratio: 0.5,
            freq_fraction: 0.5,
            ..SystemParams::default()
        };
        assert!(p.validate(ProtocolKind::Isaoc).is_ok());
        assert!(p.validate(ProtocolKind::Csanc).is_err());
    }

    #[test]
    fn reports_every_violation() {
        let p = SystemParams {
            total_power: -1.0,
            eta: 1.5,
            d_nf: 0.0,
            freq_fraction: 1.0,
            ..SystemParams::default()
        };
        let Error::Validation(v) = p.validate(ProtocolKind::Isaoc).unwrap_err() else {
            panic!("expected validation error");
        };
        let fields: Vec<_> = v.iter().map(|v| v.field).collect();
        assert_eq!(fields, ["total_power", "eta", "d_nf", "freq_fraction"]);
    }

    #[test]
    fn power_splits_sum_exactly() {
        let p = SystemParams::default();
        let s = p.noma_powers();
        assert_eq!(s.near + s.far, p.total_power);
        assert!((s.far / s.near - 7.0 / 3.0).abs() < 1e-12);
        let o = p.ofdma_powers();
        assert_eq!(o.near + o.far, p.total_power);
    }

    proptest! {
        #[test]
        fn dbm_round_trip(dbm in -150.0f64..150.0) {
            let back = mw_to_dbm(dbm_to_mw(dbm).unwrap());
            prop_assert!((back - dbm).abs() <= 1e-12 * dbm.abs().max(1.0));
        }

        #[test]
        fn accepted_noma_params_keep_sic_margin(rate in 0.1f64..4.0, excess in 1e-6f64..10.0, pb in 1e-3f64..1e4) {
            let p = SystemParams {
                rate,
                total_power: pb,
                power_ratio: rate.exp2() - 1.0 + excess,
                ..SystemParams::default()
            };
            prop_assume!(p.validate(ProtocolKind::Csanc).is_ok());
            let s = p.noma_powers();
            prop_assert!(s.far - s.near * p.sinr_target() > 0.0);
        }
    }
}
