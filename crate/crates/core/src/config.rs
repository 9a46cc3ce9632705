//! TOML run configuration.
//!
//! Powers are given in dBm here and converted once, in [`Config::params`].
//! Grids are written as `"start:stop:step"` strings. The NOMA power ratio may
//! be a number or a fraction such as `"7/3"`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::asymptotic::DmtSetting;
use crate::error::{Error, Result};
use crate::optimizer;
use crate::params::{dbm_to_mw, SystemParams};

/// The shipped reference configuration.
pub const DEFAULT_TOML: &str = include_str!("../config/default.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub system: SystemSection,
    #[serde(default)]
    pub noma: NomaSection,
    #[serde(default)]
    pub isaoc: IsaocSection,
    #[serde(default)]
    pub simulation: SimulationSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub dmt: DmtSection,
    #[serde(default)]
    pub efrc: EfrcSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub rate: f64,
    pub total_power_dbm: f64,
    pub eta: f64,
    pub alpha: f64,
    pub d_bn: f64,
    pub d_bf: f64,
    pub d_nf: f64,
    #[serde(default = "one")]
    pub lambda_bn: f64,
    #[serde(default = "one")]
    pub lambda_bf: f64,
    #[serde(default = "one")]
    pub lambda_nf: f64,
    pub noise_n_dbm: f64,
    pub noise_f_dbm: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NomaSection {
    pub k: Number,
}

impl Default for NomaSection {
    fn default() -> Self {
        NomaSection { k: Number(7.0 / 3.0) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsaocSection {
    pub rho: f64,
    pub theta: f64,
}

impl Default for IsaocSection {
    fn default() -> Self {
        IsaocSection { rho: 0.5, theta: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulationSection {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SimulationSection {
    fn default() -> Self {
        SimulationSection {
            trials: 1_000_000,
            seed: 20170707,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub pb_dbm: GridSpec,
    pub d_bn: GridSpec,
    pub k: GridSpec,
    pub rho: GridSpec,
    pub theta: GridSpec,
    pub collinear: bool,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            pb_dbm: GridSpec::new(0.0, 40.0, 5.0),
            d_bn: GridSpec::new(5.0, 30.0, 5.0),
            k: GridSpec::new(1.1, 4.0, 0.1),
            rho: GridSpec::new(0.05, 0.95, 0.05),
            theta: GridSpec::new(0.05, 0.95, 0.05),
            collinear: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NomaScaling {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsaocSplit {
    pub theta: f64,
    /// True when the near user's per-message requirement is the larger one.
    pub regime: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DmtSection {
    pub points: usize,
    pub noma: Vec<NomaScaling>,
    pub isaoc: Vec<IsaocSplit>,
}

impl Default for DmtSection {
    fn default() -> Self {
        DmtSection {
            points: 41,
            noma: vec![NomaScaling { a: 1.0, b: 1.0 }, NomaScaling { a: 2.0, b: 0.0 }],
            isaoc: vec![
                IsaocSplit { theta: 0.5, regime: true },
                IsaocSplit { theta: 0.3, regime: true },
                IsaocSplit { theta: 0.7, regime: false },
                IsaocSplit { theta: 0.3, regime: false },
            ],
        }
    }
}

impl DmtSection {
    pub fn noma_settings(&self) -> Vec<DmtSetting> {
        self.noma.iter().map(|s| DmtSetting::Noma { a: s.a, b: s.b }).collect()
    }

    pub fn isaoc_settings(&self) -> Vec<DmtSetting> {
        self.isaoc
            .iter()
            .map(|s| DmtSetting::Ofdma {
                theta: s.theta,
                regime: s.regime,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EfrcSection {
    /// Power ratio axis; ISAOC maps it to `rho = k / (1 + k)`.
    pub k: GridSpec,
    pub theta: GridSpec,
}

impl Default for EfrcSection {
    fn default() -> Self {
        EfrcSection {
            k: GridSpec::new(0.2, 4.0, 0.01),
            theta: GridSpec::new(0.01, 0.99, 0.01),
        }
    }
}

/// A float that may be written as a number or as a `"p/q"` fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Number(pub f64);

impl FromStr for Number {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("`{s}` is not a number or fraction"));
        let v = match s.split_once('/') {
            Some((p, q)) => {
                let p: f64 = p.trim().parse().map_err(|_| bad())?;
                let q: f64 = q.trim().parse().map_err(|_| bad())?;
                p / q
            }
            None => s.trim().parse().map_err(|_| bad())?,
        };
        if v.is_finite() {
            Ok(Number(v))
        } else {
            Err(bad())
        }
    }
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Float(f64),
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Float(v) => Ok(Number(v)),
            Raw::Int(v) => Ok(Number(v as f64)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// An inclusive `start:stop:step` grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub const fn new(start: f64, stop: f64, step: f64) -> Self {
        GridSpec { start, stop, step }
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        optimizer::grid(self.start, self.stop, self.step)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let nums: Option<Vec<f64>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
        let g = match nums.as_deref() {
            Some(&[v]) => GridSpec::new(v, v, 1.0),
            Some(&[a, b, c]) => GridSpec::new(a, b, c),
            _ => return Err(Error::Config(format!("grid `{s}` is not start:stop:step"))),
        };
        g.values()
            .map_err(|e| Error::Config(format!("grid `{s}`: {e}")))?;
        Ok(g)
    }
}

impl Serialize for GridSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GridSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl Default for Config {
    fn default() -> Self {
        Config::from_toml(DEFAULT_TOML).expect("shipped config parses")
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Canonical TOML rendering; identical configs render identically.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    /// Hex SHA-256 of [`Config::to_toml`].
    pub fn sha256(&self) -> String {
        Sha256::digest(self.to_toml().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Linear-unit parameters. Not validated, since validity depends on the protocol.
    pub fn params(&self) -> Result<SystemParams> {
        let s = &self.system;
        Ok(SystemParams {
            rate: s.rate,
            total_power: dbm_to_mw(s.total_power_dbm)?,
            power_ratio: self.noma.k.0,
            power_fraction: self.isaoc.rho,
            freq_fraction: self.isaoc.theta,
            eta: s.eta,
            alpha: s.alpha,
            d_bn: s.d_bn,
            d_bf: s.d_bf,
            d_nf: s.d_nf,
            lambda_bn: s.lambda_bn,
            lambda_bf: s.lambda_bf,
            lambda_nf: s.lambda_nf,
            sigma2_n: dbm_to_mw(s.noise_n_dbm)?,
            sigma2_f: dbm_to_mw(s.noise_f_dbm)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ProtocolKind;

    #[test]
    fn shipped_config_matches_reference_scenario() {
        let p = Config::default().params().unwrap();
        let r = SystemParams::default();
        assert!((p.total_power - r.total_power).abs() < 1e-12);
        assert!((p.sigma2_n - r.sigma2_n).abs() < 1e-20);
        assert_eq!(p.power_ratio, 7.0 / 3.0);
        assert_eq!((p.d_bn, p.d_bf, p.d_nf), (25.0, 35.0, 10.0));
        for protocol in ProtocolKind::ALL {
            p.validate(protocol).unwrap();
        }
    }

    #[test]
    fn ratio_forms() {
        assert_eq!("7/3".parse::<Number>().unwrap().0, 7.0 / 3.0);
        assert_eq!("2.5".parse::<Number>().unwrap().0, 2.5);
        assert!("7/".parse::<Number>().is_err());
        assert!("1/0".parse::<Number>().is_err());
        let c = Config::from_toml(&DEFAULT_TOML.replace("k = \"7/3\"", "k = 2")).unwrap();
        assert_eq!(c.noma.k.0, 2.0);
    }

    #[test]
    fn grid_specs() {
        let g: GridSpec = "0:40:5".parse().unwrap();
        assert_eq!(g.values().unwrap().len(), 9);
        assert_eq!("3".parse::<GridSpec>().unwrap().values().unwrap(), vec![3.0]);
        assert!("1:0:1".parse::<GridSpec>().is_err());
        assert!("1:2".parse::<GridSpec>().is_err());
        assert!("a:b:c".parse::<GridSpec>().is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = DEFAULT_TOML.replace("eta = 0.5", "eta = 0.5\nbeta = 0.1");
        assert!(matches!(Config::from_toml(&text), Err(Error::Config(_))));
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = Config::default();
        assert_eq!(a.sha256(), Config::default().sha256());
        assert_eq!(a.sha256().len(), 64);
        let mut b = a.clone();
        b.simulation.seed += 1;
        assert_ne!(a.sha256(), b.sha256());
        assert_eq!(Config::from_toml(&a.to_toml()).unwrap(), a);
    }

    #[test]
    fn sections_default_when_missing() {
        let system_only: String = DEFAULT_TOML.split("[noma]").next().unwrap().to_string();
        let c = Config::from_toml(&system_only).unwrap();
        assert_eq!(c.noma.k.0, 7.0 / 3.0);
        assert_eq!(c.sweep, SweepSection::default());
        assert_eq!(c.dmt, DmtSection::default());
    }
}
