//! Outage analysis of SWIPT-assisted two-user downlink cooperation.
//!
//! A base station serves a cell-center user N and a cell-edge user F. After
//! the direct phase, a user that decoded the other's message may relay it
//! using energy harvested by power splitting. Three protocols are modelled:
//!
//! - CSANC: NOMA, only N relays.
//! - ISANC: NOMA, either user relays for the other.
//! - ISAOC: OFDMA with frequency split `theta`, either user relays.
//!
//! [`montecarlo`] estimates outage by simulation, [`analytic`] evaluates it
//! in closed form, [`asymptotic`] covers the high-SNR regime and the
//! diversity-multiplexing trade-off, [`efrc`] the error-free relaying limit,
//! and [`optimizer`] searches allocations. [`cli`] wraps all of it.
//!
//! ```
//! use swipt_coop::analytic;
//! use swipt_coop::params::{ProtocolKind, SystemParams};
//!
//! let p = SystemParams::default();
//! let cs = analytic::outage(ProtocolKind::Csanc, &p).unwrap();
//! let is = analytic::outage(ProtocolKind::Isanc, &p).unwrap();
//! assert!(is.sop <= cs.sop);
//! ```

pub mod analytic;
pub mod asymptotic;
pub mod channel;
pub mod cli;
pub mod config;
pub mod efrc;
pub mod error;
pub mod montecarlo;
pub mod noma;
pub mod ofdma;
pub mod optimizer;
pub mod params;
pub mod report;

pub use error::{Error, Result};
