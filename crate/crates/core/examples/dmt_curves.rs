//! Diversity-multiplexing trade-off for every protocol and user.
//!
//! For NOMA the power ratio scales with the rate as `k = a (2^R - 1) + b`.
//! For ISAOC, moving `theta` away from 1/2 trades the achievable
//! multiplexing gain of one user against the other.

use swipt_coop::asymptotic::{amg, dmt_curve, DmtSetting, User};
use swipt_coop::params::ProtocolKind;

fn main() -> swipt_coop::Result<()> {
    let settings = [
        (ProtocolKind::Csanc, DmtSetting::Noma { a: 1.0, b: 1.0 }),
        (ProtocolKind::Isanc, DmtSetting::Noma { a: 1.0, b: 1.0 }),
        (ProtocolKind::Isanc, DmtSetting::Noma { a: 2.0, b: 0.0 }),
        (ProtocolKind::Isaoc, DmtSetting::Ofdma { theta: 0.5, regime: true }),
        (ProtocolKind::Isaoc, DmtSetting::Ofdma { theta: 0.3, regime: true }),
        (ProtocolKind::Isaoc, DmtSetting::Ofdma { theta: 0.3, regime: false }),
    ];

    println!("{:<6} {:<34} {:>6} {:>6}", "proto", "setting", "AMG_N", "AMG_F");
    for (protocol, s) in settings {
        println!(
            "{:<6} {:<34} {:>6.3} {:>6.3}",
            protocol.name(),
            format!("{s:?}"),
            amg(protocol, User::N, s)?,
            amg(protocol, User::F, s)?
        );
    }

    println!();
    let curve = dmt_curve(ProtocolKind::Isaoc, User::F, settings[4].1, 7)?;
    println!("ISAOC user F, theta = 0.3:");
    for (r, d) in curve.samples {
        println!("  r = {r:.3}  d = {d:.3}");
    }
    Ok(())
}
